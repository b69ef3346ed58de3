import random

import numpy as np
from hypothesis import given, settings, strategies as st

from spaths.base import build, check_base, initialize_base
from spaths.dependence import compute_dependence, reconstruction_errors
from spaths.field import select_prime
from spaths.instance import Instance, random_instance
from spaths.representation import CIRC, Space, make_labeling, solve_left

from bases import random_base
from conftest import instances, path123


def direct_solve(space, dep):
    """Independent route: express each non-base twin in the base by Gaussian elimination."""
    Bm = np.array([space.singleton_vec(c[1]) if c[0] == "s" else space.edge_twin(c[1], c[2])
                   for c in dep.cols])
    return np.array([solve_left(Bm, space.edge_twin(e, k), space.q) for e, k in dep.rows])


def setup(inst, B=None):
    q = select_prime(len(inst.blocks))
    lab = make_labeling(inst, q)
    B = B or initialize_base(inst)
    return Space(inst, lab), compute_dependence(inst, lab, B), B


def test_path_row_for_e23_circ():
    sp, dep, B = setup(path123())
    assert dep.cols == [("s", 1), ("s", 3), ("l", 0, 0), ("l", 0, 1)]
    assert dep.rows == [(1, 0), (1, 1)]
    # t1 - e12° - t3, with -1 written as 2 modulo 3
    assert dep.data[0].tolist() == [1, 2, 2, 0]
    assert direct_solve(sp, dep)[0].tolist() == [1, 2, 2, 0]


def test_cycle_row_supported_on_tree_path():
    # one tree rooted at terminal 1: 1-2-3-4, plus the chord 2-4 which closes the cycle 2-3-4
    inst = Instance(4, ((1, 2), (2, 3), (3, 4), (2, 4)), ((1,), ))
    q = 3
    lab = make_labeling(inst, q)
    B = build(inst, {1}, {0, 1, 2})
    check_base(inst, B)
    dep = compute_dependence(inst, lab, B)
    row = dep.data[dep.rows.index((3, CIRC))]
    support = {dep.cols[i] for i in np.nonzero(row)[0]}
    assert support == {("l", 1, CIRC), ("l", 2, CIRC)}


def test_two_terminal_tree_rows_stay_inside_component():
    inst = Instance(5, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 3)), ((1,), (3,), (5,)))
    B = build(inst, {5}, {0, 1, 3})  # tree 1-2-3 holds terminals 1 and 3, tree 4-5 holds 5
    check_base(inst, B)
    sp, dep, _ = setup(inst, B)
    assert not reconstruction_errors(sp, dep)
    row = dep.data[dep.rows.index((4, CIRC))]  # chord 1-3 inside the first tree
    support = {dep.cols[i] for i in np.nonzero(row)[0]}
    assert support <= {("l", 0, 0), ("l", 0, 1), ("l", 1, 0), ("l", 1, 1)}


@settings(max_examples=80, deadline=None)
@given(instances(max_n=9), st.integers(0, 2 ** 32 - 1))
def test_matches_direct_solve_on_random_bases(inst, seed):
    B = random_base(inst, random.Random(seed))
    check_base(inst, B)
    sp, dep, _ = setup(inst, B)
    assert not reconstruction_errors(sp, dep)
    if dep.rows:
        assert np.array_equal(dep.data.astype(np.int64), direct_solve(sp, dep))


@settings(max_examples=40, deadline=None)
@given(instances(max_n=9), st.integers(0, 2 ** 32 - 1))
def test_each_tree_walked_once_per_terminal(inst, seed):
    B = random_base(inst, random.Random(seed))
    _, dep, _ = setup(inst, B)
    expected = sum(2 - len(c) for c in B.comp_covered)
    assert dep.walks == expected


def test_op_count_within_mn_budget():
    for n in (50, 100, 200):
        inst = random_instance(n, 3 * n, 10, 3, n)
        _, dep, _ = setup(inst)
        assert dep.ops <= 8 * inst.m * inst.n
