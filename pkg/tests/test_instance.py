import pytest
from hypothesis import given

from spaths.instance import (GeneratorError, Instance, Packing, ParseError, connected_components,
                             parse, random_instance, serialize, validate_packing)

from conftest import instances, path123


def test_parse_path():
    inst = parse("3 2 2\n1\n3\n1 2\n2 3\n")
    assert (inst.n, inst.m, inst.k, len(inst.blocks)) == (3, 2, 2, 2)
    assert inst.edges == ((1, 2), (2, 3))
    assert inst.blocks == ((1,), (3,))


def test_parse_skips_comments():
    inst = parse("# header\n3 2 2\n1\n# blocks done\n3\n1 2\n2 3\n")
    assert inst == path123()


@pytest.mark.parametrize("text, fragment", [
    ("3 2 2\n4\n3\n1 2\n2 3\n", "line 2"),
    ("3 2 2\n1\n3\n2 2\n2 3\n", "self-loop"),
    ("3 2 2\n1 3\n3\n1 2\n2 3\n", "already"),
    ("3 2\n1\n3\n1 2\n2 3\n", "header"),
    ("3 2 2\n1\n3\n1 2\n", "expected"),
    ("3 1 1\n1\n1 x\n", "integers"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse(text)


@given(instances())
def test_parse_serialize_roundtrip(inst):
    assert parse(serialize(inst)) == inst


def test_validate_packing_examples():
    inst = path123()
    assert validate_packing(inst, Packing([[1, 2, 3]])) == (True, None)
    ok, why = validate_packing(inst, Packing([[1, 2], [2, 3]]))
    assert not ok
    same = Instance(3, ((1, 2), (2, 3)), ((1, 3),))
    ok, why = validate_packing(same, Packing([[1, 2, 3]]))
    assert not ok and "same block" in why


def test_validate_packing_rejects_terminal_interior_and_non_edges():
    inst = Instance(3, ((1, 2), (2, 3)), ((1,), (2,), (3,)))
    assert not validate_packing(inst, Packing([[1, 2, 3]]))[0]
    assert not validate_packing(path123(), Packing([[1, 3]]))[0]


def test_components_examples():
    two = Instance(4, ((1, 2), (3, 4)), ((1,), (4,)))
    comps = connected_components(two)
    assert [c.instance.n for c in comps] == [2, 2]
    assert comps[1].vertices == (3, 4) and comps[1].block_ids == (1,)
    one = connected_components(path123())
    assert len(one) == 1 and one[0].vertices == (1, 2, 3)
    assert len(connected_components(Instance(3, (), ()))) == 3


@given(instances(max_n=9))
def test_components_partition_vertices_and_edges(inst):
    comps = connected_components(inst)
    verts = [v for c in comps for v in c.vertices]
    assert sorted(verts) == list(range(1, inst.n + 1))
    assert sorted(e for c in comps for e in c.edge_ids) == list(range(inst.m))
    for c in comps:
        for (u, v), e in zip(c.instance.edges, c.edge_ids):
            assert {c.vertices[u - 1], c.vertices[v - 1]} == set(inst.edges[e])


def test_random_instance_shape_and_determinism():
    inst = random_instance(3, 2, 2, 2, seed=0)
    assert inst.n == 3 and inst.m == 2 and inst.k == 2 and len(inst.blocks) == 2
    assert random_instance(8, 12, 5, 3, 11) == random_instance(8, 12, 5, 3, 11)
    assert len(connected_components(random_instance(30, 40, 6, 3, 1))) == 1


@pytest.mark.parametrize("args", [(5, 4, 6, 2), (4, 3, 2, 3), (5, 2, 2, 2)])
def test_random_instance_errors(args):
    with pytest.raises(GeneratorError):
        random_instance(*args, seed=0)


def test_instance_rejects_self_loop_and_overlap():
    with pytest.raises(ValueError):
        Instance(2, ((1, 1),), ((1,),))
    with pytest.raises(ValueError):
        Instance(2, ((1, 2),), ((1,), (1, 2)))
