"""Prime field arithmetic over F_q for small primes q."""

from __future__ import annotations

from dataclasses import dataclass


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    d = 2
    while d * d <= x:
        if x % d == 0:
            return False
        d += 1
    return True


def select_prime(num_blocks: int) -> int:
    """Least prime q with num_blocks < q <= 2 * num_blocks."""
    if num_blocks < 2:
        raise ValueError(f"need at least 2 blocks, got {num_blocks}")
    q = num_blocks + 1
    while not is_prime(q):
        q += 1
    assert q <= 2 * num_blocks
    return q


def inv_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {q}")
    r0, r1, s0, s1 = q, a, 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    return s0 % q


@dataclass(frozen=True)
class FieldElem:
    value: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.q)

    def _check(self, other: FieldElem) -> None:
        if self.q != other.q:
            raise ValueError(f"modulus mismatch: {self.q} vs {other.q}")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.value + other.value, self.q)

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.value - other.value, self.q)

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.value * other.value, self.q)

    def __neg__(self) -> FieldElem:
        return FieldElem(-self.value, self.q)

    def inv(self) -> FieldElem:
        return FieldElem(inv_mod(self.value, self.q), self.q)

    def __truediv__(self, other: FieldElem) -> FieldElem:
        return self * other.inv()

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value
