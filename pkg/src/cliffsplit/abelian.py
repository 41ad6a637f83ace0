"""Finite abelian groups, their elements, the fixed dual pairing and exact phases.

A group is a list of cyclic factor orders ``d_1 >= d_2 >= ... >= d_m``.  The
dual group uses the same coordinates; the i-th dual generator evaluates to
``n_i / d_i`` on an element with coordinates ``(n_1, ..., n_m)``.  Phases are
elements of Q/Z kept in lowest terms, standing in for roots of unity.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np


class GroupSpecError(ValueError):
    """Malformed group spec string; ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Phase:
    """An element ``num/den`` of Q/Z with ``0 <= num < den`` and gcd 1."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValueError("phase denominator must be positive")
        n = self.num % self.den
        g = math.gcd(n, self.den)
        object.__setattr__(self, "num", n // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, q: Fraction) -> Phase:
        return cls(q.numerator, q.denominator)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: Phase) -> Phase:
        return Phase(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> Phase:
        return Phase(-self.num, self.den)

    def __sub__(self, other: Phase) -> Phase:
        return self + (-other)

    def __mul__(self, n: int) -> Phase:
        return Phase(self.num * n, self.den)

    __rmul__ = __mul__

    @property
    def order(self) -> int:
        return self.den

    def is_zero(self) -> bool:
        return self.num == 0

    def numerator_over(self, den: int) -> int:
        """Numerator of this phase written over ``den`` (which it must divide)."""
        if den % self.den:
            raise ValueError(f"phase {self} is not expressible over denominator {den}")
        return self.num * (den // self.den)

    def __str__(self) -> str:
        return "0" if self.num == 0 else f"{self.num}/{self.den}"


ZERO_PHASE = Phase(0)


def phase_half_odd(p: Phase) -> Phase:
    """The unique odd-order phase ``r`` with ``2r = p``."""
    if p.den % 2 == 0:
        raise ValueError(f"phase {p} has even order {p.den}: no unique odd square root")
    return Phase(p.num * pow(2, -1, p.den), p.den) if p.den > 1 else ZERO_PHASE


@dataclass(frozen=True)
class FinAbGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders:
            object.__setattr__(self, "orders", (1,))
        for d in self.orders:
            if not isinstance(d, (int, np.integer)) or d < 1:
                raise ValueError(f"cyclic factor order must be a positive integer, got {d!r}")
        object.__setattr__(self, "orders", tuple(sorted((int(d) for d in self.orders), reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def size(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    def is_trivial(self) -> bool:
        return self.size == 1

    def elements(self):
        for coords in itertools.product(*(range(d) for d in self.orders)):
            yield GroupElem(self, coords)

    def elem(self, *coords: int) -> GroupElem:
        return GroupElem(self, tuple(coords))

    def zero(self) -> GroupElem:
        return GroupElem(self, (0,) * self.rank)

    def spec(self) -> str:
        return "x".join(f"Z{d}" for d in self.orders)

    def __str__(self) -> str:
        return self.spec()


def make_group(orders) -> FinAbGroup:
    return FinAbGroup(tuple(orders))


@dataclass(frozen=True)
class GroupElem:
    group: FinAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.group.rank:
            raise ValueError(f"expected {self.group.rank} coordinates, got {len(self.coords)}")
        object.__setattr__(
            self, "coords", tuple(int(c) % d for c, d in zip(self.coords, self.group.orders))
        )

    def _check(self, other: GroupElem):
        if other.group != self.group:
            raise ValueError(f"group mismatch: {self.group} vs {other.group}")

    def __add__(self, other: GroupElem) -> GroupElem:
        self._check(other)
        return GroupElem(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> GroupElem:
        return GroupElem(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: GroupElem) -> GroupElem:
        return self + (-other)

    def __rmul__(self, n: int) -> GroupElem:
        return GroupElem(self.group, tuple(n * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        return reduce(math.lcm, (d // math.gcd(d, a) for a, d in zip(self.coords, self.group.orders)), 1)


def elem_add(u: GroupElem, v: GroupElem) -> GroupElem:
    return u + v


def elem_neg(u: GroupElem) -> GroupElem:
    return -u


def elem_scale(n: int, u: GroupElem) -> GroupElem:
    return n * u


def pairing(chi: GroupElem, a: GroupElem) -> Phase:
    """Evaluate the dual element ``chi`` on ``a``: sum of ``chi_i a_i / d_i``."""
    if chi.group.orders != a.group.orders:
        raise ValueError(f"pairing shape mismatch: {chi.group} vs {a.group}")
    e = a.group.exponent
    return Phase(sum(c * x * (e // d) for c, x, d in zip(chi.coords, a.coords, a.group.orders)), e)


@dataclass(frozen=True)
class DualIdentification:
    """The fixed identification of the dual group with ``A`` (same coordinates)."""

    group: FinAbGroup

    def evaluate(self, chi: GroupElem, a: GroupElem) -> Phase:
        return pairing(chi, a)

    def generator(self, i: int) -> GroupElem:
        coords = [0] * self.group.rank
        coords[i] = 1
        return GroupElem(self.group, tuple(coords))


def _two_valuation(d: int) -> int:
    return (d & -d).bit_length() - 1


@dataclass(frozen=True)
class PrimaryDecomposition:
    """``A = A_odd (+) A_2`` with coordinate maps through the CRT.

    ``factors[i] = (d_i, odd_i, two_i)`` for each factor of the source group.
    ``odd_index[i]`` / ``two_index[i]`` give the position of factor ``i`` inside
    ``A_odd`` / ``A_2`` (or ``None`` when that part of ``d_i`` is trivial).
    """

    source: FinAbGroup
    odd: FinAbGroup
    two: FinAbGroup
    factors: tuple[tuple[int, int, int], ...]
    odd_index: tuple[int | None, ...]
    two_index: tuple[int | None, ...]

    def split(self, a: GroupElem) -> tuple[GroupElem, GroupElem]:
        odd = [0] * self.odd.rank
        two = [0] * self.two.rank
        for x, (_, o, t), io, it in zip(a.coords, self.factors, self.odd_index, self.two_index):
            if io is not None:
                odd[io] = x % o
            if it is not None:
                two[it] = x % t
        return GroupElem(self.odd, tuple(odd)), GroupElem(self.two, tuple(two))

    def join(self, a_odd: GroupElem, a_two: GroupElem) -> GroupElem:
        coords = []
        for (d, o, t), io, it in zip(self.factors, self.odd_index, self.two_index):
            x_odd = a_odd.coords[io] if io is not None else 0
            x_two = a_two.coords[it] if it is not None else 0
            coords.append(crt_pair(x_odd, o, x_two, t))
        return GroupElem(self.source, tuple(coords))


def crt_pair(x1: int, m1: int, x2: int, m2: int) -> int:
    """The residue mod ``m1*m2`` congruent to ``x1`` mod ``m1`` and ``x2`` mod ``m2`` (coprime)."""
    if m1 == 1:
        return x2 % m2
    if m2 == 1:
        return x1 % m1
    return (x1 * m2 * pow(m2, -1, m1) + x2 * m1 * pow(m1, -1, m2)) % (m1 * m2)


def _place(parts: list[tuple[int, int]]) -> tuple[FinAbGroup, dict[int, int]]:
    # parts: (source factor index, order) with order > 1; the group sorts descending
    group = make_group([d for _, d in parts])
    order = sorted(range(len(parts)), key=lambda k: -parts[k][1])
    return group, {parts[k][0]: pos for pos, k in enumerate(order)}


def primary_decompose(A: FinAbGroup) -> PrimaryDecomposition:
    factors = []
    for d in A.orders:
        t = 1 << _two_valuation(d)
        factors.append((d, d // t, t))
    odd_group, odd_pos = _place([(i, o) for i, (_, o, _) in enumerate(factors) if o > 1])
    two_group, two_pos = _place([(i, t) for i, (_, _, t) in enumerate(factors) if t > 1])
    return PrimaryDecomposition(
        source=A,
        odd=odd_group,
        two=two_group,
        factors=tuple(factors),
        odd_index=tuple(odd_pos.get(i) for i in range(A.rank)),
        two_index=tuple(two_pos.get(i) for i in range(A.rank)),
    )


_FACTOR = re.compile(r"z(\d+)")


def parse_group_spec(text: str) -> FinAbGroup:
    """Parse ``Z4xZ2``-style specs: case-insensitive, whitespace ignored.

    Offsets in errors refer to the original string.
    """
    raw = text.encode()
    # map positions in the compacted lowercase string back to the original bytes
    kept = [(i, chr(b).lower()) for i, b in enumerate(raw) if not chr(b).isspace()]
    compact = "".join(c for _, c in kept)

    def offset(k: int) -> int:
        return kept[k][0] if k < len(kept) else len(raw)

    if not compact:
        raise GroupSpecError("empty group spec", 0)
    orders = []
    pos = 0
    while True:
        m = _FACTOR.match(compact, pos)
        if m is None:
            raise GroupSpecError("expected a factor 'Z<d>'", offset(pos))
        d = int(m.group(1))
        if d < 1:
            raise GroupSpecError("cyclic factor order must be positive", offset(pos))
        orders.append(d)
        pos = m.end()
        if pos == len(compact):
            break
        if compact[pos] != "x":
            raise GroupSpecError("expected 'x' between factors", offset(pos))
        pos += 1
    return make_group(orders)
