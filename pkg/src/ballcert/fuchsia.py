"""Signatures of cocompact Fuchsian groups and of their finite-index subgroups.

A subgroup's cone points are read off the cycles of the parent's elliptic
generators on the cosets; its genus then follows from Riemann-Hurwitz.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .cosets import CosetTable, coset_action
from .errors import InconsistencyError
from .fpgroups import Presentation, Word
from .intlat import abelianization
from .permgrp import Perm, direct_product, orbits


@dataclass(frozen=True)
class Signature:
    genus: int
    cones: tuple[int, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if any(n < 2 for n in self.cones):
            raise ValueError("cone orders must be at least 2")
        object.__setattr__(self, "cones", tuple(sorted(self.cones)))

    def __str__(self) -> str:
        parts = []
        for n, k in sorted(Counter(self.cones).items()):
            parts.append(str(n) if k == 1 else f"{n}^{k}")
        return f"Δ({self.genus}; {', '.join(parts) or '∅'})"


def euler_char(s: Signature) -> Fraction:
    """Orbifold Euler characteristic ``2 - 2g - sum(1 - 1/n)``."""
    return 2 - 2 * s.genus - sum((1 - Fraction(1, n) for n in s.cones), Fraction(0))


def presentation_signature(p: Presentation) -> Signature:
    """Signature of a Fuchsian group given by ``p`` and its elliptic data.

    The genus is half the free rank of the abelianization.
    """
    rank = abelianization(p).rank
    if rank % 2:
        raise InconsistencyError(f"{p.name}: odd abelianization rank {rank}")
    return Signature(rank // 2, tuple(n for _, n in p.elliptic))


@dataclass(frozen=True)
class FiberDecomposition:
    order: int
    cycles: tuple[int, ...]

    @property
    def preimages(self) -> int:
        return len(self.cycles)

    @property
    def smooth(self) -> int:
        return sum(1 for c in self.cycles if c == self.order)

    @property
    def cone_orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.order // c for c in self.cycles if c < self.order))


def fiber_decomposition(table: CosetTable, x: Word, order: int) -> FiberDecomposition:
    cycles = coset_action(table, x).cycle_type()
    bad = [c for c in cycles if order % c]
    if bad:
        raise InconsistencyError(f"{x} of order {order} acts with cycle lengths {bad}")
    return FiberDecomposition(order, tuple(sorted(cycles)))


def subgroup_signature(parent: Presentation, table: CosetTable,
                       parent_signature: Signature | None = None) -> Signature:
    if not parent.elliptic:
        raise ValueError(f"{parent.name} declares no elliptic generators")
    parent_signature = parent_signature or presentation_signature(parent)
    cones: list[int] = []
    for x, n in parent.elliptic:
        cones += fiber_decomposition(table, x, n).cone_orders
    chi = table.size * euler_char(parent_signature)
    twice_genus = 2 - chi - sum((1 - Fraction(1, n) for n in cones), Fraction(0))
    if twice_genus.denominator != 1 or twice_genus.numerator % 2 or twice_genus < 0:
        raise InconsistencyError(
            f"Riemann-Hurwitz gives genus {twice_genus / 2} for a subgroup of index {table.size}")
    return Signature(int(twice_genus) // 2, tuple(cones))


def _cycle_count(table: CosetTable, x: Word) -> int:
    return len(coset_action(table, x).cycles())


def product_fiber_count(t1: CosetTable, t2: CosetTable, x: Word) -> int:
    """Points of the product of the two quotients lying over the cone point of x."""
    return _cycle_count(t1, x) * _cycle_count(t2, x)


def diagonal_branch_count(t1: CosetTable, t2: CosetTable, x: Word) -> int:
    """Local branches of the preimage of the diagonal over the cone point of x:
    orbits of ``(x, x)`` acting on pairs of cosets."""
    pair = direct_product(coset_action(t1, x), coset_action(t2, x))
    n = t1.size
    points = [(i, j) for i in range(t1.size) for j in range(t2.size)]

    def act(g: Perm, ij):
        i, j = ij
        return g(i), g(n + j) - n

    return len(orbits([pair], points, act))


def chi_multiplicative(parent_sig: Signature, index: int, sub_sig: Signature) -> bool:
    return euler_char(sub_sig) == index * euler_char(parent_sig)

