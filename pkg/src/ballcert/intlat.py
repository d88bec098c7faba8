"""Smith normal form over the integers, abelianizations, and cyclic quotients
of Z^2 that stay surjective on a given sublattice.

Matrices are plain lists of lists of Python ints, so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import ConstructionImpossible
from .fpgroups import Presentation, Word

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def det(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SNFResult:
    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    @property
    def elementary_divisors(self) -> list[int]:
        """The nonzero diagonal entries."""
        return [d for d in self.diagonal if d]


def smith_normal_form(a: Sequence[Sequence[int]]) -> SNFResult:
    """Return unimodular U, V with ``U @ A @ V = S`` in Smith normal form.

    The pivot at each stage is the entry of least nonzero absolute value in the
    remaining block, ties broken by row-major position.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    S = [list(map(int, row)) for row in a]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row dst += k * row src
        for M in (S, U):
            M[dst] = [x + k * y for x, y in zip(M[dst], M[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for M in (S, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(S[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if S[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if S[i][t]:
                    add_row(t, i, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, cols):
                if S[t][j]:
                    add_col(t, j, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if t < rows and t < cols and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(U, S, V)


def is_unimodular(m: Matrix) -> bool:
    return abs(det(m)) == 1


def exponent_matrix(p: Presentation) -> Matrix:
    return [[rel.exponent_sum(g) for g in p.gens] for rel in p.relators]


@dataclass(frozen=True)
class Abelianization:
    rank: int
    torsion: tuple[int, ...]
    snf: SNFResult
    ngens: int

    def free_coordinates(self, exponents: Sequence[int]) -> list[int]:
        """Image of an exponent vector in the free part Z^rank."""
        y = matmul([list(exponents)], self.snf.V)[0]
        k = self.ngens - self.rank
        return y[k:]


def abelianization(p: Presentation) -> Abelianization:
    n = len(p.gens)
    rels = exponent_matrix(p) or [[0] * n]
    snf = smith_normal_form(rels)
    divisors = snf.elementary_divisors
    return Abelianization(n - len(divisors), tuple(d for d in divisors if d > 1), snf, n)


def image_lattice(subgens: Sequence[Word], ambient: Presentation) -> Matrix:
    """Rows spanning the image of ``subgens`` in the free part of the ambient
    abelianization."""
    ab = abelianization(ambient)
    if ab.rank == 0:
        raise ValueError(f"{ambient.name} has finite abelianization; no lattice to map into")
    return [ab.free_coordinates([w.exponent_sum(g) for g in ambient.gens]) for w in subgens]


class InfiniteIndex(ValueError):
    pass


def lattice_index(L: Sequence[Sequence[int]]) -> int:
    if not L:
        raise InfiniteIndex("empty generating set")
    r = len(L[0])
    divisors = smith_normal_form(L).elementary_divisors
    if len(divisors) < r:
        raise InfiniteIndex(f"rows span a sublattice of rank {len(divisors)} < {r}")
    return prod(divisors)


@dataclass(frozen=True)
class FinAbQuotient:
    """A surjection Z^n -> Z/d given by ``x -> <x, functional> mod d``."""

    order: int
    functional: tuple[int, ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return (self.order,) if self.order > 1 else ()

    def __call__(self, x: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(x, self.functional)) % self.order


@dataclass(frozen=True)
class QuotientCertificate:
    quotient: FinAbQuotient
    snf_type: tuple[int, ...]
    coordinate: int
    divisor: int
    bezout: tuple[int, int]
    generator_images: tuple[int, ...]
    reached: int

    @property
    def surjective(self) -> bool:
        return self.reached == self.quotient.order


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _subgroup_size(images: Sequence[int], d: int) -> int:
    """Size of the subgroup of Z/d generated by ``images``, by enumeration."""
    reached = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in images:
            y = (x + g) % d
            if y not in reached:
                reached.add(y)
                frontier.append(y)
    return len(reached)


def cyclic_quotient(L: Sequence[Sequence[int]], d: int) -> QuotientCertificate:
    """A map Z^r -> Z/d whose restriction to the row span of L is onto.

    Works in Smith-adapted coordinates: pick a coordinate whose elementary
    divisor is prime to ``d`` and project onto it.
    """
    if d < 1:
        raise ValueError(f"quotient order must be positive, got {d}")
    L = [list(row) for row in L]
    snf = smith_normal_form(L)
    divs = snf.diagonal
    r = len(L[0])
    if len([x for x in divs if x]) < r:
        raise InfiniteIndex("sublattice does not have full rank")
    for i, di in enumerate(divs):
        if gcd(di, d) == 1:
            break
    else:
        raise ConstructionImpossible(
            f"no elementary divisor of {tuple(divs)} is prime to {d}; "
            f"the sublattice maps to a proper subgroup of every order-{d} cyclic quotient")
    functional = tuple(snf.V[k][i] % d for k in range(r)) if d > 1 else (0,) * r
    mu = FinAbQuotient(d, functional)
    _, x, y = _ext_gcd(di, d)
    images = tuple(mu(row) for row in L)
    return QuotientCertificate(mu, tuple(divs), i, di, (x, y), images, _subgroup_size(images, d))


def find_odd_quotient(L: Sequence[Sequence[int]], d: int) -> QuotientCertificate:
    """Odd-order cyclic quotient of Z^r, surjective on the row span of L.

    Raises ConstructionImpossible when no such quotient exists for this d and
    ValueError for a non-positive or (constructible but) even d.
    """
    if d < 1:
        raise ValueError(f"d must be a positive odd integer, got {d}")
    cert = cyclic_quotient(L, d)
    if d % 2 == 0:
        raise ValueError(f"d must be odd, got {d}")
    if not cert.surjective:
        raise ConstructionImpossible(f"enumeration reached only {cert.reached} of {d} residues")
    return cert
