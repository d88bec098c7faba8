"""Exact word oracle for the (2,3,12) triangle group.

The rotation subgroup of the (2,3,12) reflection group acts faithfully on a
3-dimensional Lorentzian space.  Its Gram matrix involves cos(pi/12) =
(sqrt6 + sqrt2)/4, so every matrix entry lives in Q(sqrt2, sqrt3) and word
equality can be decided with rational arithmetic only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .fpgroups import Word

Rational = Fraction | int

# products of basis elements (1, r2, r3, r6): _MUL[i][j] = (coefficient, index)
_MUL = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (2, 0), (1, 3), (2, 2)),
    ((1, 2), (1, 3), (3, 0), (3, 1)),
    ((1, 3), (2, 2), (3, 1), (6, 0)),
)


@dataclass(frozen=True)
class FieldElt:
    """``a + b*sqrt2 + c*sqrt3 + d*sqrt6`` with rational coefficients."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            v = getattr(self, name)
            if not isinstance(v, Fraction):
                object.__setattr__(self, name, Fraction(v))

    @classmethod
    def of(cls, x: "FieldElt | Rational") -> "FieldElt":
        return x if isinstance(x, FieldElt) else cls(Fraction(x))

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        o = FieldElt.of(other)
        return FieldElt(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return FieldElt(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-FieldElt.of(other))

    def __rsub__(self, other):
        return FieldElt.of(other) - self

    def __mul__(self, other):
        o = FieldElt.of(other)
        out = [Fraction(0)] * 4
        x, y = self.coeffs, o.coeffs
        for i in range(4):
            if not x[i]:
                continue
            for j in range(4):
                if y[j]:
                    k, idx = _MUL[i][j]
                    out[idx] += k * x[i] * y[j]
        return FieldElt(*out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def inverse(self) -> "FieldElt":
        """Solve ``self * y = 1`` as a 4x4 rational linear system."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        # column j of the multiplication-by-self matrix is self * basis_j
        cols = [(self * FieldElt(*[Fraction(int(i == j)) for i in range(4)])).coeffs for j in range(4)]
        m = [[cols[j][i] for j in range(4)] + [Fraction(int(i == 0))] for i in range(4)]
        for col in range(4):
            piv = next(r for r in range(col, 4) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            pv = m[col][col]
            m[col] = [v / pv for v in m[col]]
            for r in range(4):
                if r != col and m[r][col] != 0:
                    f = m[r][col]
                    m[r] = [vr - f * vc for vr, vc in zip(m[r], m[col])]
        return FieldElt(*[m[i][4] for i in range(4)])

    def __truediv__(self, other):
        return self * FieldElt.of(other).inverse()

    def __rtruediv__(self, other):
        return FieldElt.of(other) * self.inverse()

    def approx(self) -> float:
        """Floating-point value under the real embedding; display use only."""
        from math import sqrt
        return float(self.a) + float(self.b) * sqrt(2) + float(self.c) * sqrt(3) + float(self.d) * sqrt(6)

    def __str__(self) -> str:
        terms = []
        for coef, sym in zip(self.coeffs, ("", "√2", "√3", "√6")):
            if coef:
                if sym and coef in (1, -1):
                    terms.append(("-" if coef < 0 else "+") + sym)
                else:
                    terms.append(f"{'+' if coef > 0 else '-'}{abs(coef)}{sym}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


ZERO = FieldElt()
ONE = FieldElt(1)
SQRT2 = FieldElt(0, 1)
SQRT3 = FieldElt(0, 0, 1)
SQRT6 = FieldElt(0, 0, 0, 1)
COS_PI_12 = FieldElt(0, Fraction(1, 4), 0, Fraction(1, 4))

Mat3 = tuple[tuple[FieldElt, FieldElt, FieldElt], ...]


def mat_identity() -> Mat3:
    return tuple(tuple(ONE if i == j else ZERO for j in range(3)) for i in range(3))


def mat_mul(x: Mat3, y: Mat3) -> Mat3:
    return tuple(
        tuple(sum((x[i][k] * y[k][j] for k in range(3)), ZERO) for j in range(3))
        for i in range(3))


def mat_transpose(x: Mat3) -> Mat3:
    return tuple(tuple(x[j][i] for j in range(3)) for i in range(3))


def mat_det(x: Mat3) -> FieldElt:
    return (x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1])
            - x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0])
            + x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]))


def mat_inverse(x: Mat3) -> Mat3:
    det = mat_det(x)
    inv_det = det.inverse()
    cof = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != i]
            c = [k for k in range(3) if k != j]
            minor = x[r[0]][c[0]] * x[r[1]][c[1]] - x[r[0]][c[1]] * x[r[1]][c[0]]
            cof[i][j] = minor if (i + j) % 2 == 0 else -minor
    return tuple(tuple(cof[j][i] * inv_det for j in range(3)) for i in range(3))


def is_identity(x: Mat3) -> bool:
    return x == mat_identity()


@dataclass(frozen=True)
class ReflectionRep:
    gram: Mat3
    reflections: tuple[Mat3, Mat3, Mat3]
    rotations: Mapping[str, Mat3]
    inverses: Mapping[str, Mat3]

    def preserves_form(self, m: Mat3) -> bool:
        return mat_mul(mat_mul(mat_transpose(m), self.gram), m) == self.gram


class RepresentationError(AssertionError):
    pass


def _reflection(gram: Mat3, i: int) -> Mat3:
    # image of basis vector e_j is e_j - 2 <e_j, e_i> e_i; columns are images
    cols = []
    for j in range(3):
        col = [ONE if k == j else ZERO for k in range(3)]
        col[i] = col[i] - 2 * gram[i][j]
        cols.append(col)
    return tuple(tuple(cols[j][k] for j in range(3)) for k in range(3))


def _power(m: Mat3, n: int) -> Mat3:
    out = mat_identity()
    for _ in range(n):
        out = mat_mul(out, m)
    return out


@lru_cache(maxsize=1)
def build_rep() -> ReflectionRep:
    """Mirrors at angles pi/2, pi/3, pi/12; p, q, r are the three products of
    consecutive reflections, so ``p*q*r`` is the identity by construction."""
    half = Fraction(1, 2)
    gram = (
        (ONE, ZERO, -COS_PI_12),
        (ZERO, ONE, FieldElt(-half)),
        (-COS_PI_12, FieldElt(-half), ONE),
    )
    r1, r2, r3 = (_reflection(gram, i) for i in range(3))
    rotations = {"p": mat_mul(r1, r2), "q": mat_mul(r2, r3), "r": mat_mul(r3, r1)}
    inverses = {k: mat_inverse(v) for k, v in rotations.items()}
    rep = ReflectionRep(gram, (r1, r2, r3), rotations, inverses)

    e = mat_identity()
    for refl in rep.reflections:
        if mat_mul(refl, refl) != e or not rep.preserves_form(refl):
            raise RepresentationError("reflection is not an isometric involution")
    P, Q, R = rotations["p"], rotations["q"], rotations["r"]
    checks = {
        "p^2": _power(P, 2) == e,
        "q^3": _power(Q, 3) == e,
        "r^12": _power(R, 12) == e,
        "pqr": mat_mul(mat_mul(P, Q), R) == e,
        "p != 1": P != e,
        "q != 1": Q != e,
        "r order 12": all(_power(R, k) != e for k in (1, 2, 3, 4, 6)),
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise RepresentationError(f"triangle group relations fail: {failed}")
    return rep


def word_to_matrix(w: Word, rep: ReflectionRep | None = None) -> Mat3:
    rep = rep or build_rep()
    out = mat_identity()
    for g, e in w.syllables:
        if g not in rep.rotations:
            raise KeyError(f"generator {g!r} is not one of p, q, r")
        base = rep.rotations[g] if e > 0 else rep.inverses[g]
        for _ in range(abs(e)):
            out = mat_mul(out, base)
    return out


def word_equal(w1: Word, w2: Word) -> bool:
    return word_to_matrix(w1) == word_to_matrix(w2)


def element_order(w: Word, cap: int) -> int | None:
    """Least ``k <= cap`` with ``w^k = 1``, or None if there is none."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    m = word_to_matrix(w)
    acc = m
    for k in range(1, cap + 1):
        if is_identity(acc):
            return k
        acc = mat_mul(acc, m)
    return None


def random_word(rng: random.Random, length: int, gens: Sequence[str] = ("p", "q", "r")) -> Word:
    return Word(tuple((rng.choice(gens), rng.choice((-1, 1))) for _ in range(length)))
