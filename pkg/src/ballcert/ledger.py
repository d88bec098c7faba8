"""Chern numbers, intersection numbers and volumes, in exact arithmetic.

Each function encodes one standard rule (Noether, adjunction, Hirzebruch
proportionality, ...).  The rules themselves are taken on trust; see
``CITED_RULES``.  Only the arithmetic is checked here.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InconsistencyError
from .intlat import QuotientCertificate

CITED_RULES = (
    "Noether: chi(O) = (c1^2 + c2) / 12",
    "adjunction: K.C + C^2 = 2 g(C) - 2",
    "Hirzebruch proportionality: c1^2 = 2 c2 for compact quotients of H^2 x H^2",
    "relative proportionality: K.E = 2 |e_orb(D4)|",
    "orbifold Euler characteristic of a quotient with isolated fixed points",
    "log-BMY equality (K + E)^2 = 3 c2 characterizes ball quotient pairs, given nef and big K + E",
    "ampleness of K_Y (nefness beyond the listed intersection numbers)",
    "Chern-Gauss-Bonnet: vol = (8 pi^2 / 3) chi",
    "Chern numbers and self-intersections multiply under finite etale covers",
)


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise InconsistencyError(f"{what} = {x} is not an integer")
    return int(x)


@dataclass(frozen=True)
class SurfaceInvariants:
    c1sq: int
    c2: int

    @property
    def chiO(self) -> Fraction:
        return Fraction(self.c1sq + self.c2, 12)

    def check_noether(self) -> int:
        return _integral(self.chiO, "chi(O)")


@dataclass(frozen=True)
class PairInvariants:
    base: SurfaceInvariants
    KE: int
    Esq: int
    EF: tuple[int, ...]
    genusE: int

    def __post_init__(self):
        if self.KE + self.Esq != 2 * self.genusE - 2:
            raise InconsistencyError(
                f"adjunction fails: K.E + E^2 = {self.KE + self.Esq} != {2 * self.genusE - 2}")


@dataclass(frozen=True)
class VolumeValue:
    """``coefficient * pi^2``."""

    coefficient: Fraction

    def __str__(self) -> str:
        c = self.coefficient
        if c.denominator == 1:
            return f"{c.numerator}π²"
        return f"{c.numerator}π²/{c.denominator}"


def euler_product(chi1: int, chi2: int) -> int:
    return chi1 * chi2


def curve_euler(genus: int) -> int:
    return 2 - 2 * genus


def c2_of_resolution(chiX: int, fixed: int, group_order: int, num_a1: int) -> int:
    """Euler number of the resolved quotient: free part of X/G, plus each A1
    point counted once as a point and once more for its exceptional sphere."""
    return _integral(Fraction(chiX - fixed, group_order), "(chi - fixed)/|G|") + 2 * num_a1


def c1sq_via_proportionality(c2X: int, group_order: int) -> int:
    return _integral(Fraction(2 * c2X, group_order), "K_X^2/|G|")


def KE_via_relative_proportionality(chi_orb_curve: Fraction) -> int:
    chi = Fraction(chi_orb_curve)
    if chi >= 0:
        raise ValueError(f"orbifold Euler characteristic must be negative, got {chi}")
    return _integral(2 * abs(chi), "K.E")


def selfint_by_adjunction(genus: int, KE: int) -> int:
    return (2 * genus - 2) - KE


@dataclass(frozen=True)
class LogBMYReport:
    lhs: int
    rhs: int
    KE_plus_E_dot_E: int
    KE_plus_E_dot_F: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def big(self) -> bool:
        return self.lhs > 0

    def __bool__(self) -> bool:
        return self.holds


def logBMY_check(pair: PairInvariants) -> LogBMYReport:
    """Compare ``(K + E)^2`` with ``3 c2``; the (-2)-curves F_j have K.F_j = 0."""
    lhs = pair.base.c1sq + 2 * pair.KE + pair.Esq
    return LogBMYReport(lhs, 3 * pair.base.c2, pair.KE + pair.Esq, tuple(pair.EF))


@dataclass(frozen=True)
class DivisibilityReport:
    d: int

    @property
    def divisible_by_four(self) -> bool:
        return self.d % 4 == 0


def divisibility_d(c2: int, chiO: Fraction | int) -> DivisibilityReport:
    chi = _integral(Fraction(chiO), "chi(O)")
    return DivisibilityReport(4 * c2 - 12 * chi)


def volume_from_chi(chi_open: int) -> VolumeValue:
    if chi_open <= 0:
        raise ValueError(f"a complex hyperbolic surface has positive Euler number, got {chi_open}")
    return VolumeValue(Fraction(8, 3) * chi_open)


def open_euler(pair: PairInvariants) -> int:
    """Euler number of the complement of E (E is a torus, so nothing is lost)."""
    return pair.base.c2 - curve_euler(pair.genusE)


@dataclass(frozen=True)
class ValidatedPair:
    pair: PairInvariants
    chiO: int
    bmy: LogBMYReport
    divisibility: DivisibilityReport
    volume: VolumeValue


def validate(pair: PairInvariants) -> ValidatedPair:
    """Re-run Noether, log-BMY and divisibility on ``pair``; raise on failure."""
    chiO = pair.base.check_noether()
    bmy = logBMY_check(pair)
    if not bmy.holds:
        raise InconsistencyError(f"log-BMY fails: {bmy.lhs} != {bmy.rhs}")
    div = divisibility_d(pair.base.c2, chiO)
    if div.d != -pair.Esq:
        raise InconsistencyError(f"4 c2 - 12 chi(O) = {div.d} but -E^2 = {-pair.Esq}")
    return ValidatedPair(pair, chiO, bmy, div, volume_from_chi(open_euler(pair)))


def scale_by_cover(pair: PairInvariants, d: int, cert: QuotientCertificate) -> ValidatedPair:
    """Invariants of a degree-d etale cover in which E has one (genus one) preimage.

    Each (-2)-curve F_j is simply connected, so it has d disjoint lifts, each
    meeting the preimage of E as F_j met E.
    """
    if d < 1 or d % 2 == 0:
        raise ValueError(f"cover degree must be a positive odd integer, got {d}")
    if cert is None or cert.quotient.order != d or not cert.surjective:
        raise ValueError(f"no valid surjectivity certificate for degree {d}")
    scaled = replace(
        pair,
        base=SurfaceInvariants(pair.base.c1sq * d, pair.base.c2 * d),
        KE=pair.KE * d,
        Esq=pair.Esq * d,
        EF=pair.EF * d,
    )
    return validate(scaled)
