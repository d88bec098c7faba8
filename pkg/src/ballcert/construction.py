"""The explicit example as data, and the catalog of checks run against it.

Every claim recomputes its value from ``ConstructionData`` (or from artifacts other
claims also compute from it).  Expected values appear only in the catalog
and are used for nothing except the final comparison.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Mapping, Sequence

from .cosets import (DEFAULT_MAX_COSETS, CosetTable, action_table, equivalent, is_normal,
                     kernel_table, todd_coxeter)
from .errors import ConstructionImpossible, InconsistencyError
from .exactrep import element_order, word_equal
from .fpgroups import BUILTIN, COMMUTATORS, Presentation, Word, check_hom, substitute
from .fuchsia import (Signature, diagonal_branch_count, euler_char, fiber_decomposition,
                      product_fiber_count, subgroup_signature)
from .intlat import find_odd_quotient, image_lattice, lattice_index, smith_normal_form
from .ledger import (KE_via_relative_proportionality, PairInvariants, SurfaceInvariants,
                     c1sq_via_proportionality, c2_of_resolution, curve_euler, divisibility_d,
                     euler_product, logBMY_check, open_euler, scale_by_cover,
                     selfint_by_adjunction, volume_from_chi)
from .permgrp import (FiniteGroup, Perm, closure, compose, cyclic_subgroup, direct_product,
                      evaluate_word, fiber_fixed_points, left_cosets, orbits)


@dataclass(frozen=True)
class ConstructionData:
    """All input data, as text in the shipped word and cycle grammars."""

    # Γ1 and Γ2 generators as words in p, q, r
    assignment: Mapping[str, str] = field(default_factory=lambda: {
        "a": "r^6",
        "b": "q^2",
        "c": "(pr) q^2 (pr)^-1",
        "d": "(pr)^-1 q^2 (pr)",
        "g": "(prq)^-1",
        "h": "(qpr)^-1",
    })
    # generators of Γ3, written in Γ2's and in Γ1's generators
    gamma3_in_g2: Mapping[str, str] = field(default_factory=lambda: {
        "t1": "g^3",
        "t2": "g^-1 h",
        "s1": "[g,h]",
        "s2": "(h g h^-1) [g,h] (h g h^-1)^-1",
        "s3": "(h g^-1 h^-1) [g,h] (h g^-1 h^-1)^-1",
    })
    gamma3_in_g1: Mapping[str, str] = field(default_factory=lambda: {
        "t1": "b d c",
        "t2": "c^-1 b",
        "s1": "a",
        "s2": "(d^2 c b^2) a (d^2 c b^2)^-1",
        "s3": "d a d^-1",
    })
    rho1: Mapping[str, str] = field(default_factory=lambda: {
        "a": "(1 3)(2 4)", "b": "(1 3 2)", "c": "(1 2 4)", "d": "(1 2 4)"})
    rho2: Mapping[str, str] = field(default_factory=lambda: {
        "g": "(1 2 3)", "h": "(1 4 2)"})
    # maps onto Z/3 = <(1 2 3)> whose kernels should be Γ3
    z3_on_g1: Mapping[str, str] = field(default_factory=lambda: {
        "a": "Id", "b": "(1 2 3)", "c": "(1 2 3)", "d": "(1 2 3)"})
    z3_on_g2: Mapping[str, str] = field(default_factory=lambda: {
        "g": "(1 2 3)", "h": "(1 2 3)"})
    # generators of Γ4 in Γ3's generators
    gamma4_in_g3: Sequence[str] = (
        "t1^2", "t2^2",
        "s1", "s2", "s3",
        "t1 s1 t1^-1", "t1 s2 t1^-1", "t1 s3 t1^-1",
        "t2 s1 t2^-1", "t2 s2 t2^-1", "t2 s3 t2^-1",
        "(t1 t2) s1 (t1 t2)^-1", "(t1 t2) s2 (t1 t2)^-1", "(t1 t2) s3 (t1 t2)^-1",
    )
    presentations: Mapping[str, Presentation] = field(default_factory=lambda: dict(BUILTIN))

    def replace(self, **changes) -> "ConstructionData":
        """Copy with some mapping entries overridden, e.g.
        ``replace(rho1={"b": "(1 2 3)"})``."""
        kwargs = {}
        for key, value in changes.items():
            current = getattr(self, key)
            if isinstance(current, Mapping) and isinstance(value, Mapping):
                kwargs[key] = {**current, **value}
            else:
                kwargs[key] = value
        return dataclasses.replace(self, **kwargs)


INVOLUTION_IDENTITIES = ("t1", "t2", "s1", "s2", "s3")


Point = tuple[int, frozenset[Perm]]


class Pipeline:
    """Lazily computed artifacts shared between claims."""

    def __init__(self, data: ConstructionData | None = None, max_cosets: int = DEFAULT_MAX_COSETS):
        self.data = data or ConstructionData()
        self.max_cosets = max_cosets

    # -- presentations and words --------------------------------------------
    @property
    def G0(self) -> Presentation:
        return self.data.presentations["G0"]

    @property
    def G1(self) -> Presentation:
        return self.data.presentations["G1"]

    @property
    def G2(self) -> Presentation:
        return self.data.presentations["G2"]

    @property
    def G3(self) -> Presentation:
        return self.data.presentations["G3"]

    @cached_property
    def assignment(self) -> dict[str, Word]:
        return {k: self.G0.word(v) for k, v in self.data.assignment.items()}

    @cached_property
    def g1_to_g0(self) -> dict[str, Word]:
        return {g: self.assignment[g] for g in self.G1.gens}

    @cached_property
    def g2_to_g0(self) -> dict[str, Word]:
        return {g: self.assignment[g] for g in self.G2.gens}

    @cached_property
    def g3_to_g2(self) -> dict[str, Word]:
        return {k: self.G2.word(v) for k, v in self.data.gamma3_in_g2.items()}

    @cached_property
    def g3_to_g1(self) -> dict[str, Word]:
        return {k: self.G1.word(v) for k, v in self.data.gamma3_in_g1.items()}

    @cached_property
    def g3_via_g2(self) -> dict[str, Word]:
        """Γ3 generators over p, q, r through their Γ2 expressions."""
        return {k: substitute(w, self.g2_to_g0) for k, w in self.g3_to_g2.items()}

    @cached_property
    def g3_via_g1(self) -> dict[str, Word]:
        return {k: substitute(w, self.g1_to_g0) for k, w in self.g3_to_g1.items()}

    @cached_property
    def gamma4_words(self) -> list[Word]:
        return [self.G3.word(w) for w in self.data.gamma4_in_g3]

    # -- coset tables -------------------------------------------------------
    def enumerate(self, pres: Presentation, subgens: Sequence[Word]) -> CosetTable:
        return todd_coxeter(pres, subgens, self.max_cosets)

    @cached_property
    def table_g1(self) -> CosetTable:
        return self.enumerate(self.G0, list(self.g1_to_g0.values()))

    @cached_property
    def table_g2(self) -> CosetTable:
        return self.enumerate(self.G0, list(self.g2_to_g0.values()))

    @cached_property
    def table_g3_in_g0(self) -> CosetTable:
        return self.enumerate(self.G0, list(self.g3_via_g2.values()))

    @cached_property
    def table_g3_in_g1(self) -> CosetTable:
        return self.enumerate(self.G1, list(self.g3_to_g1.values()))

    @cached_property
    def table_g3_in_g2(self) -> CosetTable:
        return self.enumerate(self.G2, list(self.g3_to_g2.values()))

    @cached_property
    def table_g4_in_g3(self) -> CosetTable:
        return self.enumerate(self.G3, self.gamma4_words)

    # -- finite images ------------------------------------------------------
    @cached_property
    def rho1(self) -> dict[str, Perm]:
        return {k: Perm.parse(v, 4) for k, v in self.data.rho1.items()}

    @cached_property
    def rho2(self) -> dict[str, Perm]:
        return {k: Perm.parse(v, 4) for k, v in self.data.rho2.items()}

    @cached_property
    def A4(self) -> FiniteGroup:
        # the alternating group itself, independent of the rho data
        return closure([Perm.parse("(1 2 3)", 4), Perm.parse("(2 3 4)", 4)])

    def rho1_of(self, w_over_g1: Word) -> Perm:
        return evaluate_word(w_over_g1, self.rho1, 4)

    def rho2_of(self, w_over_g2: Word) -> Perm:
        return evaluate_word(w_over_g2, self.rho2, 4)

    def rho_pair_of_g3(self, w_over_g3: Word) -> tuple[Perm, Perm]:
        return (self.rho1_of(substitute(w_over_g3, self.g3_to_g1)),
                self.rho2_of(substitute(w_over_g3, self.g3_to_g2)))

    @cached_property
    def kernel_g1(self) -> CosetTable:
        return kernel_table(self.G1, self.rho1, self.A4)

    @cached_property
    def kernel_g2(self) -> CosetTable:
        return kernel_table(self.G2, self.rho2, self.A4)

    @cached_property
    def torsion_stabilizers(self) -> dict[str, list[Perm]]:
        """Images of the order-two elliptic generators: point stabilizers over
        the order-two cone point on each curve."""
        (a, _), = [(w, n) for w, n in self.G1.elliptic if n == 2]
        (c, _), = [(w, n) for w, n in self.G2.elliptic if n == 2]
        return {"C1": [self.rho1_of(a)], "C2": [self.rho2_of(c)]}

    @cached_property
    def special_points(self) -> dict[str, list[Point]]:
        """Points of C1 and C2 with nontrivial stabilizer.

        A point over the k-th cone point is ``(k, x<t>)`` with t the image of
        the k-th elliptic generator; the group acts by left multiplication on
        the coset.  The tag keeps fibers over different cone points apart even
        when their generators have equal images."""
        out = {}
        for name, pres, rho in (("C1", self.G1, self.rho1_of), ("C2", self.G2, self.rho2_of)):
            out[name] = [(k, coset) for k, (w, _) in enumerate(pres.elliptic)
                         for coset in left_cosets(self.A4, cyclic_subgroup(rho(w)))]
        return out

    @cached_property
    def product_fixed_points(self) -> list[tuple[Point, Point]]:
        """Points (z, w) of C1 x C2 with nontrivial stabilizer in the diagonal action."""
        e = self.A4.identity
        out = []
        for z in self.special_points["C1"]:
            for w in self.special_points["C2"]:
                if any(_fixes(s, z) and _fixes(s, w) for s in self.A4 if s != e):
                    out.append((z, w))
        return out

    @cached_property
    def singular_orbits(self) -> list[list[tuple[Point, Point]]]:
        return orbits(self.A4, self.product_fixed_points, _move_pair)

    @cached_property
    def rho_image_of_g3(self) -> FiniteGroup:
        gens = [direct_product(*self.rho_pair_of_g3(Word.gen(g))) for g in self.G3.gens]
        return closure(gens, degree=8)

    @cached_property
    def twisted_g3_table(self) -> CosetTable:
        """Γ3 acting on the group by x -> rho1(γ)^-1 x rho2(γ); the stabilizer
        of the identity is where rho1 and rho2 agree."""
        images = {}
        for g in self.G3.gens:
            r1, r2 = self.rho_pair_of_g3(Word.gen(g))
            images[g] = Perm(tuple(self.A4.index_of(r1.inverse() * x * r2) for x in self.A4))
        return action_table(self.G3, images, root=self.A4.index_of(self.A4.identity))

    @cached_property
    def signature_g4(self) -> Signature:
        return subgroup_signature(self.G3, self.table_g4_in_g3)


def _translate(g: Perm, coset: frozenset[Perm]) -> frozenset[Perm]:
    return frozenset(g * x for x in coset)


def _move(g: Perm, pt: Point) -> Point:
    return pt[0], _translate(g, pt[1])


def _move_pair(g: Perm, zw: tuple[Point, Point]) -> tuple[Point, Point]:
    return _move(g, zw[0]), _move(g, zw[1])


def _fixes(s: Perm, pt: Point) -> bool:
    return _move(s, pt) == pt


def _involutions(G: FiniteGroup) -> list[Perm]:
    return [g for g in G if g.order() == 2]


# -- claims -------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    anchor: str
    expected: Any
    provenance: str
    compute: Callable[[Pipeline], Any]
    depends: tuple[str, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class ClaimResult:
    id: str
    statement: str
    anchor: str
    computed: Any
    expected: Any
    provenance: str
    passed: bool
    error: str | None = None
    note: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def c01(pl: Pipeline):
    return {"G1": pl.table_g1.size, "G2": pl.table_g2.size}


def c02(pl: Pipeline):
    return {"G1": str(subgroup_signature(pl.G0, pl.table_g1)),
            "G2": str(subgroup_signature(pl.G0, pl.table_g2))}


def c03(pl: Pipeline):
    out = {}
    for name, pres, images in (("rho1", pl.G1, pl.rho1), ("rho2", pl.G2, pl.rho2)):
        report = check_hom(pres, images, compose, Perm.is_identity, Perm.inverse, Perm.identity(4))
        out[f"{name}_hom"] = report.ok
        out[f"{name}_image_order"] = len(closure([images[g] for g in pres.gens]))
    return out


def c04(pl: Pipeline):
    out = {}
    for name, pres, table in (("L1", pl.G1, pl.kernel_g1), ("L2", pl.G2, pl.kernel_g2)):
        sig = subgroup_signature(pres, table)
        out[name] = {"index": table.size, "signature": str(sig), "torsion_free": not sig.cones}
    return out


def c05(pl: Pipeline):
    G = pl.A4
    invs = _involutions(G)
    out = {}
    for curve in ("C1", "C2"):
        (t,) = pl.torsion_stabilizers[curve]
        out[f"involution_fixed_{curve}"] = [fiber_fixed_points(G, s, t) for s in invs]
        fiber = left_cosets(G, cyclic_subgroup(t))
        out[f"transitive_{curve}"] = len(orbits(G, fiber, _translate)) == 1
    # three-cycles only have fixed points over cone points of order three, and
    # the second curve has none
    three_cycles = [g for g in G if g.order() == 3]
    out["three_cycle_fixed_C2"] = sum(
        1 for s in three_cycles for z in pl.special_points["C2"] if _fixes(s, z))
    return out


def c06(pl: Pipeline):
    pts = pl.product_fixed_points
    per_inv = [sum(1 for z, w in pts if _fixes(s, z) and _fixes(s, w)) for s in _involutions(pl.A4)]
    orbs = pl.singular_orbits
    return {"per_involution": per_inv, "total": len(pts), "orbits": len(orbs),
            "orbit_sizes": sorted(len(o) for o in orbs)}


def _identity_pairs(pl: Pipeline) -> list[tuple[str, Word, Word]]:
    """The word identities between the two descriptions of Γ3's generators,
    plus the order-two relations of the s_j, all over p, q, r."""
    pairs = [(f"{k}: {pl.data.gamma3_in_g2[k]} = {pl.data.gamma3_in_g1[k]}",
              pl.g3_via_g2[k], pl.g3_via_g1[k]) for k in INVOLUTION_IDENTITIES]
    for k in ("s1", "s2", "s3"):
        pairs.append((f"{k}^2 = 1", pl.g3_via_g2[k] ** 2, Word()))
    return pairs


def c07(pl: Pipeline):
    return {name: word_equal(x, y) for name, x, y in _identity_pairs(pl)}


def commutator_conventions(pl: Pipeline) -> dict[str, bool]:
    """Which expansion of [x, y] makes s1 = [g, h] equal a in the group."""
    g, h = pl.assignment["g"], pl.assignment["h"]
    return {name: word_equal(f(g, h), pl.assignment["a"]) for name, f in COMMUTATORS.items()}


def c08(pl: Pipeline):
    t1, t2 = pl.g3_via_g2["t1"], pl.g3_via_g2["t2"]
    s = [pl.g3_via_g2[k] for k in ("s1", "s2", "s3")]
    rel = pl.G3.relators[0]
    lhs = substitute(rel, pl.g3_via_g2)
    return {"relation": word_equal(lhs, Word()),
            "commutator_equals_product": word_equal(COMMUTATORS["x y x^-1 y^-1"](t1, t2), s[0] * s[1] * s[2]),
            "orders": [element_order(x, 24) for x in s]}


def c09(pl: Pipeline):
    z3 = closure([Perm.parse("(1 2 3)", 3)])
    k1 = kernel_table(pl.G1, {k: Perm.parse(v, 3) for k, v in pl.data.z3_on_g1.items()}, z3)
    k2 = kernel_table(pl.G2, {k: Perm.parse(v, 3) for k, v in pl.data.z3_on_g2.items()}, z3)
    t1, t2 = pl.table_g1, pl.table_g2
    pair = lambda w: (t1.act(0, w), t2.act(0, w))  # noqa: E731
    # index of Γ1 ∩ Γ2: orbit of (0, 0) under Γ0 acting on pairs of cosets
    orbit = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        i, j = frontier.pop()
        for g in pl.G0.gens:
            for sign in (1, -1):
                nxt = (t1.action[i][t1.column(g, sign)], t2.action[j][t2.column(g, sign)])
                if nxt not in orbit:
                    orbit.add(nxt)
                    frontier.append(nxt)
    gens_in_both = all(pair(w) == (0, 0) for w in pl.g3_via_g2.values())
    return {"index_in_G1": pl.table_g3_in_g1.size, "index_in_G2": pl.table_g3_in_g2.size,
            "normal_in_G1": is_normal(pl.table_g3_in_g1), "normal_in_G2": is_normal(pl.table_g3_in_g2),
            "is_Z3_kernel_G1": equivalent(pl.table_g3_in_g1, k1),
            "is_Z3_kernel_G2": equivalent(pl.table_g3_in_g2, k2),
            "equals_G1_cap_G2": gens_in_both and len(orbit) == pl.table_g3_in_g0.size}


def c10(pl: Pipeline):
    return {"index": pl.table_g3_in_g0.size,
            "signature": str(subgroup_signature(pl.G0, pl.table_g3_in_g0))}


def c11(pl: Pipeline):
    out = {}
    for k in ("t1", "t2"):
        r1, r2 = pl.rho_pair_of_g3(Word.gen(k))
        out[f"rho1({k})"] = str(r1)
        out[f"rho2({k})"] = str(r2)
    out["agree_on_s"] = all(
        r1 == r2 for r1, r2 in (pl.rho_pair_of_g3(Word.gen(k)) for k in ("s1", "s2", "s3")))
    out["differ_on_t1_t2_t1t2"] = all(
        r1 != r2 for r1, r2 in (pl.rho_pair_of_g3(pl.G3.word(w)) for w in ("t1", "t2", "t1 t2")))
    return out


def c12(pl: Pipeline):
    sig = pl.signature_g4
    gens_agree = all(r1 == r2 for r1, r2 in map(pl.rho_pair_of_g3, pl.gamma4_words))
    return {"index": pl.twisted_g3_table.size,
            "generated_index": pl.table_g4_in_g3.size,
            "generated_equals_agreement_subgroup": gens_agree and equivalent(pl.table_g4_in_g3, pl.twisted_g3_table),
            "signature": str(sig),
            "euler_char": str(euler_char(sig))}


def c13(pl: Pipeline):
    A4xA4 = closure([direct_product(x, pl.A4.identity) for x in pl.A4.gens]
                    + [direct_product(pl.A4.identity, x) for x in pl.A4.gens], degree=8)
    diagonal = A4xA4.subgroup(lambda p: p.images[:4] == tuple(x - 4 for x in p.images[4:]))
    return {"D3_to_D0": pl.table_g3_in_g0.size,
            "D4_to_D3": pl.table_g4_in_g3.size,
            "Y_to_X3": len(A4xA4) // len(diagonal)}


def c14(pl: Pipeline):
    p, q, r = (fiber_decomposition(pl.table_g3_in_g0, w, n) for w, n in pl.G0.elliptic)
    return {"z2_smooth": p.smooth, "z2_preimages": p.preimages,
            "z3_smooth": q.smooth, "z3_preimages": q.preimages,
            "z12_cone_points": len(r.cone_orders), "z12_cone_orders": list(r.cone_orders)}


def c15(pl: Pipeline):
    t1, t2 = pl.table_g1, pl.table_g2
    p, q, r = (w for w, _ in pl.G0.elliptic)
    return {"z2_ambient": product_fiber_count(t1, t2, p),
            "z3_branches": diagonal_branch_count(t1, t2, q),
            "z12_ambient": product_fiber_count(t1, t2, r)}


def c16(pl: Pipeline):
    def degree(image_of, w: Word, n: int) -> int:
        # (t^k, 1) lies in the diagonal preimage iff image(t^k) is trivial
        return next(k for k in range(1, n + 1) if image_of(w ** k).is_identity())

    vertical = {str(w): degree(pl.rho1_of, w, n) for w, n in pl.G1.elliptic}
    horizontal = {str(w): degree(pl.rho2_of, w, n) for w, n in pl.G2.elliptic}
    return {"vertical": vertical, "horizontal": horizontal}


def c17(pl: Pipeline):
    """Send each cone point of D4 to the singular point of Y it passes through.

    A cone point of D4 is a coset Γ4·δ of Γ3 fixed by some s_j; its torsion
    element δ s_j δ^-1 is conjugate in Γ1 to a (by δγ1) and in Γ2 to [g,h]
    (by δγ2), and the pair of cosets (rho1(δγ1)<rho1(a)>, rho2(δγ2)<rho2([g,h])>)
    is the corresponding fixed point of C1 x C2.
    """
    table = pl.table_g4_in_g3
    (a, _), = pl.G1.elliptic[:1]
    (c, _), = pl.G2.elliptic
    alpha, beta = pl.rho1_of(a), pl.rho2_of(c)
    # s_j = γ a γ^-1 in Γ1 and = γ' [g,h] γ'^-1 in Γ2; recover γ, γ' by matching
    conj1 = _conjugators(pl.g3_to_g1, a)
    conj2 = _conjugators(pl.g3_to_g2, c)
    orbit_of = {}
    for k, orb in enumerate(pl.singular_orbits):
        for pt in orb:
            orbit_of[pt] = k
    counts = [0] * len(pl.singular_orbits)
    cone_points = 0
    for x, n in pl.G3.elliptic:
        s = str(x)
        for cyc in _fixed_cosets(table, x):
            cone_points += 1
            delta = table.transversal[cyc]
            x1 = pl.rho1_of(substitute(delta, pl.g3_to_g1) * conj1[s])
            x2 = pl.rho2_of(substitute(delta, pl.g3_to_g2) * conj2[s])
            z = frozenset(x1 * h for h in cyclic_subgroup(alpha))
            w = frozenset(x2 * h for h in cyclic_subgroup(beta))
            key = ((0, z), (0, w))  # tag: a and [g,h] are the first elliptic generators
            if key not in orbit_of:
                raise InconsistencyError(f"cone point over {s} does not land on a fixed point of C1 x C2")
            counts[orbit_of[key]] += 1
    return {"cone_points_D4": cone_points, "singular_points_Y": len(pl.singular_orbits),
            "multiplicities": sorted(counts),
            "arithmetic_split": [cone_points // len(pl.singular_orbits)] * len(pl.singular_orbits)}


def _conjugators(images: Mapping[str, Word], core: Word) -> dict[str, Word]:
    """For each s_j written as ``γ core γ^-1``, return γ."""
    out = {}
    for k in ("s1", "s2", "s3"):
        w = images[k]
        letters = list(w.letters())
        for i in range(len(letters) + 1):
            gamma = Word(tuple(letters[:i]))
            if gamma * core * gamma.inverse() == w:
                out[k] = gamma
                break
        else:
            raise InconsistencyError(f"{k} = {w} is not visibly a conjugate of {core}")
    return out


def _fixed_cosets(table: CosetTable, x: Word) -> list[int]:
    return [c for c in range(table.size) if table.act(c, x) == c]


def c18(pl: Pipeline):
    H = pl.rho_image_of_g3
    diag = H.subgroup(lambda p: p.images[:4] == tuple(x - 4 for x in p.images[4:]))
    return {"image_order": len(H), "diagonal_part_order": len(diag), "index": len(H) // len(diag)}


# -- ledger claims ------------------------------------------------------------

def _chi_X(pl: Pipeline) -> int:
    g1 = subgroup_signature(pl.G1, pl.kernel_g1).genus
    g2 = subgroup_signature(pl.G2, pl.kernel_g2).genus
    return euler_product(curve_euler(g1), curve_euler(g2))


def _c2_Z(pl: Pipeline) -> int:
    return c2_of_resolution(_chi_X(pl), len(pl.product_fixed_points), len(pl.A4), len(pl.singular_orbits))


def _c1sq_Z(pl: Pipeline) -> int:
    return c1sq_via_proportionality(_chi_X(pl), len(pl.A4))


def _KE(pl: Pipeline) -> int:
    return KE_via_relative_proportionality(euler_char(pl.signature_g4))


def _pair(pl: Pipeline) -> PairInvariants:
    genus = pl.signature_g4.genus
    ke = _KE(pl)
    ef = tuple(c17(pl)["multiplicities"])
    return PairInvariants(SurfaceInvariants(_c1sq_Z(pl), _c2_Z(pl)), ke,
                          selfint_by_adjunction(genus, ke), ef, genus)


def l01(pl):
    return {"chi_X": _chi_X(pl)}


def l02(pl):
    return {"c2_Z": _c2_Z(pl)}


def l03(pl):
    return {"K_X^2": 2 * _chi_X(pl), "c1sq_Z": _c1sq_Z(pl)}


def l04(pl):
    return {"K.E": _KE(pl)}


def l05(pl):
    return {"E^2": selfint_by_adjunction(pl.signature_g4.genus, _KE(pl))}


def l06(pl):
    bmy = logBMY_check(_pair(pl))
    return {"(K+E)^2": bmy.lhs, "3c2": bmy.rhs, "holds": bmy.holds,
            "(K+E).E": bmy.KE_plus_E_dot_E, "(K+E).F": list(bmy.KE_plus_E_dot_F), "big": bmy.big}


def l07(pl):
    pair = _pair(pl)
    chi = pair.base.chiO
    div = divisibility_d(pair.base.c2, chi)
    return {"chi_O": str(chi), "d": div.d, "d_mod_4": div.d % 4, "d_equals_minus_E^2": div.d == -pair.Esq}


def l08(pl):
    return {"volume": str(volume_from_chi(open_euler(_pair(pl))))}


CATALOG: tuple[Claim, ...] = (
    Claim("C01", "Γ1 and Γ2 have index six in Γ0", "index of Γ1, Γ2 in Γ0",
          {"G1": 6, "G2": 6}, "STATED", c01),
    Claim("C02", "signatures Γ1 ≅ Δ(0; 2, 3^3), Γ2 ≅ Δ(1; 2)", "signatures of Γ1, Γ2",
          {"G1": "Δ(0; 2, 3^3)", "G2": "Δ(1; 2)"}, "STATED", c02, ("C01",)),
    Claim("C03", "rho1, rho2 are homomorphisms onto A4", "homomorphisms rho_j to A4",
          {"rho1_hom": True, "rho1_image_order": 12, "rho2_hom": True, "rho2_image_order": 12},
          "DERIVED", c03),
    Claim("C04", "kernels of rho1, rho2 are torsion free of genus four", "curves C1, C2",
          {"L1": {"index": 12, "signature": "Δ(4; ∅)", "torsion_free": True},
           "L2": {"index": 12, "signature": "Δ(4; ∅)", "torsion_free": True}}, "STATED", c04, ("C03",)),
    Claim("C05", "each involution fixes two points on each curve; 3-cycles act freely on C2",
          "fixed points of A4 on C_j",
          {"involution_fixed_C1": [2, 2, 2], "transitive_C1": True,
           "involution_fixed_C2": [2, 2, 2], "transitive_C2": True, "three_cycle_fixed_C2": 0},
          "STATED", c05, ("C03",)),
    Claim("C06", "diagonal A4 action on C1 x C2: 4 fixed points per involution, 12 in all, 2 orbits",
          "product action, singular points of Y",
          {"per_involution": [4, 4, 4], "total": 12, "orbits": 2, "orbit_sizes": [6, 6]},
          "STATED", c06, ("C05",)),
    Claim("C07", "word identities between the two descriptions of Γ3's generators hold in Γ0",
          "relations defining t_j, s_j",
          {f"{k}: {v} = {ConstructionData().gamma3_in_g1[k]}": True for k, v in ConstructionData().gamma3_in_g2.items()}
          | {f"s{j}^2 = 1": True for j in (1, 2, 3)},
          "STATED", c07),
    Claim("C08", "[t1, t2] = s1 s2 s3 and each s_j has order two", "presentation of Γ3",
          {"relation": True, "commutator_equals_product": True, "orders": [2, 2, 2]}, "STATED", c08),
    Claim("C09", "Γ3 is normal of index three in Γ1 and Γ2, the kernel of both Z/3 maps, and Γ1 ∩ Γ2",
          "Γ3 as a Z/3 kernel",
          {"index_in_G1": 3, "index_in_G2": 3, "normal_in_G1": True, "normal_in_G2": True,
           "is_Z3_kernel_G1": True, "is_Z3_kernel_G2": True, "equals_G1_cap_G2": True},
          "STATED", c09, ("C01",)),
    Claim("C10", "Γ3 has index 18 in Γ0 and signature Δ(1; 2^3)", "orbifold D3",
          {"index": 18, "signature": "Δ(1; 2^3)"}, "STATED", c10),
    Claim("C11", "rho-values of t1, t2; rho1 = rho2 on each s_j, not on t1, t2, t1 t2", "rho on Γ3",
          {"rho1(t1)": "(1 3)(2 4)", "rho2(t1)": "Id", "rho1(t2)": "(1 4)(2 3)", "rho2(t2)": "(1 3)(2 4)",
           "agree_on_s": True, "differ_on_t1_t2_t1t2": True}, "STATED", c11, ("C03",)),
    Claim("C12", "Γ4 has index 4 in Γ3, signature Δ(1; 2^12), orbifold Euler characteristic -6",
          "orbifold D4",
          {"index": 4, "generated_index": 4, "generated_equals_agreement_subgroup": True,
           "signature": "Δ(1; 2^12)", "euler_char": "-6"}, "STATED", c12, ("C11",)),
    Claim("C13", "degrees D3 -> D0, D4 -> D3, Y -> X3", "covering degrees",
          {"D3_to_D0": 18, "D4_to_D3": 4, "Y_to_X3": 12}, "STATED", c13, ("C10", "C12")),
    Claim("C14", "over the cone points of D0, D3 has 9 smooth, 6 smooth, and 3 order-two points",
          "fibers of D3 -> D0",
          {"z2_smooth": 9, "z2_preimages": 9, "z3_smooth": 6, "z3_preimages": 6,
           "z12_cone_points": 3, "z12_cone_orders": [2, 2, 2]}, "STATED", c14, ("C10",)),
    Claim("C15", "in X3: 9 points over z2, 12 diagonal branches over z3, 1 point over z12",
          "immersion of D3 in X3",
          {"z2_ambient": 9, "z3_branches": 12, "z12_ambient": 1}, "STATED", c15, ("C01",),
          note="'lifts' over z3 counts branches of the preimage of the diagonal; over z2 and z12 it "
               "counts points of X3"),
    Claim("C16", "no torsion of shape (t, 1) or (1, t) lies in the diagonal preimage: full ramification",
          "ramification of Y -> X3",
          {"vertical": {"a": 2, "b": 3, "c": 3, "d": 3}, "horizontal": {"g*h*g^-1*h^-1": 2}},
          "STATED", c16, ("C03",)),
    Claim("C17", "the 12 cone points of D4 meet the two A1 points of Y six at a time",
          "multiplicity of Ê at the singular points",
          {"cone_points_D4": 12, "singular_points_Y": 2, "multiplicities": [6, 6],
           "arithmetic_split": [6, 6]}, "STATED", c17, ("C06", "C12"),
          note="multiplicities are computed cone point by cone point; arithmetic_split is the "
               "symmetry count 12 / 2 and depends on C06"),
    Claim("C18", "image of Γ3 in A4 x A4 is V4 x V4 and meets the diagonal in index four", "Γ4 inside Γ3",
          {"image_order": 16, "diagonal_part_order": 4, "index": 4}, "STATED", c18, ("C11",)),
    Claim("L01", "Euler number of X = C1 x C2", "Euler number of X", {"chi_X": 36}, "STATED", l01, ("C04",)),
    Claim("L02", "c2(Z) = (36 - 12)/12 + 2 * 2", "Euler number of Z", {"c2_Z": 6}, "STATED", l02, ("C06", "L01")),
    Claim("L03", "c1^2(Z) = K_X^2 / 12 with K_X^2 = 2 c2(X)", "c1^2 of Z",
          {"K_X^2": 72, "c1sq_Z": 6}, "STATED", l03, ("L01",)),
    Claim("L04", "K_Z . E = 2 |e_orb(D4)|", "K.E", {"K.E": 12}, "STATED", l04, ("C12",)),
    Claim("L05", "E^2 by adjunction on a genus one curve", "self-intersection of E",
          {"E^2": -12}, "STATED", l05, ("L04",)),
    Claim("L06", "(K + E)^2 = K^2 - E^2 = 3 c2; (K+E).E = 0; (K+E).F_j = 6", "log-BMY equality",
          {"(K+E)^2": 18, "3c2": 18, "holds": True, "(K+E).E": 0, "(K+E).F": [6, 6], "big": True},
          "STATED", l06, ("L02", "L03", "L05", "C17")),
    Claim("L07", "chi(O_Z) = 1 and d = 4 c2 - 12 chi(O) = 12 = -E^2 is divisible by four",
          "divisibility of the cusp self-intersection",
          {"chi_O": "1", "d": 12, "d_mod_4": 0, "d_equals_minus_E^2": True}, "DERIVED", l07, ("L06",)),
    Claim("L08", "volume of Z minus E", "volume", {"volume": "16π²"}, "STATED", l08, ("L06",)),
)

CLAIMS = {c.id: c for c in CATALOG}


def cover_claims(d: int) -> tuple[Claim, ...]:
    """Claims for the degree-d cover in which E has a single preimage."""

    def v01(pl: Pipeline):
        cert = _cover_certificate(pl, d)
        lattice = _albanese_lattice(pl)
        return {"lattice_index": lattice_index(lattice),
                "snf_type": list(smith_normal_form(lattice).elementary_divisors),
                "order": cert.quotient.order, "surjective": cert.surjective}

    def v02(pl: Pipeline):
        scaled = scale_by_cover(_pair(pl), d, _cover_certificate(pl, d))
        p = scaled.pair
        return {"c1sq": p.base.c1sq, "c2": p.base.c2, "K.E": p.KE, "E^2": p.Esq, "genus_E": p.genusE,
                "chi_O": scaled.chiO, "logBMY": scaled.bmy.holds,
                "d_mod_4": scaled.divisibility.d % 4, "volume": str(scaled.volume)}

    vol = volume_from_chi(6 * d)
    return (
        Claim(f"V{d:02d}a", f"a cyclic quotient of order {d} of H1 of the Albanese curve stays onto on E",
              "odd degree covers",
              {"lattice_index": 12, "snf_type": [2, 6], "order": d, "surjective": True},
              "STATED", v01, ("C12",)),
        Claim(f"V{d:02d}b", f"invariants of the degree {d} cover scale by {d} and stay a ball quotient pair",
              "invariants of the covers",
              {"c1sq": 6 * d, "c2": 6 * d, "K.E": 12 * d, "E^2": -12 * d, "genus_E": 1, "chi_O": d,
               "logBMY": True, "d_mod_4": 0, "volume": str(vol)},
              "STATED", v02, (f"V{d:02d}a", "L06")),
    )


def _albanese_lattice(pl: Pipeline) -> list[list[int]]:
    """Image of Γ4 in the free abelianization Z^2 of Γ2."""
    words = [substitute(w, pl.g3_to_g2) for w in pl.gamma4_words]
    return image_lattice(words, pl.G2)


def _cover_certificate(pl: Pipeline, d: int):
    return find_odd_quotient(_albanese_lattice(pl), d)


def run_claim(claim: Claim | str, pipeline: Pipeline | None = None) -> ClaimResult:
    if isinstance(claim, str):
        try:
            claim = CLAIMS[claim]
        except KeyError:
            raise KeyError(f"unknown claim id {claim!r}") from None
    pl = pipeline or Pipeline()
    error = None
    try:
        computed = claim.compute(pl)
    except (InconsistencyError, ConstructionImpossible, ValueError, KeyError, StopIteration) as exc:
        computed = None
        error = f"{type(exc).__name__}: {exc}"
    computed = _plain(computed)
    expected = _plain(claim.expected)
    return ClaimResult(claim.id, claim.statement, claim.anchor, computed, expected,
                       claim.provenance, error is None and computed == expected, error, claim.note)


def _plain(x):
    """Normalize to JSON-shaped data (lists, dicts, str keys)."""
    if isinstance(x, Mapping):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass(frozen=True)
class Certificate:
    header: Mapping[str, Any]
    claims: tuple[ClaimResult, ...]
    elapsed: float | None = None
    timestamp: str | None = None

    @property
    def passed(self) -> int:
        return sum(1 for c in self.claims if c.passed)

    @property
    def failed(self) -> int:
        return len(self.claims) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0


def certificate_header() -> dict[str, Any]:
    from . import __version__
    from .fpgroups import COMMUTATOR_CONVENTION
    from .ledger import CITED_RULES
    from .permgrp import ACTION_CONVENTION
    return {
        "tool": "ballcert",
        "version": __version__,
        "conventions": {"action": ACTION_CONVENTION, "commutator": COMMUTATOR_CONVENTION,
                        "conjugation": "conjugate(x, by) = by x by^-1"},
        "cited": list(CITED_RULES) + [
            "faithfulness of the reflection representation of the (2,3,12) triangle group "
            "(word equality is decided by exact matrix equality)"],
    }


def run_all(selection: Sequence[str] | None = None, pipeline: Pipeline | None = None,
            extra: Sequence[Claim] = ()) -> Certificate:
    """Run the catalog (or the selected ids) in catalog order, then ``extra``."""
    pl = pipeline or Pipeline()
    if selection is None:
        claims = list(CATALOG)
    else:
        unknown = [c for c in selection if c not in CLAIMS]
        if unknown:
            raise KeyError(f"unknown claim ids {unknown}")
        wanted = set(selection)
        claims = [c for c in CATALOG if c.id in wanted]
    results = tuple(run_claim(c, pl) for c in claims + list(extra))
    return Certificate(certificate_header(), results)


# Seeded corruptions of the input data, one per generator image or word; each
# should make at least one claim fail.
MUTATIONS: dict[str, dict[str, Mapping[str, str]]] = {
    "rho1(a)": {"rho1": {"a": "(1 2)(3 4)"}},
    "rho1(b)": {"rho1": {"b": "(1 2 3)"}},
    "rho1(c)": {"rho1": {"c": "(1 3 4)"}},
    "rho1(d)": {"rho1": {"d": "(1 4 2)"}},
    "rho2(g)": {"rho2": {"g": "(1 2 4)"}},
    "rho2(h)": {"rho2": {"h": "(1 2 3)"}},
    "word c": {"assignment": {"c": "(pr) q (pr)^-1"}},
    "word d": {"assignment": {"d": "(pr)^-1 q (pr)"}},
    "word g": {"assignment": {"g": "prq"}},
    "word h": {"assignment": {"h": "qpr"}},
}
