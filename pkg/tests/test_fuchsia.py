from fractions import Fraction

import pytest

from ballcert.cosets import todd_coxeter
from ballcert.errors import InconsistencyError
from ballcert.fpgroups import BUILTIN, parse_word
from ballcert.fuchsia import (Signature, chi_multiplicative, diagonal_branch_count, euler_char,
                              fiber_decomposition, presentation_signature, product_fiber_count,
                              subgroup_signature)


def test_signature_printing():
    assert str(Signature(0, (3, 2, 3, 3))) == "Δ(0; 2, 3^3)"
    assert str(Signature(4)) == "Δ(4; ∅)"
    with pytest.raises(ValueError):
        Signature(-1)
    with pytest.raises(ValueError):
        Signature(0, (1,))


def test_euler_char():
    assert euler_char(Signature(0, (2, 3, 12))) == Fraction(-1, 12)
    assert euler_char(Signature(1, (2,) * 12)) == -6
    assert euler_char(Signature(4)) == -6


def test_presentation_signatures():
    assert str(presentation_signature(BUILTIN["G0"])) == "Δ(0; 2, 3, 12)"
    assert str(presentation_signature(BUILTIN["G1"])) == "Δ(0; 2, 3^3)"
    assert str(presentation_signature(BUILTIN["G2"])) == "Δ(1; 2)"
    assert str(presentation_signature(BUILTIN["G3"])) == "Δ(1; 2^3)"
    assert str(presentation_signature(BUILTIN["G4"])) == "Δ(1; 2^12)"


def test_subgroup_signatures(pipeline):
    G0 = BUILTIN["G0"]
    assert subgroup_signature(G0, pipeline.table_g1) == presentation_signature(BUILTIN["G1"])
    assert subgroup_signature(G0, pipeline.table_g2) == presentation_signature(BUILTIN["G2"])
    assert subgroup_signature(G0, pipeline.table_g3_in_g0) == Signature(1, (2, 2, 2))
    assert subgroup_signature(BUILTIN["G1"], pipeline.table_g3_in_g1) == Signature(1, (2, 2, 2))
    assert subgroup_signature(BUILTIN["G2"], pipeline.table_g3_in_g2) == Signature(1, (2, 2, 2))
    assert pipeline.signature_g4 == Signature(1, (2,) * 12)
    assert subgroup_signature(BUILTIN["G1"], pipeline.kernel_g1) == Signature(4)
    assert subgroup_signature(BUILTIN["G2"], pipeline.kernel_g2) == Signature(4)


def test_chi_multiplicative_on_all_tables(pipeline):
    cases = [(BUILTIN["G0"], pipeline.table_g1), (BUILTIN["G0"], pipeline.table_g2),
             (BUILTIN["G0"], pipeline.table_g3_in_g0), (BUILTIN["G1"], pipeline.table_g3_in_g1),
             (BUILTIN["G2"], pipeline.table_g3_in_g2), (BUILTIN["G3"], pipeline.table_g4_in_g3),
             (BUILTIN["G1"], pipeline.kernel_g1), (BUILTIN["G2"], pipeline.kernel_g2)]
    for parent, table in cases:
        sub = subgroup_signature(parent, table)
        assert chi_multiplicative(presentation_signature(parent), table.size, sub)


def test_fibers_on_d3(pipeline):
    t = pipeline.table_g3_in_g0
    p, q, r = (fiber_decomposition(t, w, n) for w, n in BUILTIN["G0"].elliptic)
    assert (p.smooth, p.preimages, p.cycles) == (9, 9, (2,) * 9)
    assert (q.smooth, q.cone_orders) == (6, ())
    assert r.cycles == (6, 6, 6) and r.cone_orders == (2, 2, 2)


def test_fiber_rejects_wrong_order(pipeline):
    with pytest.raises(InconsistencyError):
        fiber_decomposition(pipeline.table_g1, parse_word("q"), 2)


def test_riemann_hurwitz_detects_bad_parent(pipeline):
    with pytest.raises(InconsistencyError):
        subgroup_signature(BUILTIN["G0"], pipeline.table_g1, Signature(0, (2, 3, 7)))


def test_product_and_diagonal_counts(pipeline):
    t1, t2 = pipeline.table_g1, pipeline.table_g2
    p, q, r = map(parse_word, "pqr")
    assert [product_fiber_count(t1, t2, x) for x in (p, q, r)] == [9, 8, 1]
    assert [diagonal_branch_count(t1, t2, x) for x in (p, q, r)] == [18, 12, 6]


def test_diagonal_count_on_trivial_subgroup():
    whole = todd_coxeter(BUILTIN["G0"], list(map(parse_word, "pqr")))
    assert whole.size == 1
    assert diagonal_branch_count(whole, whole, parse_word("q")) == 1
