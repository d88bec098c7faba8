
import pytest

from ballcert.cosets import (action_table, coset_action, equivalent, generator_perms, is_normal,
                             kernel_table, todd_coxeter)
from ballcert.errors import InconsistencyError, ResourceExhausted
from ballcert.fpgroups import BUILTIN, Presentation, parse_word
from ballcert.fuchsia import euler_char, presentation_signature
from ballcert.permgrp import Perm

S3 = Presentation("S3", ("x", "y"), tuple(map(parse_word, ["x^2", "y^3", "x y x y"])))


def test_small_groups():
    assert todd_coxeter(S3, []).size == 6
    assert todd_coxeter(S3, [parse_word("x")]).size == 3
    assert todd_coxeter(S3, [parse_word("y")]).size == 2
    assert todd_coxeter(S3, [parse_word("x"), parse_word("y")]).size == 1


def test_table_is_valid_and_standard(pipeline):
    t = pipeline.table_g1
    t.validate()
    for c, w in enumerate(t.transversal):
        assert t.act(0, w) == c
    # relators act trivially on every coset
    for rel in t.presentation.relators:
        assert coset_action(t, rel).is_identity()
    assert t.to_tsv().splitlines()[0].split("\t") == ["coset", "p", "p^-1", "q", "q^-1", "r", "r^-1"]


def _expected_index(parent, child):
    # oracle independent of enumeration: orbifold Euler characteristics
    return euler_char(presentation_signature(child)) / euler_char(presentation_signature(parent))


def test_indices_match_euler_characteristics(pipeline):
    G0, G1, G2, G3 = (BUILTIN[k] for k in ("G0", "G1", "G2", "G3"))
    assert pipeline.table_g1.size == _expected_index(G0, G1) == 6
    assert pipeline.table_g2.size == _expected_index(G0, G2) == 6
    assert pipeline.table_g3_in_g0.size == _expected_index(G0, G3) == 18
    assert pipeline.table_g4_in_g3.size == _expected_index(G3, BUILTIN["G4"]) == 4
    assert _expected_index(G1, G3) == pipeline.table_g3_in_g1.size == 3


@pytest.mark.parametrize("which", ["g1", "g2", "g3_in_g0", "g3_in_g1", "g3_in_g2", "g4_in_g3"])
def test_strategy_independence(pipeline, which):
    hlt = getattr(pipeline, f"table_{which}")
    felsch = todd_coxeter(hlt.presentation, hlt.subgens, strategy="felsch")
    assert felsch.action == hlt.action


def test_cycle_types_on_cosets(pipeline):
    perms = generator_perms(pipeline.table_g1)
    assert sorted(perms["p"].cycle_type()) == [2, 2, 2]
    assert sorted(perms["q"].cycle_type()) == [1, 1, 1, 3]
    assert sorted(perms["r"].cycle_type()) == [6]


def test_resource_exhaustion():
    free = Presentation("F", ("x", "y"))
    with pytest.raises(ResourceExhausted):
        todd_coxeter(free, [], max_cosets=50)
    with pytest.raises(ResourceExhausted):
        todd_coxeter(BUILTIN["G0"], [parse_word("p")], max_cosets=200, strategy="felsch")
    with pytest.raises(ValueError):
        todd_coxeter(S3, [], strategy="nope")


def test_normality(pipeline):
    assert is_normal(pipeline.table_g3_in_g1)
    assert not is_normal(pipeline.table_g1)
    assert not is_normal(todd_coxeter(S3, [parse_word("x")]))


def test_kernel_table(pipeline):
    A4 = pipeline.A4
    table = kernel_table(BUILTIN["G2"], pipeline.rho2, A4)
    assert table.size == 12 and is_normal(table)
    # same subgroup as a Todd-Coxeter run on the Schreier generators
    assert equivalent(table, todd_coxeter(BUILTIN["G2"], table.subgens))
    bad = dict(pipeline.rho1, a=Perm.parse("(1 2 3)", 4))
    with pytest.raises(InconsistencyError):
        kernel_table(BUILTIN["G1"], bad, A4)
    small = {"g": Perm.parse("(1 2)(3 4)", 4), "h": Perm.parse("(1 3)(2 4)", 4)}
    with pytest.raises(InconsistencyError):
        kernel_table(BUILTIN["G2"], small, A4)


def test_action_table_stabilizer():
    images = {"x": Perm.parse("(1 2)", 3), "y": Perm.parse("(1 2 3)", 3)}
    t = action_table(S3, images)
    assert t.size == 3
    assert equivalent(t, todd_coxeter(S3, t.subgens))


def test_equivalent_distinguishes():
    a = todd_coxeter(S3, [parse_word("x")])
    b = todd_coxeter(S3, [parse_word("y x y^-1")])
    assert a.size == b.size and not equivalent(a, b)
    assert equivalent(a, todd_coxeter(S3, [parse_word("x"), parse_word("x^3")]))
