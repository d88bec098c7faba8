import pytest

from ballcert.construction import (CATALOG, CLAIMS, MUTATIONS, ConstructionData, Pipeline,
                                   commutator_conventions, cover_claims, run_all, run_claim)
from ballcert.errors import ResourceExhausted


def test_catalog_order():
    ids = [c.id for c in CATALOG]
    assert ids == [f"C{i:02d}" for i in range(1, 19)] + [f"L{i:02d}" for i in range(1, 9)]
    assert all(d in CLAIMS for c in CATALOG for d in c.depends)
    # dependencies point backwards, so catalog order is a valid schedule
    pos = {c.id: i for i, c in enumerate(CATALOG)}
    assert all(pos[d] < pos[c.id] for c in CATALOG for d in c.depends)
    assert {c.provenance for c in CATALOG} <= {"STATED", "DERIVED", "TRIVIAL"}


def test_full_run_passes(pipeline):
    cert = run_all(pipeline=pipeline)
    failed = [(c.id, c.computed, c.error) for c in cert.claims if not c.passed]
    assert not failed
    assert cert.ok and cert.passed == 26


def test_empty_selection(pipeline):
    cert = run_all([], pipeline)
    assert cert.claims == () and cert.ok


def test_unknown_claim():
    with pytest.raises(KeyError):
        run_claim("C99")
    with pytest.raises(KeyError):
        run_all(["C01", "X"])


def test_commutator_convention_probe(pipeline):
    assert commutator_conventions(pipeline) == {"x y x^-1 y^-1": True, "x^-1 y^-1 x y": False}


def test_rho_table(pipeline):
    r = run_claim("C11", pipeline)
    assert r.computed["rho2(t1)"] == "Id"
    for k in ("s1", "s2", "s3"):
        a, b = pipeline.rho_pair_of_g3(pipeline.G3.word(k))
        assert a == b and a.order() == 2


def test_cone_points_land_on_both_singular_points(pipeline):
    r = run_claim("C17", pipeline)
    assert r.passed and r.computed["multiplicities"] == [6, 6]
    assert "symmetry" in r.note


def test_singular_point_stabilizers(pipeline):
    # each fixed point of the product action is fixed by exactly one involution
    for (k, z), (l, w) in pipeline.product_fixed_points:
        assert k == l == 0  # over the order-two cone points only
        fixers = [s for s in pipeline.A4 if not s.is_identity()
                  and frozenset(s * x for x in z) == z and frozenset(s * x for x in w) == w]
        assert len(fixers) == 1 and fixers[0].order() == 2


def test_special_points_are_distinct(pipeline):
    c1 = pipeline.special_points["C1"]
    assert len(c1) == len(set(c1)) == 6 + 3 * 4
    assert len(pipeline.special_points["C2"]) == 6


def test_spec_mutation_example():
    data = ConstructionData().replace(rho1={"b": "(1 2 3)"})
    cert = run_all(pipeline=Pipeline(data))
    failed = {c.id for c in cert.claims if not c.passed}
    assert failed & {"C03", "C05"} and not cert.ok


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_mutations_are_caught(name):
    data = ConstructionData().replace(**MUTATIONS[name])
    try:
        cert = run_all(pipeline=Pipeline(data, max_cosets=5000))
    except ResourceExhausted:
        return  # the pipeline refuses to certify, which also counts
    assert not cert.ok, f"mutation {name} went unnoticed"


def test_replace_leaves_original():
    base = ConstructionData()
    changed = base.replace(rho2={"g": "(1 2 4)"})
    assert base.rho2["g"] == "(1 2 3)" and changed.rho2 == {"g": "(1 2 4)", "h": "(1 4 2)"}


def test_resource_exhaustion_propagates():
    with pytest.raises(ResourceExhausted):
        run_claim("C10", Pipeline(max_cosets=5))


@pytest.mark.parametrize("d", [1, 3, 7])
def test_cover_claims(pipeline, d):
    results = [run_claim(c, pipeline) for c in cover_claims(d)]
    assert all(r.passed for r in results)
    assert results[1].computed["volume"] == ("16π²" if d == 1 else f"{16 * d}π²")


def test_expected_values_are_not_inputs(pipeline):
    # corrupting an expected value flips only the comparison
    import dataclasses
    claim = dataclasses.replace(CLAIMS["C10"], expected={"index": 17, "signature": "Δ(1; 2^3)"})
    r = run_claim(claim, pipeline)
    assert not r.passed and r.computed["index"] == 18
