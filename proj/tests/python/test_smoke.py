import json
import math

import pytest

import starcong as sc


def test_classify_from_text_and_lists():
    r = sc.classify("0,1;1,1i")
    assert str(r["form"]) == "delta(1)"
    assert r["codim"] == 2
    r = sc.classify([[0, 1], [1, 0]])
    assert r["form"] == sc.CanonicalForm("pair(1,-1)")
    assert r["form"].family == sc.Family.UnitPair


def test_classify_refusals():
    with pytest.raises(sc.AmbiguousClassification) as info:
        sc.classify([[1e-9, 0], [0, 0]])
    assert info.value.test == "zero"
    with pytest.raises(sc.InvalidInput):
        sc.classify([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(sc.StarcongError):
        sc.classify("1,2;3")


def test_codimension_and_stratum():
    assert [sc.codimension(s) for s in ("zero", "udz(1)", "pair(1,1)", "hyp(0.3)", "delta(1i)")] == [8, 5, 4, 2, 2]
    s = sc.stratum("pair(1,1)")
    assert (s["dim_r"], s["codim_r"], s["star_count"]) == (4, 4, 1)
    assert sc.tangent_space_dim([[0, 1], [1, 1j]]) == 6


def test_forms_round_trip():
    for text in ("zero", "udz(1i)", "pair(1,-1)", "hyp(0.5+0.5i)", "delta(-1)"):
        f = sc.parse_form(text)
        assert sc.parse_form(str(f)) == f
        assert sc.classify(f.matrix())["form"] == f
    assert len({sc.CanonicalForm("zero"), sc.CanonicalForm.zero()}) == 1
    with pytest.raises(sc.InvalidInput):
        sc.parse_form("udz(2)")


def test_witness_and_certificate():
    w = sc.witness("zero", "hyp(0.5)", 1e-3)
    assert w["verified"]
    assert w["norm_E"] <= 1e-3
    assert str(w["classified"]) == "hyp(0.5)"
    assert abs(w["E"][0][1] - 1e-3 / math.sqrt(1.25)) < 1e-15

    assert sc.reachable("udz(1)", "delta(-1i)")
    assert not sc.reachable("udz(1)", "delta(1i)")
    with pytest.raises(sc.NoArrow) as info:
        sc.witness("udz(1)", "delta(1i)", 1e-3)
    assert info.value.certificate["kind"] == "HalfPlaneMargin"
    assert info.value.certificate["margin"] == pytest.approx(1.0)

    cert = sc.no_arrow_certificate("pair(1,1)", "hyp(0.3)")
    assert cert["kind"] == "SpectrumGap"
    assert cert["margin"] == pytest.approx(7 / 3)
    with pytest.raises(sc.ArrowExists):
        sc.no_arrow_certificate("zero", "udz(1)")
    with pytest.raises(sc.DegenerateDelta):
        sc.witness("zero", "udz(1)", 0.0)


def test_sampling_is_deterministic():
    a = sc.sample_neighborhood("pair(1,1)", 1e-3, 2000, 7)
    b = sc.sample_neighborhood("pair(1,1)", 1e-3, 2000, 7)
    assert json.dumps(a, default=str, sort_keys=True) == json.dumps(b, default=str, sort_keys=True)
    assert a["histogram"]["pair"] == 2000
    assert a["max_spectrum_drift"] < 0.1
    assert sc.sample_neighborhood("zero", 1e-3, 100)["max_spectrum_drift"] is None


def test_graph():
    forms = ["zero", "udz(1)", "hyp(0)"]
    assert sc.hasse_edges(forms) == [(0, 1), (1, 2)]
    dot = sc.to_dot(forms)
    assert dot.startswith("digraph closure {")
    assert dot.count("->") == 2
    with pytest.raises(sc.DuplicateVertex):
        sc.hasse_edges(["zero", "zero"])
