import json

import pytest

import fatsurf


def test_words():
    assert fatsurf.reduce("abBA") == ""
    assert fatsurf.inverse("abC") == "cBA"
    assert fatsurf.cyclic_canonical("bab") == fatsurf.cyclic_canonical("abb")
    assert fatsurf.homology("aabA", 2) == [1, 1]


def test_bad_letter_raises():
    with pytest.raises(fatsurf.FatsurfError):
        fatsurf.reduce("a1")


def test_sampling_is_reproducible():
    w = fatsurf.sample_homologically_trivial(40, 2, seed=7)
    assert w == fatsurf.sample_homologically_trivial(40, 2, seed=7)
    assert len(w) == 40
    assert fatsurf.homology(w, 2) == [0, 0]


def test_commutator_bounds_a_once_punctured_torus():
    # the spine is a single 4-valent vertex, so only the relaxed search succeeds
    assert fatsurf.bounds(2, ["abAB"])[0] == "no"
    status, y = fatsurf.bounds(2, ["abAB"], trivalent=False)
    assert status == "yes"
    assert y.genus() == [(1, 1)]
    assert y.validate()["folded"]
    again = fatsurf.deserialize(y.serialize())
    assert sorted(again.boundary()) == sorted(y.boundary())


def test_quotient_of_an_annulus():
    y = fatsurf.quotient(2, ["ab", "BA"], [3, 2, 1, 0])
    assert y.euler_characteristic() == 0


def test_pants_bound_verifies():
    w = fatsurf.sample_homologically_trivial(24, 2, seed=3)
    r = fatsurf.pants_bound(2, [w])
    assert r["verified"]
    assert r["pants"] > 0
    json.loads(r["pieces"])


def test_beads_and_cprime():
    r = fatsurf.sample_homologically_trivial(2000, 2, seed=5)
    d = fatsurf.bead_decomposition(r, 2)
    assert d["ok"]
    assert len(d["beads"]) == d["M"] + 1
    piece, ok = fatsurf.cprime([r])
    assert piece > 0
    assert isinstance(ok, bool)


def test_thin_pipeline_runs():
    d = fatsurf.thin_synthetic(2, 6, seed=1)
    assert d["status"] in ("ok", "failed")
    if d["status"] == "ok":
        assert d["fatgraph"].validate()["folded"]
