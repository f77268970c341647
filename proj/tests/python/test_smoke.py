import os
from fractions import Fraction
from pathlib import Path

import pytest

import iccsi

DATA = Path(os.environ.get("ICCSI_DATA", "data"))


@pytest.fixture
def walkthrough():
    return iccsi.Instance.load(str(DATA / "syndrome_walkthrough.json"))


def test_instance_properties(walkthrough):
    assert (walkthrough.q, walkthrough.t, walkthrough.n, walkthrough.m) == (2, 1, 4, 4)
    assert "d_S=4" in repr(walkthrough)
    again = iccsi.Instance.parse(walkthrough.to_json())
    assert again.to_json() == walkthrough.to_json()


def test_min_rank_and_alpha(walkthrough):
    kappa = iccsi.min_rank(walkthrough)
    assert kappa["kappa"] == 2
    assert all(iccsi.realizes_ic(walkthrough, kappa["witness"]))
    assert iccsi.alpha(walkthrough)["alpha"] == 2
    three = iccsi.Instance.load(str(DATA / "min_rank_three.json"))
    assert iccsi.length_bracket(iccsi.alpha(three)["alpha"], iccsi.min_rank(three)["kappa"], 1, 2) == (5, 6)


def test_exact_bounds():
    r = iccsi.zippel_ic_prob(4, 2, 1, 10)
    assert r["value"] == Fraction(1, 1024)
    assert r["verdict"] is True
    assert iccsi.subspace_existence_prob([9, 9], 10, 1, 4)["value"] == Fraction(174763, 349525)
    rows = iccsi.bound_table("rank-ecic")
    assert len(rows) == 24 and all(r["verdict"] for r in rows)


def test_encoders_and_certificates(walkthrough):
    l = iccsi.concatenated_encoder(walkthrough, 1)
    assert len(l) == 5
    assert iccsi.verify_ecic(walkthrough, l, 1)["passed"]
    assert not iccsi.verify_ecic(walkthrough, iccsi.coset_encoder(walkthrough), 1)["passed"]


def test_simulation(walkthrough):
    l = iccsi.concatenated_encoder(walkthrough, 1)
    a = iccsi.simulate(walkthrough, l, 1, "hamming", 1, trials=300, seed=3, guarantee=True)
    assert all(u["success"] == 300 for u in a["users"])
    assert a == iccsi.simulate(walkthrough, l, 1, "hamming", 1, trials=300, seed=3, guarantee=True)


def test_errors(walkthrough):
    with pytest.raises(ValueError):
        iccsi.Instance.parse("{}")
    with pytest.raises(ValueError):
        iccsi.realizes_ic(walkthrough, [[1, 0, 1]])
    with pytest.raises(iccsi.BudgetExceeded):
        iccsi.min_rank(iccsi.Instance.load(str(DATA / "min_rank_three.json")), budget=1)
