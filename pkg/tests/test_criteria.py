import json
import math

import numpy as np
import pytest

from tentops.criteria import (U_g, U_g_profile, boundedness_from_profile, classify,
                              compactness_from_profile, critical_exponent, criterion_kinds,
                              exponent_e, lambda_param, membership_index, membership_measure,
                              membership_profile, membership_value, symbol_order)
from tentops.funcmodel import AnalyticFn
from tentops.tentnorm import SpaceParams, kernel_test

Z = AnalyticFn.poly([0, 1])
LOG = AnalyticFn.log(1.0)          # log(1/(1-z))
POLE = AnalyticFn.kernel(1.0, 1.0)  # 1/(1-z)
T22 = SpaceParams(2, 2, 0, 0, 1, 0, "T")
T21 = SpaceParams(2, 1, 0, 0, 1, 0, "T")


def test_exponents():
    assert symbol_order(T22) == 1
    assert symbol_order(SpaceParams(2, 2, n=3, k=1, op_kind="S")) == 1
    assert exponent_e(T22) == 1
    assert exponent_e(SpaceParams(2, 2, 0, 2, 1, 0, "S")) == 1
    assert exponent_e(SpaceParams(2, 4, 0, 2, 2, 1)) == 1
    assert lambda_param(T21) == 0
    assert lambda_param(SpaceParams(4, 2, 1, 0)) == -1
    assert membership_index(SpaceParams(4, 2)) == 4
    assert critical_exponent(T22) == 1
    assert critical_exponent(T21) == 2
    assert criterion_kinds(T22)[0] == "Ug"
    assert criterion_kinds(SpaceParams(2, 1, op_kind="S"))[0] == "Sg_membership"


def test_lambda_rejections():
    with pytest.raises(ValueError):
        lambda_param(T22)
    with pytest.raises(ValueError):
        lambda_param(SpaceParams(4, 2, 1.9, -1.5))   # (4(-1.5) - 2(1.9))/2 = -4.9
    with pytest.raises(ValueError):
        lambda_param(SpaceParams(4, 2, 2, 0))        # exactly -2
    with pytest.raises(ValueError):
        classify(Z, SpaceParams(4, 2, 2, 0), test_families=False)


def test_U_g_examples():
    assert U_g(Z, T22) == pytest.approx(1.0, abs=1e-12)
    v = U_g(LOG, T22)
    assert 1.99 < v < 2.0
    assert U_g(AnalyticFn.constant(5), T22) == 0
    with pytest.raises(ValueError):
        U_g(Z, T21)


def test_U_g_profiles():
    pz = U_g_profile(Z, T22)
    assert pz.values[-1] < 3e-3
    pl = U_g_profile(LOG, T22)
    assert all(b >= a for a, b in zip(pl.values, pl.values[1:]))
    pp = U_g_profile(POLE, T22)
    assert pp.values[-1] > 100 * pp.values[0]


def test_membership_examples():
    # g = z under (2, 1): measure (1-|z|^2)^3 dA, mass 1/4 at a = 0, t = 1
    mu = membership_measure(Z, T21)
    assert kernel_test(mu, 1.0, [0j]).value == pytest.approx(0.25, rel=1e-10)
    v = membership_value(LOG, T21)
    assert math.isfinite(v) and v > 0
    assert membership_value(AnalyticFn.constant(1), T21) == 0
    v2 = membership_value(LOG * 2, T21)
    assert v2 == pytest.approx(2 * v, rel=1e-10)


def test_membership_profile_decay():
    pz = membership_profile(Z, T21)
    assert compactness_from_profile(pz.values) == "compact"
    assert boundedness_from_profile(pz.values) == "bounded"


def test_profile_rules():
    assert boundedness_from_profile([1, 2, 3, 4, 5]) == "not_bounded"
    assert boundedness_from_profile([3, 3, 4, 5, 5.9]) == "inconclusive"    # < 2x the first
    assert boundedness_from_profile([1, 1, 1.005, 1.0, 0.9]) == "bounded"
    assert boundedness_from_profile([1, 2, 1, 2]) == "inconclusive"
    assert boundedness_from_profile([1, 2, 3]) == "inconclusive"
    assert compactness_from_profile([1, 0.5, 0.04]) == "compact"
    assert compactness_from_profile([1, 0.6]) == "not_compact"
    assert compactness_from_profile([1, 0.2]) == "inconclusive"
    assert compactness_from_profile([0, 0]) == "compact"


def test_classify_examples():
    v = classify(Z, T22, test_families=False)
    assert (v.classification, v.compactness) == ("bounded", "compact")
    assert v.value == pytest.approx(1.0, abs=1e-12)
    v = classify(LOG, T22, test_families=False)
    assert (v.classification, v.compactness) == ("bounded", "not_compact")
    v = classify(POLE, T22, test_families=False)
    assert (v.classification, v.compactness) == ("not_bounded", "not_compact")
    v = classify(AnalyticFn.constant(2), T22, test_families=False)
    assert (v.classification, v.compactness, v.value) == ("bounded", "compact", 0.0)


def test_classify_scale_invariance():
    for g in (Z, LOG):
        a = classify(g, T22, test_families=False)
        b = classify(g * (-3j), T22, test_families=False)
        assert b.classification == a.classification
        assert b.compactness == a.compactness
        assert b.value == pytest.approx(3 * a.value, rel=1e-10)


def test_classify_negative_e():
    P = SpaceParams(2, 2, 2, -1.5)   # e = 1 + 0.25 - 2 < 0
    assert exponent_e(P) < 0
    v = classify(Z, P, test_families=False)
    assert v.classification == "not_bounded" and v.value == math.inf
    assert v.notes


def test_classify_with_corpus_and_families():
    corpus = [("one", AnalyticFn.constant(1)), ("z", Z)]
    v = classify(Z, T22, corpus)
    assert v.evidence["ratios"]["max_ratio"] > 0
    assert len(v.evidence["compactness_decay"]["ratio"]) == 8


def test_verdict_json():
    v = classify(Z, SpaceParams(2, 2, 2, -1.5), test_families=False)
    d = json.loads(v.to_json())
    assert d["value"] == "inf"
    assert d["classification"] == "not_bounded"
    assert d["params"]["alpha"] == 2
    assert AnalyticFn.poly([0, 1]).to_spec() == d["g"]
    v = classify(LOG, T21, test_families=False)
    d = json.loads(v.to_json())
    assert d["evidence"]["s"] == 2 and d["evidence"]["lambda"] == 0
    assert len(d["profile"]["radii"]) == len(d["profile"]["values"])
