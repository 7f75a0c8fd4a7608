import json

import pytest

import hypercurrent as hc


def test_straighten_commutator():
    out = hc.straighten("xp[a1](1) xm[a1](t1)", context="current")
    assert out["normal_form"] == "xm[a1](t1) xp[a1](1) - L[1,t1,1]"


def test_lambda_expand():
    assert hc.lambda_expand(1, "t1", 0) == "1"
    assert "L[1,t1,2]" in hc.lambda_expand(1, "t1", 2)


def test_weyl_dimensions():
    assert hc.weyl_module("A2", (1, 1)).dim == 8
    assert hc.weyl_module("A1", (3,), variant="graded").dim == 8
    assert hc.weyl_module("A1", (2,), field=5).character() == hc.weyl_character("A1", (2,))


def test_loop_module_drinfeld_and_json():
    m = hc.loop_weyl_module("A1", [((2,), (3,))])
    assert m.dim == 4
    assert m.drinfeld() == "w[1,1]=1 + -6u^1 + 9u^2"
    back = hc.module_from_json(m.to_json())
    assert back.digest == m.digest
    assert back.to_json() == m.to_json()


def test_evaluation_module_fdprop():
    m = hc.evaluation_module("A2", (1, 0), ("1/2", 3), field=7)
    assert json.loads(m.verify_fdprop(1))["failures"] == 0


def test_suites():
    assert hc.suite("power_reduce", size=4)["failures"] == 0
    a = hc.suite("integrality", seed=3, size=30)
    assert a == hc.suite("integrality", seed=3, size=30)
    assert a["failures"] == 0


def test_errors_carry_codes():
    with pytest.raises(hc.HyperError) as e:
        hc.straighten("xm[a1](t1", context="loop")
    assert e.value.args[0] == "SyntaxError"
    with pytest.raises(hc.HyperError):
        hc.weyl_module("A1", (1, 2))
