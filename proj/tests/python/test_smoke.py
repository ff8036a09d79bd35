from fractions import Fraction

import pytest

import kmeis


def test_rational_functions():
    f = kmeis.RationalFunc("(2-2z^2)/(1-4z^2)")
    assert str(f) == "(2-2z^2)/(1-4z^2)"
    assert f(Fraction(1, 4)) == Fraction(5, 2)
    assert f("1/4") == Fraction(5, 2)
    assert f * f.dual(2) == kmeis.RationalFunc("1")
    assert str(kmeis.RationalFunc("1")) == "(1)/(1)"
    with pytest.raises(kmeis.PoleError):
        f(Fraction(1, 2))
    assert kmeis.rational_roots("1-4z^2") == [Fraction(-1, 2), Fraction(1, 2)]


def test_solve():
    sol = kmeis.solve([["1", "z"], ["0", "1-z"]], ["1", "1"])
    assert sol["rank"] == 2
    x, y = sol["x"]
    assert y == kmeis.RationalFunc("(1)/(1-z)")
    assert x + kmeis.RationalFunc.z() * y == kmeis.RationalFunc("1")


def test_roots():
    assert kmeis.reflect(1, 0, 1, m=3) == (3, 1)
    assert kmeis.act("12", 1, 0, m=3) == (8, 3)
    assert kmeis.inversion_set("12", m=4) == [(1, 0), (4, 1)]
    assert kmeis.delta_re_stream(1, 2, m=2) == [(0, -1), (-1, -2)]
    assert kmeis.haar_index_exponent(1, 3) == 6
    assert kmeis.check_inversion_containment("1212")


def test_tree():
    t = kmeis.Tree(2, 3, 1)
    assert len(t) == 22
    assert t.label(0) == (1, 0, 1)
    v = t.down(t.down(t.down(0)))
    assert t.height(v) == -3
    assert t.word(v) == "21"
    assert kmeis.verify_labels(t)["ok"]
    e = kmeis.eigen_check(kmeis.Tree(3, 4, 2))
    assert e["ok"] and e["checked"] > 0
    assert t.jsonl().count("\n") == 22


def test_eisenstein():
    E = kmeis.eisenstein_ray(2)
    assert E["c2"] == "(2-2z^2)/(1-4z^2)"
    assert E["normalization"] == "c1_unit"
    assert kmeis.eisenstein_values(2, 2, "1/4") == [Fraction(7, 2), Fraction(21, 4), Fraction(133, 8)]
    assert len(kmeis.eisenstein_values(2, 3)) == 4
    assert kmeis.functional_equation(3)
    P = kmeis.poles(2)
    assert P["poles"] == [Fraction(-1, 2), Fraction(1, 2)]
    assert P["denominator"] == "1-4z^2"
    assert kmeis.uniqueness_check(2, 12)


def test_oracle():
    r = kmeis.brute_eisenstein(2, 0, Fraction(1, 4), 8)
    assert r["tail_converges"]
    assert abs(r["value"] - Fraction(7, 2)) < Fraction(1, 100)
    c = kmeis.oracle_compare(2, "1/4", 8, vertices=3)
    assert len(c["rows"]) == 3
    assert c["max_deviation"] < Fraction(1, 100)
    assert kmeis.quotient_ray_check(2, 4, 4)["ok"]


def test_acceptance_criterion():
    r = kmeis.run_criterion(4)
    assert r["passed"], r["details"]
    with pytest.raises(IndexError):
        kmeis.run_criterion(0)
