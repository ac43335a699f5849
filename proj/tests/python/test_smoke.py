from fractions import Fraction

import pytest

import cyid


def test_evaluate_sum():
    assert cyid.evaluate("sum(k=0..n, binom(n,k)^5)", 5) == [1, 2, 34, 488, 9826, 206252]


def test_evaluate_rationals_and_range():
    assert cyid.evaluate("1/n", 3, n_min=1) == [1, Fraction(1, 2), Fraction(1, 3)]
    assert cyid.evaluate("binom(-1/6, 2)", 0) == [Fraction(7, 72)]


def test_skip_singular():
    with pytest.raises(cyid.EvalError, match="n=2"):
        cyid.evaluate("sum(k=0..n, 1/(k-2))", 3)
    assert cyid.evaluate("sum(k=0..n, 1/(k-2))", 3, skip_singular=True)[3] == Fraction(-1, 2)


def test_parse_error_is_value_error():
    with pytest.raises(cyid.ParseError):
        cyid.render("binom(n")
    assert issubclass(cyid.ParseError, ValueError)


def test_render_round_trip():
    text = cyid.render("sum(k=0..n,binom(n,k)^2*(-1)^(n+k))")
    assert text == "sum(k=0..n, binom(n, k)^2 * (-1)^(n + k))"
    assert cyid.render(text) == text
    assert cyid.free_vars("binom(n,k)") == "kn"
    assert cyid.sum_depth("sumc(i+j+k = n, 1)") == 2


def test_constant_terms():
    assert cyid.ct_sequence("x+y+z+t+1/(x*y*z*t)", 5, 3) == [1, 120, 113400, 168168000]
    assert cyid.ct_sequence("x+y+z+t+1/x+1/y+1/z+1/t", 2, 3, prune=False) == [1, 8, 168, 5120]


def test_recurrence_twists():
    assert cyid.harmonic_coefficients(1, 5, 3) == [1, -5, 73, -1445]
    op = "T^3 - z*(2*T+1)*(13*T^2+13*T+4) - 3*z^2*(T+1)*(3*T+2)*(3*T+4)"
    rep = cyid.check_recurrence(op, 2, 4)
    assert rep["held"] == -1 and rep["exactly_one"]
    bad = cyid.check_recurrence("T^2 - 3*z^2*(3*T+2)*(3*T+4)", 2, 3)
    assert bad["held"] == 0
    assert bad["plus"]["first_failure"] == 2
    assert cyid.recurrence("T - 2*z*(2*T+1)") == "(m)*A(m) + (-4*m + 2)*A(m-1) = 0"


def test_verify_item():
    rep = cyid.verify(items=["15"])
    assert rep["exit_code"] == 0
    verdicts = {r["label"]: r["verdict"] for r in rep["results"]}
    assert verdicts["m1"] == "agree"
    assert verdicts["m3"] == "mismatch"
    assert rep["tsv"].startswith("item\tlabel")


def test_verify_fixture(tmp_path):
    p = tmp_path / "x.cyid"
    p.write_text("item x\nmember m1 :: binom(2 * n, n)\nmember m2 :: binom(2 * n, n) + n\n")
    rep = cyid.verify(p)
    assert rep["exit_code"] == 1
    assert rep["results"][1]["first_n"] == 1
    p.write_text("item x\nmember m1 :: binom(n\n")
    with pytest.raises(cyid.CorpusError):
        cyid.verify(p)
