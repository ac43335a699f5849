"""Exact checks of binomial-sum, constant-term and recurrence identities."""

from fractions import Fraction
from pathlib import Path

from . import _core
from ._core import CorpusError, EvalError, ParseError, free_vars, recurrence, render, sum_depth

__all__ = [
    "CorpusError",
    "EvalError",
    "ParseError",
    "check_recurrence",
    "ct_sequence",
    "default_corpus",
    "evaluate",
    "free_vars",
    "harmonic_coefficients",
    "recurrence",
    "render",
    "sum_depth",
    "verify",
]


def _exact(s):
    q = Fraction(s)
    return q.numerator if q.denominator == 1 else q


def evaluate(expr, n_max=10, n_min=0, skip_singular=False):
    """Values of expr at n = n_min..n_max as ints or Fractions."""
    return [_exact(v) for v in _core.evaluate(expr, n_max, n_min, skip_singular)]


def ct_sequence(poly, mult, n_max=4, prune=True):
    """Constant terms of poly**(mult*n) for n = 0..n_max."""
    return [int(v) for v in _core.ct_sequence(poly, mult, n_max, prune)]


def harmonic_coefficients(b, c, n_max=20):
    return [_exact(v) for v in _core.harmonic_coefficients(b, c, n_max)]


def check_recurrence(op, b, c, n_max=20, twist="auto"):
    rep = _core.check_recurrence(op, b, c, n_max, twist)
    for side in ("plus", "minus"):
        if rep[side] and rep[side]["residual"] is not None:
            rep[side]["residual"] = _exact(rep[side]["residual"])
    return rep


def default_corpus():
    """The installed corpus, or the source tree's for an editable install."""
    here = Path(__file__).resolve()
    for p in (here.with_name("paper.cyid"), here.parents[2] / "corpus" / "paper.cyid"):
        if p.exists():
            return p
    return None


def verify(corpus=None, items=(), kinds=(), jobs=1):
    """Run the harness. Returns a dict with results, exit_code and tsv."""
    path = corpus if corpus is not None else default_corpus()
    if path is None:
        raise FileNotFoundError("no corpus given and none installed")
    return _core.verify(str(path), list(items), list(kinds), jobs)
