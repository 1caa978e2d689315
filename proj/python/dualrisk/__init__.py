"""Dual-theory lottery evaluation, dominance and risk apportionment.

Lotteries are sequences of (outcome, probability) pairs. Anything that
fractions.Fraction accepts works as a number; exact results come back as
Fraction, results of transcendental weighting functions as float.
"""

from fractions import Fraction

from . import _core
from ._core import DualRiskError, finite_difference_sign

__all__ = [
    "DualRiskError",
    "build_menu",
    "dt_value",
    "dual_moment",
    "dual_sd_check",
    "eu_value",
    "finite_difference_sign",
    "make_general_pair",
    "make_parsimonious_pair",
    "mean",
    "repro_tables",
    "preference_direction",
    "primal_moment",
    "primal_sd_check",
    "random_general_pair",
    "replay",
    "self_protection",
    "verify_theorem",
]


def _q(x):
    return str(Fraction(x))


def _states(lottery):
    return [(_q(x), _q(p)) for x, p in lottery]


def _num(v):
    return Fraction(v) if isinstance(v, str) else v


def _pair(d):
    d = dict(d)
    d["C"] = [Fraction(x) for x in d["C"]]
    d["D"] = [Fraction(x) for x in d["D"]]
    return d


def dt_value(lottery, weighting):
    return _num(_core.dt_value(_states(lottery), weighting))


def mean(lottery):
    return Fraction(_core.mean(_states(lottery)))


def dual_moment(lottery, m):
    return Fraction(_core.dual_moment(_states(lottery), m))


def primal_moment(lottery, k):
    return Fraction(_core.primal_moment(_states(lottery), k))


def eu_value(lottery, utility):
    return Fraction(_core.eu_value(_states(lottery), utility))


def dual_sd_check(a, b, degree):
    """Does b dual-dominate a at the given degree?"""
    return _core.dual_sd_check(_states(a), _states(b), degree)


def primal_sd_check(a, b, degree, ekern=False):
    return _core.primal_sd_check(_states(a), _states(b), degree, ekern)


def make_general_pair(base, order, M, positions=(0, 1, 0, 1)):
    return _pair(_core.make_general_pair([_q(x) for x in base], order, _q(M), list(positions)))


def make_parsimonious_pair(base, position, order, M):
    return _pair(_core.make_parsimonious_pair([_q(x) for x in base], position, order, _q(M)))


def random_general_pair(seed, order):
    return _pair(_core.random_general_pair(seed, order))


def replay(provenance):
    return _pair(_core.replay(provenance))


def preference_direction(provenance, weighting):
    sign, premium = _core.preference_direction(provenance, weighting)
    return sign, _num(premium)


def verify_theorem(theorem, trials=100, seed=42, order=None, weighting=None):
    return _core.verify_theorem(theorem, trials, seed, order, weighting)


def build_menu(order, stock):
    d = dict(_core.build_menu(order, [_q(x) for x in stock]))
    d["premium"] = Fraction(d["premium"])
    d["portfolio"] = [Fraction(x) for x in d["portfolio"]]
    return d


def self_protection(config):
    """Solve a self-protection problem given as key = value text."""
    return _core.self_protection(config)


def repro_tables():
    return _core.repro_tables()
