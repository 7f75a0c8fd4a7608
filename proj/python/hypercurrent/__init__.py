"""Exact computations in hyperalgebras of multicurrent and multiloop algebras.

Scalars are exact: field=0 means Q, otherwise a prime p. Point coordinates may
be ints or strings like "3/2".
"""

import json

from . import _core
from ._core import HyperError, Module, module_from_json, weyl_character

__all__ = [
    "HyperError",
    "Module",
    "evaluation_module",
    "garland",
    "lambda_expand",
    "loop_weyl_module",
    "module_from_json",
    "straighten",
    "suite",
    "weyl_character",
    "weyl_module",
]


def _coords(point):
    return [str(x) for x in point]


def straighten(expr, type="A1", n=1, context="loop", field=0):
    """Normal form of an expression; returns {"normal_form", "element"}."""
    return json.loads(_core.straighten(expr, type, n, context, field))


def lambda_expand(i, mono, r, type="A1", n=1, context="loop", field=0):
    """Lambda_{i,mono,r} in the divided-power basis, as text."""
    return _core.lambda_expand(i, mono, r, type, n, context, field)


def garland(root, r, s, a, b, type="A1", n=1, context="loop"):
    return json.loads(_core.garland(root, r, s, a, b, type, n, context))


def suite(name, seed=0, size=6):
    """Run "power_reduce", "garland" or "integrality"; returns the report dict."""
    return json.loads(_core.suite(name, seed, size))


def weyl_module(type, lam, variant="finite", n=1, field=0):
    return _core.weyl_module(type, list(lam), variant, n, field)


def loop_weyl_module(type, factors, field=0):
    """factors: iterable of (weight, point) pairs; all points share one length n."""
    factors = [(list(w), _coords(a)) for w, a in factors]
    if not factors:
        raise HyperError("InvalidArgument", "need at least one factor")
    return _core.loop_weyl_module(type, len(factors[0][1]), factors, field)


def evaluation_module(type, lam, point, field=0, irreducible=False):
    return _core.evaluation_module(type, list(lam), _coords(point), field, irreducible)
