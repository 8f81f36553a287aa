"""Bernstein and corrected Bernstein approximation on the unit cube."""

import json

from ._core import (
    Bernstein,
    ContractViolation,
    Delta_n,
    abs_moment_scaled,
    approximate,
    binomial,
    builtin_names,
    central_moment_coeffs,
    delta_n,
)
from . import _core

__all__ = [
    "Bernstein",
    "ContractViolation",
    "Delta_n",
    "abs_moment_scaled",
    "approximate",
    "binomial",
    "builtin_names",
    "central_moment_coeffs",
    "delta_n",
    "lemma_check",
    "positivity",
    "verify",
]


def verify(func, d=1, r=0, degrees=(8, 16, 32, 64), constant=None, seed=1, params=None):
    """Error-bound sweep; returns the report as a dict."""
    return json.loads(_core._verify_json(func, d, r, list(degrees), constant, seed, params or {}))


def positivity(func, r=2, n_max=200, d=1, exact=True, params=None):
    """Scan n = 1..n_max for nonnegative coefficients; returns the report as a dict."""
    return json.loads(_core._positivity_json(func, d, r, n_max, exact, params or {}))


def lemma_check(n_max=200, s_max=8, grid=201):
    """Moment-bound scan; returns the report as a dict."""
    return json.loads(_core._lemma_json(n_max, s_max, grid))
