"""t-core partition counts and empirical congruence verification.

The heavy lifting lives in the native module ``tcore._core``; this package
gives it a dict-returning face.  Coefficients come back as Python ints of
arbitrary size, structured results as plain dicts parsed from the same
canonical JSON the command line tool prints.
"""

import json as _json

from tcore._core import (
    BudgetError,
    HypothesisError,
    __version__,
    a2_closed,
    atn,
    atn_range,
    c_closed,
    expand,
    kronecker,
    series_values,
)
from tcore import _core as _core


def verify(family, primes=(), j=0, k=0, r=0, n_max=200, arg_cap=0, budget=0):
    """Sweep one congruence family and return its report as a dict.

    ``family`` is a catalog id such as ``"Das"`` or ``"Thm1ii"`` (case
    insensitive).  ``budget`` caps the largest coefficient index a sweep may
    demand; 0 keeps the defaults (200000 modular, 50000 exact).  Raises
    ``HypothesisError`` for parameters outside the family's hypotheses and
    ``BudgetError`` when a sweep cannot fit.
    """
    text = _core.verify_json(
        family, list(primes), j, k, r, n_max, arg_cap, budget
    )
    return _json.loads(text)


def verify_suite(threads=1, budget=0):
    """Run the full default suite; returns the whole report document."""
    return _json.loads(_core.suite_json(threads, budget))


def eta_check(level, exponents):
    """Admissibility report for ``prod eta(delta z)^r``.

    ``exponents`` maps delta to its exponent r; every delta must divide the
    level.
    """
    return _json.loads(_core.eta_json(level, dict(exponents)))


def hecke_eigen(p, series="b", t=0, length=4097):
    """Check whether T_p fixes the series up to its coefficient at p."""
    return _json.loads(_core.hecke_eigen_json(p, series, t, length))


def hecke_apply(p, series="b", t=0, weight=0, length=1025, mod=0):
    """Coefficients of T_p applied to a named series."""
    return _core.hecke_apply(p, series, t, weight, length, mod)


__all__ = [
    "BudgetError",
    "HypothesisError",
    "__version__",
    "a2_closed",
    "atn",
    "atn_range",
    "c_closed",
    "eta_check",
    "expand",
    "hecke_apply",
    "hecke_eigen",
    "kronecker",
    "series_values",
    "verify",
    "verify_suite",
]
