"""Numerical thresholds shared by every module.

The defaults can be overridden once at start-up, either through the
``CONETOOL_TOL`` environment variable or by calling :func:`configure`.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # absolute tolerance on unit-scale quantities
    tol: float = 1e-9
    # x is interior iff lambda_min(x) > interior_rel * max(1, Lambda(x))
    interior_rel: float = 1e-12
    # eigenvalues above support_rel * Lambda(x) count towards the support
    support_rel: float = 1e-10
    # spin factor: |v| below this (relative to |t|) is treated as zero
    degeneracy_rel: float = 1e-12


def _from_env() -> Tolerances:
    raw = os.environ.get("CONETOOL_TOL")
    if raw is None or not raw.strip():
        return Tolerances()
    value = float(raw)
    if not value > 0:
        raise ValueError(f"CONETOOL_TOL must be positive, got {raw!r}")
    return Tolerances(tol=value)


_current = _from_env()


def get() -> Tolerances:
    return _current


def configure(**overrides) -> Tolerances:
    """Replace selected thresholds, returning the new configuration."""
    global _current
    _current = dataclasses.replace(_current, **overrides)
    return _current
