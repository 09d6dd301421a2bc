"""Genus-one WDVV prepotentials on Hurwitz spaces."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import WdvvError, _run_suite_json, validate_point as _validate_point

__all__ = [name for name in dir() if not name.startswith("_")] + ["run_suite", "validate"]


def run_suite(name, seed=7, profile=None, tol=None):
    """Run one invariant suite; returns a list of entry dicts."""
    return _json.loads(_run_suite_json(name, seed, profile, tol))


def validate(point):
    """Checks on a Hurwitz point as a list of entry dicts."""
    return _json.loads(_validate_point(point))
