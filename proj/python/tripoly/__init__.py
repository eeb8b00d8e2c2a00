"""Vertex-number distribution of the typical cell in a Poisson line
tessellation with three equally spread directions."""

import json
from fractions import Fraction

from . import _core
from ._core import (
    AccuracyError,
    EmptySampleError,
    SamplerStallError,
    ValidationError,
    case_ids,
    run_cli,
    verify_extrema,
)

__version__ = _core.__version__


def _weight(x):
    # Fractions route to the exact path; floats keep their shortest repr.
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x if isinstance(x, str) else repr(float(x))


def _decode(value):
    if isinstance(value, str) and value.lstrip("-").replace("/", "", 1).isdigit():
        return Fraction(value)
    return value


def formula(p, q):
    """Closed-form report. Exact inputs ("1/3" or Fraction) give Fraction values."""
    raw = json.loads(_core.formula_json(_weight(p), _weight(q)))
    out = {k: _decode(v) for k, v in raw.items() if k != "pmf"}
    out["pmf"] = {int(n): _decode(v) for n, v in raw["pmf"].items()}
    return out


def pmf(p, q):
    return tuple(_core.pmf(_weight(p), _weight(q)))


def lambda_of(family, p, q):
    return _core.lambda_of(family, _weight(p), _weight(q))


def lambda_total(p, q):
    return _core.lambda_total(_weight(p), _weight(q))


def integrate_case(case_id, p, q):
    return _core.integrate_case(case_id, _weight(p), _weight(q))


def pmf_by_quadrature(p, q):
    return json.loads(_core.quadrature_json(_weight(p), _weight(q)))


def estimate_pmf(p, q, R=60.0, inner_frac=0.25, replicates=1, min_cells=0, seed=None, threads=0):
    kwargs = {} if seed is None else {"seed": seed}
    return json.loads(
        _core.simulate_json(_weight(p), _weight(q), R, inner_frac, replicates, min_cells, threads=threads, **kwargs)
    )


def sample_typical_cell(p, q, seed=None):
    return _core.sample_cell(_weight(p), _weight(q)) if seed is None else _core.sample_cell(_weight(p), _weight(q), seed)


__all__ = [
    "AccuracyError",
    "EmptySampleError",
    "SamplerStallError",
    "ValidationError",
    "case_ids",
    "estimate_pmf",
    "formula",
    "integrate_case",
    "lambda_of",
    "lambda_total",
    "pmf",
    "pmf_by_quadrature",
    "run_cli",
    "sample_typical_cell",
    "verify_extrema",
]
