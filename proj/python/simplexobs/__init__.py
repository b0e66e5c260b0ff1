"""Python front-end to the simplexobs C++ toolkit.

Reports come back from the extension as JSON text and are decoded here.
"""

import json

from . import _core
from ._core import (
    CompositionError,
    DimensionError,
    InputError,
    InternalError,
    ResolutionError,
    SizeLimitError,
    ValidationError,
    compose,
    enumerate_sn,
    inverse,
    orbit_partition,
)

__version__ = _core.__version__

__all__ = [
    "CompositionError",
    "DimensionError",
    "InputError",
    "InternalError",
    "ResolutionError",
    "SizeLimitError",
    "ValidationError",
    "build",
    "compose",
    "counterexample",
    "enumerate_sn",
    "inverse",
    "orbit_partition",
    "rank",
    "solve",
    "solve_dense",
    "system_summary",
    "verify_paths",
]


def _cols(rows, cols):
    if cols is None:
        if not rows:
            raise ValueError("cols is required for an empty matrix")
        cols = len(rows[0])
    return cols


def system_summary(n=4):
    """Sizes, right-hand side D and defect numerators (over 2) of M x = D."""
    return json.loads(_core.system_summary(n))


def rank(rows, cols=None, field="rational", p=None):
    """Rank of a dense integer matrix over gf2, gfp or the rationals."""
    return _core.rank(rows, _cols(rows, cols), field, p)


def solve_dense(rows, rhs, cols=None, field="rational", p=None):
    """Solve a dense integer system; witness entries are exact fraction strings."""
    return json.loads(_core.solve_dense(rows, _cols(rows, cols), rhs, field, p))


def build(n=4, out="."):
    return json.loads(_core.cmd_build(n, str(out)))


def solve(n=4, field="gf2", p=None):
    return json.loads(_core.cmd_solve(n, field, p))


def verify_paths(n=4, faces=50, samples=1024, seed=1, tol=1e-6, trials=1, base_targets=False):
    return json.loads(
        _core.cmd_verify_paths(n, faces, samples, seed, tol, trials, base_targets)
    )


def counterexample(grid_depth=4):
    return json.loads(_core.cmd_counterexample(grid_depth))
