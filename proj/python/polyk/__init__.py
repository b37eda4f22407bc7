"""Exact face lattices, cellular complexes and K-theory reports for rational polytopes."""

import json

from ._core import (
    ComplexError,
    GeometryError,
    InputError,
    PolytopeError,
    __version__,
    boundary_matrices,
    compare,
    f_vector,
    homology,
    report_file,
    report_json,
    validate,
)


def report(vertices, dim, name="polytope"):
    """Full report as a dict."""
    return json.loads(report_json(vertices, dim, name))


__all__ = [
    "ComplexError",
    "GeometryError",
    "InputError",
    "PolytopeError",
    "__version__",
    "boundary_matrices",
    "compare",
    "f_vector",
    "homology",
    "report",
    "report_file",
    "report_json",
    "validate",
]
