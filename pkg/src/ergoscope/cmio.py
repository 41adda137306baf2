"""JSON documents for covariance matrices.

The format is ``{"n_modes": N, "ordering": "qpqp", "matrix": [[...], ...]}``
with rows in interleaved quadrature order. Writers emit 17 significant digits
so a round trip is exact.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import CovarianceParseError
from .symplectic import CovarianceMatrix, as_array

__all__ = ["cm_from_dict", "cm_to_dict", "dumps", "load", "loads", "dump"]

ORDERING_TAG = "qpqp"
_ACCEPTED_ORDERINGS = {"qpqp", "interleaved"}
_DISPLACEMENT_KEYS = {"displacement", "displacements", "means", "mean", "d"}


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def cm_to_dict(cm) -> dict:
    sigma = as_array(cm)
    return {"n_modes": sigma.shape[0] // 2, "ordering": ORDERING_TAG, "matrix": sigma.tolist()}


def dumps(cm) -> str:
    """Serialise one covariance matrix on a single line."""
    sigma = as_array(cm)
    rows = ", ".join("[" + ", ".join(_fmt(v) for v in row) + "]" for row in sigma)
    return '{"n_modes": %d, "ordering": "%s", "matrix": [%s]}' % (sigma.shape[0] // 2, ORDERING_TAG, rows)


def dump(cm, path) -> None:
    Path(path).write_text(dumps(cm) + "\n")


def cm_from_dict(doc, *, check: bool = True) -> CovarianceMatrix:
    """Build a :class:`CovarianceMatrix` from a parsed document.

    Raises
    ------
    CovarianceParseError
        When the document is malformed or carries displacements.
    InvalidStateError
        When ``check`` is set and the matrix is not physical.
    """
    if not isinstance(doc, dict):
        raise CovarianceParseError("covariance document must be a JSON object")
    if _DISPLACEMENT_KEYS & set(doc):
        raise CovarianceParseError("displacements are not supported; states must be zero-mean")
    for key in ("n_modes", "matrix"):
        if key not in doc:
            raise CovarianceParseError(f"missing key {key!r}")
    ordering = doc.get("ordering", ORDERING_TAG)
    if ordering not in _ACCEPTED_ORDERINGS:
        raise CovarianceParseError(f"unsupported quadrature ordering {ordering!r}; expected 'qpqp'")
    n = doc["n_modes"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise CovarianceParseError(f"n_modes must be a positive integer, got {n!r}")
    rows = doc["matrix"]
    if (
        not isinstance(rows, list)
        or len(rows) != 2 * n
        or any(not isinstance(r, list) or len(r) != 2 * n for r in rows)
    ):
        raise CovarianceParseError(f"matrix must be {2 * n} x {2 * n} for n_modes = {n}")
    try:
        values = [[float(v) for v in r] for r in rows]
    except (TypeError, ValueError):
        raise CovarianceParseError("matrix entries must be numbers") from None
    if any(isinstance(v, bool) for r in rows for v in r):
        raise CovarianceParseError("matrix entries must be numbers")
    return CovarianceMatrix(values, check=check)


def loads(text: str, *, check: bool = True) -> CovarianceMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CovarianceParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    return cm_from_dict(doc, check=check)


def load(path, *, check: bool = True) -> CovarianceMatrix:
    return loads(Path(path).read_text(), check=check)
