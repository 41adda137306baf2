"""Phase-space linear algebra for zero-mean Gaussian states.

Covariance matrices use the vacuum-normalised convention (the vacuum is the
identity) and the interleaved quadrature ordering ``(q1, p1, ..., qN, pN)``.
With this convention a state is physical iff ``sigma + i*Omega >= 0``, which
puts every symplectic eigenvalue at or above one. The mean energy of the
harmonic Hamiltonian is ``Tr(sigma) / 4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError, InvalidStateError, NumericalError, ShapeError

__all__ = [
    "ORDERING",
    "Bipartition",
    "CovarianceMatrix",
    "SymplecticSpectrum",
    "ValidityReport",
    "as_array",
    "block_matrix",
    "direct_sum",
    "energy",
    "entropy_function",
    "is_pure",
    "mutual_information",
    "permute_modes",
    "purity",
    "reduce",
    "renyi2_entropy",
    "spectrum_array",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal",
    "two_mode_squeezed_vacuum",
    "vacuum",
    "validate",
    "von_neumann_entropy",
]

ORDERING = "interleaved"

SYMMETRY_TOL = 1e-10
UNCERTAINTY_TOL = 1e-8
CLAMP_TOL = 1e-8
PURITY_TOL = 1e-6
# below this, (nu - 1) log((nu - 1) / 2) is taken at its limit 0
_XLOGX_CUTOFF = 1e-12

_OMEGA1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return the ``2N x 2N`` symplectic form in interleaved ordering.

    Parameters
    ----------
    n_modes : int
        Number of bosonic modes, at least one.

    Returns
    -------
    ndarray
        ``diag(w, ..., w)`` with ``w = [[0, 1], [-1, 0]]``.
    """
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidArgumentError(f"n_modes must be a positive integer, got {n_modes!r}")
    return np.kron(np.eye(int(n_modes)), _OMEGA1)


def _as_square_even(data) -> np.ndarray:
    arr = np.array(data, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeError(f"covariance matrix must be square, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[0] % 2:
        raise ShapeError(f"covariance matrix must have even positive dimension, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise ShapeError("covariance matrix has non-finite entries")
    return arr


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of :func:`validate`.

    ``min_symplectic_eigenvalue`` is ``nan`` when the matrix is not positive
    definite, in which case it has no Williamson form.
    """

    valid: bool
    n_modes: int
    symmetry_defect: float
    min_uncertainty_eigenvalue: float
    min_symplectic_eigenvalue: float

    def __bool__(self) -> bool:
        return self.valid

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "n_modes": self.n_modes,
            "symmetry_defect": self.symmetry_defect,
            "min_uncertainty_eigenvalue": self.min_uncertainty_eigenvalue,
            "min_symplectic_eigenvalue": self.min_symplectic_eigenvalue,
        }


class CovarianceMatrix:
    """Covariance matrix of an N-mode Gaussian state with zero displacement.

    The input is symmetrised on construction and stored read-only. The
    asymmetry of the raw input is kept as ``symmetry_defect``.

    Parameters
    ----------
    data : array_like
        ``2N x 2N`` real matrix in interleaved ordering.
    check : bool, optional
        Raise :class:`InvalidStateError` unless the matrix passes
        :func:`validate`. Disable it to wrap matrices you intend to diagnose.
    """

    __slots__ = ("_data", "n_modes", "symmetry_defect")

    ordering = ORDERING

    def __init__(self, data, *, check: bool = True):
        arr = _as_square_even(data)
        defect = float(np.max(np.abs(arr - arr.T)))
        arr = 0.5 * (arr + arr.T)
        arr.setflags(write=False)
        self._data = arr
        self.n_modes = arr.shape[0] // 2
        self.symmetry_defect = defect
        if check:
            report = validate(self)
            if not report.valid:
                raise InvalidStateError(f"not a physical covariance matrix: {report}", report)

    @property
    def data(self) -> np.ndarray:
        return self._data

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._data
        return self._data.astype(dtype)

    def __repr__(self) -> str:
        return f"CovarianceMatrix(n_modes={self.n_modes})"


def as_array(cm) -> np.ndarray:
    """The matrix of a :class:`CovarianceMatrix`, or a checked array."""
    if isinstance(cm, CovarianceMatrix):
        return cm.data
    return _as_square_even(cm)


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues of a covariance matrix, descending."""

    values: tuple

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype if dtype is not None else float)

    def excess(self) -> float:
        """Sum of ``nu - 1`` over the spectrum."""
        return float(sum(v - 1.0 for v in self.values))


def _raw_spectrum(sigma: np.ndarray) -> np.ndarray:
    # eigenvalues of Omega @ sigma come in pairs +-i*nu; adjacent entries of the
    # sorted moduli are partners, so averaging each pair dedupes them.
    n = sigma.shape[0] // 2
    try:
        ev = np.linalg.eigvals(symplectic_form(n) @ sigma)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigensolver failed on {sigma.shape} matrix (condition number {np.linalg.cond(sigma):.3e})"
        ) from exc
    moduli = np.sort(np.abs(ev.imag))[::-1]
    return 0.5 * (moduli[0::2] + moduli[1::2])


def spectrum_array(cm) -> np.ndarray:
    """Clamped spectrum as a bare array; see :func:`symplectic_eigenvalues`."""
    nu = _raw_spectrum(cm.data if isinstance(cm, CovarianceMatrix) else np.asarray(cm, dtype=float))
    if nu.size and nu[-1] < 1.0 - CLAMP_TOL:
        raise InvalidStateError(
            f"symplectic eigenvalue {nu[-1]:.12g} below 1: uncertainty relation violated"
        )
    return np.maximum(nu, 1.0)


def validate(cm) -> ValidityReport:
    """Check the bona fide conditions on a covariance matrix.

    Parameters
    ----------
    cm : CovarianceMatrix or array_like
        Candidate matrix. Arrays are checked before symmetrisation.

    Returns
    -------
    ValidityReport
        Valid iff the input is symmetric to 1e-10, every eigenvalue of
        ``sigma + i*Omega`` is at least -1e-8, and every symplectic eigenvalue
        is at least ``1 - 1e-8``.
    """
    if isinstance(cm, CovarianceMatrix):
        sigma, defect = cm.data, cm.symmetry_defect
    else:
        raw = _as_square_even(cm)
        defect = float(np.max(np.abs(raw - raw.T)))
        sigma = 0.5 * (raw + raw.T)
    n = sigma.shape[0] // 2
    min_unc = float(np.linalg.eigvalsh(sigma + 1j * symplectic_form(n)).min())
    if np.linalg.eigvalsh(sigma).min() > 0:
        min_nu = float(_raw_spectrum(sigma).min())
    else:
        min_nu = float("nan")
    valid = (
        defect <= SYMMETRY_TOL
        and min_unc >= -UNCERTAINTY_TOL
        and min_nu >= 1.0 - CLAMP_TOL  # False for nan
    )
    return ValidityReport(bool(valid), n, defect, min_unc, min_nu)


def symplectic_eigenvalues(cm) -> SymplecticSpectrum:
    """Symplectic spectrum ``nu_1 >= ... >= nu_N >= 1`` of a valid matrix.

    Values within 1e-8 below one are clamped to one; anything lower raises
    :class:`InvalidStateError`.
    """
    return SymplecticSpectrum(tuple(float(v) for v in spectrum_array(as_array(cm))))


def _mode_indices(modes: Iterable[int], n_modes: int) -> np.ndarray:
    raw = [int(m) for m in modes]
    modes = sorted(set(raw))
    if len(modes) != len(raw):
        raise InvalidArgumentError(f"mode indices {raw} contain repeats")
    if not modes:
        raise InvalidArgumentError("mode set must be nonempty")
    if modes[0] < 0 or modes[-1] >= n_modes:
        raise InvalidArgumentError(f"mode indices {modes} out of range for {n_modes} modes")
    idx = np.empty(2 * len(modes), dtype=int)
    idx[0::2] = [2 * m for m in modes]
    idx[1::2] = [2 * m + 1 for m in modes]
    return idx


def reduce(cm: CovarianceMatrix, modes: Iterable[int]) -> CovarianceMatrix:
    """Covariance matrix of the marginal state on ``modes``.

    The principal submatrix on rows and columns ``(2j, 2j+1)`` for every
    selected mode, in increasing mode order.
    """
    sigma = as_array(cm)
    idx = _mode_indices(modes, sigma.shape[0] // 2)
    return CovarianceMatrix(sigma[np.ix_(idx, idx)], check=False)


def block_matrix(sigma: np.ndarray, modes: Sequence[int]) -> np.ndarray:
    """Array-level :func:`reduce` without the wrapper; ``modes`` must be valid."""
    idx = np.empty(2 * len(modes), dtype=int)
    idx[0::2] = [2 * m for m in modes]
    idx[1::2] = [2 * m + 1 for m in modes]
    return sigma[np.ix_(idx, idx)]


def energy(cm) -> float:
    """Mean energy ``Tr(sigma) / 4`` of the harmonic Hamiltonian."""
    return 0.25 * float(np.trace(as_array(cm)))


def purity(cm) -> float:
    """``Tr(rho^2) = 1 / sqrt(det sigma)``."""
    det = float(np.linalg.det(as_array(cm)))
    if not det > 0:
        raise NumericalError(f"covariance matrix has non-positive determinant {det:.6g}")
    return 1.0 / np.sqrt(det)


def is_pure(cm, tol: float = PURITY_TOL) -> bool:
    """True when ``|det sigma - 1| <= tol``."""
    return abs(float(np.linalg.det(as_array(cm))) - 1.0) <= tol


def renyi2_entropy(cm) -> float:
    """Renyi-2 entropy ``sum_j log nu_j`` (natural log)."""
    return float(np.sum(np.log(spectrum_array(as_array(cm)))))


def entropy_function(nu):
    """Von Neumann entropy of a single-mode thermal state with eigenvalue ``nu``.

    ``f(nu) = (nu+1)/2 log((nu+1)/2) - (nu-1)/2 log((nu-1)/2)`` with
    ``f(1) = 0``. Vectorised over ``nu``.
    """
    nu = np.asarray(nu, dtype=float)
    plus = 0.5 * (nu + 1.0)
    minus = 0.5 * (nu - 1.0)
    small = (nu - 1.0) < _XLOGX_CUTOFF
    safe_minus = np.where(small, 1.0, minus)
    out = plus * np.log(plus) - np.where(small, 0.0, minus * np.log(safe_minus))
    return out if out.ndim else float(out)


def von_neumann_entropy(cm) -> float:
    """``sum_j f(nu_j)``; see :func:`entropy_function`."""
    return float(np.sum(entropy_function(spectrum_array(as_array(cm)))))


@dataclass(frozen=True)
class Bipartition:
    """Split of the modes ``0..N-1`` into two nonempty complementary blocks."""

    block_a: tuple
    block_b: tuple

    def __post_init__(self):
        a = tuple(sorted(set(self.block_a)))
        b = tuple(sorted(set(self.block_b)))
        object.__setattr__(self, "block_a", a)
        object.__setattr__(self, "block_b", b)
        if not a or not b:
            raise InvalidArgumentError("both blocks of a bipartition must be nonempty")
        if set(a) & set(b):
            raise InvalidArgumentError(f"blocks {a} and {b} overlap")
        if sorted(a + b) != list(range(len(a) + len(b))):
            raise InvalidArgumentError(f"blocks {a} | {b} do not cover 0..{len(a) + len(b) - 1}")

    @classmethod
    def of(cls, block: Iterable[int], n_modes: int) -> "Bipartition":
        """Bipartition ``block | complement`` of ``n_modes`` modes."""
        a = set(int(m) for m in block)
        if any(m < 0 or m >= n_modes for m in a):
            raise InvalidArgumentError(f"mode indices {sorted(a)} out of range for {n_modes} modes")
        return cls(tuple(a), tuple(m for m in range(n_modes) if m not in a))

    @property
    def n_modes(self) -> int:
        return len(self.block_a) + len(self.block_b)

    @property
    def smaller(self) -> tuple:
        """The block with fewer modes (``block_a`` on ties)."""
        return self.block_a if len(self.block_a) <= len(self.block_b) else self.block_b

    def __str__(self) -> str:
        return ",".join(map(str, self.block_a)) + "|" + ",".join(map(str, self.block_b))


def mutual_information(cm, bp: Bipartition) -> float:
    """``S(A) + S(B) - S(AB)`` with von Neumann entropies."""
    sigma = as_array(cm)
    if bp.n_modes != sigma.shape[0] // 2:
        raise InvalidArgumentError(f"bipartition of {bp.n_modes} modes applied to {sigma.shape[0] // 2}-mode state")
    s_a = von_neumann_entropy(block_matrix(sigma, bp.block_a))
    s_b = von_neumann_entropy(block_matrix(sigma, bp.block_b))
    return s_a + s_b - von_neumann_entropy(sigma)


# -- constructors -------------------------------------------------------------


def vacuum(n_modes: int) -> CovarianceMatrix:
    return CovarianceMatrix(np.eye(2 * int(n_modes)), check=False)


def thermal(nus: Sequence[float]) -> CovarianceMatrix:
    """Product of thermal states with symplectic eigenvalues ``nus``."""
    nus = np.atleast_1d(np.asarray(nus, dtype=float))
    return CovarianceMatrix(np.diag(np.repeat(nus, 2)))


def two_mode_squeezed_vacuum(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with squeezing ``r`` (marginals ``cosh 2r``)."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return CovarianceMatrix(
        np.array(
            [
                [c, 0.0, s, 0.0],
                [0.0, c, 0.0, -s],
                [s, 0.0, c, 0.0],
                [0.0, -s, 0.0, c],
            ]
        ),
        check=False,
    )


def direct_sum(*cms) -> CovarianceMatrix:
    """Covariance matrix of the tensor product; modes are concatenated in order."""
    mats = [as_array(cm) for cm in cms]
    size = sum(m.shape[0] for m in mats)
    out = np.zeros((size, size))
    pos = 0
    for m in mats:
        k = m.shape[0]
        out[pos : pos + k, pos : pos + k] = m
        pos += k
    return CovarianceMatrix(out, check=False)


def permute_modes(cm, order: Sequence[int]) -> CovarianceMatrix:
    """Relabel modes so that new mode ``i`` is old mode ``order[i]``."""
    sigma = as_array(cm)
    n = sigma.shape[0] // 2
    if sorted(order) != list(range(n)):
        raise InvalidArgumentError(f"{list(order)} is not a permutation of 0..{n - 1}")
    return CovarianceMatrix(block_matrix(sigma, list(order)), check=False)
