"""Gaussian ergotropy and the ergotropic gaps and scores built from it.

Ergotropies are evaluated through Williamson spectra: the passive state
reachable by global Gaussian unitaries has covariance
``diag(mu_1, mu_1, ..., mu_N, mu_N)``, and the one reachable by unitaries
local to the blocks of a partition keeps every block's symplectic spectrum.
The gap between the two is half the excess of the block spectra over the
global one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import BudgetExceededError, InvalidArgumentError, UnsupportedStateError
from .partitions import ModePartition, enumerate_k_partitions, stirling2
from .symplectic import (
    Bipartition,
    PURITY_TOL,
    SymplecticSpectrum,
    as_array,
    spectrum_array,
    block_matrix,
)

__all__ = [
    "DEFAULT_BUDGET",
    "GapResult",
    "ScoreResult",
    "global_ergotropy",
    "k_ergotropic_score",
    "k_local_gap",
    "minimum_gap",
    "two_local_gap",
]

DEFAULT_BUDGET = 10**6
TIE_TOL = 1e-12


@dataclass(frozen=True)
class GapResult:
    """A k-local ergotropic gap together with the spectra it was built from."""

    value: float
    partition: ModePartition
    per_block_spectra: tuple
    global_spectrum: SymplecticSpectrum

    def recompute(self) -> float:
        """Gap from the stored spectra, ``(sum of block nus - sum of mus) / 2``."""
        blocks = sum(sum(s) for s in self.per_block_spectra)
        return 0.5 * (blocks - sum(self.global_spectrum))


@dataclass(frozen=True)
class ScoreResult:
    """Minimum gap over a family of partitions and the first partition reaching it."""

    score: float
    argmin_partition: ModePartition
    n_partitions_searched: int


def _require_pure(sigma: np.ndarray, what: str) -> None:
    det = float(np.linalg.det(sigma))
    if abs(det - 1.0) > PURITY_TOL:
        raise UnsupportedStateError(f"{what} is defined for pure states only (det sigma = {det:.9g})")


def _check_cover(sigma: np.ndarray, n_modes: int) -> None:
    if n_modes != sigma.shape[0] // 2:
        raise InvalidArgumentError(
            f"partition covers {n_modes} modes but the state has {sigma.shape[0] // 2}"
        )


def global_ergotropy(cm) -> float:
    """Work extractable by global Gaussian unitaries, ``(Tr sigma - 2 sum mu) / 4``."""
    sigma = as_array(cm)
    return 0.25 * (float(np.trace(sigma)) - 2.0 * float(np.sum(spectrum_array(sigma))))


def k_local_gap(cm, partition: ModePartition) -> GapResult:
    """Global minus k-local Gaussian ergotropy for a fixed partition.

    Valid for mixed states too. For pure states it equals half the summed
    excess ``nu - 1`` of the block spectra.
    """
    sigma = as_array(cm)
    _check_cover(sigma, partition.n_modes)
    mu = spectrum_array(sigma)
    spectra = tuple(spectrum_array(block_matrix(sigma, b)) for b in partition.blocks)
    value = 0.5 * (sum(float(np.sum(s)) for s in spectra) - float(np.sum(mu)))
    return GapResult(
        value,
        partition,
        tuple(SymplecticSpectrum(tuple(map(float, s))) for s in spectra),
        SymplecticSpectrum(tuple(map(float, mu))),
    )


def two_local_gap(cm, bp: Bipartition) -> GapResult:
    """2-local gap of a pure state from the spectrum of its smaller block.

    Raises
    ------
    UnsupportedStateError
        If ``det sigma`` differs from one by more than 1e-6.
    """
    sigma = as_array(cm)
    _check_cover(sigma, bp.n_modes)
    _require_pure(sigma, "the 2-local gap formula")
    spec_a = spectrum_array(block_matrix(sigma, bp.block_a))
    spec_b = spectrum_array(block_matrix(sigma, bp.block_b))
    small = spec_a if len(bp.block_a) <= len(bp.block_b) else spec_b
    return GapResult(
        float(np.sum(small - 1.0)),
        ModePartition((bp.block_a, bp.block_b)),
        (SymplecticSpectrum(tuple(map(float, spec_a))), SymplecticSpectrum(tuple(map(float, spec_b)))),
        SymplecticSpectrum(tuple(map(float, spectrum_array(sigma)))),
    )


def minimum_gap(cm, partitions: Iterable[ModePartition]) -> ScoreResult:
    """Minimise the k-local gap over ``partitions``.

    Block spectra are cached, so partitions sharing blocks are cheap. The
    returned partition is the first one whose gap lies within 1e-12 of the
    minimum.
    """
    sigma = as_array(cm)
    mu_sum = float(np.sum(spectrum_array(sigma)))
    block_sums: dict = {}
    values = []
    parts = []
    for p in partitions:
        total = 0.0
        for b in p.blocks:
            s = block_sums.get(b)
            if s is None:
                s = block_sums[b] = float(np.sum(spectrum_array(block_matrix(sigma, b))))
            total += s
        values.append(0.5 * (total - mu_sum))
        parts.append(p)
    if not parts:
        raise InvalidArgumentError("no partitions to minimise over")
    _check_cover(sigma, parts[0].n_modes)
    values = np.asarray(values)
    best = values.min()
    first = int(np.argmax(values <= best + TIE_TOL))
    return ScoreResult(float(values[first]), parts[first], len(parts))


def k_ergotropic_score(cm, k: int, budget: int = DEFAULT_BUDGET) -> ScoreResult:
    """Minimum k-local gap over all ``stirling2(N, k)`` k-partitions of a pure state.

    Parameters
    ----------
    cm : CovarianceMatrix
        Pure N-mode state.
    k : int
        Number of blocks, ``1 <= k <= N``.
    budget : int, optional
        Largest number of partitions the exhaustive scan may visit.

    Raises
    ------
    BudgetExceededError
        If ``stirling2(N, k) > budget``; no heuristic fallback is attempted.
    UnsupportedStateError
        For mixed input.
    """
    sigma = as_array(cm)
    n = sigma.shape[0] // 2
    if int(k) != k or not 1 <= k <= n:
        raise InvalidArgumentError(f"k must lie in [1, {n}], got {k!r}")
    _require_pure(sigma, "the k-ergotropic score")
    count = stirling2(n, int(k))
    if count > budget:
        raise BudgetExceededError(
            f"stirling2({n}, {k}) = {count} partitions exceeds the enumeration budget {budget}"
        )
    return minimum_gap(sigma, enumerate_k_partitions(n, int(k)))
