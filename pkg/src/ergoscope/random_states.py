"""Haar-random pure Gaussian states at fixed total energy.

A pure state is ``sigma = O Gamma O^T`` with ``O`` orthogonal and symplectic
and ``Gamma`` a product of single-mode squeezed vacua. Drawing ``O`` from the
image of the Haar measure on ``U(N)`` and splitting the energy budget over the
modes gives the ensemble. ``total_energy`` is ``Tr sigma``, so the vacuum of
``N`` modes sits at ``2N``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .symplectic import CovarianceMatrix

__all__ = [
    "RandomStateConfig",
    "haar_orthosymplectic",
    "haar_unitary",
    "orthosymplectic_from_unitary",
    "random_energy_split",
    "random_pure_cm",
    "squeezing_from_energy",
    "substream",
]

_MASK64 = (1 << 64) - 1

# stream domains keep generator draws and optimizer restarts independent
STATE_DOMAIN = 0
RESTART_DOMAIN = 1


def substream(seed: int, index: int = 0, domain: int = STATE_DOMAIN) -> np.random.Generator:
    """Philox generator keyed by ``seed XOR index`` within ``domain``.

    Philox is counter based, so distinct keys give non-overlapping streams and
    samples can be drawn in any order or in parallel.
    """
    key = ((int(domain) & _MASK64) << 64) | ((int(seed) ^ int(index)) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class RandomStateConfig:
    n_modes: int
    total_energy: float
    seed: int = 0

    def __post_init__(self):
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise InvalidArgumentError(f"n_modes must be a positive integer, got {self.n_modes!r}")
        if not self.total_energy >= 2 * self.n_modes:
            raise InvalidArgumentError(
                f"total_energy {self.total_energy} is below the vacuum value 2N = {2 * self.n_modes}"
            )


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary.

    QR of a complex Ginibre matrix, with the phases of ``R``'s diagonal moved
    into ``Q`` so the factorisation is unique.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def orthosymplectic_from_unitary(u) -> np.ndarray:
    """Orthogonal symplectic matrix of the passive transformation ``u``.

    In block ordering ``(q..., p...)`` this is ``[[Re u, Im u], [-Im u, Re u]]``;
    the result is returned in interleaved ordering.
    """
    u = np.atleast_2d(np.asarray(u, dtype=complex))
    n = u.shape[0]
    x, y = u.real, u.imag
    block = np.block([[x, y], [-y, x]])
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = np.arange(n) + n
    return block[np.ix_(perm, perm)]


def haar_orthosymplectic(n_modes: int, rng: np.random.Generator) -> np.ndarray:
    return orthosymplectic_from_unitary(haar_unitary(n_modes, rng))


def random_energy_split(total_energy: float, n_modes: int, rng: np.random.Generator) -> np.ndarray:
    """Per-mode energies ``E_i >= 2`` summing to ``total_energy``.

    The surplus over the vacuum is shared with weights uniform on the simplex
    (gaps between sorted uniforms).
    """
    if not total_energy >= 2 * n_modes:
        raise InvalidArgumentError(f"total energy {total_energy} below 2N = {2 * n_modes}")
    cuts = np.sort(rng.random(n_modes - 1))
    weights = np.diff(np.concatenate(([0.0], cuts, [1.0])))
    return 2.0 + (total_energy - 2 * n_modes) * weights


def squeezing_from_energy(mode_energy: float, sign: int = 1) -> float:
    """Quadrature variance ``x >= 1`` of a squeezed vacuum with ``x + 1/x = E_i``.

    Takes the root ``(E_i + sign*sqrt(E_i^2 - 4)) / 2`` and replaces it by its
    reciprocal when it falls below one.
    """
    if not mode_energy >= 2:
        raise InvalidArgumentError(f"mode energy must be at least 2, got {mode_energy}")
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign must be +1 or -1, got {sign!r}")
    root = np.sqrt(mode_energy * mode_energy - 4.0)
    # the minus root is formed as 2 / (E + root) to avoid cancellation
    x = 0.5 * (mode_energy + root) if sign > 0 else 2.0 / (mode_energy + root)
    return float(1.0 / x if x < 1.0 else x)


def random_pure_cm(config: RandomStateConfig, sample_index: int = 0) -> CovarianceMatrix:
    """Draw sample ``sample_index`` of the ensemble described by ``config``.

    The draw depends only on ``(config, sample_index)``.
    """
    n = config.n_modes
    rng = substream(config.seed, sample_index)
    o = haar_orthosymplectic(n, rng)
    energies = random_energy_split(config.total_energy, n, rng)
    signs = rng.choice((-1, 1), size=n)
    x = np.array([squeezing_from_energy(e, int(s)) for e, s in zip(energies, signs)])
    gamma = np.empty(2 * n)
    gamma[0::2] = x
    gamma[1::2] = 1.0 / x
    sigma = (o * gamma) @ o.T
    return CovarianceMatrix(0.5 * (sigma + sigma.T), check=False)
