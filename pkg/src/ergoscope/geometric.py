"""Fidelity-based multimode entanglement of pure Gaussian states.

Two quantities are provided. The generalised geometric measure (GGM) is the
distance to the closest biseparable pure state and has a closed form in the
marginal symplectic spectra. The total Gaussian multimode entanglement (GTME)
is the distance to the closest product of single-mode squeezed vacua; it is
found by maximising the overlap ``2^N / sqrt(det(sigma + W))`` over the ``2N``
squeezing parameters with a multistart Nelder-Mead search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg.lapack import dpotrf
from scipy.optimize import minimize

from .errors import InvalidArgumentError, UnsupportedStateError
from .random_states import RESTART_DOMAIN, substream
from .symplectic import (
    Bipartition,
    CovarianceMatrix,
    PURITY_TOL,
    as_array,
    spectrum_array,
    block_matrix,
    direct_sum,
    two_mode_squeezed_vacuum,
)

__all__ = [
    "GtmeConfig",
    "GtmeResult",
    "SqueezedProductParams",
    "WITNESS_BIPARTITION",
    "functional_independence_witness",
    "ggm",
    "ggm_from_score",
    "gtme",
    "pure_state_overlap",
    "score_from_ggm",
    "squeezed_product_cm",
    "squeezed_vacuum_cm",
]

TWO_PI = 2.0 * np.pi


def squeezed_vacuum_cm(r: float, theta: float) -> np.ndarray:
    """Covariance matrix of the squeezed vacuum ``S(r e^{i theta})|0>``.

    ``theta = 0`` squeezes ``q``: ``W(r, 0) = diag(e^{-2r}, e^{2r})``.
    """
    if not np.isfinite(r):
        raise InvalidArgumentError(f"squeezing must be finite, got {r}")
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array(
        [
            [c - s * np.cos(theta), -s * np.sin(theta)],
            [-s * np.sin(theta), c + s * np.cos(theta)],
        ]
    )


@dataclass(frozen=True)
class SqueezedProductParams:
    """Squeezing magnitudes and angles of a product of single-mode squeezed vacua."""

    r: tuple
    theta: tuple

    def __post_init__(self):
        r = tuple(float(v) for v in self.r)
        theta = tuple(float(v) % TWO_PI for v in self.theta)
        if len(r) != len(theta):
            raise InvalidArgumentError(f"{len(r)} magnitudes but {len(theta)} angles")
        if any(not math.isfinite(v) or v < 0 for v in r):
            raise InvalidArgumentError(f"squeezing magnitudes must be finite and >= 0, got {r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def from_xi(cls, re, im) -> "SqueezedProductParams":
        """Build from the complex squeezing parameters ``xi_j = re_j + i im_j``."""
        re, im = np.asarray(re, dtype=float), np.asarray(im, dtype=float)
        return cls(tuple(np.hypot(re, im)), tuple(np.arctan2(im, re)))

    @property
    def n_modes(self) -> int:
        return len(self.r)

    def covariance(self) -> np.ndarray:
        return squeezed_product_cm(self)

    def as_dict(self) -> dict:
        return {"r": list(self.r), "theta": list(self.theta)}


def squeezed_product_cm(params: SqueezedProductParams) -> np.ndarray:
    """Block-diagonal covariance ``W(r_1, theta_1) + ... + W(r_N, theta_N)``."""
    n = params.n_modes
    out = np.zeros((2 * n, 2 * n))
    for j, (r, th) in enumerate(zip(params.r, params.theta)):
        out[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = squeezed_vacuum_cm(r, th)
    return out


def pure_state_overlap(cm_a, cm_b) -> float:
    """``|<psi_a|psi_b>|^2`` of two zero-mean pure Gaussian states.

    Equals ``2^N / sqrt(det(sigma_a + sigma_b))`` with the vacuum normalised
    to the identity, so the vacuum overlaps itself with value one.
    """
    a, b = as_array(cm_a), as_array(cm_b)
    if a.shape != b.shape:
        raise InvalidArgumentError(f"shape mismatch {a.shape} vs {b.shape}")
    n = a.shape[0] // 2
    return float(2.0**n / np.sqrt(np.linalg.det(a + b)))


def _require_pure(sigma, what):
    det = float(np.linalg.det(sigma))
    if abs(det - 1.0) > PURITY_TOL:
        raise UnsupportedStateError(f"{what} is defined for pure states only (det sigma = {det:.9g})")


def ggm(cm) -> float:
    """Generalised geometric measure of a pure state.

    ``1 - max prod_i 2 / (1 + nu_i)`` over every marginal on
    ``m = 1 .. floor(N/2)`` modes, where ``nu_i`` is that marginal's spectrum.
    """
    sigma = as_array(cm)
    _require_pure(sigma, "GGM")
    n = sigma.shape[0] // 2
    best = 0.0
    for m in range(1, n // 2 + 1):
        for subset in itertools.combinations(range(n), m):
            nu = spectrum_array(block_matrix(sigma, subset))
            best = max(best, float(np.prod(2.0 / (1.0 + nu))))
    if n == 1:
        best = 1.0
    return 1.0 - best


def score_from_ggm(g: float) -> float:
    """``2g / (1 - g)``: the 2-ergotropic score of a three-mode state with GGM ``g``."""
    if not 0.0 <= g < 1.0:
        raise InvalidArgumentError(f"GGM must lie in [0, 1), got {g}")
    return 2.0 * g / (1.0 - g)


def ggm_from_score(d: float) -> float:
    """Inverse of :func:`score_from_ggm`, ``d / (d + 2)``."""
    if not d >= 0.0:
        raise InvalidArgumentError(f"score must be nonnegative, got {d}")
    return d / (d + 2.0)


# -- GTME ---------------------------------------------------------------------


@dataclass(frozen=True)
class GtmeConfig:
    """Multistart settings for :func:`gtme`.

    A restart stops once its best objective improved by less than ``tol``
    over the last ``patience`` iterations, or after ``max_iters``. The
    result is flagged converged when the two best restarts agree on the
    overlap within ``agree_tol``.
    """

    restarts: int = 32
    max_iters: int = 5000
    tol: float = 1e-10
    seed: int = 0
    patience: int = 50
    agree_tol: float = 1e-7

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidArgumentError("restarts must be at least 1")
        if self.max_iters < 1 or self.patience < 1:
            raise InvalidArgumentError("max_iters and patience must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "GtmeConfig":
        known = {k: data[k] for k in ("restarts", "max_iters", "tol", "seed", "patience", "agree_tol") if k in data}
        return cls(**known)

    def as_dict(self) -> dict:
        return {
            "restarts": self.restarts,
            "max_iters": self.max_iters,
            "tol": self.tol,
            "seed": self.seed,
            "patience": self.patience,
            "agree_tol": self.agree_tol,
        }


@dataclass(frozen=True)
class GtmeResult:
    value: float
    best_params: SqueezedProductParams
    best_purity: float
    restarts_used: int
    converged: bool
    restart_purities: tuple = field(default=(), repr=False)


class _LogDet:
    """``log det(sigma + W(xi))`` with ``xi`` in Cartesian coordinates.

    Parameters are ``(Re xi_1..Re xi_N, Im xi_1..Im xi_N)``. Unlike
    ``(r, theta)`` this chart is smooth at ``r = 0``.
    """

    def __init__(self, sigma: np.ndarray):
        n = sigma.shape[0] // 2
        self.n = n
        self.flat = np.ascontiguousarray(sigma).ravel()
        j = np.arange(n)
        dim = 2 * n
        self.i_qq = 2 * j * dim + 2 * j
        self.i_pp = (2 * j + 1) * dim + 2 * j + 1
        self.i_qp = 2 * j * dim + 2 * j + 1
        self.i_pq = (2 * j + 1) * dim + 2 * j

    def __call__(self, x: np.ndarray) -> float:
        n = self.n
        a, b = x[:n], x[n:]
        r = np.hypot(a, b)
        c = np.cosh(2.0 * r)
        # sinh(2r)/r -> 2 as r -> 0
        ratio = np.where(r > 1e-12, np.sinh(2.0 * r) / np.where(r > 1e-12, r, 1.0), 2.0)
        sc, ss = ratio * a, ratio * b
        m = self.flat.copy()
        m[self.i_qq] += c - sc
        m[self.i_pp] += c + sc
        m[self.i_qp] -= ss
        m[self.i_pq] -= ss
        chol, info = dpotrf(m.reshape(2 * n, 2 * n), lower=1, overwrite_a=1)
        if info != 0:
            return np.inf
        return 2.0 * float(np.sum(np.log(np.diagonal(chol))))


def _local_search(f, x0, config: GtmeConfig):
    history = []

    def stop_on_plateau(intermediate_result):
        history.append(intermediate_result.fun)
        if len(history) > config.patience and history[-config.patience - 1] - history[-1] < config.tol:
            raise StopIteration

    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        callback=stop_on_plateau,
        # convergence is decided by the callback alone
        options={"maxiter": config.max_iters, "maxfev": 40 * config.max_iters, "xatol": 0.0, "fatol": 0.0, "adaptive": True},
    )
    plateaued = len(history) > config.patience and history[-config.patience - 1] - history[-1] < config.tol
    return np.asarray(res.x), float(res.fun), plateaued


def _marginal_guess(sigma: np.ndarray) -> tuple:
    # squeezed vacuum proportional to each single-mode marginal
    n = sigma.shape[0] // 2
    r, th = np.zeros(n), np.zeros(n)
    for j in range(n):
        blk = sigma[2 * j : 2 * j + 2, 2 * j : 2 * j + 2]
        blk = blk / np.sqrt(np.linalg.det(blk))
        c = 0.5 * (blk[0, 0] + blk[1, 1])
        r[j] = 0.5 * np.arccosh(max(c, 1.0))
        th[j] = np.arctan2(-blk[0, 1], 0.5 * (blk[1, 1] - blk[0, 0]))
    return r, th


def _starting_points(sigma: np.ndarray, config: GtmeConfig):
    n = sigma.shape[0] // 2
    r_max = 0.5 * np.arccosh(max(np.trace(sigma) / (2 * n), 1.0)) + 1.0
    for i in range(config.restarts):
        if i == 0:
            r, th = np.zeros(n), np.zeros(n)
        elif i == 1:
            r, th = _marginal_guess(sigma)
        else:
            rng = substream(config.seed, i, RESTART_DOMAIN)
            r = rng.uniform(0.0, r_max, n)
            th = rng.uniform(0.0, TWO_PI, n)
        yield np.concatenate([r * np.cos(th), r * np.sin(th)])


def gtme(cm, config: GtmeConfig = GtmeConfig()) -> GtmeResult:
    """Total Gaussian multimode entanglement of a pure state.

    Maximises the overlap with products of single-mode squeezed vacua over
    ``config.restarts`` Nelder-Mead runs started from the unsqueezed vacuum,
    from squeezed vacua matching each mode's marginal, and from random
    squeezings. Restart ``i`` depends only on ``(config.seed, i)``, so adding
    restarts can only lower the result. The returned value is an upper bound
    on the true GTME; non-convergence is reported, never raised.
    """
    sigma = as_array(cm)
    _require_pure(sigma, "GTME")
    n = sigma.shape[0] // 2
    f = _LogDet(sigma)
    outcomes = []
    for x0 in _starting_points(sigma, config):
        x, fx, plateaued = _local_search(f, x0, config)
        purity = float(2.0**n * np.exp(-0.5 * fx)) if np.isfinite(fx) else 0.0
        outcomes.append((purity, x, plateaued))
    # max purity; earlier restart wins ties
    best_idx = max(range(len(outcomes)), key=lambda i: (outcomes[i][0], -i))
    best_purity, best_x, best_plateaued = outcomes[best_idx]
    ranked = sorted((o[0] for o in outcomes), reverse=True)
    converged = bool(
        best_plateaued and len(ranked) > 1 and ranked[0] - ranked[1] <= config.agree_tol
    )
    params = SqueezedProductParams.from_xi(best_x[:n], best_x[n:])
    return GtmeResult(
        value=1.0 - best_purity,
        best_params=params,
        best_purity=best_purity,
        restarts_used=len(outcomes),
        converged=converged,
        restart_purities=tuple(o[0] for o in outcomes),
    )


# -- functional independence ---------------------------------------------------

WITNESS_BIPARTITION = Bipartition((0, 2), (1, 3))


def _tmsv_with_marginal(nu: float) -> CovarianceMatrix:
    return two_mode_squeezed_vacuum(0.5 * np.arccosh(nu))


def functional_independence_witness(c: float) -> tuple:
    """Two four-mode pure states with equal Renyi-2 entropy but different 2-local gaps.

    Each state is a pair of two-mode squeezed vacua on modes ``(0, 1)`` and
    ``(2, 3)``; across :data:`WITNESS_BIPARTITION` (one arm of each) the
    marginal spectra are ``(sqrt c, sqrt c)`` and ``(c, 1)``. Both have
    entropy ``log c``; their gaps are ``2(sqrt c - 1)`` and ``c - 1``.
    """
    if not c > 1.0:
        raise InvalidArgumentError(f"c must exceed 1, got {c}")
    root = np.sqrt(c)
    symmetric = direct_sum(_tmsv_with_marginal(root), _tmsv_with_marginal(root))
    asymmetric = direct_sum(_tmsv_with_marginal(c), _tmsv_with_marginal(1.0))
    return symmetric, asymmetric
