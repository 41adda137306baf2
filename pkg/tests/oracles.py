"""Reference computations that share no code path with the package."""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

FOCK_TRUNCATION = 60


def fock_squeezed_vacuum(r: float, theta: float, cutoff: int = FOCK_TRUNCATION) -> np.ndarray:
    """Amplitudes of ``S(r e^{i theta})|0>`` on photon numbers ``0..cutoff``.

    Only even photon numbers are populated:
    ``c_2n = (-e^{i theta} tanh r)^n sqrt((2n)!) / (2^n n! sqrt(cosh r))``.
    """
    psi = np.zeros(cutoff + 1, dtype=complex)
    ratio = -np.exp(1j * theta) * math.tanh(r)
    psi[0] = 1.0 / math.sqrt(math.cosh(r))
    for n in range(0, cutoff // 2):
        # c_{2n+2} / c_{2n} = ratio * sqrt((2n+1)(2n+2)) / (2(n+1))
        psi[2 * n + 2] = psi[2 * n] * ratio * math.sqrt((2 * n + 1) * (2 * n + 2)) / (2 * (n + 1))
    return psi


def fock_overlap_squared(a: np.ndarray, b: np.ndarray) -> float:
    return float(abs(np.vdot(a, b)) ** 2)


def fock_covariance(psi: np.ndarray) -> np.ndarray:
    """Vacuum-normalised 2x2 covariance with ``q = a + a^dag`` and ``p = -i(a - a^dag)``."""
    dim = psi.size
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    q = a + a.conj().T
    p = -1j * (a - a.conj().T)

    def expect(op):
        return complex(np.vdot(psi, op @ psi))

    qq = expect(q @ q).real
    pp = expect(p @ p).real
    qp = 0.5 * expect(q @ p + p @ q).real
    return np.array([[qq, qp], [qp, pp]])


def omega(n: int) -> np.ndarray:
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def hermitian_symplectic_spectrum(sigma) -> np.ndarray:
    """Symplectic eigenvalues from the Hermitian matrix ``i sqrt(S) Omega sqrt(S)``, descending."""
    sigma = np.asarray(sigma, dtype=float)
    root = scipy.linalg.sqrtm(sigma).real
    herm = 1j * root @ omega(sigma.shape[0] // 2) @ root
    ev = np.linalg.eigvalsh(herm)
    return np.sort(ev[ev > 0])[::-1]


def min_uncertainty_eigenvalue(sigma) -> float:
    sigma = np.asarray(sigma, dtype=float)
    return float(np.linalg.eigvalsh(sigma + 1j * omega(sigma.shape[0] // 2)).min())


def stirling2_recurrence(n_max: int) -> dict:
    table = {(0, 0): 1}
    for n in range(1, n_max + 1):
        table[(n, 0)] = 0
        for k in range(1, n + 1):
            table[(n, k)] = k * table.get((n - 1, k), 0) + table.get((n - 1, k - 1), 0)
    return table


def brute_force_partitions(n: int, k: int) -> set:
    """All set partitions of ``range(n)`` into ``k`` blocks, as frozensets of frozensets."""
    out = set()

    def grow(i, blocks):
        if i == n:
            if len(blocks) == k:
                out.add(frozenset(frozenset(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            grow(i + 1, blocks)
            b.pop()
        if len(blocks) < k:
            blocks.append([i])
            grow(i + 1, blocks)
            blocks.pop()

    grow(0, [])
    return out


def tmsv_matrix(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum in interleaved order."""
    c, s = math.cosh(2 * r), math.sinh(2 * r)
    return np.array([[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0], [0, -s, 0, c]])


def block(sigma, modes) -> np.ndarray:
    idx = [i for m in modes for i in (2 * m, 2 * m + 1)]
    return np.asarray(sigma)[np.ix_(idx, idx)]


def f_entropy(nu: float) -> float:
    if nu - 1 < 1e-14:
        return 0.0
    a, b = (nu + 1) / 2, (nu - 1) / 2
    return a * math.log(a) - b * math.log(b)


def symplectic_from_gaussian(n: int, rng) -> np.ndarray:
    """Random symplectic matrix as ``exp(Omega H)`` with ``H`` symmetric."""
    h = rng.standard_normal((2 * n, 2 * n)) * 0.3
    h = 0.5 * (h + h.T)
    return scipy.linalg.expm(omega(n) @ h)
