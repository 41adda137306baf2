import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from ergoscope import InvalidArgumentError, RandomStateConfig, random_pure_cm, validate
from ergoscope.random_states import (
    RESTART_DOMAIN,
    haar_orthosymplectic,
    haar_unitary,
    orthosymplectic_from_unitary,
    random_energy_split,
    squeezing_from_energy,
    substream,
)
from ergoscope.symplectic import spectrum_array

from oracles import hermitian_symplectic_spectrum, omega, symplectic_from_gaussian


# -- orthosymplectic matrices ---------------------------------------------

def test_trivial_unitary_gives_identity():
    np.testing.assert_array_equal(orthosymplectic_from_unitary([[1.0]]), np.eye(2))


@given(st.integers(0, 2**32), st.integers(1, 6))
def test_orthogonal_and_symplectic(seed, n):
    o = haar_orthosymplectic(n, substream(seed))
    np.testing.assert_allclose(o @ o.T, np.eye(2 * n), atol=1e-10)
    np.testing.assert_allclose(o @ omega(n) @ o.T, omega(n), atol=1e-10)
    assert abs(np.linalg.det(o)) == pytest.approx(1.0, abs=1e-10)


def test_phase_rotation_maps_to_rotation():
    phi = 0.3
    o = orthosymplectic_from_unitary([[np.exp(1j * phi)]])
    np.testing.assert_allclose(o, [[np.cos(phi), np.sin(phi)], [-np.sin(phi), np.cos(phi)]])


@pytest.mark.parametrize("n,seed", [(2, 0), (3, 1)])
def test_conjugation_preserves_spectrum(n, seed):
    rng = np.random.default_rng(seed)
    s = symplectic_from_gaussian(n, rng)
    sigma = s @ np.diag(np.repeat(1 + rng.random(n), 2)) @ s.T
    o = haar_orthosymplectic(n, substream(seed))
    np.testing.assert_allclose(spectrum_array(o @ sigma @ o.T), hermitian_symplectic_spectrum(sigma), rtol=1e-9)


def test_haar_unitary_entry_statistics():
    n, draws = 3, 4000
    rng = substream(2024)
    entries = np.array([haar_unitary(n, rng)[0, 0] for _ in range(draws)])
    # first column is uniform on the sphere: |u|^2 ~ Beta(1, n-1), uniform phase
    assert stats.kstest(np.abs(entries) ** 2, stats.beta(1, n - 1).cdf).pvalue > 0.01
    assert stats.kstest(np.angle(entries), stats.uniform(-np.pi, 2 * np.pi).cdf).pvalue > 0.01


def test_haar_unitary_is_unitary():
    u = haar_unitary(5, substream(1))
    np.testing.assert_allclose(u @ u.conj().T, np.eye(5), atol=1e-12)


# -- energy split and squeezing -------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 5])
def test_vacuum_energy_split(n):
    np.testing.assert_array_equal(random_energy_split(2.0 * n, n, substream(0)), np.full(n, 2.0))


@given(st.integers(0, 2**32))
def test_split_sums_to_total(seed):
    e = random_energy_split(20.0, 4, substream(seed))
    assert abs(e.sum() - 20.0) < 1e-12
    assert np.all(e >= 2.0)


@pytest.mark.parametrize("n", [2, 4])
def test_split_weights_are_flat_dirichlet(n):
    rng = substream(77)
    surplus = 20.0 - 2 * n
    w = np.array([(random_energy_split(20.0, n, rng) - 2.0) / surplus for _ in range(10_000)])
    for i in range(n):
        assert stats.kstest(w[:, i], stats.beta(1, n - 1).cdf).pvalue > 0.01


def test_split_rejects_low_energy():
    with pytest.raises(InvalidArgumentError):
        random_energy_split(7.9, 4, substream(0))


@pytest.mark.parametrize("e,sign,x", [(2.0, 1, 1.0), (2.0, -1, 1.0), (2.5, 1, 2.0), (2.5, -1, 2.0)])
def test_squeezing_examples(e, sign, x):
    assert squeezing_from_energy(e, sign) == pytest.approx(x, abs=1e-15)


@given(st.floats(2.0, 1e6), st.sampled_from([1, -1]))
def test_squeezing_inverts_energy(e, sign):
    x = squeezing_from_energy(e, sign)
    assert x >= 1.0
    assert x + 1 / x == pytest.approx(e, rel=1e-12, abs=1e-10)


@pytest.mark.parametrize("e,sign", [(1.99, 1), (3.0, 0)])
def test_squeezing_rejects_bad_input(e, sign):
    with pytest.raises(InvalidArgumentError):
        squeezing_from_energy(e, sign)


# -- states ---------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 3])
def test_vacuum_energy_gives_vacuum(n):
    cm = random_pure_cm(RandomStateConfig(n, 2.0 * n, 5))
    np.testing.assert_allclose(cm.data, np.eye(2 * n), atol=1e-12)


def test_seeded_three_mode_state():
    cm = random_pure_cm(RandomStateConfig(3, 20.0, 42))
    assert validate(cm).valid
    assert np.trace(cm.data) == pytest.approx(20.0, abs=1e-8)
    assert np.linalg.det(cm.data) == pytest.approx(1.0, abs=1e-6)


def test_batch_of_four_mode_states():
    config = RandomStateConfig(4, 20.0, 3)
    for i in range(1000):
        cm = random_pure_cm(config, i)
        det = np.linalg.det(cm.data)
        assert validate(cm).valid, i
        assert 1 - 1e-6 <= det <= 1 + 1e-6, i


@given(st.integers(0, 2**63 - 1), st.integers(1, 6), st.floats(0.0, 40.0), st.integers(0, 10**6))
def test_energy_and_purity_invariants(seed, n, surplus, index):
    e = 2.0 * n + surplus
    cm = random_pure_cm(RandomStateConfig(n, e, seed), index)
    assert abs(np.trace(cm.data) - e) < 1e-8
    np.testing.assert_allclose(spectrum_array(cm), 1.0, atol=1e-6)


def test_deterministic_per_sample():
    config = RandomStateConfig(3, 20.0, 9)
    a = random_pure_cm(config, 4).data
    assert np.array_equal(a, random_pure_cm(config, 4).data)
    assert not np.array_equal(a, random_pure_cm(config, 5).data)


def test_substreams_are_keyed():
    assert substream(3, 1).random() == substream(3, 1).random()
    assert substream(3, 1).random() == substream(2, 0).random()
    assert substream(3, 1).random() != substream(3, 1, RESTART_DOMAIN).random()


def test_marginal_law_is_rotation_invariant():
    count = 10_000
    fixed = haar_orthosymplectic(2, substream(123, 0, 5))
    base = RandomStateConfig(2, 20.0, 31)
    plain = [spectrum_array(random_pure_cm(base, i).data[:2, :2])[0] for i in range(count)]
    rotated = [
        spectrum_array((fixed @ random_pure_cm(base, count + i).data @ fixed.T)[:2, :2])[0] for i in range(count)
    ]
    assert stats.ks_2samp(plain, rotated).pvalue > 0.01


@pytest.mark.parametrize("n,e", [(0, 4.0), (2, 3.9), (1.5, 10.0)])
def test_config_validation(n, e):
    with pytest.raises(InvalidArgumentError):
        RandomStateConfig(n, e)
