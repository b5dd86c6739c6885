import numpy as np
import pytest

from opspectra import (
    AtomicTracePovm,
    AutocovarianceSequence,
    CoverageError,
    NotPositiveTypeError,
    SampleSizeError,
    autocov_from_povm,
    empirical_autocov,
    grid_frequencies,
    hermitian_nnd_check,
    positive_type_check,
    povm_from_autocov_grid,
    sample_gaussian_measure,
    synthesize_process,
)
from opspectra.synthetic import make_rng, random_complex, random_grid_povm, random_povm


def constant_sequence(op, max_lag):
    values = np.broadcast_to(op, (max_lag + 1,) + op.shape).copy()
    return AutocovarianceSequence(op.shape[0], max_lag, values)


class TestAutocovFromPovm:
    def test_single_atom_at_zero_is_constant(self):
        rng = make_rng(301)
        p = np.eye(2) + 0.0j
        nu = AtomicTracePovm(2, [0.0], [p])
        gamma = autocov_from_povm(nu, 6)
        for h in range(-6, 7):
            assert np.abs(gamma.gamma(h) - p).max() <= 1e-14

    def test_cosine_pair(self):
        p = np.diag([2.0, 1.0]).astype(complex)
        nu = AtomicTracePovm(2, [-np.pi / 2, np.pi / 2], [p / 2, p / 2])
        gamma = autocov_from_povm(nu, 8)
        for h in range(-8, 9):
            expected = np.cos(np.pi * h / 2) * p
            assert np.abs(gamma.gamma(h) - expected).max() <= 1e-12

    def test_lag_zero_is_total_mass(self):
        rng = make_rng(302)
        nu = random_povm(rng, 3, 6)
        gamma = autocov_from_povm(nu, 4)
        assert np.abs(gamma.gamma(0) - nu.total_mass()).max() <= 1e-12

    def test_hermitian_symmetry_exact(self):
        rng = make_rng(303)
        nu = random_povm(rng, 3, 5)
        gamma = autocov_from_povm(nu, 5)
        for h in range(1, 6):
            np.testing.assert_array_equal(
                gamma.gamma(-h), gamma.gamma(h).conj().T
            )

    def test_trace_dominated_by_lag_zero(self):
        rng = make_rng(304)
        nu = random_povm(rng, 3, 6)
        gamma = autocov_from_povm(nu, 10)
        t0 = np.trace(gamma.gamma(0)).real
        for h in range(1, 11):
            assert abs(np.trace(gamma.gamma(h))) <= t0 + 1e-12 * t0

    def test_coverage_error(self):
        rng = make_rng(305)
        gamma = autocov_from_povm(random_povm(rng, 2, 3), 2)
        with pytest.raises(CoverageError):
            gamma.gamma(3)


class TestGridInversion:
    def test_constant_sequence_recovers_single_atom(self):
        p = np.diag([1.0, 3.0]).astype(complex)
        gamma = constant_sequence(p, 3)
        nu = povm_from_autocov_grid(gamma, 4)
        freqs = grid_frequencies(4)
        k0 = int(np.argmin(np.abs(freqs)))
        assert np.abs(nu.weights[k0] - p).max() <= 1e-12
        others = [k for k in range(4) if k != k0]
        assert np.abs(nu.weights[others]).max() <= 1e-12

    def test_round_trip_oracle(self):
        rng = make_rng(306)
        nu = random_grid_povm(rng, 3, 8)
        gamma = autocov_from_povm(nu, 7)
        recovered = povm_from_autocov_grid(gamma, 8)
        np.testing.assert_array_equal(recovered.freqs, nu.freqs)
        assert np.abs(recovered.weights - nu.weights).max() <= 1e-10

    def test_rejects_non_positive_type(self):
        values = np.stack(
            [np.eye(2) + 0.0j] + [2.0 * np.eye(2) + 0.0j] * 3
        )
        gamma = AutocovarianceSequence(2, 3, values)
        with pytest.raises(NotPositiveTypeError, match="atom"):
            povm_from_autocov_grid(gamma, 4)

    def test_insufficient_lags(self):
        rng = make_rng(307)
        gamma = autocov_from_povm(random_grid_povm(rng, 2, 8), 3)
        with pytest.raises(CoverageError):
            povm_from_autocov_grid(gamma, 8)


class TestPositiveType:
    def test_valid_povm_certified(self):
        rng = make_rng(308)
        nu = random_povm(rng, 2, 5)
        gamma = autocov_from_povm(nu, 5)
        assert positive_type_check(gamma, [0, 1, 3], tol=1e-10)

    def test_constructed_counterexample(self):
        values = np.stack([np.eye(2) + 0.0j, 1.5 * np.eye(2) + 0.0j])
        gamma = AutocovarianceSequence(2, 1, values)
        # block eigenvalues are 1 +- 1.5, so -0.5 shows up
        assert not positive_type_check(gamma, [0, 1], tol=1e-10)

    def test_single_time_reduces_to_psd(self):
        rng = make_rng(309)
        nu = random_povm(rng, 3, 4)
        gamma = autocov_from_povm(nu, 2)
        assert positive_type_check(gamma, [0], tol=1e-10)

    def test_explicit_vectors(self):
        rng = make_rng(310)
        nu = random_povm(rng, 2, 4)
        gamma = autocov_from_povm(nu, 4)
        vectors = random_complex(rng, (3, 2))
        assert positive_type_check(gamma, [0, 2, 4], vectors=vectors)

    def test_random_time_sets_always_pass(self):
        rng = make_rng(311)
        nu = random_povm(rng, 2, 6)
        gamma = autocov_from_povm(nu, 12)
        for _ in range(10):
            n = int(rng.integers(1, 7))
            times = rng.choice(13, size=n, replace=False)
            assert positive_type_check(gamma, times, tol=1e-10)


class TestHermitianNnd:
    def test_single_coefficient(self):
        rng = make_rng(312)
        nu = random_povm(rng, 3, 4)
        gamma = autocov_from_povm(nu, 3)
        assert hermitian_nnd_check(gamma, [2], [1.0 + 0.5j])

    def test_valid_povm_random_coeffs(self):
        rng = make_rng(313)
        nu = random_povm(rng, 2, 5)
        gamma = autocov_from_povm(nu, 8)
        for _ in range(10):
            n = int(rng.integers(1, 5))
            times = rng.choice(9, size=n, replace=False)
            coeffs = random_complex(rng, n)
            assert hermitian_nnd_check(gamma, times, coeffs)

    def test_counterexample_fails(self):
        values = np.stack([np.eye(2) + 0.0j, 1.5 * np.eye(2) + 0.0j])
        gamma = AutocovarianceSequence(2, 1, values)
        assert not hermitian_nnd_check(gamma, [0, 1], [1.0, -1.0])


class TestEmpiricalAutocov:
    def test_zero_process(self):
        from opspectra import ProcessSample

        x = ProcessSample(2, 8, np.zeros((4, 8, 2), dtype=complex))
        gamma, se = empirical_autocov(x, 3)
        assert not gamma.values.any()
        assert se == pytest.approx(0.5)

    def test_requires_ensemble(self):
        from opspectra import ProcessSample

        x = ProcessSample(2, 8, np.zeros((1, 8, 2), dtype=complex))
        with pytest.raises(SampleSizeError):
            empirical_autocov(x, 3)

    def test_single_atom_monte_carlo(self):
        n_real = 50_000
        nu = AtomicTracePovm(2, [0.0], [np.eye(2)])
        w = sample_gaussian_measure(nu, n_real, seed=314)
        x = synthesize_process(w, 4)
        gamma, se = empirical_autocov(x, 2)
        band = 5.0 * se * 2.0
        for h in range(3):
            assert np.abs(gamma.gamma(h) - np.eye(2)).max() <= band

    def test_simulated_povm_monte_carlo(self):
        rng = make_rng(315)
        n_real = 50_000
        nu = random_grid_povm(rng, 2, 8)
        scale = float(np.trace(nu.total_mass()).real)
        w = sample_gaussian_measure(nu, n_real, seed=316)
        x = synthesize_process(w, 8)
        gamma_hat, se = empirical_autocov(x, 3)
        gamma = autocov_from_povm(nu, 3)
        band = 5.0 * se * scale
        for h in range(4):
            err = np.abs(gamma_hat.gamma(h) - gamma.gamma(h)).max()
            assert err <= band
