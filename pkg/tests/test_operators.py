import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from opspectra import (
    DimensionError,
    PositivityError,
    SymmetryError,
    adjoint,
    hermitian_eig,
    outer,
    pinv_on_range,
    psd_check,
    psd_sqrt,
    schatten_norm,
)
from opspectra.synthetic import make_rng, random_complex, random_psd, random_unitary


def complex_matrices(rows, cols, scale=3.0):
    elems = st.floats(min_value=-scale, max_value=scale, allow_nan=False)
    return st.tuples(
        arrays(np.float64, (rows, cols), elements=elems),
        arrays(np.float64, (rows, cols), elements=elems),
    ).map(lambda p: p[0] + 1j * p[1])


class TestAdjoint:
    def test_scalar_conjugation(self):
        np.testing.assert_array_equal(adjoint([[2 + 1j]]), [[2 - 1j]])

    def test_identity_self_adjoint(self):
        np.testing.assert_array_equal(adjoint(np.eye(3)), np.eye(3))

    def test_inner_product_oracle(self):
        rng = make_rng(101)
        p = random_complex(rng, (3, 2))
        ph = adjoint(p)
        for _ in range(100):
            x = random_complex(rng, 2)
            y = random_complex(rng, 3)
            lhs = np.vdot(y, p @ x)
            rhs = np.vdot(ph @ y, x)
            assert abs(lhs - rhs) <= 1e-12

    @given(complex_matrices(3, 2))
    def test_involution_exact(self, p):
        np.testing.assert_array_equal(adjoint(adjoint(p)), p)


class TestOuter:
    def test_rank_one_projector(self):
        e1 = np.array([1.0, 0.0])
        np.testing.assert_array_equal(outer(e1, e1), [[1, 0], [0, 0]])

    def test_zero_vector(self):
        assert not outer(np.zeros(2), np.ones(3)).any()

    def test_definition_oracle(self):
        rng = make_rng(102)
        x = random_complex(rng, 4)
        y = random_complex(rng, 4)
        op = outer(x, y)
        for _ in range(50):
            z = random_complex(rng, 4)
            expected = np.vdot(y, z) * x
            assert np.abs(op @ z - expected).max() <= 1e-13


class TestPsdCheck:
    def test_identity(self):
        assert psd_check(np.eye(3), 1e-10)

    def test_negative_eigenvalue(self):
        assert not psd_check(np.diag([1.0, -1.0]), 1e-10)

    def test_gram_construction(self):
        rng = make_rng(103)
        a = random_complex(rng, (4, 4))
        assert psd_check(a @ a.conj().T, 1e-10)

    def test_zero_passes(self):
        assert psd_check(np.zeros((3, 3)), 1e-10)

    def test_non_hermitian_fails(self):
        assert not psd_check(np.array([[1.0, 1.0], [0.0, 1.0]]), 1e-10)

    def test_non_square_raises(self):
        with pytest.raises(DimensionError):
            psd_check(np.ones((2, 3)), 1e-10)


class TestPsdSqrt:
    def test_diagonal(self):
        np.testing.assert_allclose(
            psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14
        )

    def test_zero(self):
        np.testing.assert_array_equal(psd_sqrt(np.zeros((2, 2))), np.zeros((2, 2)))

    def test_squaring_oracle(self):
        rng = make_rng(104)
        p = random_psd(rng, 5)
        s = psd_sqrt(p)
        assert psd_check(s, 1e-10)
        assert np.abs(s @ s - p).max() <= 1e-10 * schatten_norm(p, np.inf)

    def test_rejects_indefinite(self):
        with pytest.raises(PositivityError):
            psd_sqrt(np.diag([1.0, -1.0]))

    def test_rank_deficient_root_has_clean_range(self):
        rng = make_rng(105)
        p = random_psd(rng, 4, rank=2)
        s = np.linalg.svd(psd_sqrt(p), compute_uv=False)
        assert np.sum(s > 1e-10 * s[0]) == 2
        # round-off directions stay at working precision, not sqrt scale
        assert s[2] <= 1e-14 * s[0]


class TestSchattenNorm:
    def test_diagonal_values(self):
        p = np.diag([3.0, 4.0])
        assert schatten_norm(p, 1) == pytest.approx(7.0, abs=1e-12)
        assert schatten_norm(p, 2) == pytest.approx(5.0, abs=1e-12)
        assert schatten_norm(p, np.inf) == pytest.approx(4.0, abs=1e-12)

    def test_rank_one(self):
        rng = make_rng(106)
        x = random_complex(rng, 4)
        y = random_complex(rng, 4)
        value = float(np.linalg.norm(x) * np.linalg.norm(y))
        assert schatten_norm(outer(x, y), 1) == pytest.approx(value, rel=1e-12)
        assert schatten_norm(outer(x, y), 2) == pytest.approx(value, rel=1e-12)

    def test_frobenius_oracle(self):
        rng = make_rng(107)
        a = random_complex(rng, (4, 3))
        expected = float(np.sqrt(np.sum(np.abs(a) ** 2)))
        assert schatten_norm(a, 2) == pytest.approx(expected, abs=1e-12)

    @settings(max_examples=50)
    @given(complex_matrices(3, 3))
    def test_norm_chain(self, a):
        n_inf = schatten_norm(a, np.inf)
        n_2 = schatten_norm(a, 2)
        n_1 = schatten_norm(a, 1)
        assert n_inf <= n_2 + 1e-12
        assert n_2 <= n_1 + 1e-12

    def test_trace_equals_trace_norm_for_psd(self):
        rng = make_rng(108)
        for _ in range(20):
            p = random_psd(rng, 4)
            assert np.trace(p).real == pytest.approx(
                schatten_norm(p, 1), abs=1e-12 * max(1.0, np.trace(p).real)
            )


class TestHermitianEig:
    def test_diagonal_permutation(self):
        eig = hermitian_eig(np.diag([1.0, 3.0, 2.0]))
        np.testing.assert_allclose(eig.eigenvalues, [3.0, 2.0, 1.0], atol=1e-14)

    def test_degenerate_identity(self):
        eig = hermitian_eig(np.eye(2))
        np.testing.assert_allclose(eig.eigenvalues, [1.0, 1.0], atol=1e-14)
        gram = eig.eigenvectors.conj().T @ eig.eigenvectors
        assert np.abs(gram - np.eye(2)).max() <= 1e-12

    def test_reconstruction_oracle(self):
        rng = make_rng(109)
        a = random_complex(rng, (6, 6))
        h = (a + a.conj().T) / 2.0
        eig = hermitian_eig(h)
        scale = schatten_norm(h, np.inf)
        assert np.abs(eig.reconstruct() - h).max() <= 1e-10 * scale

    def test_phase_convention(self):
        rng = make_rng(110)
        h = random_psd(rng, 5)
        eig = hermitian_eig(h)
        for col in eig.eigenvectors.T:
            lead = col[np.argmax(np.abs(col))]
            assert lead.real > 0
            assert abs(lead.imag) <= 1e-14 * abs(lead)

    def test_determinism_bitwise(self):
        rng = make_rng(111)
        h = random_psd(rng, 4)
        first = hermitian_eig(h)
        second = hermitian_eig(h.copy())
        np.testing.assert_array_equal(first.eigenvalues, second.eigenvalues)
        np.testing.assert_array_equal(first.eigenvectors, second.eigenvectors)

    def test_rejects_non_hermitian(self):
        with pytest.raises(SymmetryError):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestPinvOnRange:
    def test_diagonal(self):
        pinv, proj = pinv_on_range(np.diag([2.0, 0.0]))
        np.testing.assert_allclose(pinv, np.diag([0.5, 0.0]), atol=1e-14)
        np.testing.assert_allclose(proj, np.diag([1.0, 0.0]), atol=1e-14)

    def test_unitary(self):
        rng = make_rng(112)
        u = random_unitary(rng, 4)
        pinv, proj = pinv_on_range(u)
        assert np.abs(pinv - u.conj().T).max() <= 1e-12
        assert np.abs(proj - np.eye(4)).max() <= 1e-12

    def test_left_inverse_oracle(self):
        rng = make_rng(113)
        a = random_complex(rng, (4, 2))
        pinv, proj = pinv_on_range(a)
        assert np.abs(pinv @ a - np.eye(2)).max() <= 1e-10
        assert np.abs(a @ pinv - proj).max() <= 1e-10

    def test_zero_operator(self):
        pinv, proj = pinv_on_range(np.zeros((3, 2)))
        assert not pinv.any() and not proj.any()
        assert pinv.shape == (2, 3)

    def test_weak_inverse_identity(self):
        rng = make_rng(114)
        for cols in (2, 3, 5):
            a = random_complex(rng, (4, cols))
            pinv, _ = pinv_on_range(a)
            scale = schatten_norm(a, np.inf)
            assert np.abs(a @ pinv @ a - a).max() <= 1e-10 * scale

    def test_rank_cut(self):
        a = np.diag([1.0, 1e-14])
        pinv, proj = pinv_on_range(a, rank_tol=1e-12)
        np.testing.assert_allclose(pinv, np.diag([1.0, 0.0]), atol=1e-14)
        np.testing.assert_allclose(proj, np.diag([1.0, 0.0]), atol=1e-14)
