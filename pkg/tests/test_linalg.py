import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from generators import random_hermitian
from tracediscord import linalg
from tracediscord.errors import NonHermitian

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def charpoly_roots(m: np.ndarray) -> np.ndarray:
    """Eigenvalues as roots of the characteristic polynomial.

    Coefficients come from Faddeev-LeVerrier, the roots from numpy's
    companion-matrix solver, so nothing is shared with eigvalsh.
    """
    n = m.shape[0]
    coeffs = [1.0 + 0j]
    mk = np.zeros_like(m)
    for k in range(1, n + 1):
        mk = m @ mk + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(m @ mk) / k)
    return np.sort(np.roots(coeffs).real)


class TestHermitianEigenvalues:
    def test_identity(self):
        assert np.allclose(linalg.hermitian_eigenvalues(np.eye(4)), [1, 1, 1, 1])

    def test_diagonal_sorted(self):
        np.testing.assert_array_equal(linalg.hermitian_eigenvalues(np.diag([2.0, -1.0, 0.0, 3.0])), [-1, 0, 2, 3])

    def test_rejects_non_hermitian(self):
        m = np.eye(4, dtype=complex)
        m[0, 1] = 1e-9
        with pytest.raises(NonHermitian, match="1.000e-09"):
            linalg.hermitian_eigenvalues(m)

    def test_tiny_asymmetry_is_symmetrized(self):
        m = np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex)
        m[0, 1] = 1e-13
        assert np.allclose(linalg.hermitian_eigenvalues(m), [1, 2, 3, 4], atol=1e-12)

    @pytest.mark.parametrize("shape", [(3, 3), (4, 5)])
    def test_shape_checked(self, shape):
        with pytest.raises(ValueError):
            linalg.hermitian_eigenvalues(np.zeros(shape))

    def test_matches_characteristic_polynomial(self, rng):
        worst = 0.0
        for _ in range(200):
            m = random_hermitian(rng)
            worst = max(worst, np.max(np.abs(linalg.hermitian_eigenvalues(m) - charpoly_roots(m))))
        assert worst <= 1e-10

    def test_reconstruction(self, rng):
        m = random_hermitian(rng)
        w, v = np.linalg.eigh(m)
        assert np.max(np.abs(v @ np.diag(linalg.hermitian_eigenvalues(m)) @ v.conj().T - m)) <= 1e-10


class TestTraceNorm:
    def test_identity(self):
        assert linalg.trace_norm(np.eye(4)) == pytest.approx(4.0)

    def test_diagonal(self):
        assert linalg.trace_norm(np.diag([1.0, -1.0, 0.0, 0.0])) == pytest.approx(2.0)

    def test_hermitian_matches_sqrt_oracle(self, rng):
        for _ in range(100):
            m = random_hermitian(rng)
            oracle = np.sum(np.sqrt(np.clip(np.linalg.eigvalsh(m.conj().T @ m), 0, None)))
            assert linalg.trace_norm(m) == pytest.approx(oracle, abs=1e-10)
            assert linalg.trace_norm(m) == np.sum(np.abs(linalg.hermitian_eigenvalues(m)))

    def test_non_hermitian_uses_singular_values(self, rng):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert linalg.trace_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False).sum(), rel=1e-12)

    def test_rejects_non_finite(self):
        m = np.eye(4)
        m[1, 1] = np.nan
        with pytest.raises(ValueError, match="non-finite"):
            linalg.trace_norm(m)


class TestSignedSvd:
    def test_identity(self):
        svd = linalg.signed_svd_so3(np.eye(3))
        np.testing.assert_allclose(np.abs(svd.gamma), [1, 1, 1])
        np.testing.assert_allclose(svd.reconstruct(), np.eye(3), atol=1e-12)

    def test_reflection_absorbed_into_one_sign(self):
        svd = linalg.signed_svd_so3(np.diag([1.0, 1.0, -1.0]))
        assert np.sum(svd.gamma < 0) == 1
        np.testing.assert_allclose(np.abs(svd.gamma), [1, 1, 1])
        np.testing.assert_allclose(svd.reconstruct(), np.diag([1.0, 1.0, -1.0]), atol=1e-12)

    @given(arrays(float, (3, 3), elements=finite))
    def test_invariants(self, g):
        svd = linalg.signed_svd_so3(g)
        scale = max(1.0, np.max(np.abs(g)))
        assert np.max(np.abs(svd.reconstruct() - g)) <= 1e-12 * scale
        for r in (svd.o, svd.omega):
            assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)
            assert np.max(np.abs(r.T @ r - np.eye(3))) <= 1e-12
        mags = np.abs(svd.gamma)
        assert mags[0] >= mags[1] >= mags[2]
        np.testing.assert_allclose(mags, np.linalg.svd(g, compute_uv=False), atol=1e-12 * scale)
        det = np.linalg.det(g)
        if abs(det) > 1e-9 * scale**3:
            assert np.sign(np.prod(svd.gamma)) == np.sign(det)

    def test_rank_deficient(self):
        g = np.outer([1.0, 2.0, 2.0], [0.0, 0.6, 0.8])
        svd = linalg.signed_svd_so3(g)
        assert abs(svd.gamma[1]) <= 1e-15 and abs(svd.gamma[2]) <= 1e-15
        np.testing.assert_allclose(svd.reconstruct(), g, atol=1e-12)


class TestVectors:
    def test_cross_basis(self):
        np.testing.assert_array_equal(linalg.cross([1, 0, 0], [0, 1, 0]), [0, 0, 1])

    def test_dot_basis(self):
        assert linalg.dot([1, 0, 0], [0, 1, 0]) == 0.0

    @given(arrays(float, 3, elements=finite), arrays(float, 3, elements=finite))
    def test_lagrange_identity(self, a, b):
        c = linalg.cross(a, b)
        lhs = c @ c + linalg.dot(a, b) ** 2
        rhs = (a @ a) * (b @ b)
        assert lhs == pytest.approx(rhs, abs=1e-14 * max(1.0, rhs))

    @given(arrays(float, 3, elements=finite))
    def test_cross_self_vanishes(self, a):
        np.testing.assert_array_equal(linalg.cross(a, a), 0.0)
