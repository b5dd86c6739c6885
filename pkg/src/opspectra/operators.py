"""Dense complex-operator algebra.

Operators between finite-dimensional complex Hilbert spaces are plain 2-d
``numpy`` arrays of ``complex128``.  This module collects the primitives the
rest of the library is built on: adjoints, outer products, positivity
checks, positive square roots, Schatten norms, deterministic Hermitian
eigendecompositions and pseudoinverses restricted to the range.

All tolerances are relative to a natural scale of the operand (operator
norm or trace norm) with an absolute floor of ``ABS_FLOOR`` so the zero
operator is always accepted where it should be.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, PositivityError, SymmetryError

ABS_FLOOR = 1e-14

__all__ = [
    "ABS_FLOOR",
    "HermitianEigenSystem",
    "adjoint",
    "as_operator",
    "hermitian_eig",
    "outer",
    "pinv_on_range",
    "psd_check",
    "psd_sqrt",
    "schatten_norm",
]


def as_operator(p) -> np.ndarray:
    """Coerce ``p`` to a finite 2-d complex128 array."""
    a = np.asarray(p, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError(f"expected a 2-d operator, got ndim={a.ndim}")
    if not np.isfinite(a).all():
        raise DimensionError("operator entries must be finite")
    return a


def adjoint(p) -> np.ndarray:
    """Conjugate transpose of ``p``."""
    return as_operator(p).conj().T.copy()


def outer(x, y) -> np.ndarray:
    """Outer product ``x (x) y`` acting as ``z -> <z, y> x``.

    Equivalently the matrix ``x y^H``.
    """
    xv = np.ravel(np.asarray(x, dtype=np.complex128))
    yv = np.ravel(np.asarray(y, dtype=np.complex128))
    return np.outer(xv, yv.conj())


def schatten_norm(p, order) -> float:
    """Schatten norm of ``p`` for ``order`` in ``{1, 2, inf}``.

    ``order=1`` is the trace norm (sum of singular values), ``order=2`` the
    Hilbert-Schmidt (Frobenius) norm and ``order=inf`` the operator norm.
    """
    a = as_operator(p)
    if order == 2:
        return float(np.linalg.norm(a))
    s = np.linalg.svd(a, compute_uv=False)
    if order == 1:
        return float(s.sum())
    if order == np.inf:
        return float(s[0]) if s.size else 0.0
    raise ValueError(f"unsupported Schatten order {order!r}")


def _hermitian_defect(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - a.conj().T, 2))


def psd_check(p, tol: float = 1e-10) -> bool:
    """Return True iff ``p`` is positive semi-definite within tolerance.

    Requires both near-Hermitian symmetry (relative to the operator norm)
    and smallest eigenvalue of the Hermitian part above ``-tol`` times the
    trace norm.  The zero operator passes.
    """
    a = as_operator(p)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"psd_check needs a square operator, got {a.shape}")
    op_norm = float(np.linalg.norm(a, 2)) if a.size else 0.0
    if _hermitian_defect(a) > max(tol * op_norm, ABS_FLOOR):
        return False
    herm = (a + a.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(herm)
    trace_norm = float(np.abs(eigs).sum())
    return bool(eigs.min(initial=0.0) >= -max(tol * trace_norm, ABS_FLOOR))


def psd_sqrt(p, tol: float = 1e-10) -> np.ndarray:
    """Positive square root of a PSD operator.

    Eigenvalues in ``[-tol * trace_norm, 0)`` are clamped to zero before
    taking square roots; genuinely negative spectra raise
    :class:`PositivityError`.
    """
    a = as_operator(p)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"psd_sqrt needs a square operator, got {a.shape}")
    if not psd_check(a, tol):
        raise PositivityError("operator is not positive semi-definite")
    herm = (a + a.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(herm)
    vals = np.clip(vals, 0.0, None)
    # Eigenvalues at round-off level are noise; left in place they would
    # inflate to sqrt scale and pollute the range of the root.
    top = float(vals.max(initial=0.0))
    vals[vals <= 256.0 * np.finfo(np.float64).eps * top] = 0.0
    root = (vecs * np.sqrt(vals)) @ vecs.conj().T
    return (root + root.conj().T) / 2.0


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Eigendecomposition of a Hermitian operator.

    ``eigenvalues`` are sorted non-increasing and ``eigenvectors`` holds the
    matching orthonormal eigenvectors as columns.
    """

    dim: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.eigenvalues, dtype=np.float64)
        vecs = np.asarray(self.eigenvectors, dtype=np.complex128)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)
        if vecs.shape != (self.dim, self.dim) or vals.shape != (self.dim,):
            raise DimensionError("inconsistent eigensystem shapes")
        if np.any(np.diff(vals) > 0):
            raise ValueError("eigenvalues must be sorted non-increasing")
        gram_defect = np.linalg.norm(
            vecs.conj().T @ vecs - np.eye(self.dim), 2
        )
        if gram_defect > 1e-12:
            raise ValueError("eigenvectors are not orthonormal")

    def reconstruct(self) -> np.ndarray:
        """Assemble ``V diag(vals) V^H``."""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # Scale each column so its largest-modulus entry (first on ties) is
    # real positive; keeps degenerate eigenvectors reproducible.
    lead_idx = np.argmax(np.abs(vecs), axis=0)
    lead = vecs[lead_idx, np.arange(vecs.shape[1])]
    mod = np.abs(lead)
    phase = np.where(mod > 0, lead / np.where(mod > 0, mod, 1.0), 1.0)
    return vecs * phase.conj()


def hermitian_eig(p, tol: float = 1e-10) -> HermitianEigenSystem:
    """Deterministic eigendecomposition of a Hermitian operator.

    Eigenvalues come back non-increasing; within exact ties the solver
    order is preserved (stable sort).  Each eigenvector is phase-normalised
    so its largest-modulus entry is real positive.
    """
    a = as_operator(p)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"hermitian_eig needs a square operator, got {a.shape}")
    op_norm = float(np.linalg.norm(a, 2)) if a.size else 0.0
    if _hermitian_defect(a) > max(tol * op_norm, ABS_FLOOR):
        raise SymmetryError("operator is not Hermitian within tolerance")
    herm = (a + a.conj().T) / 2.0
    vals, vecs = np.linalg.eigh(herm)
    order = np.argsort(-vals, kind="stable")
    return HermitianEigenSystem(
        dim=a.shape[0],
        eigenvalues=vals[order],
        eigenvectors=_fix_phases(vecs[:, order]),
    )


def pinv_on_range(p, rank_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Moore-Penrose pseudoinverse plus the projector onto the range.

    Singular values at or below ``rank_tol`` times the largest one are
    treated as zero.  Returns ``(pinv, range_projector)`` where
    ``pinv @ p`` projects onto the row space and ``p @ pinv`` equals the
    returned range projector.
    """
    a = as_operator(p)
    rows, cols = a.shape
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    smax = s[0] if s.size else 0.0
    keep = s > rank_tol * smax if smax > 0 else np.zeros_like(s, dtype=bool)
    uk = u[:, keep]
    pinv = (vh[keep].conj().T / s[keep]) @ uk.conj().T if keep.any() else np.zeros(
        (cols, rows), dtype=np.complex128
    )
    projector = uk @ uk.conj().T if keep.any() else np.zeros(
        (rows, rows), dtype=np.complex128
    )
    return pinv, projector
