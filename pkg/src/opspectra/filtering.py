"""Lag-invariant linear filters as operator-valued transfer functions.

A filter acts on a sampled random measure atom by atom; its effect on the
intensity measure is the pushforward ``nu -> Phi nu Phi^H``.  Composition
is pointwise, inversion restricts to the subspace actually charged by the
measure (or, in strict mode, demands injectivity of every atom operator),
and finite impulse response filters connect the time domain to the
spectral domain exactly on grid-supported measures.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    AlignmentError,
    DimensionError,
    IntegrabilityError,
    NonInvertibleError,
)
from .operators import hermitian_eig, pinv_on_range, psd_sqrt
from .povm import AtomicTracePovm, CheckReport, square_integrability_check
from .random_measure import ProcessSample, RandomMeasure
from .transfer import DOMAIN_TOL, FREQ_MERGE_TOL, FirFilter, TransferFunction

__all__ = [
    "apply_filter",
    "apply_fir_time",
    "check_filterable",
    "compose_transfer",
    "fir_to_transfer",
    "invert_transfer",
    "modulate_transfer",
    "pushforward_povm",
]


def _check_alignment(freqs_a: np.ndarray, freqs_b: np.ndarray) -> None:
    if freqs_a.size != freqs_b.size or np.any(
        np.abs(freqs_a - freqs_b) > FREQ_MERGE_TOL
    ):
        raise AlignmentError("frequency supports do not match")


def check_filterable(
    phi: TransferFunction, nu: AtomicTracePovm, tol: float = DOMAIN_TOL
) -> CheckReport:
    """Whether ``phi`` lies in the modular spectral domain of the measure.

    Delegates to the square-integrability check after validating that the
    frequency supports coincide.
    """
    _check_alignment(phi.freqs, nu.freqs)
    return square_integrability_check(phi, nu, tol)


def _require_filterable(
    phi: TransferFunction, nu: AtomicTracePovm, tol: float = DOMAIN_TOL
) -> None:
    report = check_filterable(phi, nu, tol)
    if not report:
        j = report.failures()[0]["atom"]
        raise IntegrabilityError(
            f"transfer function is not applicable to the measure"
            f" (first failing atom: {j})"
        )


def pushforward_povm(phi: TransferFunction, nu: AtomicTracePovm) -> AtomicTracePovm:
    """Intensity of the filtered measure: atoms ``(Phi_j nu_j^{1/2})(...)^H``."""
    _require_filterable(phi, nu)
    weights = np.empty((nu.n_atoms, phi.out_dim, phi.out_dim), dtype=np.complex128)
    for j in range(nu.n_atoms):
        b = phi.ops[j] @ psd_sqrt(nu.weights[j])
        w = b @ b.conj().T
        weights[j] = (w + w.conj().T) / 2.0
    return AtomicTracePovm(dim=phi.out_dim, freqs=nu.freqs, weights=weights)


def apply_filter(
    phi: TransferFunction, w: RandomMeasure, tol: float = DOMAIN_TOL
) -> RandomMeasure:
    """Filter a sampled measure: samples ``Phi_j Z_j``, pushforward intensity."""
    _require_filterable(phi, w.intensity, tol)
    samples = np.empty(
        (w.n_atoms, w.n_realizations, phi.out_dim), dtype=np.complex128
    )
    for j in range(w.n_atoms):
        samples[j] = phi.apply_at(j, w.samples[j], tol)
    return RandomMeasure(
        dim=phi.out_dim,
        freqs=w.freqs,
        samples=samples,
        intensity=pushforward_povm(phi, w.intensity),
    )


def _null_space_projector(
    constraints: np.ndarray, rank_tol: float, scale: float
) -> np.ndarray:
    """Projector onto the null space of stacked constraint rows.

    ``scale`` is the natural magnitude of a non-degenerate constraint; the
    rank cut is relative to it so an all-noise constraint matrix (domain is
    everything) is recognised as rank zero.
    """
    n = constraints.shape[1]
    if constraints.size == 0:
        return np.eye(n, dtype=np.complex128)
    u, s, vh = np.linalg.svd(constraints, full_matrices=True)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rank_tol * max(smax, scale)))
    basis = vh[rank:].conj().T
    return basis @ basis.conj().T


def compose_transfer(
    psi: TransferFunction, phi: TransferFunction, rank_tol: float = 1e-12
) -> TransferFunction:
    """Pointwise composition ``Psi_j Phi_j``.

    When an atom of ``psi`` is partial, the composed domain at that atom is
    the preimage of its domain under ``Phi_j`` (intersected with the domain
    of ``Phi_j`` itself), realised as a projector via a rank-revealing SVD.
    """
    _check_alignment(psi.freqs, phi.freqs)
    if psi.in_dim != phi.out_dim:
        raise DimensionError(
            f"inner dimensions do not match: {psi.in_dim} vs {phi.out_dim}"
        )
    ops = np.einsum("jab,jbc->jac", psi.ops, phi.ops)
    if psi.domains is None and phi.domains is None:
        return TransferFunction(phi.in_dim, psi.out_dim, phi.freqs, ops)
    domains = np.empty((phi.n_atoms, phi.in_dim, phi.in_dim), dtype=np.complex128)
    eye_in = np.eye(phi.in_dim, dtype=np.complex128)
    for j in range(phi.n_atoms):
        rows = []
        scale = 0.0
        if phi.domains is not None:
            rows.append(eye_in - phi.domains[j])
            scale = 1.0
        if psi.domains is not None:
            eye_mid = np.eye(psi.in_dim, dtype=np.complex128)
            rows.append((eye_mid - psi.domains[j]) @ phi.ops[j])
            scale = max(scale, float(np.linalg.norm(phi.ops[j], 2)))
        stacked = np.vstack(rows) if rows else np.zeros((0, phi.in_dim))
        domains[j] = _null_space_projector(stacked, rank_tol, max(scale, 1.0))
    return TransferFunction(phi.in_dim, psi.out_dim, phi.freqs, ops, domains)


def _support_basis(weight: np.ndarray, rank_tol: float) -> np.ndarray:
    """Orthonormal basis of the range of a PSD atom weight."""
    eig = hermitian_eig(weight)
    cut = rank_tol * max(float(eig.eigenvalues.max(initial=0.0)), 0.0)
    keep = eig.eigenvalues > cut
    return eig.eigenvectors[:, keep]


def invert_transfer(
    phi: TransferFunction,
    nu: AtomicTracePovm,
    rank_tol: float = 1e-10,
    strict: bool = False,
) -> TransferFunction:
    """Inverse transfer function of an injective filter.

    In the default mode each atom operator only needs to be injective on
    the subspace charged by the measure (the range of ``nu_j^{1/2}``),
    which is the weakest condition making the sample round trip exact on
    supported samples; the inverse maps ``Phi_j z`` back to ``z`` for ``z``
    in that subspace and carries the projector onto its domain
    ``Phi_j(range(nu_j))``.  With ``strict=True`` every positive-mass atom
    operator must be injective on the whole space and the inverse is the
    pseudoinverse with domain ``Im(Phi_j)``.  Zero-mass atoms invert to the
    zero operator.
    """
    _check_alignment(phi.freqs, nu.freqs)
    if phi.in_dim != nu.dim:
        raise DimensionError("transfer input dimension must match the measure")
    if phi.domains is not None:
        # a partial transfer must be applicable before it can be inverted
        _require_filterable(phi, nu)
    mask = nu.positive_mass_mask()
    inv_ops = np.zeros((phi.n_atoms, phi.in_dim, phi.out_dim), dtype=np.complex128)
    domains = np.empty((phi.n_atoms, phi.out_dim, phi.out_dim), dtype=np.complex128)
    eye_out = np.eye(phi.out_dim, dtype=np.complex128)
    for j in range(phi.n_atoms):
        if not mask[j]:
            domains[j] = eye_out
            continue
        op = phi.ops[j]
        smax = float(np.linalg.norm(op, 2))
        if strict:
            s = np.linalg.svd(op, compute_uv=False)
            smin = float(s[-1]) if s.size == phi.in_dim else 0.0
            if phi.in_dim > phi.out_dim or smin <= rank_tol * smax:
                raise NonInvertibleError(
                    f"atom {j}: operator is not injective"
                    f" (singular value gap {smin:.3e} vs"
                    f" threshold {rank_tol * smax:.3e})"
                )
            pinv, range_proj = pinv_on_range(op, rank_tol)
            inv_ops[j] = pinv
            domains[j] = range_proj
            continue
        basis = _support_basis(nu.weights[j], rank_tol)
        restricted = op @ basis
        s = np.linalg.svd(restricted, compute_uv=False)
        smin = float(s[-1]) if s.size == basis.shape[1] else 0.0
        if basis.shape[1] > phi.out_dim or smin <= rank_tol * smax:
            raise NonInvertibleError(
                f"atom {j}: operator is not injective on the supported subspace"
                f" (singular value gap {smin:.3e} vs"
                f" threshold {rank_tol * smax:.3e})"
            )
        pinv, range_proj = pinv_on_range(restricted, rank_tol)
        inv_ops[j] = basis @ pinv
        domains[j] = range_proj
    return TransferFunction(
        in_dim=phi.out_dim,
        out_dim=phi.in_dim,
        freqs=phi.freqs,
        ops=inv_ops,
        domains=domains,
    )


def fir_to_transfer(fir: FirFilter, freqs) -> TransferFunction:
    """Frequency response ``sum_s F_s exp(-i lambda s)`` of a FIR filter."""
    freqs = np.asarray(freqs, dtype=np.float64).ravel()
    ops = np.zeros(
        (freqs.size, fir.out_dim, fir.in_dim), dtype=np.complex128
    )
    for s, op in fir.taps.items():
        ops += np.exp(-1j * freqs * s)[:, None, None] * op
    return TransferFunction(fir.in_dim, fir.out_dim, freqs, ops)


def apply_fir_time(fir: FirFilter, x: ProcessSample) -> ProcessSample:
    """Circular convolution ``Y_t = sum_s F_s X_{(t - s) mod M}``.

    On measures supported by the even-M uniform grid the process is exactly
    M-periodic and this equals the spectral route
    ``synthesize(apply_filter(fir_to_transfer(F), W))``.
    """
    if fir.in_dim != x.dim:
        raise DimensionError("FIR input dimension must match the process")
    out = np.zeros(
        (x.n_realizations, x.period, fir.out_dim), dtype=np.complex128
    )
    for s, op in fir.taps.items():
        rolled = np.roll(x.values, shift=s, axis=1)
        out += rolled @ op.T
    return ProcessSample(dim=fir.out_dim, period=x.period, values=out)


def modulate_transfer(phi: TransferFunction, h: int) -> TransferFunction:
    """Multiply every atom by the character value ``exp(i lambda h)``.

    Filtering with the modulated function then synthesises the process
    shifted by ``h`` time steps; domains are unchanged.
    """
    phases = np.exp(1j * phi.freqs * int(h))
    return TransferFunction(
        in_dim=phi.in_dim,
        out_dim=phi.out_dim,
        freqs=phi.freqs,
        ops=phases[:, None, None] * phi.ops,
        domains=phi.domains,
    )
