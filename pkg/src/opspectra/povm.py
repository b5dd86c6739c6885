"""Atomic trace-class positive operator valued measures on (-pi, pi].

A measure is a finite list of frequency atoms, each carrying a PSD
trace-class weight operator.  Every integral is then a finite sum, which
makes the identities of the operator calculus exactly testable:

* variation measure and Radon-Nikodym densities,
* integrals of scalar and operator-valued functions,
* the Gramian ``<Phi, Psi>_nu`` and its norm,
* square-integrability of (possibly partial) transfer functions,
* per-atom eigendecompositions.

Absolutely continuous spectra are represented by atoms on a fine uniform
grid with quadrature weights folded into the atom weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AbsoluteContinuityError,
    DimensionError,
    IntegrabilityError,
    PositivityError,
)
from .operators import (
    ABS_FLOOR,
    HermitianEigenSystem,
    hermitian_eig,
    psd_check,
    psd_sqrt,
)
from .transfer import DOMAIN_TOL, FREQ_MERGE_TOL, TransferFunction

__all__ = [
    "AtomicTracePovm",
    "CheckReport",
    "PovmDensity",
    "eigendecompose",
    "gramian_inner",
    "gramian_norm",
    "operator_integral",
    "radon_nikodym",
    "scalar_integral",
    "square_integrability_check",
    "variation_measure",
    "wrap_frequencies",
]


def wrap_frequencies(freqs) -> np.ndarray:
    """Map frequencies into the canonical interval (-pi, pi]."""
    f = np.asarray(freqs, dtype=np.float64)
    r = np.mod(f + np.pi, 2.0 * np.pi)
    r = np.where(r == 0.0, 2.0 * np.pi, r)
    return r - np.pi


@dataclass(frozen=True)
class AtomicTracePovm:
    """Finite atomic trace-class p.o.v.m. with strictly increasing atoms."""

    dim: int
    freqs: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=np.float64).ravel()
        weights = np.asarray(self.weights, dtype=np.complex128)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "weights", weights)
        if freqs.size == 0:
            raise DimensionError("a measure needs at least one atom")
        if weights.shape != (freqs.size, self.dim, self.dim):
            raise DimensionError(
                f"weights must have shape {(freqs.size, self.dim, self.dim)},"
                f" got {weights.shape}"
            )
        if np.any(freqs <= -np.pi) or np.any(freqs > np.pi):
            raise DimensionError("frequencies must lie in (-pi, pi]")
        if np.any(np.diff(freqs) <= 0):
            raise DimensionError("frequencies must be strictly increasing")
        for j, w in enumerate(weights):
            if not psd_check(w, 1e-10):
                raise PositivityError(f"atom {j} weight is not PSD")

    @classmethod
    def from_atoms(cls, dim: int, freqs, weights) -> "AtomicTracePovm":
        """Build a measure, canonicalising frequencies and merging duplicates.

        Frequencies are wrapped into (-pi, pi]; atoms closer than
        ``FREQ_MERGE_TOL`` are merged by adding their weights.
        """
        freqs = wrap_frequencies(freqs)
        weights = np.asarray(weights, dtype=np.complex128)
        order = np.argsort(freqs, kind="stable")
        freqs, weights = freqs[order], weights[order]
        merged_f, merged_w = [], []
        for f, w in zip(freqs, weights):
            if merged_f and f - merged_f[-1] <= FREQ_MERGE_TOL:
                merged_w[-1] = merged_w[-1] + w
            else:
                merged_f.append(f)
                merged_w.append(w.copy())
        return cls(dim, np.array(merged_f), np.array(merged_w))

    @property
    def n_atoms(self) -> int:
        return self.freqs.size

    def total_mass(self) -> np.ndarray:
        """The operator ``nu((-pi, pi])``, i.e. the sum of all weights."""
        return self.weights.sum(axis=0)

    def traces(self) -> np.ndarray:
        tr = np.trace(self.weights, axis1=1, axis2=2).real
        return np.maximum(tr, 0.0)

    def positive_mass_mask(self) -> np.ndarray:
        """Atoms carrying variation mass; zero-mass atoms are excluded from
        almost-everywhere conditions."""
        tr = self.traces()
        return tr > ABS_FLOOR * max(1.0, float(tr.max(initial=0.0)))

    def sqrt_weights(self) -> np.ndarray:
        """Positive square roots of the atom weights, stacked."""
        return np.stack([psd_sqrt(w) for w in self.weights])


@dataclass(frozen=True)
class PovmDensity:
    """Radon-Nikodym data: scalar base weights and per-atom PSD densities."""

    base_weights: np.ndarray
    densities: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "base_weights", np.asarray(self.base_weights, dtype=np.float64)
        )
        object.__setattr__(
            self, "densities", np.asarray(self.densities, dtype=np.complex128)
        )

    def reconstruct(self) -> np.ndarray:
        """Per-atom weights ``w_j * g_j``."""
        return self.base_weights[:, None, None] * self.densities


def variation_measure(nu: AtomicTracePovm) -> np.ndarray:
    """Per-atom variation masses ``trace(nu_j)``.

    Zero-trace atoms are retained; use ``nu.positive_mass_mask()`` to flag
    them.
    """
    return nu.traces()


def radon_nikodym(nu: AtomicTracePovm, mu=None) -> PovmDensity:
    """Density of the measure against ``mu`` (default: its variation).

    ``mu`` is given by its per-atom masses and must dominate: a zero mass is
    only allowed where the atom itself carries no mass.  With the default
    choice the densities have unit trace on atoms of positive mass.
    """
    traces = nu.traces()
    if mu is None:
        w = traces.copy()
    else:
        w = np.asarray(mu, dtype=np.float64).ravel()
        if w.shape != traces.shape:
            raise DimensionError("dominating weights must align with the atoms")
        if np.any(w < 0):
            raise AbsoluteContinuityError("dominating weights must be non-negative")
        floor = ABS_FLOOR * max(1.0, float(traces.max(initial=0.0)))
        if np.any((w <= 0) & (traces > floor)):
            j = int(np.argmax((w <= 0) & (traces > floor)))
            raise AbsoluteContinuityError(
                f"atom {j} has positive mass but zero dominating weight"
            )
    densities = np.zeros_like(nu.weights)
    for j, wj in enumerate(w):
        if wj > 0:
            densities[j] = nu.weights[j] / wj
    return PovmDensity(base_weights=w, densities=densities)


def scalar_integral(nu: AtomicTracePovm, f) -> np.ndarray:
    """Integral of a scalar function ``sum_j f_j nu_j``."""
    fv = np.asarray(f, dtype=np.complex128).ravel()
    if fv.shape != nu.freqs.shape:
        raise DimensionError("scalar function values must align with the atoms")
    if not np.isfinite(fv).all():
        raise DimensionError("scalar function values must be finite")
    return np.einsum("j,jmn->mn", fv, nu.weights)


@dataclass(frozen=True)
class CheckReport:
    """Boolean outcome plus a per-atom record of a measure-wide check."""

    ok: bool
    entries: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok

    def failures(self) -> list:
        return [e for e in self.entries if not e["passed"]]


def _validate_alignment(phi: TransferFunction, nu: AtomicTracePovm) -> None:
    if phi.in_dim != nu.dim:
        raise DimensionError(
            f"transfer input dim {phi.in_dim} does not match measure dim {nu.dim}"
        )
    if phi.n_atoms != nu.n_atoms:
        raise DimensionError("transfer function and measure atom counts differ")


def square_integrability_check(
    phi: TransferFunction, nu: AtomicTracePovm, tol: float = DOMAIN_TOL
) -> CheckReport:
    """Square integrability of ``phi`` against the measure.

    At finite dimension a total operator is always square integrable; a
    partial atom additionally needs the range of ``nu_j^{1/2}`` inside its
    domain, checked as ``||(I - D_j) nu_j^{1/2}|| <= tol ||nu_j^{1/2}||``.
    Zero-mass atoms are skipped (they carry no variation mass).
    """
    _validate_alignment(phi, nu)
    mask = nu.positive_mass_mask()
    entries = []
    for j in range(nu.n_atoms):
        if not mask[j]:
            entries.append(
                {"atom": j, "freq": float(nu.freqs[j]), "passed": True,
                 "residual": 0.0, "reason": "zero mass"}
            )
            continue
        if phi.domains is None:
            entries.append(
                {"atom": j, "freq": float(nu.freqs[j]), "passed": True,
                 "residual": 0.0, "reason": "total operator"}
            )
            continue
        root = psd_sqrt(nu.weights[j])
        denom = float(np.linalg.norm(root, 2))
        defect = (np.eye(nu.dim) - phi.domains[j]) @ root
        residual = float(np.linalg.norm(defect, 2)) / max(denom, ABS_FLOOR)
        entries.append(
            {"atom": j, "freq": float(nu.freqs[j]), "passed": residual <= tol,
             "residual": residual, "reason": "range containment"}
        )
    return CheckReport(ok=all(e["passed"] for e in entries), entries=entries)


def _require_integrable(
    phi: TransferFunction, nu: AtomicTracePovm, label: str
) -> None:
    report = square_integrability_check(phi, nu)
    if not report:
        j = report.failures()[0]["atom"]
        raise IntegrabilityError(
            f"{label} is not square integrable against the measure"
            f" (first failing atom: {j})"
        )


def operator_integral(
    phi: TransferFunction,
    nu: AtomicTracePovm,
    psi: TransferFunction,
    mu=None,
) -> np.ndarray:
    """The integral ``int Phi dnu Psi^H`` as a finite sum.

    Computed through the density route
    ``sum_j w_j (Phi_j g_j^{1/2})(Psi_j g_j^{1/2})^H``; the value does not
    depend on the dominating weights, and for total operators it equals
    ``sum_j Phi_j nu_j Psi_j^H``.
    """
    _require_integrable(phi, nu, "left transfer function")
    _require_integrable(psi, nu, "right transfer function")
    if psi.in_dim != nu.dim:
        raise DimensionError("right transfer function dimension mismatch")
    density = radon_nikodym(nu, mu)
    acc = np.zeros((phi.out_dim, psi.out_dim), dtype=np.complex128)
    for j in range(nu.n_atoms):
        wj = density.base_weights[j]
        if wj <= 0:
            continue
        root = psd_sqrt(density.densities[j])
        a = phi.ops[j] @ root
        b = psi.ops[j] @ root
        acc += wj * (a @ b.conj().T)
    return acc


def gramian_inner(
    phi: TransferFunction, psi: TransferFunction, nu: AtomicTracePovm, mu=None
) -> np.ndarray:
    """Gramian ``<Phi, Psi>_nu = int Phi dnu Psi^H``."""
    return operator_integral(phi, nu, psi, mu)


def gramian_norm(phi: TransferFunction, nu: AtomicTracePovm) -> float:
    """Gramian norm ``||Phi||_nu = trace(<Phi, Phi>_nu)^{1/2}``."""
    tr = np.trace(gramian_inner(phi, phi, nu)).real
    return float(np.sqrt(max(tr, 0.0)))


def eigendecompose(nu: AtomicTracePovm, mu=None) -> list[HermitianEigenSystem]:
    """Per-atom eigendecomposition of the density against ``mu``.

    With the default dominating weights the eigenvalues of each positive
    mass atom sum to one.
    """
    density = radon_nikodym(nu, mu)
    return [hermitian_eig(g) for g in density.densities]
