"""Operator-valued transfer functions on an atomic frequency support.

A :class:`TransferFunction` stores one operator per frequency atom, with an
optional Hermitian projector per atom describing a restricted domain (used
for inverses of rank-deficient filters).  A missing ``domains`` array means
every atom is a total operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .operators import ABS_FLOOR, as_operator

FREQ_MERGE_TOL = 1e-12
DOMAIN_TOL = 1e-8

__all__ = ["DOMAIN_TOL", "FREQ_MERGE_TOL", "FirFilter", "TransferFunction"]


def _check_projector(d: np.ndarray, tol: float = 1e-10) -> None:
    scale = max(float(np.linalg.norm(d, 2)), 1.0)
    if np.linalg.norm(d - d.conj().T, 2) > tol * scale:
        raise DimensionError("domain projector is not Hermitian")
    if np.linalg.norm(d @ d - d, 2) > tol * scale:
        raise DimensionError("domain projector is not idempotent")


@dataclass(frozen=True)
class TransferFunction:
    """Per-atom operator table ``op_j`` with optional domain projectors."""

    in_dim: int
    out_dim: int
    freqs: np.ndarray
    ops: np.ndarray
    domains: np.ndarray | None = None

    def __post_init__(self):
        freqs = np.asarray(self.freqs, dtype=np.float64).ravel()
        ops = np.asarray(self.ops, dtype=np.complex128)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "ops", ops)
        n = freqs.size
        if ops.shape != (n, self.out_dim, self.in_dim):
            raise DimensionError(
                f"ops must have shape {(n, self.out_dim, self.in_dim)}, got {ops.shape}"
            )
        if not np.isfinite(ops).all():
            raise DimensionError("transfer operators must be finite")
        if self.domains is not None:
            doms = np.asarray(self.domains, dtype=np.complex128)
            object.__setattr__(self, "domains", doms)
            if doms.shape != (n, self.in_dim, self.in_dim):
                raise DimensionError(
                    f"domains must have shape {(n, self.in_dim, self.in_dim)}"
                )
            for d in doms:
                _check_projector(d)

    @property
    def n_atoms(self) -> int:
        return self.freqs.size

    @property
    def is_total(self) -> bool:
        return self.domains is None

    def domain_at(self, j: int) -> np.ndarray:
        if self.domains is None:
            return np.eye(self.in_dim, dtype=np.complex128)
        return self.domains[j]

    def apply_at(self, j: int, x: np.ndarray, tol: float = DOMAIN_TOL) -> np.ndarray:
        """Apply atom ``j`` to vectors ``x`` (last axis indexes the space).

        For a partial atom the argument must lie in the domain; a relative
        defect beyond ``tol`` raises rather than silently projecting.
        """
        x = np.asarray(x, dtype=np.complex128)
        if x.shape[-1] != self.in_dim:
            raise DimensionError(
                f"vectors of length {self.in_dim} expected, got {x.shape[-1]}"
            )
        if self.domains is not None:
            defect = x - x @ self.domains[j].T
            bad = np.linalg.norm(defect, axis=-1) > np.maximum(
                tol * np.linalg.norm(x, axis=-1), ABS_FLOOR
            )
            if np.any(bad):
                raise DimensionError(
                    f"argument outside the domain of the partial operator at atom {j}"
                )
        return x @ self.ops[j].T

    def premultiply(self, p) -> "TransferFunction":
        """Module action: compose every atom with a fixed operator ``p``."""
        p = as_operator(p)
        if p.shape[1] != self.out_dim:
            raise DimensionError("module action operator has wrong input dimension")
        return TransferFunction(
            in_dim=self.in_dim,
            out_dim=p.shape[0],
            freqs=self.freqs,
            ops=np.einsum("ab,jbc->jac", p, self.ops),
            domains=self.domains,
        )

    def __add__(self, other: "TransferFunction") -> "TransferFunction":
        if not isinstance(other, TransferFunction):
            return NotImplemented
        if (self.in_dim, self.out_dim) != (other.in_dim, other.out_dim):
            raise DimensionError("cannot add transfer functions of different dims")
        if self.freqs.size != other.freqs.size or np.any(
            np.abs(self.freqs - other.freqs) > FREQ_MERGE_TOL
        ):
            raise DimensionError("cannot add transfer functions on different supports")
        if self.domains is not None or other.domains is not None:
            raise DimensionError("addition is only defined for total transfer functions")
        return TransferFunction(
            self.in_dim, self.out_dim, self.freqs, self.ops + other.ops
        )

    @classmethod
    def identity(cls, dim: int, freqs) -> "TransferFunction":
        freqs = np.asarray(freqs, dtype=np.float64).ravel()
        ops = np.broadcast_to(
            np.eye(dim, dtype=np.complex128), (freqs.size, dim, dim)
        ).copy()
        return cls(dim, dim, freqs, ops)

    @classmethod
    def constant(cls, op, freqs) -> "TransferFunction":
        op = as_operator(op)
        freqs = np.asarray(freqs, dtype=np.float64).ravel()
        ops = np.broadcast_to(op, (freqs.size,) + op.shape).copy()
        return cls(op.shape[1], op.shape[0], freqs, ops)


@dataclass(frozen=True)
class FirFilter:
    """Finite impulse response filter: a finite map lag -> operator."""

    taps: dict

    def __post_init__(self):
        taps = {}
        shape = None
        for s, op in self.taps.items():
            op = as_operator(op)
            if shape is None:
                shape = op.shape
            elif op.shape != shape:
                raise DimensionError("all taps must share the same shape")
            taps[int(s)] = op
        if not taps:
            raise DimensionError("a FIR filter needs at least one tap")
        object.__setattr__(self, "taps", taps)

    @property
    def out_dim(self) -> int:
        return next(iter(self.taps.values())).shape[0]

    @property
    def in_dim(self) -> int:
        return next(iter(self.taps.values())).shape[1]
