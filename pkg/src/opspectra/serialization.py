"""JSON encodings of every value the command line reads or writes.

Complex numbers are serialised as two-element arrays ``[re, im]``
everywhere; floats keep full precision (shortest round-trip decimal), so a
write followed by a read reproduces every value exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bochner import AutocovarianceSequence
from .errors import DimensionError
from .povm import AtomicTracePovm
from .random_measure import ProcessSample
from .transfer import FirFilter, TransferFunction

__all__ = [
    "decode_autocov",
    "decode_fir",
    "decode_operator",
    "decode_povm",
    "decode_series",
    "decode_transfer",
    "encode_autocov",
    "encode_fir",
    "encode_operator",
    "encode_povm",
    "encode_series",
    "encode_transfer",
    "read_json",
    "write_json",
]


def _pairs(a: np.ndarray) -> list:
    flat = np.asarray(a, dtype=np.complex128).ravel()
    return [[float(z.real), float(z.imag)] for z in flat]


def _from_pairs(pairs, shape) -> np.ndarray:
    arr = np.asarray(pairs, dtype=np.float64)
    expected = (int(np.prod(shape)), 2)
    if arr.shape != expected:
        raise DimensionError(f"expected {expected[0]} [re, im] pairs")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(shape)


def encode_operator(a) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionError("operators are 2-d")
    return {"rows": a.shape[0], "cols": a.shape[1], "entries": _pairs(a)}


def decode_operator(obj) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    return _from_pairs(obj["entries"], (rows, cols))


def encode_povm(nu: AtomicTracePovm) -> dict:
    return {
        "dim": nu.dim,
        "atoms": [
            {"freq": float(f), "weight": encode_operator(w)}
            for f, w in zip(nu.freqs, nu.weights)
        ],
    }


def decode_povm(obj) -> AtomicTracePovm:
    dim = int(obj["dim"])
    freqs = [a["freq"] for a in obj["atoms"]]
    weights = [decode_operator(a["weight"]) for a in obj["atoms"]]
    return AtomicTracePovm(dim=dim, freqs=np.array(freqs), weights=np.array(weights))


def encode_autocov(g: AutocovarianceSequence) -> dict:
    return {
        "dim": g.dim,
        "max_lag": g.max_lag,
        "values": [encode_operator(v) for v in g.values],
    }


def decode_autocov(obj) -> AutocovarianceSequence:
    values = np.array([decode_operator(v) for v in obj["values"]])
    return AutocovarianceSequence(
        dim=int(obj["dim"]), max_lag=int(obj["max_lag"]), values=values
    )


def encode_transfer(phi: TransferFunction) -> dict:
    out = {
        "in_dim": phi.in_dim,
        "out_dim": phi.out_dim,
        "freqs": [float(f) for f in phi.freqs],
        "ops": [encode_operator(op) for op in phi.ops],
    }
    if phi.domains is not None:
        out["domains"] = [encode_operator(d) for d in phi.domains]
    return out


def decode_transfer(obj) -> TransferFunction:
    domains = obj.get("domains")
    if domains is not None:
        domains = np.array([decode_operator(d) for d in domains])
    return TransferFunction(
        in_dim=int(obj["in_dim"]),
        out_dim=int(obj["out_dim"]),
        freqs=np.array([float(f) for f in obj["freqs"]]),
        ops=np.array([decode_operator(op) for op in obj["ops"]]),
        domains=domains,
    )


def encode_fir(fir: FirFilter) -> dict:
    return {
        "taps": [
            {"s": int(s), "op": encode_operator(op)}
            for s, op in sorted(fir.taps.items())
        ]
    }


def decode_fir(obj) -> FirFilter:
    return FirFilter(
        taps={int(t["s"]): decode_operator(t["op"]) for t in obj["taps"]}
    )


def encode_series(x: ProcessSample) -> dict:
    return {
        "dim": x.dim,
        "period": x.period,
        "realizations": x.n_realizations,
        "values": [
            [_pairs(x.values[r, t]) for t in range(x.period)]
            for r in range(x.n_realizations)
        ],
    }


def decode_series(obj) -> ProcessSample:
    dim, period = int(obj["dim"]), int(obj["period"])
    n = int(obj["realizations"])
    values = np.empty((n, period, dim), dtype=np.complex128)
    raw = obj["values"]
    if len(raw) != n:
        raise DimensionError("realization count does not match the values")
    for r in range(n):
        for t in range(period):
            values[r, t] = _from_pairs(raw[r][t], (dim,))
    return ProcessSample(dim=dim, period=period, values=values)


def write_json(obj, path) -> None:
    """Deterministic JSON dump: sorted keys, full-precision floats."""
    text = json.dumps(obj, sort_keys=True, indent=1)
    Path(path).write_text(text + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())
