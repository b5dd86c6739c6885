"""Config-driven command line front end.

A run is described by a single JSON config document; a few flags override
its entries so one artifact reproduces one run:

    opspectra --config run.json [--seed N] [--out PATH]
              [--realizations R] [--period M] [--strict-injectivity] [--real]

The config selects the command (simulate, autocov, fit-grid, filter,
compose, invert, ckl, hfpca, verify), names its input files and carries
numeric parameters.  All file formats are the JSON encodings of
:mod:`opspectra.serialization`.  The special input value ``"bundled"``
refers to the built-in example measure.

Exit status: 0 on success, 1 on a domain error (message on stderr), 2 on
unusable configuration.  The environment variable ``OPSPECTRA_VERBOSITY``
(0 quiet, 1 default) controls informational output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .bochner import autocov_from_povm, povm_from_autocov_grid
from .decomposition import ckl_decompose, hfpca_report
from .errors import OpSpectraError
from .filtering import (
    apply_fir_time,
    compose_transfer,
    invert_transfer,
    pushforward_povm,
)
from .random_measure import (
    sample_gaussian_measure,
    sample_real_gaussian_measure,
    synthesize_process,
)
from .serialization import (
    decode_autocov,
    decode_fir,
    decode_povm,
    decode_series,
    decode_transfer,
    encode_autocov,
    encode_povm,
    encode_series,
    encode_transfer,
    read_json,
    write_json,
)
from .synthetic import bundled_example_povm
from .verify import emit_report, human_summary, run_battery

COMMANDS = (
    "simulate",
    "autocov",
    "fit-grid",
    "filter",
    "compose",
    "invert",
    "ckl",
    "hfpca",
    "verify",
)


class ConfigError(Exception):
    """Unusable run configuration (maps to exit status 2)."""


def _verbosity() -> int:
    try:
        return int(os.environ.get("OPSPECTRA_VERBOSITY", "1"))
    except ValueError:
        return 1


def _info(message: str) -> None:
    if _verbosity() >= 1:
        print(message)


def _read_input(path):
    try:
        return read_json(path)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read input {path!r}: {exc}") from exc


def _require(config: dict, key: str):
    if key not in config:
        raise ConfigError(f"config is missing the required key {key!r}")
    return config[key]


def _load_povm(config: dict, key: str = "povm"):
    ref = _require(config, key)
    if ref == "bundled":
        return bundled_example_povm()
    return decode_povm(_read_input(ref))


def _positive_int(config: dict, key: str) -> int:
    value = int(_require(config, key))
    if value <= 0:
        raise ConfigError(f"config key {key!r} must be positive")
    return value


def _out_path(config: dict) -> str:
    return _require(config, "out")


def _cmd_simulate(config: dict) -> int:
    nu = _load_povm(config)
    n_real = _positive_int(config, "realizations")
    period = _positive_int(config, "period")
    seed = int(config.get("seed", 0))
    if config.get("real", False):
        w = sample_real_gaussian_measure(nu, n_real, seed)
    else:
        w = sample_gaussian_measure(nu, n_real, seed)
    series = synthesize_process(w, period)
    write_json(encode_series(series), _out_path(config))
    _info(f"simulated {n_real} realizations over period {period}")
    return 0


def _cmd_autocov(config: dict) -> int:
    nu = _load_povm(config)
    max_lag = _positive_int(config, "max_lag")
    write_json(encode_autocov(autocov_from_povm(nu, max_lag)), _out_path(config))
    _info(f"wrote autocovariance up to lag {max_lag}")
    return 0


def _cmd_fit_grid(config: dict) -> int:
    gamma = decode_autocov(_read_input(_require(config, "autocov")))
    m = _positive_int(config, "period")
    psd_tol = float(config.get("psd_tol", 1e-8))
    nu = povm_from_autocov_grid(gamma, m, psd_tol=psd_tol)
    write_json(encode_povm(nu), _out_path(config))
    _info(f"recovered {m} grid atoms")
    return 0


def _cmd_filter(config: dict) -> int:
    if "fir" in config and "series" in config:
        fir = decode_fir(_read_input(config["fir"]))
        series = decode_series(_read_input(config["series"]))
        out = apply_fir_time(fir, series)
        write_json(encode_series(out), _out_path(config))
        _info("applied FIR filter in the time domain")
        return 0
    if "transfer" in config and "povm" in config:
        phi = decode_transfer(_read_input(config["transfer"]))
        nu = _load_povm(config)
        write_json(encode_povm(pushforward_povm(phi, nu)), _out_path(config))
        _info("wrote the pushforward spectral measure")
        return 0
    raise ConfigError(
        "filter needs either {'transfer', 'povm'} or {'fir', 'series'} inputs"
    )


def _cmd_compose(config: dict) -> int:
    outer_tf = decode_transfer(_read_input(_require(config, "outer")))
    inner_tf = decode_transfer(_read_input(_require(config, "inner")))
    rank_tol = float(config.get("rank_tol", 1e-12))
    composed = compose_transfer(outer_tf, inner_tf, rank_tol=rank_tol)
    write_json(encode_transfer(composed), _out_path(config))
    _info("wrote the composed transfer function")
    return 0


def _cmd_invert(config: dict) -> int:
    phi = decode_transfer(_read_input(_require(config, "transfer")))
    nu = _load_povm(config)
    rank_tol = float(config.get("rank_tol", 1e-10))
    strict = bool(config.get("strict_injectivity", False))
    inverse = invert_transfer(phi, nu, rank_tol=rank_tol, strict=strict)
    write_json(encode_transfer(inverse), _out_path(config))
    _info("wrote the inverse transfer function")
    return 0


def _cmd_ckl(config: dict) -> int:
    nu = _load_povm(config)
    sys_ = ckl_decompose(nu)
    atoms = []
    for j in range(sys_.n_atoms):
        vectors = [
            [[float(z.real), float(z.imag)] for z in sys_.eigenvectors[j][:, n]]
            for n in range(sys_.dim)
        ]
        atoms.append(
            {
                "freq": float(sys_.povm.freqs[j]),
                "sigmas": [float(s) for s in sys_.eigenvalues[j]],
                "vectors": vectors,
                "rank": int(sys_.ranks[j]),
                "base_weight": float(sys_.base_weights[j]),
            }
        )
    write_json({"dim": sys_.dim, "atoms": atoms}, _out_path(config))
    _info(f"wrote eigendecompositions of {sys_.n_atoms} atoms")
    return 0


def _cmd_hfpca(config: dict) -> int:
    nu = _load_povm(config)
    q = _require(config, "q")
    report = hfpca_report(nu, q)
    write_json(report, _out_path(config))
    _info(
        f"optimal error {report['optimal_error']:.6e},"
        f" achieved {report['achieved_error']:.6e}"
    )
    return 0


def _cmd_verify(config: dict) -> int:
    seed = int(config.get("seed", 20260809))
    povm = _load_povm(config) if "povm" in config else None
    results = run_battery(seed=seed, povm=povm)
    out = config.get("out")
    if out is not None:
        emit_report(results, out)
    if _verbosity() >= 1:
        print(human_summary(results))
    return 0 if all(r.passed for r in results) else 1


_DISPATCH = {
    "simulate": _cmd_simulate,
    "autocov": _cmd_autocov,
    "fit-grid": _cmd_fit_grid,
    "filter": _cmd_filter,
    "compose": _cmd_compose,
    "invert": _cmd_invert,
    "ckl": _cmd_ckl,
    "hfpca": _cmd_hfpca,
    "verify": _cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opspectra",
        description="Spectral calculus for vector-valued stationary time"
        " series on atomic frequency measures.",
    )
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--out", help="override the output path")
    parser.add_argument(
        "--realizations", type=int, help="override the ensemble size"
    )
    parser.add_argument("--period", type=int, help="override the period / grid size")
    parser.add_argument(
        "--strict-injectivity",
        action="store_true",
        help="require injectivity of every atom operator when inverting",
    )
    parser.add_argument(
        "--real",
        action="store_true",
        help="real-valued synthesis via conjugate-symmetric atom pairing",
    )
    return parser


def load_config(args) -> dict:
    try:
        config = read_json(args.config)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {args.config!r}: {exc}") from exc
    if not isinstance(config, dict):
        raise ConfigError("config must be a JSON object")
    config = dict(config)
    if args.seed is not None:
        config["seed"] = args.seed
    if args.out is not None:
        config["out"] = args.out
    if args.realizations is not None:
        config["realizations"] = args.realizations
    if args.period is not None:
        config["period"] = args.period
    if args.strict_injectivity:
        config["strict_injectivity"] = True
    if args.real:
        config["real"] = True
    command = config.get("command")
    if command not in COMMANDS:
        raise ConfigError(
            f"config key 'command' must be one of {', '.join(COMMANDS)}"
        )
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[config["command"]](config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OpSpectraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
