"""Command-line driver for sweeps, boundary traces and the oracle check.

Exit codes: 0 on success, 1 on a usage/configuration error, 2 when the
oracle self-check fails.
"""

import argparse
import re
import sys

import numpy as np

from .errors import ConfigError, FermifidError, OddSize
from .fidelity import fidelity_det
from .fock import build_fock_hamiltonian, fock_ground_state, fock_overlap, state_from_angles
from .groundstate import canonical_ground_state
from .quadform import make_coupling, polar_decompose
from .sweep import (
    MODEL_BUILDERS,
    SweepConfig,
    emit_boundary,
    emit_records,
    first_order_boundary,
    run_sweep,
)

_DEFAULTS = {
    "model": "complete-graph",
    "mu": "-2:4:61",
    "gamma": "-2.5:2.5:51",
    "delta_mu": 0.1,
    "delta_gamma": 0.1,
    "format": "csv",
    "out": "-",
    "workers": 1,
    "tol_sing": None,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; surface a catchable usage error instead
    def error(self, message):
        raise ConfigError(message)

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let range values like -2:4:61 pass as arguments, not flags
        self._negative_number_matcher = re.compile(r"^-[0-9.]")


def _parse_range(text, flag):
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"{flag} expects min:max:steps, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as err:
        raise ConfigError(f"{flag} expects min:max:steps, got {text!r}") from err
    if steps < 1:
        raise ConfigError(f"{flag} needs at least one step, got {steps}")
    return (lo, hi, steps)


def _read_config_file(path):
    values = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
                key, _, value = line.partition("=")
                values[key.strip().replace("-", "_")] = value.strip()
        return values
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err


def parse_cli(argv) -> SweepConfig:
    """Parse command-line arguments (and an optional config file) into a
    SweepConfig.  Explicit flags override config-file values, which
    override the built-in defaults."""
    parser = _Parser(
        prog="fermifid",
        description="Ground-state fidelity sweeps over the (mu, gamma) plane.",
    )
    parser.add_argument("--model", help="coupling family (built in: complete-graph)")
    parser.add_argument("--size", type=int, help="number of fermionic modes (even)")
    parser.add_argument("--mu", help="mu grid as min:max:steps")
    parser.add_argument("--gamma", help="gamma grid as min:max:steps")
    parser.add_argument("--delta-mu", dest="delta_mu", type=float, help="forward step in mu")
    parser.add_argument("--delta-gamma", dest="delta_gamma", type=float, help="forward step in gamma")
    parser.add_argument("--format", choices=["csv", "json"], help="output format")
    parser.add_argument("--out", help="output path ('-' for stdout)")
    parser.add_argument("--workers", type=int, help="parallel worker processes")
    parser.add_argument("--tol-sing", dest="tol_sing", type=float, help="singularity threshold")
    parser.add_argument("--config", help="key = value config file, overridden by flags")
    parser.add_argument("--boundary", action="store_true", default=None,
                        help="trace the parity-flip boundary instead of a full sweep")
    parser.add_argument("--oracle-check", dest="oracle_check", action="store_true", default=None,
                        help="run the small-size oracle suite and exit")
    args = vars(parser.parse_args(list(argv)))

    merged = dict(_DEFAULTS)
    merged.update({"size": None, "boundary": False, "oracle_check": False})
    if args.get("config"):
        file_values = _read_config_file(args["config"])
        unknown = set(file_values) - set(merged)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_values)
    for key, value in args.items():
        if key != "config" and value is not None:
            merged[key] = value

    for key in ("oracle_check", "boundary"):
        if merged[key] not in (True, False):
            merged[key] = str(merged[key]).lower() == "true"
    if merged["format"] not in ("csv", "json"):
        raise ConfigError(f"--format must be csv or json, got {merged['format']!r}")

    if merged["size"] is None:
        if not merged["oracle_check"]:
            raise ConfigError("--size is required unless --oracle-check is given")
        merged["size"] = 2
    size = int(merged["size"])
    if size % 2 != 0 or size < 2:
        raise OddSize(f"--size must be even and >= 2, got {size}")

    cfg = SweepConfig(
        L=size,
        mu_range=_parse_range(merged["mu"], "--mu"),
        gamma_range=_parse_range(merged["gamma"], "--gamma"),
        delta_mu=float(merged["delta_mu"]),
        delta_gamma=float(merged["delta_gamma"]),
        tol_sing=None if merged["tol_sing"] in (None, "") else float(merged["tol_sing"]),
        output_format=str(merged["format"]),
        output_path=str(merged["out"]),
        workers=int(merged["workers"]),
        model=str(merged["model"]),
        boundary=bool(merged["boundary"]),
        oracle_check=bool(merged["oracle_check"]),
    )
    if cfg.delta_mu < 0 or cfg.delta_gamma < 0:
        raise ConfigError("delta-mu and delta-gamma must be non-negative")
    if cfg.workers < 1:
        raise ConfigError("--workers must be >= 1")
    if cfg.model not in MODEL_BUILDERS:
        raise ConfigError(f"unknown model {cfg.model!r}; built in: {sorted(MODEL_BUILDERS)}")
    return cfg


def run_oracle_check(sizes=(2, 4, 6, 8), per_size=8, seed=20240117, out=sys.stdout) -> bool:
    """Cross-check the polar-route fidelity and canonical state against
    exact diagonalization at small sizes.  Returns True when every
    sampled instance passes."""
    rng = np.random.default_rng(seed)
    failures = 0
    checked = 0
    for L in sizes:
        done = 0
        while done < per_size:
            A = rng.normal(size=(L, L))
            B = rng.normal(size=(L, L))
            zc1 = make_coupling((A + A.T) / 2, (B - B.T) / 2)
            A = rng.normal(size=(L, L))
            B = rng.normal(size=(L, L))
            zc2 = make_coupling((A + A.T) / 2, (B - B.T) / 2)
            pf1 = polar_decompose(zc1)
            pf2 = polar_decompose(zc2)
            if min(pf1.min_singular, pf2.min_singular) < 1e-6:
                continue
            gs1 = fock_ground_state(build_fock_hamiltonian(zc1))
            gs2 = fock_ground_state(build_fock_hamiltonian(zc2))
            if min(gs1.gap, gs2.gap) < 1e-6:
                continue
            done += 1
            checked += 1
            fid = fidelity_det(pf1.orthogonal, pf2.orthogonal).value
            exact = fock_overlap(gs1.vector, gs2.vector)
            energy_ref = (np.trace(zc1.A) - pf1.singular_values.sum()) / 2
            state = state_from_angles(canonical_ground_state(zc1))
            overlap = fock_overlap(state, gs1.vector)
            ok = (
                abs(fid - exact) < 1e-8
                and overlap > 1 - 1e-9
                and abs(gs1.energy - energy_ref) < 1e-8
            )
            if not ok:
                failures += 1
                print(
                    f"FAIL L={L}: |F-F_exact|={abs(fid - exact):.2e} "
                    f"state overlap={overlap:.12f} "
                    f"|E0-ref|={abs(gs1.energy - energy_ref):.2e}",
                    file=out,
                )
    status = "ok" if failures == 0 else "FAILED"
    print(f"oracle check: {checked} instances, {failures} failures -> {status}", file=out)
    return failures == 0


def main(argv=None) -> int:
    try:
        cfg = parse_cli(sys.argv[1:] if argv is None else argv)
    except FermifidError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    if cfg.oracle_check:
        return 0 if run_oracle_check() else 2
    try:
        if cfg.boundary:
            points = first_order_boundary(cfg.L, cfg.mu_range, cfg.gamma_range, cfg.model)
            emit_boundary(points, cfg.output_format, cfg.output_path)
        else:
            records = run_sweep(cfg)
            emit_records(records, cfg.output_format, cfg.output_path)
    except FermifidError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
