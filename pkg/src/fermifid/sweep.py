"""Parameter-grid sweeps of the minimum directional fidelity.

A sweep walks an (mu, gamma) grid, and at every point compares the ground
state with the states at (mu + dmu, gamma) and (mu, gamma + dgamma).
Records are produced in row-major grid order (gamma outer, mu inner) and
are deterministic: the per-point computation is a pure function evaluated
under a single BLAS thread, so worker count never changes the output.
"""

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits

from .errors import ConfigError
from .fidelity import fidelity_det
from .models import CompleteGraphParams, complete_graph
from .quadform import log_abs_det, polar_decompose

MODEL_BUILDERS = {
    # extension point: map model name -> callable(mu, gamma, L) -> QuadraticCoupling
    "complete-graph": lambda mu, gamma, L: complete_graph(CompleteGraphParams(mu, gamma, L)),
}

CSV_HEADER = "mu,gamma,F_dmu,F_dgamma,F_min,det_sign,min_singular,singular_flag"


@dataclass(frozen=True)
class SweepConfig:
    """Settings of one sweep run.

    ``mu_range`` and ``gamma_range`` are (min, max, steps) with steps >= 1
    points placed linspace-style.  ``tol_sing`` of None uses the relative
    default of the polar decomposition.
    """

    L: int
    mu_range: tuple
    gamma_range: tuple
    delta_mu: float = 0.1
    delta_gamma: float = 0.1
    tol_sing: float | None = None
    output_format: str = "csv"
    output_path: str = "-"
    workers: int = 1
    model: str = "complete-graph"
    boundary: bool = False
    oracle_check: bool = False


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: directional fidelities, parity sign and gap proxy."""

    mu: float
    gamma: float
    F_dmu: float
    F_dgamma: float
    F_min: float
    det_sign: int
    min_singular: float
    singular_flag: bool


def _validate(cfg: SweepConfig):
    if cfg.L < 2 or cfg.L % 2 != 0:
        raise ConfigError(f"size must be even and >= 2, got {cfg.L}")
    for name, rng in (("mu", cfg.mu_range), ("gamma", cfg.gamma_range)):
        if len(rng) != 3 or int(rng[2]) < 1:
            raise ConfigError(f"{name} range needs (min, max, steps >= 1), got {rng}")
    if cfg.delta_mu < 0 or cfg.delta_gamma < 0:
        raise ConfigError("delta-mu and delta-gamma must be non-negative")
    if cfg.workers < 1:
        raise ConfigError("workers must be >= 1")
    if cfg.output_format not in ("csv", "json"):
        raise ConfigError(f"unknown output format {cfg.output_format!r}")
    if cfg.model not in MODEL_BUILDERS:
        raise ConfigError(f"unknown model {cfg.model!r}; built in: {sorted(MODEL_BUILDERS)}")


def grid_values(rng) -> np.ndarray:
    lo, hi, steps = rng
    return np.linspace(float(lo), float(hi), int(steps))


def _point_record(args) -> SweepRecord:
    cfg, mu, gamma = args
    build = MODEL_BUILDERS[cfg.model]
    with threadpool_limits(limits=1):
        center = polar_decompose(build(mu, gamma, cfg.L), cfg.tol_sing)
        t_mu = polar_decompose(build(mu + cfg.delta_mu, gamma, cfg.L), cfg.tol_sing).orthogonal
        t_gamma = polar_decompose(build(mu, gamma + cfg.delta_gamma, cfg.L), cfg.tol_sing).orthogonal
        f_mu = fidelity_det(center.orthogonal, t_mu).value
        f_gamma = fidelity_det(center.orthogonal, t_gamma).value
        _, det_sign = log_abs_det(center.orthogonal)
    return SweepRecord(
        mu=float(mu),
        gamma=float(gamma),
        F_dmu=f_mu,
        F_dgamma=f_gamma,
        F_min=min(f_mu, f_gamma),
        det_sign=det_sign,
        min_singular=center.min_singular,
        singular_flag=center.is_singular,
    )


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """Evaluate every grid point; gamma is the outer loop, mu the inner."""
    _validate(cfg)
    points = [(cfg, mu, gamma) for gamma in grid_values(cfg.gamma_range) for mu in grid_values(cfg.mu_range)]
    if cfg.workers == 1:
        return [_point_record(p) for p in points]
    chunk = max(1, len(points) // (cfg.workers * 8))
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(_point_record, points, chunksize=chunk))


def first_order_boundary(L, mu_range, gamma_range, model: str = "complete-graph"):
    """Midpoints of grid edges across which the parity sign det T flips.

    The sign is read from the LU sign of det Z, which equals the sign of
    det T wherever Z is nonsingular (the positive factor has positive
    determinant).  Points come back sorted by polar angle around the
    origin of the (mu, gamma) plane for direct plotting.
    """
    if model not in MODEL_BUILDERS:
        raise ConfigError(f"unknown model {model!r}; built in: {sorted(MODEL_BUILDERS)}")
    build = MODEL_BUILDERS[model]
    mus = grid_values(mu_range)
    gammas = grid_values(gamma_range)
    signs = np.empty((len(gammas), len(mus)), dtype=int)
    for gi, gamma in enumerate(gammas):
        for mi, mu in enumerate(mus):
            _, sign = log_abs_det(build(mu, gamma, L).Z)
            signs[gi, mi] = sign if sign != 0 else 1
    points = []
    flips_mu = signs[:, 1:] != signs[:, :-1]
    for gi, mi in zip(*np.nonzero(flips_mu)):
        points.append((0.5 * (mus[mi] + mus[mi + 1]), gammas[gi]))
    flips_gamma = signs[1:, :] != signs[:-1, :]
    for gi, mi in zip(*np.nonzero(flips_gamma)):
        points.append((mus[mi], 0.5 * (gammas[gi] + gammas[gi + 1])))
    points.sort(key=lambda p: (np.arctan2(p[1], p[0]), p[0], p[1]))
    return points


def _format_value(x: float) -> str:
    return f"{x:.12g}"


def _record_row(r: SweepRecord) -> str:
    return ",".join(
        [
            _format_value(r.mu),
            _format_value(r.gamma),
            _format_value(r.F_dmu),
            _format_value(r.F_dgamma),
            _format_value(r.F_min),
            str(r.det_sign),
            _format_value(r.min_singular),
            "true" if r.singular_flag else "false",
        ]
    )


def _open_out(path):
    if path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def emit_records(records, output_format: str, path: str):
    """Write sweep records as CSV (12 significant digits) or JSON."""
    if not records:
        raise ConfigError("no records to emit")
    fh, owned = _open_out(path)
    try:
        if output_format == "csv":
            fh.write(CSV_HEADER + "\n")
            for r in records:
                fh.write(_record_row(r) + "\n")
        elif output_format == "json":
            rows = [
                {
                    "mu": r.mu,
                    "gamma": r.gamma,
                    "F_dmu": r.F_dmu,
                    "F_dgamma": r.F_dgamma,
                    "F_min": r.F_min,
                    "det_sign": r.det_sign,
                    "min_singular": r.min_singular,
                    "singular_flag": r.singular_flag,
                }
                for r in records
            ]
            json.dump(rows, fh, indent=1)
            fh.write("\n")
        else:
            raise ConfigError(f"unknown output format {output_format!r}")
    finally:
        if owned:
            fh.close()


def emit_boundary(points, output_format: str, path: str):
    """Write boundary points with a plain mu,gamma schema."""
    fh, owned = _open_out(path)
    try:
        if output_format == "json":
            json.dump([{"mu": mu, "gamma": gamma} for mu, gamma in points], fh, indent=1)
            fh.write("\n")
        else:
            fh.write("mu,gamma\n")
            for mu, gamma in points:
                fh.write(f"{_format_value(mu)},{_format_value(gamma)}\n")
    finally:
        if owned:
            fh.close()


def load_records(path: str, output_format: str = "csv") -> list[SweepRecord]:
    """Read records back from ``emit_records`` output."""
    if output_format == "json":
        with open(path) as fh:
            rows = json.load(fh)
        return [SweepRecord(**row) for row in rows]
    records = []
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ConfigError(f"unexpected CSV header {header!r}")
        for line in fh:
            parts = line.strip().split(",")
            if len(parts) != 8:
                raise ConfigError(f"malformed CSV row {line!r}")
            records.append(
                SweepRecord(
                    mu=float(parts[0]),
                    gamma=float(parts[1]),
                    F_dmu=float(parts[2]),
                    F_dgamma=float(parts[3]),
                    F_min=float(parts[4]),
                    det_sign=int(parts[5]),
                    min_singular=float(parts[6]),
                    singular_flag=parts[7] == "true",
                )
            )
    return records
