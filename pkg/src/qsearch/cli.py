"""Command-line front door.

Four subcommands (``analog``, ``grover``, ``bound``, ``stats``) run the four
experiment families and emit a self-describing report (JSON schema "v1" or
CSV with comment headers) embedding the config, seed, tool version and all
derived constants, so downstream plotting needs no side channel. Exit codes:
0 pass, 1 numerical-check failure, 2 usage error. Every command is
deterministic given its full flag set, and reruns produce byte-identical
files.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analog import (
    COLINEAR_TOL,
    TwoLevelSystem,
    absorb_phase,
    assemble_search_hamiltonian,
    measurement_time,
    success_probability,
    two_level_eigenvalues,
)
from .bound import DriverSchedule, discrimination_time, evolve_trajectories
from .errors import QSearchError
from .grover import (
    GroverInstance,
    optimal_iterations,
    reduced_probability,
    rotation_angle,
    run_grover,
)
from .linalg import HermitianOperator, RankOneHamiltonian, StateVector, inner_product
from .statistics import GENERATOR_NAME, overlap_statistics, random_state

SCHEMA = "v1"

ANALOG_PASS_TOL = 1e-8
GROVER_PASS_TOL = 1e-9

# Dense N x N commands stay within the design envelope for direct
# eigendecomposition; grover and stats scale with N and need no cap.
MAX_DENSE_DIM = 4096


def _positive(value: float, name: str) -> float:
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be positive, got {value}")
    return float(value)


def _check_dense_dim(n: int) -> None:
    if n > MAX_DENSE_DIM:
        raise ValueError(f"--n capped at {MAX_DENSE_DIM} for dense-operator commands, got {n}")


@dataclass(frozen=True)
class AnalogConfig:
    n: int
    energy: float
    w: str
    seed: int
    dt: float | None
    horizon: float | None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"--n must be >= 2, got {self.n}")
        _check_dense_dim(self.n)
        _positive(self.energy, "--energy")
        if self.dt is not None:
            _positive(self.dt, "--dt")
        if self.horizon is not None:
            _positive(self.horizon, "--horizon")
        if self.w not in ("random", "s"):
            idx = int(self.w)
            if not 0 <= idx < self.n:
                raise ValueError(f"--w index {idx} out of range for --n {self.n}")


@dataclass(frozen=True)
class GroverConfig:
    n: int
    marked: str
    iterations: int | None
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"--n must be >= 2, got {self.n}")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError(f"--iterations must be >= 0, got {self.iterations}")
        if self.marked != "random":
            idx = int(self.marked)
            if not 0 <= idx < self.n:
                raise ValueError(f"--marked index {idx} out of range for --n {self.n}")


@dataclass(frozen=True)
class BoundConfig:
    n: int
    energy: float
    driver: str
    driver_norm_mult: float
    epsilon: float
    segments: int
    seed: int
    dt: float | None
    horizon: float | None

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"--n must be >= 2, got {self.n}")
        _check_dense_dim(self.n)
        _positive(self.energy, "--energy")
        _positive(self.driver_norm_mult, "--driver-norm-mult")
        if not 0.0 < self.epsilon <= 4.0:
            raise ValueError(f"--epsilon must lie in (0, 4], got {self.epsilon}")
        if self.driver not in ("paper", "zero", "random-dense", "piecewise"):
            raise ValueError(f"unknown --driver {self.driver!r}")
        if self.segments < 1:
            raise ValueError(f"--segments must be >= 1, got {self.segments}")
        if self.dt is not None:
            _positive(self.dt, "--dt")
        if self.horizon is not None:
            _positive(self.horizon, "--horizon")


@dataclass(frozen=True)
class StatsConfig:
    n: int
    samples: int
    seed: int

    def __post_init__(self):
        # n = 1 is meaningful here (a pure phase, x = 1 exactly)
        if self.n < 1:
            raise ValueError(f"--n must be >= 1, got {self.n}")
        if self.samples < 100:
            raise ValueError(f"--samples must be >= 100, got {self.samples}")


def _fmt(value) -> str:
    if value is None:
        return "nan"
    return f"{value:.17g}"


def _complex_pairs(amps: np.ndarray) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in amps]


def _write_report(payload: dict, out: str | None, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    else:
        lines = [f"# schema: {payload['schema']}", f"# tool: qsearch {payload['version']}"]
        lines.append(f"# command: {payload['command']}")
        for section in ("config", "derived", "summary"):
            for key, val in payload.get(section, {}).items():
                if isinstance(val, (list, dict)):
                    continue  # vectors stay JSON-only; scalars are enough for CSV
                lines.append(f"# {section}.{key} = {val}")
        series = payload["series"]
        lines.append(",".join(series["columns"]))
        for row in series["rows"]:
            lines.append(",".join(_fmt(v) if not isinstance(v, int) else str(v) for v in row))
        text = "\n".join(lines) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _payload_skeleton(command: str, config) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "config": dataclasses.asdict(config),
    }


def _time_grid(dt: float, horizon: float) -> np.ndarray:
    steps = max(1, int(round(horizon / dt)))
    return np.linspace(0.0, horizon, steps + 1)


def cmd_analog(cfg: AnalogConfig) -> tuple[int, dict]:
    n, e = cfg.n, cfg.energy
    s = StateVector.uniform(n)
    rng = np.random.default_rng(cfg.seed)
    if cfg.w == "s":
        w = s
    elif cfg.w == "random":
        w = random_state(n, rng)
    else:
        w = StateVector.basis_state(n, int(cfg.w))

    x = min(abs(inner_product(s, w)), 1.0)
    colinear = x >= 1.0 - COLINEAR_TOL
    system = TwoLevelSystem(energy=e, overlap=1.0 if colinear else x, dim_hint=n)
    t_m = measurement_time(system)
    dt = cfg.dt if cfg.dt is not None else t_m / 500.0
    horizon = cfg.horizon if cfg.horizon is not None else 2.0 * t_m
    grid = _time_grid(dt, horizon)

    ham = assemble_search_hamiltonian(
        RankOneHamiltonian(e, w), RankOneHamiltonian(e, s)
    )
    start = absorb_phase(s, w)
    evals, vecs = np.linalg.eigh(ham.mat)
    coeffs = vecs.conj().T @ start.amps
    states = vecs @ (np.exp(-1j * np.outer(evals, grid)) * coeffs[:, None])
    p_full = np.abs(w.amps.conj() @ states) ** 2
    p_closed = np.array([success_probability(system, t) for t in grid])
    deviation = np.abs(p_closed - p_full)
    max_dev = float(deviation.max())

    lo, hi = two_level_eigenvalues(system)
    payload = _payload_skeleton("analog", cfg)
    payload["derived"] = {
        "x": system.overlap,
        "t_m": t_m,
        "eigenvalue_low": lo,
        "eigenvalue_high": hi,
        "max_deviation": max_dev,
        "s": _complex_pairs(s.amps),
        "w": _complex_pairs(w.amps),
    }
    payload["summary"] = {"pass": max_dev < ANALOG_PASS_TOL, "pass_tolerance": ANALOG_PASS_TOL}
    payload["series"] = {
        "columns": ["t", "p_closed_form", "p_full_space", "abs_difference"],
        "rows": [
            [float(t), float(pc), float(pf), float(d)]
            for t, pc, pf, d in zip(grid, p_closed, p_full, deviation)
        ],
    }
    return (0 if max_dev < ANALOG_PASS_TOL else 1), payload


def cmd_grover(cfg: GroverConfig) -> tuple[int, dict]:
    n = cfg.n
    rng = np.random.default_rng(cfg.seed)
    marked = int(rng.integers(n)) if cfg.marked == "random" else int(cfg.marked)
    inst = GroverInstance(dim=n, marked=marked)
    theta = rotation_angle(n)
    k_star = optimal_iterations(n)
    k = cfg.iterations if cfg.iterations is not None else k_star
    run = run_grover(inst, k)
    p_reduced = np.array([reduced_probability(n, j) for j in range(k + 1)])
    deviation = np.abs(run.probabilities - p_reduced)
    max_dev = float(deviation.max())

    equiv = TwoLevelSystem(energy=1.0, overlap=1.0 / math.sqrt(n), dim_hint=n)
    t_m = measurement_time(equiv)
    payload = _payload_skeleton("grover", cfg)
    payload["derived"] = {
        "marked": marked,
        "theta": theta,
        "k_star": k_star,
        "iterations": k,
        "oracle_calls": run.oracle_calls,
        "max_deviation": max_dev,
        "correspondence": {
            "t_m_times_ex": t_m * equiv.energy * equiv.overlap,
            "k_star_theta": k_star * theta,
            "analog_p_at_t_m": success_probability(equiv, t_m),
            "digital_p_at_k_star": reduced_probability(n, k_star),
        },
    }
    payload["summary"] = {"pass": max_dev < GROVER_PASS_TOL, "pass_tolerance": GROVER_PASS_TOL}
    payload["series"] = {
        "columns": ["k", "p_full", "p_reduced", "oracle_calls"],
        "rows": [
            [j, float(run.probabilities[j]), float(p_reduced[j]), 2 * j]
            for j in range(k + 1)
        ],
    }
    return (0 if max_dev < GROVER_PASS_TOL else 1), payload


def _random_hermitian(n: int, spectral_norm: float, rng: np.random.Generator) -> HermitianOperator:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (g + g.conj().T) / 2.0
    top = float(np.max(np.abs(np.linalg.eigvalsh(h))))
    return HermitianOperator(h * (spectral_norm / top))


def build_driver(
    family: str,
    n: int,
    energy: float,
    norm_mult: float,
    horizon: float,
    rng: np.random.Generator,
    segments: int = 10,
) -> DriverSchedule:
    """Driver schedule for one of the experiment families; random families
    set the spectral norm to energy * norm_mult."""
    if family == "paper":
        return DriverSchedule.rank_one(
            RankOneHamiltonian(energy * norm_mult, StateVector.uniform(n)), horizon
        )
    if family == "zero":
        return DriverSchedule.zero(n, horizon)
    if family == "random-dense":
        return DriverSchedule.constant(_random_hermitian(n, energy * norm_mult, rng), horizon)
    if family == "piecewise":
        ops = [_random_hermitian(n, energy * norm_mult, rng) for _ in range(segments)]
        return DriverSchedule.piecewise(ops, [horizon / segments] * segments)
    raise ValueError(f"unknown driver family {family!r}")


def cmd_bound(cfg: BoundConfig) -> tuple[int, dict]:
    n, e = cfg.n, cfg.energy
    t_m_equiv = math.pi * math.sqrt(n) / (2.0 * e)
    horizon = cfg.horizon if cfg.horizon is not None else 2.0 * t_m_equiv
    dt = cfg.dt if cfg.dt is not None else t_m_equiv / 500.0
    grid = _time_grid(dt, horizon)

    rng = np.random.default_rng(cfg.seed)
    driver = build_driver(cfg.driver, n, e, cfg.driver_norm_mult, horizon, rng, cfg.segments)
    basis = [StateVector.basis_state(n, i) for i in range(n)]
    traj = evolve_trajectories(e, basis, driver, StateVector.uniform(n), grid)
    report = discrimination_time(traj, cfg.epsilon)

    deriv = [None] + [float(d) for d in report.derivative_estimates] + [None]
    ratio_at_tm = None
    if t_m_equiv <= grid[-1] + 1e-12:
        j = int(np.argmin(np.abs(grid - t_m_equiv)))
        if report.bound_line[j] > 0:
            ratio_at_tm = float(report.divergence[j] / report.bound_line[j])

    payload = _payload_skeleton("bound", cfg)
    payload["derived"] = {
        "rate_cap": report.rate_cap,
        "t_m_equivalent": t_m_equiv,
        "fd_curvature": report.fd_curvature,
        "ratio_at_t_m_equivalent": ratio_at_tm,
    }
    payload["summary"] = {
        "pass": report.bound_satisfied,
        "bound_satisfied": report.bound_satisfied,
        "derivative_bound_satisfied": report.derivative_bound_satisfied,
        "epsilon": report.epsilon,
        "t_epsilon": report.t_epsilon,
        "t_epsilon_second": report.t_epsilon_second,
        "lower_bound": report.lower_bound,
        "lower_bound_satisfied": report.lower_bound_satisfied,
    }
    payload["series"] = {
        "columns": ["t", "divergence", "bound_line", "dD_dt", "min_distance", "second_min_distance"],
        "rows": [
            [
                float(grid[j]),
                float(report.divergence[j]),
                float(report.bound_line[j]),
                deriv[j],
                float(report.min_distance[j]),
                float(report.second_min_distance[j]),
            ]
            for j in range(grid.shape[0])
        ],
    }
    return (0 if report.bound_satisfied else 1), payload


def cmd_stats(cfg: StatsConfig) -> tuple[int, dict]:
    sample = overlap_statistics(cfg.n, cfg.samples, cfg.seed)
    target = 1.0 / cfg.n
    ok = abs(sample.mean_x2 - target) <= 4.0 * sample.stderr_x2
    payload = _payload_skeleton("stats", cfg)
    payload["derived"] = {
        "generator": GENERATOR_NAME,
        "target_mean_x2": target,
        "mean_x2": sample.mean_x2,
        "stderr_x2": sample.stderr_x2,
        "mean_x": sample.mean_x,
        "expected_mean_x_scale": 1.0 / math.sqrt(cfg.n),
    }
    payload["summary"] = {"pass": ok, "pass_band_sigmas": 4.0}
    payload["series"] = {
        "columns": ["n", "num_samples", "mean_x2", "stderr_x2", "mean_x", "seed"],
        "rows": [[sample.n, sample.num_samples, sample.mean_x2, sample.stderr_x2, sample.mean_x, sample.seed]],
    }
    return (0 if ok else 1), payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsearch",
        description="Rank-one Hamiltonian search experiments: closed-form "
        "dynamics, digital amplitude amplification, driver-independent time "
        "lower bounds, and random-overlap statistics.",
    )
    parser.add_argument("--version", action="version", version=f"qsearch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--n", type=int, required=True, help="Hilbert space dimension (>= 2)")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")

    p = sub.add_parser("analog", help="closed-form vs full-space rank-one search dynamics")
    common(p)
    p.add_argument("--energy", type=float, default=1.0)
    p.add_argument("--w", default="0", help="marked state: basis index, 'random', or 's' (colinear)")
    p.add_argument("--dt", type=float, default=None, help="grid spacing (default t_m/500)")
    p.add_argument("--horizon", type=float, default=None, help="grid end (default 2*t_m)")

    p = sub.add_parser("grover", help="digital iteration vs reduced rotation prediction")
    common(p)
    p.add_argument("--marked", default="0", help="marked index or 'random'")
    p.add_argument("--iterations", type=int, default=None, help="steps to run (default k*)")

    p = sub.add_parser("bound", help="divergence growth bound under a chosen driver")
    common(p)
    p.add_argument("--energy", type=float, default=1.0)
    p.add_argument("--driver", choices=("paper", "zero", "random-dense", "piecewise"), default="paper")
    p.add_argument("--driver-norm-mult", type=float, default=1.0, dest="driver_norm_mult")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--segments", type=int, default=10, help="segments for the piecewise driver")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--horizon", type=float, default=None)

    p = sub.add_parser("stats", help="Monte Carlo overlap statistics")
    common(p)
    p.add_argument("--samples", type=int, default=100_000)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analog":
            cfg = AnalogConfig(args.n, args.energy, args.w, args.seed, args.dt, args.horizon)
            runner = cmd_analog
        elif args.command == "grover":
            cfg = GroverConfig(args.n, args.marked, args.iterations, args.seed)
            runner = cmd_grover
        elif args.command == "bound":
            cfg = BoundConfig(
                args.n, args.energy, args.driver, args.driver_norm_mult,
                args.epsilon, args.segments, args.seed, args.dt, args.horizon,
            )
            runner = cmd_bound
        else:
            cfg = StatsConfig(args.n, args.samples, args.seed)
            runner = cmd_stats
    except ValueError as exc:
        parser.error(str(exc))  # exits with code 2
        raise
    try:
        code, payload = runner(cfg)
    except QSearchError as exc:
        print(f"qsearch {args.command}: {exc}", file=sys.stderr)
        return 1
    _write_report(payload, args.out, args.fmt)
    if code != 0:
        checks = payload.get("summary", {})
        print(f"qsearch {args.command}: numerical check failed: {checks}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
