"""Benchmark harness: method comparison, convergence traces, parameter sweeps.

Configuration comes from an optional plain key=value text file plus CLI
flags; flags win.  Every run is seeded, output CSV schemas are versioned
in a leading comment line, and records.csv is byte-stable across reruns
except for the wall-time column.
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .dataset import Dataset, load_ucr, synth_blobs
from .distance import build_matrix, cache_key, load_matrix, save_matrix
from .metrics import improvement_iteration, rand_index, speedup
from .pam import pam
from .woa import WoaParams, run as woa_run

RECORDS_SCHEMA = "# whalemedoids records v1"
TRACE_SCHEMA = "# whalemedoids trace v1"
SWEEP_SCHEMA = "# whalemedoids sweep v1"
RECORD_HEADER = "dataset,n,k,method,metric,window,seed,ri,total_cost,wall_time_seconds,steps"

DEFAULT_GRID_POPULATION = (10, 30, 50, 70, 90)
DEFAULT_GRID_ITERATIONS = (20, 50, 100, 150, 200, 250, 300)

NOTES = {
    "window": "window is an absolute sample count",
    "preprocessing": "series are used as-is; no normalisation",
}


@dataclass(frozen=True)
class BenchConfig:
    data: str | None = None
    synth: str | None = None
    delimiter: str | None = None
    metric: str = "dtw"
    window: int | None = None
    k: int | None = None
    methods: tuple[str, ...] = ("pam", "woa")
    population: int = 50
    iterations: int = 200
    min_cluster_size: int = 2
    spiral_shape: float = 1.0
    seeds: tuple[int, ...] | None = None
    reps: int = 1
    seed: int = 0
    out: str = "bench-out"
    threads: int = 1
    cache: str | None = None
    grid_population: tuple[int, ...] | None = None
    grid_iterations: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.metric not in ("euclidean", "dtw"):
            raise ValueError(f"metric must be euclidean or dtw, not {self.metric!r}")
        if self.window is not None and self.metric != "dtw":
            raise ValueError("window applies to the dtw metric only")
        if not self.methods or not set(self.methods) <= {"pam", "woa"}:
            raise ValueError(f"methods must be a non-empty subset of pam,woa: {self.methods}")
        for name in ("population", "iterations", "min_cluster_size", "reps", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.window is not None and self.window < 0:
            raise ValueError("window must be non-negative")
        if self.seeds is not None and len(self.seeds) == 0:
            raise ValueError("seeds list is empty")

    def resolved_seeds(self) -> tuple[int, ...]:
        if self.seeds is not None:
            return tuple(int(s) for s in self.seeds)
        return tuple(self.seed + i for i in range(self.reps))


@dataclass(frozen=True)
class BenchRecord:
    dataset: str
    n: int
    k: int
    method: str
    metric: str
    window: int | None
    seed: int
    ri: float
    total_cost: float
    wall_time_seconds: float
    steps: int

    def row(self) -> str:
        window = "" if self.window is None else str(self.window)
        return ",".join(
            [
                self.dataset,
                str(self.n),
                str(self.k),
                self.method,
                self.metric,
                window,
                str(self.seed),
                repr(self.ri),
                repr(self.total_cost),
                repr(self.wall_time_seconds),
                str(self.steps),
            ]
        )


# ---------------------------------------------------------------- config i/o

_INT_KEYS = {"window", "k", "population", "iterations", "min_cluster_size",
             "reps", "seed", "threads"}
_FLOAT_KEYS = {"spiral_shape"}
_INT_LIST_KEYS = {"seeds", "grid_population", "grid_iterations"}
_STR_LIST_KEYS = {"methods"}
_STR_KEYS = {"data", "synth", "metric", "out", "cache", "delimiter"}


def _coerce(key: str, value) -> object:
    if key in _INT_KEYS:
        return int(value)
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _INT_LIST_KEYS:
        return tuple(int(v) for v in str(value).split(",") if v.strip())
    if key in _STR_LIST_KEYS:
        return tuple(v.strip() for v in str(value).split(",") if v.strip())
    if key in _STR_KEYS:
        return str(value)
    raise ValueError(f"unknown config key {key!r}")


def load_config_file(path: str | Path) -> dict:
    """Parse a key=value config file; '#' lines and blanks are skipped."""
    values: dict[str, object] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, _, value = stripped.partition("=")
        key = key.strip().replace("-", "_")
        try:
            values[key] = _coerce(key, value.strip())
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return values


def parse_synth_spec(spec: str) -> dict:
    """Parse a synthetic-data spec like 'k=4,length=32,noise=0.1,seed=3'."""
    params = {"n_per_cluster": 50, "k": 4, "length": 32, "noise": 0.1, "seed": 0}
    if spec.strip():
        for part in spec.split(","):
            key, eq, value = part.partition("=")
            key = key.strip()
            if not eq or key not in params:
                raise ValueError(f"bad synth spec field {part!r}; "
                                 f"known keys: {', '.join(params)}")
            params[key] = float(value) if key == "noise" else int(value)
    return params


def prepare_dataset(cfg: BenchConfig) -> Dataset:
    if (cfg.data is None) == (cfg.synth is None):
        raise ValueError("exactly one of data/synth must be given")
    if cfg.data is not None:
        return load_ucr(cfg.data, cfg.delimiter)
    return synth_blobs(**parse_synth_spec(cfg.synth))


def version_string() -> str:
    try:
        proc = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            cwd=Path(__file__).resolve().parent,
            capture_output=True, text=True, timeout=5,
        )
        if proc.returncode == 0 and proc.stdout.strip():
            return proc.stdout.strip()
    except OSError:
        pass
    from . import __version__

    return f"v{__version__}"


# ---------------------------------------------------------------- execution

def acquire_matrix(cfg: BenchConfig, dataset: Dataset) -> tuple[np.ndarray, float, str]:
    """Load the distance matrix from cache or build it; returns
    (matrix, seconds, 'cache'|'built')."""
    window = cfg.window if cfg.metric == "dtw" else None
    key = cache_key(dataset.name, cfg.metric, window)
    cache_path = Path(cfg.cache) / key if cfg.cache else None
    if cache_path is not None and cache_path.exists():
        t0 = time.perf_counter()
        matrix = load_matrix(cache_path)
        return matrix, time.perf_counter() - t0, "cache"
    t0 = time.perf_counter()
    matrix = build_matrix(dataset, cfg.metric, window=window, threads=cfg.threads)
    seconds = time.perf_counter() - t0
    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        save_matrix(cache_path, matrix)
    return matrix, seconds, "built"


def _clustering_k(cfg: BenchConfig, dataset: Dataset) -> int:
    k = cfg.k if cfg.k is not None else dataset.n_classes
    if not 1 <= k <= len(dataset):
        raise ValueError(f"k={k} out of range for {len(dataset)} series")
    return k


def _woa_params(cfg: BenchConfig, k: int, seed: int, population=None, iterations=None) -> WoaParams:
    return WoaParams(
        k=k,
        population=population if population is not None else cfg.population,
        iterations=iterations if iterations is not None else cfg.iterations,
        min_cluster_size=cfg.min_cluster_size,
        spiral_shape=cfg.spiral_shape,
        seed=seed,
    )


def run_comparison(cfg: BenchConfig) -> tuple[list[BenchRecord], dict]:
    """Run every configured method once per seed against one shared matrix."""
    dataset = prepare_dataset(cfg)
    if dataset.labels is None:
        raise ValueError("comparison needs ground-truth labels")
    k = _clustering_k(cfg, dataset)
    matrix, matrix_seconds, matrix_source = acquire_matrix(cfg, dataset)
    window = cfg.window if cfg.metric == "dtw" else None
    records = []
    for method in cfg.methods:
        for seed in cfg.resolved_seeds():
            if method == "pam":
                result = pam(matrix, k)
            else:
                result, _ = woa_run(matrix, _woa_params(cfg, k, seed))
            records.append(
                BenchRecord(
                    dataset=dataset.name,
                    n=len(dataset),
                    k=k,
                    method=method,
                    metric=cfg.metric,
                    window=window,
                    seed=seed,
                    ri=rand_index(result.assignment, dataset.labels).ri,
                    total_cost=result.total_cost,
                    wall_time_seconds=result.wall_time,
                    steps=result.steps,
                )
            )
    summary = _summarise(cfg, records, matrix_seconds, matrix_source)
    return records, summary


def _summarise(cfg: BenchConfig, records: list[BenchRecord],
               matrix_seconds: float, matrix_source: str) -> dict:
    methods: dict[str, dict] = {}
    for method in sorted({r.method for r in records}):
        rows = [r for r in records if r.method == method]
        methods[method] = {
            "runs": len(rows),
            "mean_ri": float(np.mean([r.ri for r in rows])),
            "min_ri": float(min(r.ri for r in rows)),
            "max_ri": float(max(r.ri for r in rows)),
            "mean_total_cost": float(np.mean([r.total_cost for r in rows])),
            "mean_wall_time_seconds": float(np.mean([r.wall_time_seconds for r in rows])),
        }
    summary = {
        "version": version_string(),
        "config": asdict(cfg),
        "matrix": {"seconds": matrix_seconds, "source": matrix_source},
        "methods": methods,
        "notes": dict(NOTES),
    }
    if "pam" in methods and "woa" in methods:
        summary["speedup_pam_over_woa"] = speedup(
            methods["pam"]["mean_wall_time_seconds"],
            methods["woa"]["mean_wall_time_seconds"],
        )
    return summary


def emit_report(records: list[BenchRecord], summary: dict, out_dir: str | Path) -> None:
    """Write records.csv and summary.json, print a short table."""
    if not records:
        raise ValueError("no runs executed")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = [RECORDS_SCHEMA, RECORD_HEADER] + [r.row() for r in records]
    (out / "records.csv").write_text("\n".join(lines) + "\n")
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    first = records[0]
    print(f"dataset={first.dataset} n={first.n} k={first.k} metric={first.metric}"
          + (f" window={first.window}" if first.window is not None else ""))
    print(f"{'method':8} {'runs':>4} {'mean_ri':>9} {'mean_cost':>14} {'mean_seconds':>13}")
    for method, agg in summary["methods"].items():
        print(f"{method:8} {agg['runs']:>4} {agg['mean_ri']:>9.4f} "
              f"{agg['mean_total_cost']:>14.4f} {agg['mean_wall_time_seconds']:>13.4f}")
    if "speedup_pam_over_woa" in summary:
        print(f"speedup pam/woa: {summary['speedup_pam_over_woa']:.2f}x")
    print(f"wrote {out / 'records.csv'} and {out / 'summary.json'}")


def run_convergence(cfg: BenchConfig) -> tuple[dict, dict]:
    """Trace the whale search per seed; writes per-seed and mean CSVs."""
    dataset = prepare_dataset(cfg)
    k = _clustering_k(cfg, dataset)
    matrix, matrix_seconds, matrix_source = acquire_matrix(cfg, dataset)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    traces = {}
    improvement = {}
    for seed in cfg.resolved_seeds():
        _, telemetry = woa_run(matrix, _woa_params(cfg, k, seed))
        traces[seed] = telemetry
        improvement[seed] = improvement_iteration(telemetry.best_fitness)
        lines = [TRACE_SCHEMA, "iteration,best_fitness,unique_medoids"]
        for i in range(cfg.iterations):
            lines.append(f"{i + 1},{float(telemetry.best_fitness[i])!r},{telemetry.unique_medoids[i]}")
        (out / f"trace_{seed}.csv").write_text("\n".join(lines) + "\n")
    mean_fit = np.mean([traces[s].best_fitness for s in traces], axis=0)
    mean_unique = np.mean([traces[s].unique_medoids for s in traces], axis=0)
    lines = [TRACE_SCHEMA, "iteration,mean_best_fitness,mean_unique_medoids"]
    for i in range(cfg.iterations):
        lines.append(f"{i + 1},{float(mean_fit[i])!r},{float(mean_unique[i])!r}")
    (out / "trace_mean.csv").write_text("\n".join(lines) + "\n")
    summary = {
        "version": version_string(),
        "config": asdict(cfg),
        "matrix": {"seconds": matrix_seconds, "source": matrix_source},
        "improvement_iteration": {str(s): improvement[s] for s in improvement},
        "final_mean_best_fitness": float(mean_fit[-1]),
        "final_mean_unique_medoids": float(mean_unique[-1]),
        "notes": dict(NOTES),
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    for seed in improvement:
        print(f"seed {seed}: 90% of the fitness improvement reached by iteration "
              f"{improvement[seed]} of {cfg.iterations}")
    print(f"wrote {len(traces)} trace files and {out / 'trace_mean.csv'}")
    return traces, summary


def run_sweep(cfg: BenchConfig) -> list[tuple[int, int, float, float]]:
    """Mean RI and mean best fitness over a population x iterations grid."""
    dataset = prepare_dataset(cfg)
    if dataset.labels is None:
        raise ValueError("sweep needs ground-truth labels")
    k = _clustering_k(cfg, dataset)
    matrix, _, _ = acquire_matrix(cfg, dataset)
    grid_pop = cfg.grid_population or DEFAULT_GRID_POPULATION
    grid_iter = cfg.grid_iterations or DEFAULT_GRID_ITERATIONS
    seeds = cfg.resolved_seeds()
    rows = []
    for pop in grid_pop:
        for iters in grid_iter:
            ris = []
            fits = []
            for seed in seeds:
                result, _ = woa_run(
                    matrix, _woa_params(cfg, k, seed, population=pop, iterations=iters)
                )
                ris.append(rand_index(result.assignment, dataset.labels).ri)
                fits.append(result.total_cost)
            rows.append((pop, iters, float(np.mean(ris)), float(np.mean(fits))))
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    lines = [SWEEP_SCHEMA, "population,iterations,mean_ri,mean_fitness"]
    lines += [f"{p},{t},{ri!r},{fit!r}" for p, t, ri, fit in rows]
    (out / "sweep.csv").write_text("\n".join(lines) + "\n")
    print(f"{'population':>10} {'iterations':>10} {'mean_ri':>9} {'mean_fitness':>14}")
    for p, t, ri, fit in rows:
        print(f"{p:>10} {t:>10} {ri:>9.4f} {fit:>14.4f}")
    print(f"wrote {out / 'sweep.csv'}")
    return rows


def run_distances(cfg: BenchConfig) -> Path:
    """Build a distance matrix and store it in the cache directory."""
    if not cfg.cache:
        raise ValueError("distances needs --cache <dir> to store the matrix")
    dataset = prepare_dataset(cfg)
    window = cfg.window if cfg.metric == "dtw" else None
    t0 = time.perf_counter()
    matrix = build_matrix(dataset, cfg.metric, window=window, threads=cfg.threads)
    seconds = time.perf_counter() - t0
    path = Path(cfg.cache) / cache_key(dataset.name, cfg.metric, window)
    path.parent.mkdir(parents=True, exist_ok=True)
    save_matrix(path, matrix)
    print(f"built {cfg.metric} matrix for {dataset.name}: n={len(dataset)}, "
          f"{seconds:.2f}s -> {path}")
    return path


# ---------------------------------------------------------------------- cli

def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value config file; flags override it")
    parser.add_argument("--data", help="UCR-style text file (label first field)")
    parser.add_argument("--synth", help="synthetic blobs spec, e.g. 'k=4,length=32,noise=0.1,seed=3'")
    parser.add_argument("--delimiter", help="field delimiter override for --data")
    parser.add_argument("--metric", choices=["euclidean", "dtw"])
    parser.add_argument("--window", type=int, help="warping window in samples (dtw only)")
    parser.add_argument("--k", type=int, help="number of clusters (default: label count)")
    parser.add_argument("--population", type=int, help="whale pod size")
    parser.add_argument("--iterations", type=int, help="whale search rounds")
    parser.add_argument("--min-cluster-size", type=int)
    parser.add_argument("--spiral-shape", type=float)
    parser.add_argument("--methods", help="comma list from pam,woa")
    parser.add_argument("--seeds", help="comma list of seeds (overrides --reps/--seed)")
    parser.add_argument("--reps", type=int, help="number of seeded repetitions")
    parser.add_argument("--seed", type=int, help="base seed; run i uses seed+i")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--threads", type=int, help="worker cap for matrix construction")
    parser.add_argument("--cache", help="matrix cache directory")


def _config_from_args(args: argparse.Namespace) -> BenchConfig:
    values: dict[str, object] = {}
    if args.config:
        values.update(load_config_file(args.config))
    for key in (_INT_KEYS | _FLOAT_KEYS | _INT_LIST_KEYS | _STR_LIST_KEYS | _STR_KEYS):
        cli = getattr(args, key, None)
        if cli is not None:
            values[key] = _coerce(key, cli)
    return BenchConfig(**values)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="whalemedoids-bench",
        description="Benchmark whale-swarm medoid clustering against PAM.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in [
        ("compare", "run each method per seed and report accuracy and runtime"),
        ("converge", "record per-iteration best fitness and pod diversity"),
        ("sweep", "grid over population and iteration counts"),
        ("distances", "build and cache a distance matrix"),
    ]:
        p = sub.add_parser(name, help=text)
        _add_common_flags(p)
        if name == "sweep":
            p.add_argument("--grid-population", help="comma list of pod sizes")
            p.add_argument("--grid-iterations", help="comma list of round counts")
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if args.command == "compare":
            records, summary = run_comparison(cfg)
            emit_report(records, summary, cfg.out)
        elif args.command == "converge":
            run_convergence(cfg)
        elif args.command == "sweep":
            run_sweep(cfg)
        else:
            run_distances(cfg)
    except Exception as exc:  # one-line diagnostic, nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
