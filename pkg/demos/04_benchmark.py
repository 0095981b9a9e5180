"""Driving the bench harness from python and reading its artifacts."""

import json
import tempfile
from pathlib import Path

from whalemedoids.bench import BenchConfig, emit_report, run_comparison, run_convergence


def main():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "report"
        cfg = BenchConfig(
            synth="n_per_cluster=40,k=4,length=24,noise=0.3,seed=9",
            metric="dtw",
            window=2,
            population=30,
            iterations=80,
            reps=5,
            seed=100,
            threads=2,
            out=str(out),
        )
        records, summary = run_comparison(cfg)
        emit_report(records, summary, cfg.out)

        print()
        print("== per-run records ==")
        for r in records:
            print(f"{r.method:4s} seed={r.seed:3d} ri={r.ri:.4f} "
                  f"cost={r.total_cost:10.3f} wall={r.wall_time_seconds:.4f}s")

        print()
        print("== summary.json highlights ==")
        blob = json.loads((out / "summary.json").read_text())
        for method, agg in blob["methods"].items():
            print(f"{method}: mean_ri={agg['mean_ri']:.4f} "
                  f"mean_wall={agg['mean_wall_time_seconds']:.4f}s")
        print(f"speedup pam over woa: {blob['speedup_pam_over_woa']:.2f}x")
        print(f"matrix built in {blob['matrix']['seconds']:.3f}s "
              f"(source: {blob['matrix']['source']}), excluded from method timings")

        print()
        print("== convergence traces ==")
        conv = Path(tmp) / "traces"
        cfg2 = BenchConfig(
            synth="n_per_cluster=40,k=4,length=24,noise=0.3,seed=9",
            metric="dtw", window=2, population=30, iterations=80,
            reps=3, seed=100, threads=2, out=str(conv),
        )
        _, conv_summary = run_convergence(cfg2)
        print(f"files: {sorted(p.name for p in conv.iterdir())}")
        print(f"iteration reaching 90% of improvement, per seed: "
              f"{conv_summary['improvement_iteration']}")


if __name__ == "__main__":
    main()
