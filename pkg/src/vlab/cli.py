"""Command-line harness: `vlab <experiment> ...` runs one reproducible CSV
experiment; `vlab verify` runs the full acceptance suite.

Exit codes: 0 success, 1 configuration error, 2 assertion/criterion failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import acceptance, experiments
from .core import BaseSequence

EXPERIMENTS = (
    "transform-selftest",
    "kernels",
    "lemma2",
    "maximal-atoms",
    "divergence",
    "strong-sum",
    "approximation",
    "modulus-convergence",
    "counterexample-3b",
    "counterexample-4b",
    "gat-log-mean",
)

PHI_NAMES = ("const1", "log", "full_weight_over_loglog", "full_weight")


class ConfigError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vlab",
        description="Desk-scale experiments on bounded Vilenkin groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name in EXPERIMENTS:
        sp = sub.add_parser(name, help=f"run the {name} experiment")
        sp.add_argument("--bases", default="walsh:8",
                        help="'walsh:N' or comma list, e.g. 2,3,2,3,2,3")
        sp.add_argument("--p", type=float, default=0.5)
        sp.add_argument("--phi", default="const1", choices=PHI_NAMES)
        sp.add_argument("--kmax", type=int, default=3)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None, help="CSV output path")
        sp.add_argument("--config", default=None,
                        help="JSON file whose keys override the flags")
        sp.add_argument("--variant", default="inv_Mi",
                        choices=("inv_Mi", "inv_M2i"))

    vp = sub.add_parser("verify", help="run the full acceptance suite")
    vp.add_argument("--out", default=None,
                    help="directory for the suite's CSV artifacts")
    return parser


def _apply_config(args) -> None:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            overrides = json.load(fh)
        for key, value in overrides.items():
            key = key.replace("-", "_")
            if not hasattr(args, key):
                raise ConfigError(f"unknown config key {key!r}")
            setattr(args, key, value)


def _run_experiment(args) -> int:
    base = BaseSequence.from_spec(args.bases)
    out = args.out or f"{args.command.replace('-', '_')}.csv"
    name = args.command
    if name == "transform-selftest":
        worst = experiments.transform_selftest(base, out, seed=args.seed)
        print(f"transform-selftest: worst relative error {worst:.3e} -> {out}")
        return 0 if worst < 1e-9 else 2
    if name == "kernels":
        worst = experiments.kernels_table(base, out, nmax=args.kmax or None)
        print(f"kernels: worst route discrepancy {worst:.3e} -> {out}")
        return 0 if worst < 1e-9 else 2
    if name == "lemma2":
        worst = experiments.lemma2_sweep(base, out, seed=args.seed)
        print(f"lemma2: max shell ratio {worst:.4f} -> {out}")
        return 0
    if name == "maximal-atoms":
        maxima = experiments.maximal_atoms(base, out, args.p, seed=args.seed)
        print(f"maximal-atoms p={args.p}: per-level maxima {maxima} -> {out}")
        return 0
    if name == "divergence":
        ratios = experiments.divergence(base, out, args.p, args.phi, args.kmax)
        print(f"divergence p={args.p} phi={args.phi}: ratios "
              + ",".join(f"{r:.4g}" for r in ratios) + f" -> {out}")
        return 0
    if name == "strong-sum":
        rows = experiments.strong_sum_atoms(base, out, p=args.p, seed=args.seed)
        spread = max(r[3] for r in rows) / min(r[3] for r in rows)
        print(f"strong-sum p={args.p}: ratio spread {spread:.2f} -> {out}")
        return 0
    if name == "approximation":
        worst = experiments.approximation(base, out, p=args.p, seed=args.seed)
        print(f"approximation p={args.p}: max rate ratio {worst:.4f} -> {out}")
        return 0
    if name == "modulus-convergence":
        rows = experiments.modulus_convergence(base, out, p=args.p)
        print(f"modulus-convergence: final residuals weak={rows[-1][1]:.2e} "
              f"l1={rows[-1][2]:.2e} -> {out}")
        return 0
    if name == "counterexample-3b":
        rows = experiments.counterexample_3b(base, out, p=args.p)
        floor = min(r[1] for r in rows)
        print(f"counterexample-3b p={args.p}: residual floor {floor:.4f} -> {out}")
        return 0 if floor > 0 else 2
    if name == "counterexample-4b":
        rows = experiments.counterexample_4b(base, out,
                                             coeff_variant=args.variant)
        floor = min(r[1] for r in rows)
        print(f"counterexample-4b ({args.variant}): residual floor "
              f"{floor:.4f} -> {out}")
        return 0 if floor > 0 else 2
    if name == "gat-log-mean":
        rows = experiments.gat_log_mean_sweep(base, out, seed=args.seed)
        print(f"gat-log-mean: value at n={rows[-1][0]} is {rows[-1][1]:.4f} "
              f"-> {out}")
        return 0
    raise ConfigError(f"unknown experiment {name!r}")


def _run_verify(args) -> int:
    out_dir = args.out
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    t0 = time.time()
    results = acceptance.run_all(out_dir)
    failed = [r for r in results if not r.passed]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] criterion {r.number}: {r.name} — {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed "
          f"in {time.time() - t0:.1f}s")
    if out_dir:
        experiments.write_csv(
            os.path.join(out_dir, "acceptance.csv"),
            ("criterion", "name", "passed", "detail"),
            [(r.number, r.name, int(r.passed), r.detail) for r in results],
        )
    return 0 if not failed else 2


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        if args.command == "verify":
            return _run_verify(args)
        return _run_experiment(args)
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
