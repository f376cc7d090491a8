"""Command line front end.

Subcommands:
  verify-space  sample the axioms and the uniform convexity implication
  rate          compute P, gamma0, phi (and delta(k)) from a config, no simulation
  run           simulate one orbit, write the trajectory CSV, audit the step
                inequalities, optionally check phi soundness for one eps
  sweep         certify and verify the whole eps grid off one shared orbit

Exit codes: 0 all checks passed (warnings allowed), 1 at least one check
failed, 2 usage or config errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .config import Caps, ConfigError, ExperimentConfig, load_config
from .geometry import EUCLIDEAN
from .iteration import run_trajectory, trajectory_to_csv
from .moduli import eta_to_eta1
from .rates import RateError, compute_delta, compute_phi, epsilon_shortcut, inputs_for
from .report import FAIL, PASS, UNVERIFIED_AT_SCALE, CheckReport
from .verification import (
    HARD_STEP_CAP,
    check_dyadic_uc_implication,
    check_lemma_inequalities,
    check_phi_soundness,
    check_space_axioms,
    check_uc_implication,
    reference_point,
    trajectory_for,
)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.handler(config, args)
    except RateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asymreg",
        description="Certified rates of asymptotic regularity for averaged "
                    "iterations, with numerical verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="experiment config (JSON)")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--max-steps", type=int, default=None,
                       help="override the step cap (hard limit 10^7)")
        p.add_argument("--json", action="store_true",
                       help="print one JSON document instead of text")

    p = sub.add_parser("verify-space", help="sample space axioms and convexity")
    common(p)
    p.add_argument("--samples", type=int, default=2000)
    p.set_defaults(handler=_cmd_verify_space)

    p = sub.add_parser("rate", help="compute certified rates, no simulation")
    common(p)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--k", type=int, action="append", default=[],
                   help="also compute delta(k); repeatable")
    p.set_defaults(handler=_cmd_rate)

    p = sub.add_parser("run", help="simulate one orbit and audit it")
    common(p)
    p.add_argument("--eps", type=float, default=None,
                   help="also verify phi soundness at this eps")
    p.add_argument("--steps", type=int, default=None,
                   help="simulation length (default: derived from --eps, else 10000)")
    p.add_argument("--out", default="out", help="output directory")
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("sweep", help="certify and verify the whole eps grid")
    common(p)
    p.add_argument("--out", default="out", help="output directory")
    p.set_defaults(handler=_cmd_sweep)
    return parser


def _load(args) -> ExperimentConfig:
    config = load_config(args.config)
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    if args.max_steps is not None:
        if args.max_steps < 1:
            raise ConfigError("--max-steps: must be >= 1")
        caps = Caps(max_steps=min(args.max_steps, HARD_STEP_CAP),
                    report_every=config.caps.report_every)
        config = dataclasses.replace(config, caps=caps)
    return config


def _exit_code(reports) -> int:
    return 1 if any(r.verdict == FAIL for r in reports) else 0


def _emit(reports, as_json: bool, extra: dict | None = None) -> None:
    if as_json:
        doc = dict(extra or {})
        doc["checks"] = [r.to_json_dict() for r in reports]
        doc["verdict"] = _worst(reports)
        print(json.dumps(doc, sort_keys=True))
        return
    for key, value in (extra or {}).items():
        print(f"{key}: {json.dumps(value, sort_keys=True)}")
    for r in reports:
        print(r.summary_line())


def _worst(reports) -> str:
    verdicts = {r.verdict for r in reports}
    if FAIL in verdicts:
        return FAIL
    if UNVERIFIED_AT_SCALE in verdicts:
        return UNVERIFIED_AT_SCALE
    return PASS


# ---------------------------------------------------------------------------
# subcommands

def _cmd_verify_space(config: ExperimentConfig, args) -> int:
    space, seed, n = config.space, config.seed, args.samples
    reports = [
        check_space_axioms(space, samples=n, seed=seed),
        check_uc_implication(space, samples=n, seed=seed),
    ]
    if space.kind == EUCLIDEAN:
        reports.append(check_dyadic_uc_implication(
            space, eta_to_eta1(space.modulus), conclusion_strict=True,
            samples=n, seed=seed))
    _emit(reports, args.json)
    return _exit_code(reports)


def _rate_doc(config: ExperimentConfig, eps: float, k_list) -> dict:
    ri = inputs_for(eps, config.space.modulus, config.afp.b, config.schedule)
    if epsilon_shortcut(ri) == 0:
        doc = {"eps": eps, "P": 0, "gamma0": 0, "phi": 0,
               "note": "eps exceeds the residual cap 2b"}
        deltas = {int(k): int(k) for k in k_list}
    else:
        rr = compute_phi(ri)
        doc = {"eps": eps, "P": rr.P, "gamma0": rr.gamma0, "phi": rr.phi}
        deltas = {int(k): compute_delta(ri, int(k)) for k in sorted(set(k_list))}
    if deltas:
        doc["deltas"] = {str(k): v for k, v in sorted(deltas.items())}
    return doc


def _cmd_rate(config: ExperimentConfig, args) -> int:
    doc = _rate_doc(config, args.eps, args.k)
    if args.json:
        print(json.dumps(doc, sort_keys=True))
        return 0
    print(f"eps = {args.eps:g}")
    for key in ("P", "gamma0", "phi"):
        print(f"{key} = {doc[key]}")
    for k, v in sorted(doc.get("deltas", {}).items(), key=lambda kv: int(kv[0])):
        print(f"delta({k}) = {v}")
    if "note" in doc:
        print(doc["note"])
    return 0


def _cmd_run(config: ExperimentConfig, args) -> int:
    cap = min(HARD_STEP_CAP, config.caps.max_steps)
    reports: list[CheckReport] = []
    extra: dict = {}

    steps = args.steps
    if steps is None:
        if args.eps is not None:
            ri = inputs_for(args.eps, config.space.modulus, config.afp.b,
                            config.schedule)
            phi = 0 if epsilon_shortcut(ri) == 0 else compute_phi(ri).phi
            steps = min(phi + 1000, cap)
        else:
            steps = min(10_000, cap)
    steps = min(steps, cap)

    record_ref = steps <= 2_000_000
    traj = run_trajectory(
        config.space, config.mapping, config.start, config.schedule, steps,
        afp=config.afp, ref_point=reference_point(config),
        record_ref_distances=record_ref)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    trajectory_to_csv(traj, out / "trajectory.csv",
                      report_every=config.caps.report_every)
    extra["trajectory_csv"] = str(out / "trajectory.csv")
    extra["steps"] = steps

    reports.append(check_lemma_inequalities(traj))
    if args.eps is not None:
        rr, rep = check_phi_soundness(config, args.eps, trajectory=traj)
        reports.append(rep)
        extra["rate"] = rr.to_json_dict()
    (out / "report.json").write_text(json.dumps(
        {**extra, "checks": [r.to_json_dict() for r in reports],
         "verdict": _worst(reports)}, sort_keys=True) + "\n", encoding="utf-8")
    _emit(reports, args.json, extra)
    return _exit_code(reports)


def _cmd_sweep(config: ExperimentConfig, args) -> int:
    cap = min(HARD_STEP_CAP, config.caps.max_steps)
    grid = sorted(set(config.eps_grid), reverse=True)

    rates = {}
    horizon = 0
    for eps in grid:
        ri = inputs_for(eps, config.space.modulus, config.afp.b, config.schedule)
        phi = 0 if epsilon_shortcut(ri) == 0 else compute_phi(ri).phi
        if phi <= cap:
            horizon = max(horizon, min(phi + 1000, cap))
    traj = trajectory_for(config, horizon) if horizon > 0 else None

    reports = []
    rows = []
    for eps in grid:
        rr, rep = check_phi_soundness(config, eps, trajectory=traj)
        reports.append(rep)
        rates[eps] = rr
        rows.append({
            "eps": eps, "P": rr.P, "gamma0": rr.gamma0, "phi": rr.phi,
            "first_hit": rr.empirical_first_hit,
            "tightness": rr.tightness_ratio,
            "verdict": rep.verdict,
        })

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    header = ["eps", "P", "gamma0", "phi", "first_hit", "tightness", "verdict"]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            "" if row[h] is None else
            (repr(float(row[h])) if h in ("eps", "tightness") else str(row[h]))
            for h in header))
    (out / "sweep.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    if traj is not None:
        trajectory_to_csv(traj, out / "residuals.csv",
                          report_every=config.caps.report_every)
    (out / "sweep.json").write_text(json.dumps(
        {"rows": rows, "checks": [r.to_json_dict() for r in reports],
         "verdict": _worst(reports)}, sort_keys=True) + "\n", encoding="utf-8")

    if args.json:
        print(json.dumps({"rows": rows,
                          "checks": [r.to_json_dict() for r in reports],
                          "verdict": _worst(reports)}, sort_keys=True))
    else:
        print(",".join(header))
        for line in lines[1:]:
            print(line)
        for r in reports:
            print(r.summary_line())
    return _exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
