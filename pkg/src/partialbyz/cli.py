"""Command-line harness.

Subcommands::

  check    solvability verdicts and round counts for one configuration
  fuzz     seeded campaign of random scenarios through a decision rule
  witness  construct and verify an impossibility witness
  esync    run the eventually-synchronous broadcast simulator
  sweep    solvability/fuzz grid over (n, m, d, b)
  replay   re-run a persisted violation fixture
  bench    compare kernel backends on a fuzz workload

Exit codes: 0 clean, 1 property violation, 2 usage error. Machine reports
are canonical JSON (stable key order, no wall-clock content) so reruns of
the same seed are byte-identical; timings go to stdout only.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import adversary, kernels
from .agreement import check_ba
from .domain import DEFAULT_DOMAIN
from .esync import DeliverySchedule, StaticFaultConfig, simulate_esync
from .fixtures import (
    canonical_dumps,
    faults_from_dict,
    load_json,
    rb_report_to_dict,
    round_bound_family_to_dict,
    save_json,
    scenario_from_dict,
    scenario_to_dict,
    schedule_from_dict,
    witness_pair_to_dict,
)
from .scenario import (
    PreconditionError,
    SystemConfig,
    fast_condition_holds,
    resilience_holds,
    resilience_holds_signed,
)

WITNESS_KINDS = {
    "m-bound": "m-bound",
    "d-bound": "d-bound",
    "signed": "signed",
    "two-round": "two-round",
    "time-lb": "time-lb",
    # aliases used in older run scripts
    "lemma3": "m-bound",
    "lemma4": "d-bound",
    "two-round-lb": "two-round",
}


def _add_cfg_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--b", type=int, default=0)


def _cfg(args) -> SystemConfig:
    return SystemConfig(n=args.n, m=args.m, d=args.d, b=args.b)


@dataclass(frozen=True)
class CampaignConfig:
    cfg: SystemConfig
    k: int
    algorithm: str
    trials: int
    seed: int
    byz_strategy: str
    transmitter: int
    output_path: Path | None


def _campaign_precheck(c: CampaignConfig) -> None:
    b = c.cfg.b
    if c.trials < 1:
        raise PreconditionError("trials must be at least 1")
    if c.algorithm == "ba_pp":
        if c.k != b + 3:
            raise PreconditionError(f"ba_pp needs k = b + 3 = {b + 3}")
        if not resilience_holds(c.cfg):
            raise PreconditionError("ba_pp needs the oral resilience bound")
    elif c.algorithm == "ba_pp_fast":
        if c.k != b + 2:
            raise PreconditionError(f"ba_pp_fast needs k = b + 2 = {b + 2}")
        if not fast_condition_holds(c.cfg):
            raise PreconditionError("ba_pp_fast needs the fast-variant bound")
    elif c.algorithm == "om":
        if c.k < b + 1:
            raise PreconditionError(f"om needs k >= b + 1 = {b + 1}")
    else:
        raise PreconditionError(f"unknown algorithm {c.algorithm!r}")


def run_campaign(c: CampaignConfig, fixture_dir: Path | None = None) -> dict:
    """Deterministic fuzz campaign; violating scenarios are persisted as
    replayable fixtures next to the report."""
    _campaign_precheck(c)
    violations = []
    for trial in range(c.trials):
        scn = adversary.random_scenario(
            c.cfg,
            c.k,
            transmitter=c.transmitter,
            seed=[c.seed, trial],
            byz_strategy=c.byz_strategy,
        )
        report = check_ba(scn, c.algorithm)
        if not report.ok:
            clause = report.witness[0] if report.witness else "termination"
            entry = {"seed": c.seed, "trial": trial, "clause": clause}
            if fixture_dir is not None:
                fixture_dir.mkdir(parents=True, exist_ok=True)
                name = f"trial{trial:06d}.json"
                save_json(
                    fixture_dir / name,
                    {
                        "algorithm": c.algorithm,
                        "seed": c.seed,
                        "trial": trial,
                        "clause": clause,
                        "scenario": scenario_to_dict(scn),
                    },
                )
                entry["fixture"] = f"{fixture_dir.name}/{name}"
            violations.append(entry)
    return {
        "config": {
            "n": c.cfg.n,
            "m": c.cfg.m,
            "d": c.cfg.d,
            "b": c.cfg.b,
            "k": c.k,
            "algorithm": c.algorithm,
            "trials": c.trials,
            "seed": c.seed,
            "strategy": c.byz_strategy,
            "transmitter": c.transmitter,
        },
        "trials_run": c.trials,
        "violations": violations,
    }


def cmd_check(args) -> int:
    cfg = _cfg(args)
    oral = resilience_holds(cfg)
    fast = fast_condition_holds(cfg)
    signed = resilience_holds_signed(cfg)
    print(f"config: n={cfg.n} m={cfg.m} d={cfg.d} b={cfg.b}")
    print(
        f"oral:   {'solvable' if oral else 'unsolvable'}"
        + (f", rounds b+3 = {cfg.b + 3}" if oral else "")
    )
    print(
        f"fast:   {'available' if fast else 'unavailable'}"
        + (f", rounds b+2 = {cfg.b + 2}" if fast else "")
    )
    print(
        f"signed: {'solvable' if signed else 'unsolvable'}"
        + (f", rounds b+2 = {cfg.b + 2}" if signed else "")
    )
    print(f"round lower bound: at least b+2 = {cfg.b + 2} rounds (m, d > 0)")
    return 0


def cmd_fuzz(args) -> int:
    cfg = _cfg(args)
    out = Path(args.out) if args.out else None
    campaign = CampaignConfig(
        cfg=cfg,
        k=args.k,
        algorithm=args.algorithm,
        trials=args.trials,
        seed=args.seed,
        byz_strategy=args.strategy,
        transmitter=args.transmitter,
        output_path=out,
    )
    fixture_dir = out.parent / f"{out.stem}-fixtures" if out else None
    started = time.perf_counter()
    report = run_campaign(campaign, fixture_dir)
    elapsed = time.perf_counter() - started
    nviol = len(report["violations"])
    print(
        f"{args.algorithm}: {report['trials_run']} trials, {nviol} violations "
        f"[{elapsed:.2f}s, {1e3 * elapsed / max(report['trials_run'], 1):.3f} ms/trial, "
        f"kernels={kernels.BACKEND}]"
    )
    if out:
        save_json(out, report)
        print(f"report written to {out}")
    return 1 if nviol else 0


def cmd_witness(args) -> int:
    cfg = _cfg(args)
    kind = WITNESS_KINDS[args.kind]
    partition = None
    if args.partition:
        groups: dict[str, list[int]] = {}
        for chunk in args.partition.split(";"):
            name, _, members = chunk.partition(":")
            groups[name.strip()] = [int(x) for x in members.split(",") if x.strip()]
        partition = adversary.Partition(groups)

    if kind == "time-lb":
        x = args.x if args.x is not None else cfg.n ** (cfg.b + 1) // 2
        fam = adversary.round_lower_bound_family(cfg, args.transmitter, x)
        checks = adversary.family_checks(fam)
        payload = round_bound_family_to_dict(fam)
    else:
        builders = {
            "m-bound": lambda: adversary.m_bound_pair(cfg, partition, args.k, args.transmitter),
            "d-bound": lambda: adversary.d_bound_pair(cfg, partition, args.k, args.transmitter),
            "signed": lambda: adversary.signed_bound_pair(cfg, partition, args.k, args.transmitter),
            "two-round": lambda: adversary.two_round_pair(cfg, partition, args.transmitter),
        }
        pair = builders[kind]()
        checks = adversary.pair_checks(pair)
        payload = witness_pair_to_dict(pair)

    ok = True
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok &= passed
    if args.out:
        save_json(Path(args.out), payload)
        print(f"witness written to {args.out}")
    return 0 if ok else 1


def cmd_esync(args) -> int:
    cfg = _cfg(args)
    schedule = (
        schedule_from_dict(load_json(args.schedule)) if args.schedule else DeliverySchedule()
    )
    faults = (
        faults_from_dict(load_json(args.faults))
        if args.faults
        else StaticFaultConfig(frozenset(), frozenset())
    )
    tx_value = DEFAULT_DOMAIN.code(args.tx_value)
    report = simulate_esync(
        cfg,
        faults,
        schedule,
        tx_value,
        primitive=args.primitive,
        horizon=args.horizon,
        transmitter=args.transmitter,
    )
    undecided = [p for p, o in report.outcomes.items() if o.decided is None]
    for p, o in sorted(report.outcomes.items()):
        shown = DEFAULT_DOMAIN.symbol(o.decided) if o.decided is not None else "undecided"
        print(f"process {p}: {shown}" + (f" at t={o.decided_at}" if o.decided_at is not None else ""))
    if undecided:
        print(f"undecided at horizon {args.horizon}: {undecided}")
    if args.out:
        save_json(
            Path(args.out),
            rb_report_to_dict(
                report,
                extra={
                    "config": {"n": cfg.n, "m": cfg.m, "d": cfg.d, "b": cfg.b},
                    "transmitter": args.transmitter,
                    "tx_value": args.tx_value,
                },
            ),
        )
        print(f"report written to {args.out}")
    return 0


def cmd_sweep(args) -> int:
    cells = []
    for n in range(1, args.n_max + 1):
        for m in range(0, args.m_max + 1):
            for d in range(0, args.d_max + 1):
                for b in range(0, args.b_max + 1):
                    try:
                        cfg = SystemConfig(n=n, m=m, d=d, b=b)
                    except ValueError:
                        continue
                    cell = {
                        "n": n,
                        "m": m,
                        "d": d,
                        "b": b,
                        "oral": resilience_holds(cfg),
                        "fast": fast_condition_holds(cfg),
                        "signed": resilience_holds_signed(cfg),
                    }
                    if args.trials > 0 and cell["oral"]:
                        campaign = CampaignConfig(
                            cfg=cfg,
                            k=b + 3,
                            algorithm="ba_pp",
                            trials=args.trials,
                            seed=args.seed,
                            byz_strategy=args.strategy,
                            transmitter=0,
                            output_path=None,
                        )
                        report = run_campaign(campaign)
                        cell["fuzz"] = {
                            "algorithm": "ba_pp",
                            "trials": args.trials,
                            "violations": len(report["violations"]),
                        }
                    cells.append(cell)
    print(f"{'n':>3} {'m':>3} {'d':>3} {'b':>3}  {'oral':<10} {'fast':<11} {'signed':<10} fuzz")
    for c in cells:
        fuzz = ""
        if "fuzz" in c:
            fuzz = "clean" if c["fuzz"]["violations"] == 0 else f"{c['fuzz']['violations']} violations"
        print(
            f"{c['n']:>3} {c['m']:>3} {c['d']:>3} {c['b']:>3}  "
            f"{'solvable' if c['oral'] else 'unsolvable':<10} "
            f"{'available' if c['fast'] else 'unavailable':<11} "
            f"{'solvable' if c['signed'] else 'unsolvable':<10} {fuzz}"
        )
    if args.out:
        save_json(Path(args.out), {"cells": cells})
        print(f"sweep written to {args.out}")
    return 0


def cmd_replay(args) -> int:
    data = load_json(args.fixture)
    scn = scenario_from_dict(data["scenario"])
    report = check_ba(scn, data["algorithm"])
    clause = report.witness[0] if report.witness else None
    print(
        f"replay of {args.fixture}: termination={report.termination_ok} "
        f"validity={report.validity_ok} agreement={report.agreement_ok}"
    )
    if not report.ok:
        recorded = data.get("clause")
        match = "matches" if clause == recorded else f"recorded clause was {recorded!r}"
        print(f"violation reproduced: {clause} ({match})")
        return 1
    print("no violation reproduced")
    return 0


def cmd_bench(args) -> int:
    cfg = _cfg(args)
    campaign = CampaignConfig(
        cfg=cfg,
        k=args.k,
        algorithm=args.algorithm,
        trials=args.trials,
        seed=args.seed,
        byz_strategy=args.strategy,
        transmitter=0,
        output_path=None,
    )
    results = {}
    reports = {}
    for backend in kernels.available_backends():
        with kernels.use_backend(backend):
            started = time.perf_counter()
            reports[backend] = run_campaign(campaign)
            results[backend] = time.perf_counter() - started
    for backend, elapsed in sorted(results.items()):
        print(
            f"{backend:<9} {elapsed:8.3f}s total, "
            f"{1e3 * elapsed / campaign.trials:8.3f} ms/trial"
        )
    if len(results) == 2:
        agree = canonical_dumps(reports["pure"]) == canonical_dumps(reports["compiled"])
        print(f"speedup: {results['pure'] / results['compiled']:.1f}x, outputs identical: {agree}")
        if not agree:
            return 1
    else:
        print("compiled backend unavailable; timed pure backend only")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partialbyz", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="solvability verdicts for a configuration")
    _add_cfg_flags(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("fuzz", help="seeded randomized campaign")
    _add_cfg_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--algorithm", default="ba_pp", choices=["ba_pp", "ba_pp_fast", "om"])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", default="uniform", choices=adversary.BYZ_STRATEGIES)
    p.add_argument("--transmitter", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_fuzz)

    p = sub.add_parser("witness", help="build and verify an impossibility witness")
    p.add_argument("kind", choices=sorted(WITNESS_KINDS))
    _add_cfg_flags(p)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--x", type=int, default=None, help="threshold index for time-lb")
    p.add_argument("--partition", default=None, help='e.g. "G:0;H:1;I:2;J:3;K:4"')
    p.add_argument("--transmitter", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("esync", help="eventually-synchronous broadcast run")
    _add_cfg_flags(p)
    p.add_argument("--primitive", default="rb3", choices=["rb2", "rb3"])
    p.add_argument("--schedule", default=None, help="schedule fixture JSON")
    p.add_argument("--faults", default=None, help="static fault fixture JSON")
    p.add_argument("--tx-value", default="1")
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--transmitter", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_esync)

    p = sub.add_parser("sweep", help="solvability grid over (n, m, d, b)")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--d-max", type=int, default=2)
    p.add_argument("--b-max", type=int, default=1)
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", default="uniform", choices=adversary.BYZ_STRATEGIES)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("replay", help="re-run a persisted violation fixture")
    p.add_argument("--fixture", required=True)
    p.set_defaults(fn=cmd_replay)

    p = sub.add_parser("bench", help="compare kernel backends")
    _add_cfg_flags(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--algorithm", default="ba_pp", choices=["ba_pp", "ba_pp_fast", "om"])
    p.add_argument("--trials", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", default="uniform", choices=adversary.BYZ_STRATEGIES)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (PreconditionError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
