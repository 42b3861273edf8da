"""Canonical JSON fixtures for scenarios, witnesses, schedules, and reports.

Every writer emits a fixed key order and lists values in lexicographic
path order, so save∘load∘save is byte-identical and fixtures diff
cleanly. Values are serialized as their domain symbols.
"""

from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Any

from .adversary import RoundBoundFamily, WitnessPair
from .domain import DEFAULT_DOMAIN, ValueDomain
from .esync import DeliverySchedule, RBReport, StaticFaultConfig
from .scenario import Scenario, SystemConfig, View
from .signed import SignedChain, SignedScenario


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _domain_fields(domain: ValueDomain) -> dict:
    if domain == DEFAULT_DOMAIN:
        return {}
    return {"domain": list(domain.symbols)}


def _domain_from(data: dict) -> ValueDomain:
    if "domain" in data:
        return ValueDomain(tuple(data["domain"]))
    return DEFAULT_DOMAIN


def scenario_to_dict(scn: Scenario) -> dict:
    values = [
        {"path": list(path), "value": scn.domain.symbol(scn.value_at(path))}
        for path in scn.space.iter_paths_lex(scn.transmitter)
    ]
    out = {
        "config": {"n": scn.cfg.n, "m": scn.cfg.m, "d": scn.cfg.d, "b": scn.cfg.b},
        "k": scn.k,
        "transmitter": scn.transmitter,
        "byz": sorted(scn.byz),
        "dfaulty": sorted(scn.dfaulty),
        **_domain_fields(scn.domain),
        "values": values,
    }
    return out


def scenario_from_dict(data: dict) -> Scenario:
    cfg = SystemConfig(**data["config"])
    domain = _domain_from(data)
    scn_values = [0] * sum(cfg.n**l for l in range(data["k"] + 1))
    probe = Scenario(
        cfg, data["k"], data["transmitter"], scn_values,
        byz=data["byz"], dfaulty=data["dfaulty"], domain=domain,
    )
    buf = probe.values.copy()
    buf.setflags(write=True)
    for entry in data["values"]:
        path = tuple(entry["path"])
        buf[probe.space.index(path, probe.transmitter)] = domain.code(entry["value"])
    return Scenario(
        cfg, data["k"], data["transmitter"], buf,
        byz=data["byz"], dfaulty=data["dfaulty"], domain=domain,
    )


def signed_scenario_to_dict(ss: SignedScenario) -> dict:
    scn = ss.scenario
    values = []
    for path in scn.space.iter_paths_lex(scn.transmitter):
        chain = ss.chain_at(path)
        values.append(
            {
                "path": list(path),
                "value": scn.domain.symbol(chain.value),
                "signers": list(chain.signers),
                "forged_at": sorted(chain.forged_at),
            }
        )
    out = scenario_to_dict(scn)
    out["values"] = values
    out["signed"] = True
    return out


def signed_scenario_from_dict(data: dict) -> SignedScenario:
    scn = scenario_from_dict({**data, "values": [
        {"path": e["path"], "value": e["value"]} for e in data["values"]
    ]})
    chains = {
        tuple(e["path"]): SignedChain(
            value=scn.domain.code(e["value"]),
            signers=tuple(e["signers"]),
            forged_at=frozenset(e["forged_at"]),
        )
        for e in data["values"]
    }
    return SignedScenario(scn, chains)


def view_to_dict(view: View) -> dict:
    values = [
        {"path": list(path), "value": view.domain.symbol(view.value_at(path))}
        for path in view.space.iter_paths_lex(view.transmitter)
    ]
    return {
        "config": {"n": view.cfg.n, "m": view.cfg.m, "d": view.cfg.d, "b": view.cfg.b},
        "k": view.k,
        "transmitter": view.transmitter,
        "owner": view.owner,
        **_domain_fields(view.domain),
        "values": values,
    }


def view_from_dict(data: dict) -> View:
    cfg = SystemConfig(**data["config"])
    domain = _domain_from(data)
    size = sum(cfg.n**l for l in range(data["k"]))
    probe = View(cfg, data["k"], data["transmitter"], data["owner"], [0] * size, domain)
    buf = probe.values.copy()
    buf.setflags(write=True)
    for entry in data["values"]:
        buf[probe.space.index(tuple(entry["path"]), probe.transmitter)] = domain.code(entry["value"])
    return View(cfg, data["k"], data["transmitter"], data["owner"], buf, domain)


def witness_pair_to_dict(pair: WitnessPair) -> dict:
    signed = isinstance(pair.alpha, SignedScenario)
    dump = signed_scenario_to_dict if signed else scenario_to_dict
    domain = pair.alpha.scenario.domain if signed else pair.alpha.domain
    return {
        "kind": pair.kind,
        "alpha": dump(pair.alpha),
        "beta": dump(pair.beta),
        "indist_set": sorted(pair.indist_set),
        "expected_outputs": [domain.symbol(v) for v in pair.expected_outputs],
    }


def witness_pair_from_dict(data: dict) -> WitnessPair:
    signed = data["alpha"].get("signed", False)
    load = signed_scenario_from_dict if signed else scenario_from_dict
    alpha = load(data["alpha"])
    beta = load(data["beta"])
    domain = alpha.scenario.domain if signed else alpha.domain
    return WitnessPair(
        kind=data["kind"],
        alpha=alpha,
        beta=beta,
        indist_set=frozenset(data["indist_set"]),
        expected_outputs=tuple(domain.code(s) for s in data["expected_outputs"]),
    )


def round_bound_family_to_dict(fam: RoundBoundFamily) -> dict:
    return {
        "kind": "time-lb",
        "x": fam.x,
        "owners": list(fam.owners),
        "alpha": view_to_dict(fam.alpha),
        "alpha_next": view_to_dict(fam.alpha_next),
        "links": [scenario_to_dict(s) for s in fam.links],
    }


def round_bound_family_from_dict(data: dict) -> RoundBoundFamily:
    return RoundBoundFamily(
        x=data["x"],
        alpha=view_from_dict(data["alpha"]),
        alpha_next=view_from_dict(data["alpha_next"]),
        links=tuple(scenario_from_dict(s) for s in data["links"]),
        owners=tuple(data["owners"]),
    )


def schedule_to_dict(schedule: DeliverySchedule) -> dict:
    delays = [
        {"from": s, "to": r, "round": hop, "delay": delay}
        for (s, r, hop), delay in sorted(schedule.delays.items())
    ]
    return {"gst": schedule.gst, "delays": delays}


def schedule_from_dict(data: dict) -> DeliverySchedule:
    delays = {
        (e["from"], e["to"], e["round"]): e["delay"] for e in data.get("delays", [])
    }
    return DeliverySchedule(gst=data.get("gst", 0), delays=delays)


def faults_to_dict(faults: StaticFaultConfig) -> dict:
    return {
        "byz": sorted(faults.byz),
        "dfaulty": sorted(faults.dfaulty),
        "fixed_links": [
            {"process": p, "links": sorted(links)}
            for p, links in sorted(faults.fixed_links.items())
        ],
    }


def faults_from_dict(data: dict) -> StaticFaultConfig:
    return StaticFaultConfig(
        byz=frozenset(data.get("byz", [])),
        dfaulty=frozenset(data.get("dfaulty", [])),
        fixed_links={
            e["process"]: frozenset(e["links"]) for e in data.get("fixed_links", [])
        },
    )


def rb_report_to_dict(report: RBReport, extra: dict | None = None) -> dict:
    out = dict(extra or {})
    out.update(
        {
            "primitive": report.primitive,
            "horizon": report.horizon,
            "outcomes": [
                {
                    "process": p,
                    "decided": None
                    if o.decided is None
                    else DEFAULT_DOMAIN.symbol(o.decided),
                    "decided_at": o.decided_at,
                }
                for p, o in sorted(report.outcomes.items())
            ],
        }
    )
    return out


def save_json(path: FsPath | str, data: dict) -> None:
    FsPath(path).write_text(canonical_dumps(data), encoding="utf-8")


def load_json(path: FsPath | str) -> dict:
    return json.loads(FsPath(path).read_text(encoding="utf-8"))
