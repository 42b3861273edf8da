"""Agreement pipelines over full-information views.

The view transform runs the chosen local-majority filter bottom-up over a
view, erasing partial failures and leaving a shorter view that behaves as
if only fully Byzantine processes existed. The scenario transform is its
omniscient counterpart, used as a test oracle: applied to a whole
scenario it yields a classical (n, 0, 0, b) scenario whose per-process
views coincide with the per-process view transforms. On the shortened
view the classical recursive-majority rule decides.

``ba_pp`` is the (b+3)-round pipeline (three-round filter, then recursive
majority); ``ba_pp_fast`` is the (b+2)-round variant available under the
fast condition. ``check_ba`` runs a pipeline at every non-Byzantine
process of a scenario and grades the run against the three agreement
clauses (termination, validity, agreement).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .paths import PathSpace
from .scenario import (
    PreconditionError,
    Scenario,
    SystemConfig,
    View,
    fast_condition_holds,
    resilience_holds,
    view_of,
)


class LMKind(enum.Enum):
    THREE_ROUND = 3
    TWO_ROUND = 2

    @property
    def window(self) -> int:
        return self.value


def view_transform(view: View, kind: LMKind = LMKind.THREE_ROUND) -> View:
    """Iterated local-majority pass; returns the shortened corrected view.

    With the three-round filter a k-round view becomes a (k-2)-round view;
    with the two-round filter, a (k-1)-round one. Each iteration reads the
    previous iteration's values only (copy semantics, no aliasing).
    """
    w = kind.window
    if view.k < w:
        raise PreconditionError(f"view transform needs at least {w} rounds, got {view.k}")
    out_k = view.k - w + 1
    full = kernels.view_transform_values(
        view.values,
        view.space.offsets,
        view.cfg.n,
        len(view.domain),
        view.transmitter,
        view.cfg.m,
        view.cfg.b,
        view.k,
        w,
    )
    keep = PathSpace(view.cfg.n, out_k - 1).size
    return View(view.cfg, out_k, view.transmitter, view.owner, full[:keep], view.domain)


def scenario_transform(scn: Scenario, kind: LMKind = LMKind.THREE_ROUND) -> Scenario:
    """Whole-scenario counterpart of the view transform (the test oracle).

    Per iteration: apply every non-Byzantine process's view-transform step
    to the shared value tree, then overwrite what non-Byzantine processes
    "told" Byzantine receivers with the sender's own corrected value. The
    result, truncated like the view transform, is a scenario of an
    (n, 0, 0, b) system with the same Byzantine set; a non-Byzantine
    transmitter's root value is preserved.
    """
    w = kind.window
    k = scn.k
    if k < w:
        raise PreconditionError(f"scenario transform needs at least {w} rounds, got {k}")
    cfg = scn.cfg
    n = cfg.n
    nsym = len(scn.domain)
    off = scn.space.offsets
    voff = PathSpace(n, k - 1).offsets
    byz = sorted(scn.byz)
    byz_arr = np.array(byz, dtype=np.int64)
    nonbyz = [p for p in range(n) if p not in scn.byz]

    cur = np.array(scn.values, dtype=np.int8)
    for i in range(k - w, -1, -1):
        new = cur.copy()
        for p in nonbyz:
            vvals = np.empty(int(voff[k]), dtype=np.int8)
            for tail in range(k):
                layer = cur[int(off[tail + 1]) : int(off[tail + 2])].reshape(-1, n)
                vvals[int(voff[tail]) : int(voff[tail + 1])] = layer[:, p]
            for pref_val in range(n**i):
                for slen in range(k - w - i + 1):
                    pw = n**slen
                    base = int(off[i + slen + 1])
                    for s_val in range(pw):
                        val = kernels.lm_single(
                            vvals, voff, n, nsym, scn.transmitter,
                            cfg.m, cfg.b, w, i, pref_val, slen, s_val,
                        )
                        new[base + (pref_val * pw + s_val) * n + p] = val
        if byz:
            for ptail in range(i + 1, k):
                parent = new[int(off[ptail]) : int(off[ptail + 1])]
                child = new[int(off[ptail + 1]) : int(off[ptail + 2])].reshape(-1, n)
                senders = np.arange(parent.size, dtype=np.int64) % n
                honest = ~np.isin(senders, byz_arr)
                for q in byz:
                    child[honest, q] = parent[honest]
        cur = new

    # The per-iteration Byzantine-receiver fix-up never reaches the
    # transmitter's first-round sends; close that gap so a non-Byzantine
    # transmitter is honest toward Byzantine receivers as well.
    if scn.transmitter not in scn.byz:
        for q in byz:
            cur[int(off[1]) + q] = cur[0]

    out_k = k - w + 1
    keep = int(off[out_k + 1])
    return Scenario(
        SystemConfig(n, 0, 0, cfg.b),
        out_k,
        scn.transmitter,
        cur[:keep],
        byz=scn.byz,
        dfaulty=(),
        domain=scn.domain,
    )


def om_decide(view: View, rounds: int) -> int:
    """Classical recursive-majority decision tolerating ``rounds`` Byzantine
    processes, evaluated on the distinct-label restriction of the view."""
    if rounds < 0:
        raise PreconditionError("recursion depth must be nonnegative")
    if view.k < rounds + 1:
        raise PreconditionError(f"decision needs {rounds + 1} rounds, view has {view.k}")
    return kernels.om_decide_values(
        view.values,
        view.space.offsets,
        view.cfg.n,
        len(view.domain),
        view.transmitter,
        rounds,
    )


def ba_pp(view: View) -> int:
    """(b+3)-round agreement decision for one process."""
    b = view.cfg.b
    if view.k != b + 3:
        raise PreconditionError(f"expected a {b + 3}-round view, got {view.k}")
    if not resilience_holds(view.cfg):
        raise PreconditionError("system outside the oral-message resilience bound")
    return om_decide(view_transform(view, LMKind.THREE_ROUND), b)


def ba_pp_fast(view: View) -> int:
    """(b+2)-round agreement decision, valid under the fast condition."""
    b = view.cfg.b
    if view.k != b + 2:
        raise PreconditionError(f"expected a {b + 2}-round view, got {view.k}")
    if not fast_condition_holds(view.cfg):
        raise PreconditionError("system outside the fast-variant bound")
    return om_decide(view_transform(view, LMKind.TWO_ROUND), b)


@dataclass(frozen=True)
class DecisionReport:
    outputs: dict[int, int]
    termination_ok: bool
    validity_ok: bool | None
    agreement_ok: bool
    witness: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.termination_ok and self.agreement_ok and self.validity_ok is not False


ALGORITHMS: dict[str, Callable[[View], int]] = {
    "ba_pp": ba_pp,
    "ba_pp_fast": ba_pp_fast,
}


def _om_for(scn: Scenario) -> Callable[[View], int]:
    def decide(view: View) -> int:
        return om_decide(view, scn.cfg.b)

    return decide


def check_ba(scn: Scenario, algorithm: str | Callable[[View], int] = "ba_pp") -> DecisionReport:
    """Run a decision rule at every non-Byzantine process and grade it.

    Validity is judged against the root value and only when the
    transmitter is non-Byzantine (a partially faulty transmitter still
    counts); Byzantine processes' outputs are unconstrained and not
    recorded.
    """
    if callable(algorithm):
        decide = algorithm
    elif algorithm == "om":
        decide = _om_for(scn)
    else:
        try:
            decide = ALGORITHMS[algorithm]
        except KeyError:
            raise PreconditionError(f"unknown algorithm {algorithm!r}") from None

    outputs: dict[int, int] = {}
    for p in range(scn.cfg.n):
        if p in scn.byz:
            continue
        outputs[p] = decide(view_of(scn, p))

    witness = None
    agreement_ok = True
    decided = sorted(outputs)
    for p, q in zip(decided, decided[1:]):
        if outputs[p] != outputs[q]:
            agreement_ok = False
            witness = ("agreement", p, q, outputs[p], outputs[q])
            break

    validity_ok: bool | None = None
    if scn.transmitter not in scn.byz:
        expected = scn.root_value()
        validity_ok = all(v == expected for v in outputs.values())
        if not validity_ok and witness is None:
            culprit = next(p for p, v in outputs.items() if v != expected)
            witness = ("validity", culprit, outputs[culprit], expected)

    return DecisionReport(
        outputs=outputs,
        termination_ok=True,
        validity_ok=validity_ok,
        agreement_ok=agreement_ok,
        witness=witness,
    )
