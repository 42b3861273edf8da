"""Eventually-synchronous reliable broadcast over a static fault pattern.

Before an unknown global stabilization time (GST) the network may delay
messages arbitrarily (but finitely); afterwards everything pending or new
is delivered within one logical tick. Faults are static here: each
partially faulty process has a fixed set of at most d poisoned outgoing
links, and Byzantine processes corrupt everything they send. The
two-hop and three-hop broadcast deciders fire on count thresholds that
the fault budgets can never fake for a non-Byzantine transmitter, so the
decided value is independent of the delivery schedule.

The simulator is a deterministic discrete-event loop keyed by
(time, sequence number); replays of the same inputs are bit-identical.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .domain import DEFAULT_DOMAIN, ValueDomain
from .scenario import PreconditionError, SystemConfig


@dataclass(frozen=True)
class StaticFaultConfig:
    byz: frozenset[int]
    dfaulty: frozenset[int]
    fixed_links: dict[int, frozenset[int]] = field(default_factory=dict)

    def check(self, cfg: SystemConfig) -> None:
        if len(self.byz) > cfg.b:
            raise PreconditionError("too many Byzantine processes")
        if len(self.dfaulty) > cfg.m:
            raise PreconditionError("too many partially faulty processes")
        if self.byz & self.dfaulty:
            raise PreconditionError("fault sets overlap")
        for p, links in self.fixed_links.items():
            if p not in self.dfaulty:
                raise PreconditionError(f"fixed links assigned to non-faulty {p}")
            if len(links) > cfg.d:
                raise PreconditionError(f"process {p} has more than d poisoned links")


@dataclass(frozen=True)
class DeliverySchedule:
    """Per-message delays before GST; at most one tick afterwards.

    ``delays`` maps (sender, receiver, hop) to a delay in ticks. Messages
    without an entry take one tick. Any delivery is capped at
    max(send time, gst) + 1, which is what makes every delay finite.
    """

    gst: int = 0
    delays: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def delivery_time(self, sent_at: int, sender: int, receiver: int, hop: int) -> int:
        raw = self.delays.get((sender, receiver, hop), 1)
        if raw < 0:
            raise PreconditionError("delays must be nonnegative")
        return min(sent_at + raw, max(sent_at, self.gst) + 1)


@dataclass
class ProcessOutcome:
    decided: int | None = None
    decided_at: int | None = None


@dataclass(frozen=True)
class RBReport:
    primitive: str
    horizon: int
    outcomes: dict[int, ProcessOutcome]

    def decided_values(self) -> dict[int, int | None]:
        return {p: o.decided for p, o in self.outcomes.items()}


class RB2Decider:
    """Two-hop decider: latch once at least n-m-d-b relayed copies agree.

    The count is capped at the n-1 entries that exist at all; the cap only
    binds in the fault-free configuration."""

    def __init__(self, cfg: SystemConfig):
        self.threshold = min(cfg.n - cfg.m - cfg.d - cfg.b, cfg.n - 1)
        self._seen: dict[int, int] = {}
        self._counts: dict[int, int] = {}
        self.decision: int | None = None

    def offer(self, relay: int, value: int) -> int | None:
        if self.decision is None and relay not in self._seen:
            self._seen[relay] = value
            count = self._counts.get(value, 0) + 1
            self._counts[value] = count
            if count >= self.threshold:
                self.decision = value
        return self.decision


class RB3Decider:
    """Three-hop decider.

    Per first relay, a value enters the slot set once n-m-b-1 second-hop
    copies agree on it (inside the resilience bound at most one value can
    ever reach that threshold); the decision latches once n-m-d-b slots
    agree.
    """

    def __init__(self, cfg: SystemConfig):
        self.slot_threshold = cfg.n - cfg.m - cfg.b - 1
        self.decide_threshold = min(cfg.n - cfg.m - cfg.d - cfg.b, cfg.n - 1)
        self._seen: set[tuple[int, int]] = set()
        self._per_slot: dict[int, dict[int, int]] = {}
        self._slots: dict[int, int] = {}
        self._slot_counts: dict[int, int] = {}
        self.decision: int | None = None

    def offer(self, relay1: int, relay2: int, value: int) -> int | None:
        if self.decision is not None or (relay1, relay2) in self._seen:
            return self.decision
        self._seen.add((relay1, relay2))
        counts = self._per_slot.setdefault(relay1, {})
        counts[value] = counts.get(value, 0) + 1
        if relay1 not in self._slots and counts[value] >= self.slot_threshold:
            self._slots[relay1] = value
            total = self._slot_counts.get(value, 0) + 1
            self._slot_counts[value] = total
            if total >= self.decide_threshold:
                self.decision = value
        return self.decision


def _corrupt(domain: ValueDomain, sender: int, receiver: int, hop: int, value: int) -> int:
    # Deterministic wrong value, varied across links and hops.
    nsym = len(domain)
    offset = 1 + (sender * 31 + receiver * 7 + hop) % (nsym - 1)
    return (value + offset) % nsym


def _send_value(
    faults: StaticFaultConfig,
    domain: ValueDomain,
    sender: int,
    receiver: int,
    hop: int,
    value: int,
) -> int:
    if sender in faults.byz:
        return _corrupt(domain, sender, receiver, hop, value)
    if sender in faults.dfaulty and receiver in faults.fixed_links.get(sender, frozenset()):
        return _corrupt(domain, sender, receiver, hop, value)
    return value


def simulate_esync(
    cfg: SystemConfig,
    faults: StaticFaultConfig,
    schedule: DeliverySchedule,
    tx_value: int,
    primitive: str = "rb3",
    horizon: int = 100,
    transmitter: int = 0,
    domain: ValueDomain = DEFAULT_DOMAIN,
) -> RBReport:
    """Event-driven run of one broadcast instance.

    The transmitter emits at time zero; every process relays what it
    receives per the primitive's hop structure; deciders latch on their
    thresholds. Processes left undecided at the horizon are reported, not
    raised.
    """
    if primitive not in ("rb2", "rb3"):
        raise PreconditionError(f"unknown primitive {primitive!r}")
    if primitive == "rb2" and cfg.n < 2 * cfg.m + 2 * cfg.d + 2 * cfg.b:
        raise PreconditionError("two-hop broadcast needs n >= 2m + 2d + 2b")
    if primitive == "rb3" and cfg.n <= max(2 * cfg.m + cfg.d, 2 * cfg.d + cfg.m, cfg.b) + 2 * cfg.b:
        raise PreconditionError("three-hop broadcast needs the oral resilience bound")
    faults.check(cfg)

    n = cfg.n
    deciders = {
        p: (RB2Decider(cfg) if primitive == "rb2" else RB3Decider(cfg)) for p in range(n)
    }
    outcomes = {p: ProcessOutcome() for p in range(n)}

    queue: list[tuple[int, int, int, tuple]] = []
    seq = 0

    def send(now: int, sender: int, receiver: int, hop: int, payload: tuple) -> None:
        nonlocal seq
        at = schedule.delivery_time(now, sender, receiver, hop)
        heapq.heappush(queue, (at, seq, receiver, (hop, sender) + payload))
        seq += 1

    for q in range(n):
        value = _send_value(faults, domain, transmitter, q, 1, tx_value)
        send(0, transmitter, q, 1, (value,))

    while queue:
        now, _, me, msg = heapq.heappop(queue)
        if now > horizon:
            break
        hop = msg[0]
        if hop == 1:
            _, sender, value = msg
            if me == transmitter:
                continue  # only relays p1 != p0 feed the deciders
            for r in range(n):
                out = _send_value(faults, domain, me, r, 2, value)
                send(now, me, r, 2, (me, out))
        elif hop == 2:
            _, sender, relay1, value = msg
            if primitive == "rb2":
                decider = deciders[me]
                before = decider.decision
                decider.offer(relay1, value)
                if before is None and decider.decision is not None:
                    outcomes[me].decided = decider.decision
                    outcomes[me].decided_at = now
            else:
                if me == relay1:
                    continue  # second relays p2 != p1
                for r in range(n):
                    out = _send_value(faults, domain, me, r, 3, value)
                    send(now, me, r, 3, (relay1, me, out))
        else:
            _, sender, relay1, relay2, value = msg
            decider = deciders[me]
            before = decider.decision
            decider.offer(relay1, relay2, value)
            if before is None and decider.decision is not None:
                outcomes[me].decided = decider.decision
                outcomes[me].decided_at = now

    return RBReport(primitive=primitive, horizon=horizon, outcomes=outcomes)
