"""Full-information scenarios and views for an (n, m, d, b) system.

A system has ``n`` processes of which at most ``b`` are Byzantine
(arbitrary senders) and at most ``m`` are partially faulty: each of those
may send wrong values over at most ``d`` links per round, and the victim
set may change round to round. A k-round *scenario* assigns a value to
every relay path of length 1..k+1 and thereby encodes one complete
execution of the full-information protocol; a process's *view* is the
slice of the scenario it can observe, namely the value at every path
extended by a final hop to that process.

Admissibility is decided from the values alone: processes outside the
fault sets must echo faithfully, and for each partially faulty process
the per-round set of receivers it lied to (inferred, not stored) must
stay within the link budget ``d``.

Scenarios and views are immutable after construction; everything here is
a pure function and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .domain import DEFAULT_DOMAIN, ValueDomain
from .paths import Path, PathSpace


class PreconditionError(ValueError):
    """An operation was invoked outside its stated preconditions."""


@dataclass(frozen=True)
class SystemConfig:
    n: int
    m: int
    d: int
    b: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if min(self.m, self.d, self.b) < 0:
            raise ValueError("m, d, b must be nonnegative")
        if self.d >= self.n - 1 and self.d > 0:
            raise ValueError("d must be smaller than n - 1")
        if self.m == 0 and self.d != 0:
            raise ValueError("d must be 0 when m is 0")

    @property
    def processes(self) -> range:
        return range(self.n)


def resilience_holds(cfg: SystemConfig) -> bool:
    """Agreement with oral messages is solvable iff n clears this bound."""
    return cfg.n > max(2 * cfg.m + cfg.d, 2 * cfg.d + cfg.m, cfg.b) + 2 * cfg.b


def resilience_holds_signed(cfg: SystemConfig) -> bool:
    """Agreement with signed messages is solvable iff n > m + d + b."""
    return cfg.n > cfg.m + cfg.d + cfg.b


def fast_condition_holds(cfg: SystemConfig) -> bool:
    """Condition under which the two-round local filter (and thereby the
    shorter agreement pipeline) is sound."""
    return cfg.n >= max(2 * cfg.m + 2 * cfg.d, cfg.b + 1) + 2 * cfg.b


def _as_value_array(values, size: int, domain: ValueDomain) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int8)
    if arr.shape != (size,):
        raise ValueError(f"expected {size} values, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= len(domain)):
        raise ValueError("value code outside domain")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


class Scenario:
    """A total mapping from relay paths of length 1..k+1 to values."""

    __slots__ = ("cfg", "k", "transmitter", "byz", "dfaulty", "domain", "space", "values")

    def __init__(
        self,
        cfg: SystemConfig,
        k: int,
        transmitter: int,
        values,
        byz: Iterable[int] = (),
        dfaulty: Iterable[int] = (),
        domain: ValueDomain = DEFAULT_DOMAIN,
    ):
        if k < 1:
            raise ValueError("a scenario needs at least one round")
        if not 0 <= transmitter < cfg.n:
            raise ValueError("transmitter id out of range")
        self.cfg = cfg
        self.k = k
        self.transmitter = transmitter
        self.byz = frozenset(byz)
        self.dfaulty = frozenset(dfaulty)
        for p in self.byz | self.dfaulty:
            if not 0 <= p < cfg.n:
                raise ValueError("fault set member out of range")
        self.domain = domain
        self.space = PathSpace(cfg.n, k)
        self.values = _as_value_array(values, self.space.size, domain)

    def value_at(self, path: Path) -> int:
        return int(self.values[self.space.index(path, self.transmitter)])

    def layer(self, tail_len: int) -> np.ndarray:
        off = self.space.offsets
        return self.values[int(off[tail_len]) : int(off[tail_len + 1])]

    def root_value(self) -> int:
        return int(self.values[0])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            self.cfg == other.cfg
            and self.k == other.k
            and self.transmitter == other.transmitter
            and self.byz == other.byz
            and self.dfaulty == other.dfaulty
            and self.domain == other.domain
            and bool(np.array_equal(self.values, other.values))
        )

    def __repr__(self) -> str:
        return (
            f"Scenario(n={self.cfg.n}, m={self.cfg.m}, d={self.cfg.d}, b={self.cfg.b}, "
            f"k={self.k}, tx={self.transmitter}, byz={sorted(self.byz)}, "
            f"dfaulty={sorted(self.dfaulty)})"
        )


class View:
    """One process's slice of a scenario: value at every path, final hop
    to the owner left implicit. Paths here have length 1..k."""

    __slots__ = ("cfg", "k", "transmitter", "owner", "domain", "space", "values")

    def __init__(
        self,
        cfg: SystemConfig,
        k: int,
        transmitter: int,
        owner: int,
        values,
        domain: ValueDomain = DEFAULT_DOMAIN,
    ):
        if k < 1:
            raise ValueError("a view needs at least one round")
        if not 0 <= owner < cfg.n:
            raise ValueError("owner id out of range")
        self.cfg = cfg
        self.k = k
        self.transmitter = transmitter
        self.owner = owner
        self.domain = domain
        self.space = PathSpace(cfg.n, k - 1)
        self.values = _as_value_array(values, self.space.size, domain)

    def value_at(self, path: Path) -> int:
        return int(self.values[self.space.index(path, self.transmitter)])

    def layer(self, tail_len: int) -> np.ndarray:
        off = self.space.offsets
        return self.values[int(off[tail_len]) : int(off[tail_len + 1])]

    def __repr__(self) -> str:
        return f"View(owner={self.owner}, k={self.k}, tx={self.transmitter})"


def view_of(scn: Scenario, p: int) -> View:
    """Extract process p's view: view(s) = scenario(s·p) for every path s."""
    if not 0 <= p < scn.cfg.n:
        raise PreconditionError("process id out of range")
    n = scn.cfg.n
    out = np.empty(PathSpace(n, scn.k - 1).size, dtype=np.int8)
    off_v = PathSpace(n, scn.k - 1).offsets
    for tail in range(scn.k):
        child = scn.layer(tail + 1).reshape(-1, n)
        out[int(off_v[tail]) : int(off_v[tail + 1])] = child[:, p]
    return View(scn.cfg, scn.k, scn.transmitter, p, out, scn.domain)


def view_lookup_nested(view: View, prefix: Path, inner: Path, suffix: Path) -> int:
    """Value the owner holds for a nested sub-scenario coordinate.

    ``prefix`` is a path ``p0…p_i``, ``inner`` continues below ``p_i``
    (without repeating it), and ``suffix`` names the relay chain back to
    the owner. The looked-up view path is their concatenation; this is
    exactly the access pattern the local-majority filters use.
    """
    path = tuple(prefix) + tuple(inner) + tuple(suffix)
    if len(path) > view.k:
        raise PreconditionError(
            f"combined path length {len(path)} exceeds view rounds {view.k}"
        )
    return view.value_at(path)


@dataclass(frozen=True)
class ValidationReport:
    admissible: bool
    violations: tuple[tuple[Path, str], ...]
    inferred_link_sets: dict[tuple[int, int], frozenset[int]] = field(default_factory=dict)


def validate_scenario(scn: Scenario) -> ValidationReport:
    """Check the three admissibility clauses and report every failure.

    Clause 1: fault sets within bounds and disjoint. Clause 2: processes
    outside both sets echo exactly. Clause 3: for each partially faulty
    process and each round, the inferred victim set has at most d members.
    Never raises; the report carries all violations.
    """
    cfg = scn.cfg
    n = cfg.n
    violations: list[tuple[Path, str]] = []
    root = (scn.transmitter,)

    if len(scn.byz) > cfg.b:
        violations.append((root, "byz-count"))
    if len(scn.dfaulty) > cfg.m:
        violations.append((root, "dfaulty-count"))
    if scn.byz & scn.dfaulty:
        violations.append((root, "fault-overlap"))

    link_sets: dict[tuple[int, int], set[int]] = {}
    byz = scn.byz
    dfa = scn.dfaulty
    for parent_tail in range(scn.k):
        parent = scn.layer(parent_tail)
        child = scn.layer(parent_tail + 1).reshape(-1, n)
        mismatch = child != parent[:, None]
        if parent_tail == 0:
            senders = np.full(parent.shape, scn.transmitter, dtype=np.int64)
        else:
            senders = np.arange(parent.shape[0], dtype=np.int64) % n
        rnd = parent_tail + 1
        for t, q in zip(*np.nonzero(mismatch)):
            sender = int(senders[t])
            if sender in byz:
                continue
            parent_path = scn.space.decode(int(scn.space.offsets[parent_tail]) + int(t), scn.transmitter)
            if sender in dfa:
                link_sets.setdefault((sender, rnd), set()).add(int(q))
            else:
                violations.append((parent_path + (int(q),), "correct-echo"))

    for (p, rnd), victims in sorted(link_sets.items()):
        if len(victims) > cfg.d:
            violations.append(((scn.transmitter,), f"link-budget:p={p},round={rnd}"))

    inferred = {key: frozenset(v) for key, v in sorted(link_sets.items())}
    return ValidationReport(
        admissible=not violations,
        violations=tuple(violations),
        inferred_link_sets=inferred,
    )
