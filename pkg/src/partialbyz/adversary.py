"""Adversarial scenario generation: randomized fuzzing plus the exact
impossibility witnesses.

A witness pair is a machine-checkable impossibility proof: two admissible
scenarios that look identical to some set of processes while validity
forces those processes to output different values. One pair exists for
each side of the oral resilience bound, one for the signed bound, and one
for the two-round case; the round-count lower bound is witnessed by a
chain of threshold views linked pairwise through shared scenarios.

All constructors are pure and deterministic; the randomized generator is
deterministic in its seed and produces admissible scenarios by
construction (correct processes echo, partially faulty processes pick at
most d victim links per round, Byzantine processes follow the selected
strategy).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .domain import BOT, DEFAULT_DOMAIN, ONE, ZERO, ValueDomain
from .paths import PathSpace
from .scenario import (
    PreconditionError,
    Scenario,
    SystemConfig,
    View,
    validate_scenario,
    view_of,
)
from .signed import SignedScenario, SignedView, signed_view_of, validate_signed_scenario

BYZ_STRATEGIES = ("uniform", "equivocate-split", "mirror")


def random_scenario(
    cfg: SystemConfig,
    k: int,
    transmitter: int = 0,
    seed: int = 0,
    byz_strategy: str = "uniform",
    byz: Iterable[int] | None = None,
    dfaulty: Iterable[int] | None = None,
    root_value: int | None = None,
    domain: ValueDomain = DEFAULT_DOMAIN,
) -> Scenario:
    """Seed-deterministic admissible scenario.

    Fault sets are drawn at maximal size unless given explicitly. Victim
    links of partially faulty processes are redrawn every round (the link
    assignment is dynamic); Byzantine values follow ``byz_strategy``:
    ``uniform`` draws every coordinate independently, ``equivocate-split``
    sends 0 to the lower half of the receivers and 1 to the upper half,
    and ``mirror`` relays some other fixed process's received values.
    """
    if byz_strategy not in BYZ_STRATEGIES:
        raise PreconditionError(f"unknown strategy {byz_strategy!r}")
    if k < 1:
        raise PreconditionError("need at least one round")
    n = cfg.n
    nsym = len(domain)
    rng = np.random.Generator(np.random.PCG64(seed))
    space = PathSpace(n, k)
    off = space.offsets

    perm = [int(p) for p in rng.permutation(n)]
    given_dfaulty = None if dfaulty is None else frozenset(dfaulty)
    if byz is None:
        pool = perm if given_dfaulty is None else [p for p in perm if p not in given_dfaulty]
        byz = pool[: cfg.b]
    byz = frozenset(byz)
    dfaulty = (
        frozenset([p for p in perm if p not in byz][: cfg.m])
        if given_dfaulty is None
        else given_dfaulty
    )
    if len(byz) > cfg.b or len(dfaulty) > cfg.m or (byz & dfaulty):
        raise PreconditionError("fault sets exceed the configuration or overlap")

    code0, code1 = domain.code("0"), domain.code("1")
    root = int(rng.integers(nsym)) if root_value is None else int(root_value)

    mirror_targets: dict[int, int] = {}
    if byz_strategy == "mirror":
        for x in sorted(byz):
            others = [p for p in range(n) if p != x]
            mirror_targets[x] = others[int(rng.integers(len(others)))]

    vals = np.empty(space.size, dtype=np.int8)
    vals[0] = root
    receivers_row = np.arange(n, dtype=np.int64)
    for layer in range(1, k + 1):
        parent = vals[int(off[layer - 1]) : int(off[layer])]
        child = np.repeat(parent, n)
        if layer == 1:
            senders = np.full(n, transmitter, dtype=np.int64)
        else:
            senders = np.repeat(np.arange(parent.size, dtype=np.int64) % n, n)
        receivers = np.tile(receivers_row, parent.size)

        for x in sorted(dfaulty):
            if cfg.d == 0:
                break
            victims = rng.choice(n, size=min(cfg.d, n), replace=False)
            mask = (senders == x) & np.isin(receivers, victims)
            cnt = int(mask.sum())
            if cnt:
                child[mask] = rng.integers(nsym, size=cnt).astype(np.int8)

        for x in sorted(byz):
            mask = senders == x
            cnt = int(mask.sum())
            if cnt == 0:
                continue
            if byz_strategy == "equivocate-split":
                child[mask] = np.where(receivers[mask] < n // 2, code0, code1).astype(np.int8)
            elif byz_strategy == "mirror" and layer > 1:
                pidx = np.nonzero(mask)[0] // n
                sibling = pidx - (pidx % n) + mirror_targets[x]
                child[mask] = parent[sibling]
            else:
                child[mask] = rng.integers(nsym, size=cnt).astype(np.int8)

        vals[int(off[layer]) : int(off[layer + 1])] = child

    return Scenario(cfg, k, transmitter, vals, byz=byz, dfaulty=dfaulty, domain=domain)


def random_signed_scenario(
    cfg: SystemConfig,
    k: int,
    transmitter: int = 0,
    seed: int = 0,
    root_value: int | None = None,
    domain: ValueDomain = DEFAULT_DOMAIN,
) -> SignedScenario:
    """Seed-deterministic admissible signed scenario.

    Byzantine senders inject free values only where every signer on the
    prefix is Byzantine (anywhere else no verifying altered chain exists,
    so lying there only voids the chain); partially faulty senders lie on
    their victim links as usual, which auto-forges their own position.
    """
    n = cfg.n
    nsym = len(domain)
    rng = np.random.Generator(np.random.PCG64(seed))
    space = PathSpace(n, k)
    off = space.offsets

    perm = [int(p) for p in rng.permutation(n)]
    byz = frozenset(perm[: cfg.b])
    dfaulty = frozenset([p for p in perm if p not in byz][: cfg.m])
    root = int(rng.integers(nsym)) if root_value is None else int(root_value)

    byz_row = np.array([1 if q in byz else 0 for q in range(n)], dtype=bool)
    vals = np.empty(space.size, dtype=np.int8)
    vals[0] = root
    all_byz = np.array([transmitter in byz], dtype=bool)
    receivers_row = np.arange(n, dtype=np.int64)
    for layer in range(1, k + 1):
        parent = vals[int(off[layer - 1]) : int(off[layer])]
        child = np.repeat(parent, n)
        if layer == 1:
            senders = np.full(n, transmitter, dtype=np.int64)
        else:
            senders = np.repeat(np.arange(parent.size, dtype=np.int64) % n, n)
        receivers = np.tile(receivers_row, parent.size)

        for x in sorted(dfaulty):
            if cfg.d == 0:
                break
            victims = rng.choice(n, size=min(cfg.d, n), replace=False)
            mask = (senders == x) & np.isin(receivers, victims)
            cnt = int(mask.sum())
            if cnt:
                child[mask] = rng.integers(nsym, size=cnt).astype(np.int8)

        free = np.repeat(all_byz, n) & np.isin(senders, sorted(byz))
        cnt = int(free.sum())
        if cnt:
            child[free] = rng.integers(nsym, size=cnt).astype(np.int8)

        vals[int(off[layer]) : int(off[layer + 1])] = child
        all_byz = np.repeat(all_byz, n) & np.tile(byz_row, parent.size)

    scn = Scenario(cfg, k, transmitter, vals, byz=byz, dfaulty=dfaulty, domain=domain)
    return SignedScenario(scn)


class Partition:
    """Named disjoint process groups; per-witness shape rules are checked
    by the witness constructors."""

    def __init__(self, groups: Mapping[str, Iterable[int]]):
        self.groups = {name: frozenset(members) for name, members in groups.items()}
        seen: set[int] = set()
        for name, members in self.groups.items():
            if seen & members:
                raise PreconditionError(f"group {name} overlaps another group")
            seen |= members

    def __getitem__(self, name: str) -> frozenset[int]:
        return self.groups[name]

    def covered(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for members in self.groups.values():
            out |= members
        return out

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}={sorted(v)}" for k, v in self.groups.items())
        return f"Partition({inner})"


@dataclass(frozen=True)
class WitnessPair:
    kind: str
    alpha: Scenario | SignedScenario
    beta: Scenario | SignedScenario
    indist_set: frozenset[int]
    expected_outputs: tuple[int, int]


# Group caps per witness kind, in assignment order. ``None`` means the cap
# comes from the configuration at build time.
_WITNESS_SHAPES = {
    "m-bound": ("G", "H", "I", "J", "K"),
    "d-bound": ("G", "H", "I", "J", "K"),
    "signed": ("G", "H", "I"),
    "two-round": ("G", "H", "I", "J"),
}


def _caps(kind: str, cfg: SystemConfig) -> dict[str, int]:
    if kind == "m-bound":
        return {"G": cfg.m, "H": cfg.m, "I": cfg.b, "J": cfg.b, "K": cfg.d}
    if kind == "d-bound":
        return {"G": cfg.m, "H": cfg.d, "I": cfg.d, "J": cfg.b, "K": cfg.b}
    if kind == "signed":
        return {"G": cfg.m, "H": cfg.b, "I": cfg.d}
    if kind == "two-round":
        return {"G": cfg.m - 1, "H": cfg.m - 1, "I": cfg.d, "J": cfg.d}
    raise PreconditionError(f"unknown witness kind {kind!r}")


def check_witness_bound(kind: str, cfg: SystemConfig) -> None:
    """Each constructor's guard is exactly the negation of the matching
    solvability bound; inside the solvable region construction refuses."""
    if kind == "m-bound":
        if cfg.n > 2 * cfg.m + cfg.d + 2 * cfg.b:
            raise PreconditionError("n > 2m + d + 2b: no witness exists here")
    elif kind == "d-bound":
        if cfg.n > 2 * cfg.d + cfg.m + 2 * cfg.b:
            raise PreconditionError("n > 2d + m + 2b: no witness exists here")
    elif kind == "signed":
        if cfg.n > cfg.m + cfg.d + cfg.b:
            raise PreconditionError("n > m + d + b: no signed witness exists here")
    elif kind == "two-round":
        if cfg.m == 0 or cfg.d == 0 or cfg.b != 0:
            raise PreconditionError("two-round witness needs m, d > 0 and b = 0")
        if not (max(2 * cfg.m + cfg.d, 2 * cfg.d + cfg.m) < cfg.n < 2 * cfg.m + 2 * cfg.d):
            raise PreconditionError("n outside (max{2m+d, 2d+m}, 2m+2d)")
    else:
        raise PreconditionError(f"unknown witness kind {kind!r}")


def auto_partition(kind: str, cfg: SystemConfig, transmitter: int = 0) -> Partition:
    """Greedy partition satisfying the witness's shape rules."""
    check_witness_bound(kind, cfg)
    names = _WITNESS_SHAPES[kind]
    caps = _caps(kind, cfg)
    groups: dict[str, list[int]] = {name: [] for name in names}
    if kind == "two-round":
        pool = [p for p in range(cfg.n) if p != transmitter]
        mandatory = ("I", "J")
    else:
        groups["G"].append(transmitter)
        pool = [p for p in range(cfg.n) if p != transmitter]
        mandatory = tuple(name for name in names if name != "G")
        if kind == "signed":
            mandatory = ("I",) if cfg.b == 0 else ("H", "I")
    for name in mandatory:
        if caps[name] <= len(groups[name]):
            raise PreconditionError(f"group {name} cannot be made nonempty")
        if not pool:
            raise PreconditionError("not enough processes for the partition")
        groups[name].append(pool.pop(0))
    for p in list(pool):
        for name in names:
            if len(groups[name]) < caps[name]:
                groups[name].append(p)
                break
        else:
            raise PreconditionError("partition caps too small for n")
    return Partition(groups)


def _check_partition(kind: str, cfg: SystemConfig, transmitter: int, part: Partition) -> None:
    names = _WITNESS_SHAPES[kind]
    caps = _caps(kind, cfg)
    if set(part.groups) != set(names):
        raise PreconditionError(f"{kind} witness needs groups {names}")
    expected = frozenset(range(cfg.n)) - ({transmitter} if kind == "two-round" else frozenset())
    if part.covered() != expected:
        raise PreconditionError("partition must cover the process set")
    for name in names:
        if len(part[name]) > caps[name]:
            raise PreconditionError(f"group {name} exceeds its cap {caps[name]}")
    if kind in ("m-bound", "d-bound"):
        for name in names:
            if not part[name]:
                raise PreconditionError(f"group {name} must be nonempty")
        if transmitter not in part["G"]:
            raise PreconditionError("transmitter must sit in G")
    elif kind == "signed":
        if transmitter not in part["G"]:
            raise PreconditionError("transmitter must sit in G")
        if not part["I"]:
            raise PreconditionError("group I must be nonempty")
        if cfg.b > 0 and not part["H"]:
            raise PreconditionError("group H must be nonempty")
    elif kind == "two-round":
        if not part["I"] or not part["J"]:
            raise PreconditionError("groups I and J must be nonempty")


def _pair_arrays(cfg: SystemConfig, k: int):
    space = PathSpace(cfg.n, k)
    a = np.empty(space.size, dtype=np.int8)
    b = np.empty(space.size, dtype=np.int8)
    return space, a, b


def m_bound_pair(
    cfg: SystemConfig,
    partition: Partition | None = None,
    k: int | None = None,
    transmitter: int = 0,
) -> WitnessPair:
    """Indistinguishable pair for n <= 2m + d + 2b.

    Scenario ``alpha`` has partially faulty H and Byzantine J, ``beta``
    has partially faulty G and Byzantine I; the K processes see the very
    same view in both, yet validity pins their outputs to 0 in alpha and
    1 in beta.
    """
    check_witness_bound("m-bound", cfg)
    if partition is None:
        partition = auto_partition("m-bound", cfg, transmitter)
    _check_partition("m-bound", cfg, transmitter, partition)
    if k is None:
        k = cfg.b + 3
    g_, h_, i_, j_, k_ = (partition[x] for x in "GHIJK")
    n = cfg.n
    space, A, B = _pair_arrays(cfg, k)
    off = space.offsets
    A[0], B[0] = ZERO, ONE
    for q in range(n):
        A[int(off[1]) + q] = ZERO
        B[int(off[1]) + q] = ZERO if q in k_ else ONE
    for tail in range(2, k + 1):
        base, pbase = int(off[tail]), int(off[tail - 1])
        for t in range(n**tail):
            y = t % n
            rest = t // n
            x = rest % n
            pa = pbase + rest
            # beta, groups that echo in beta
            if x in h_ or x in j_ or x in k_:
                B[base + t] = B[pa]
        for t in range(n**tail):
            y = t % n
            rest = t // n
            x = rest % n
            pa = pbase + rest
            if x in g_ or x in i_ or x in k_:
                A[base + t] = A[pa]
            elif x in h_:
                A[base + t] = B[base + t] if y in k_ else A[pa]
            else:  # x in J: Byzantine in alpha, relays beta's values
                A[base + t] = B[base + t]
        for t in range(n**tail):
            y = t % n
            rest = t // n
            x = rest % n
            pa = pbase + rest
            if x in g_:
                B[base + t] = A[base + t] if y in k_ else B[pa]
            elif x in i_:
                B[base + t] = A[base + t]
    alpha = Scenario(cfg, k, transmitter, A, byz=j_, dfaulty=h_)
    beta = Scenario(cfg, k, transmitter, B, byz=i_, dfaulty=g_)
    return WitnessPair("m-bound", alpha, beta, k_, (ZERO, ONE))


def d_bound_pair(
    cfg: SystemConfig,
    partition: Partition | None = None,
    k: int | None = None,
    transmitter: int = 0,
) -> WitnessPair:
    """Indistinguishable pair for n <= 2d + m + 2b.

    Both scenarios have partially faulty G; alpha's Byzantine set is J,
    beta's is K, and every process in H or I sees identical views.
    """
    check_witness_bound("d-bound", cfg)
    if partition is None:
        partition = auto_partition("d-bound", cfg, transmitter)
    _check_partition("d-bound", cfg, transmitter, partition)
    if k is None:
        k = cfg.b + 3
    g_, h_, i_, j_, k_ = (partition[x] for x in "GHIJK")
    n = cfg.n
    space, A, B = _pair_arrays(cfg, k)
    off = space.offsets
    A[0], B[0] = ZERO, ONE
    for q in range(n):
        A[int(off[1]) + q] = ONE if q in h_ else ZERO
        B[int(off[1]) + q] = ZERO if q in i_ else ONE
    for tail in range(2, k + 1):
        base, pbase = int(off[tail]), int(off[tail - 1])
        for t in range(n**tail):
            rest = t // n
            x = rest % n
            pa = pbase + rest
            if x in h_ or x in i_ or x in j_:
                B[base + t] = B[pa]
        for t in range(n**tail):
            y = t % n
            rest = t // n
            x = rest % n
            pa = pbase + rest
            if x in h_ or x in i_ or x in k_:
                A[base + t] = A[pa]
            elif x in g_:
                A[base + t] = B[pa] if y in h_ else A[pa]
            else:  # x in J
                A[base + t] = B[base + t]
        for t in range(n**tail):
            y = t % n
            rest = t // n
            x = rest % n
            pa = pbase + rest
            if x in g_:
                B[base + t] = A[pa] if y in i_ else B[pa]
            elif x in k_:
                B[base + t] = A[base + t]
    alpha = Scenario(cfg, k, transmitter, A, byz=j_, dfaulty=g_)
    beta = Scenario(cfg, k, transmitter, B, byz=k_, dfaulty=g_)
    return WitnessPair("d-bound", alpha, beta, h_ | i_, (ZERO, ONE))


def signed_bound_pair(
    cfg: SystemConfig,
    partition: Partition | None = None,
    k: int | None = None,
    transmitter: int = 0,
) -> WitnessPair:
    """Indistinguishable signed pair for n <= m + d + b: the I processes
    see nothing but the empty value in either scenario."""
    check_witness_bound("signed", cfg)
    if partition is None:
        partition = auto_partition("signed", cfg, transmitter)
    _check_partition("signed", cfg, transmitter, partition)
    if k is None:
        k = cfg.b + 2
    g_, h_, i_ = (partition[x] for x in "GHI")
    n = cfg.n
    space, A, B = _pair_arrays(cfg, k)
    off = space.offsets
    A[0], B[0] = ZERO, ONE
    for q in range(n):
        A[int(off[1]) + q] = BOT if q in i_ else ZERO
        B[int(off[1]) + q] = BOT if q in i_ else ONE
    for tail in range(2, k + 1):
        base, pbase = int(off[tail]), int(off[tail - 1])
        for t in range(n**tail):
            y = t % n
            rest = t // n
            x = rest % n
            pa = pbase + rest
            if x in g_:
                A[base + t] = BOT if y in i_ else A[pa]
                B[base + t] = BOT if y in i_ else B[pa]
            else:  # x in H or I: everything they relay is the empty value
                A[base + t] = BOT
                B[base + t] = BOT
    alpha = SignedScenario(Scenario(cfg, k, transmitter, A, byz=h_, dfaulty=g_))
    beta = SignedScenario(Scenario(cfg, k, transmitter, B, byz=h_, dfaulty=g_))
    return WitnessPair("signed", alpha, beta, i_, (ZERO, ONE))


def two_round_pair(
    cfg: SystemConfig,
    partition: Partition | None = None,
    transmitter: int = 0,
) -> WitnessPair:
    """Two-round indistinguishable pair for max{2m+d, 2d+m} < n < 2m+2d
    with no Byzantine processes; the transmitter itself is partially
    faulty in both scenarios."""
    check_witness_bound("two-round", cfg)
    if partition is None:
        partition = auto_partition("two-round", cfg, transmitter)
    _check_partition("two-round", cfg, transmitter, partition)
    k = 2
    g_, h_, i_, j_ = (partition[x] for x in "GHIJ")
    n = cfg.n
    space, A, B = _pair_arrays(cfg, k)
    off = space.offsets
    A[0], B[0] = ZERO, ONE
    for q in range(n):
        A[int(off[1]) + q] = ONE if q in i_ else ZERO
        B[int(off[1]) + q] = ZERO if q in j_ else ONE
    base = int(off[2])
    for t in range(n**2):
        y = t % n
        x = t // n
        pa = int(off[1]) + x
        if x == transmitter or x in g_:
            A[base + t] = ONE if y in i_ else A[pa]
        else:
            A[base + t] = A[pa]
        if x in h_:
            B[base + t] = ZERO if y in i_ else B[pa]
        else:
            B[base + t] = B[pa]
    alpha = Scenario(cfg, k, transmitter, A, byz=(), dfaulty=g_ | {transmitter})
    beta = Scenario(cfg, k, transmitter, B, byz=(), dfaulty=h_ | {transmitter})
    return WitnessPair("two-round", alpha, beta, i_, (ZERO, ONE))


def views_equal(a: View, b: View) -> bool:
    """Exact equality of two view mappings over every path."""
    if a.k != b.k or a.transmitter != b.transmitter or a.cfg.n != b.cfg.n:
        raise PreconditionError("view shape mismatch")
    return bool(np.array_equal(a.values, b.values))


def signed_views_equal(a: SignedView, b: SignedView) -> bool:
    """Exact equality of two signed views, chains included."""
    if a.k != b.k or a.transmitter != b.transmitter or a.cfg.n != b.cfg.n:
        raise PreconditionError("view shape mismatch")
    return a.chains == b.chains


def final_round_equal(a: View, b: View) -> bool:
    """Equality on the deepest layer only: the coordinates a round-limited
    decision rule reads under full information."""
    if a.k != b.k or a.transmitter != b.transmitter or a.cfg.n != b.cfg.n:
        raise PreconditionError("view shape mismatch")
    return bool(np.array_equal(a.layer(a.k - 1), b.layer(b.k - 1)))


@dataclass(frozen=True)
class RoundBoundFamily:
    """One link of the round-count lower-bound chain.

    ``alpha``/``alpha_next`` are the threshold views for ``x`` and
    ``x+1``; the last scenario in ``links`` is admissible and realizes
    them as the views of ``owners[0]`` and ``owners[1]``. Decision
    equality is asserted on the final round's coordinates (a k-round
    algorithm under full information is a function of exactly those).
    """

    x: int
    alpha: View
    alpha_next: View
    links: tuple[Scenario, ...]
    owners: tuple[int, int]


def threshold_view(cfg: SystemConfig, transmitter: int, x: int, owner: int) -> View:
    """View whose coordinate at path w is 1 iff the radix-n reading of w
    is at least x (most significant label first)."""
    rounds = cfg.b + 1
    vspace = PathSpace(cfg.n, rounds - 1)
    vals = np.empty(vspace.size, dtype=np.int8)
    off = vspace.offsets
    for tail in range(rounds):
        lead = transmitter * cfg.n**tail
        layer = vals[int(off[tail]) : int(off[tail + 1])]
        layer[:] = np.where(lead + np.arange(layer.size) >= x, ONE, ZERO)
    return View(cfg, rounds, transmitter, owner, vals)


def round_lower_bound_family(cfg: SystemConfig, transmitter: int, x: int) -> RoundBoundFamily:
    """Link the threshold views for x and x+1 through one shared scenario.

    The carrier scenario tracks the digit string of x and freezes each
    path's value at its first deviation from it; its liars are confined to
    the digit processes, which become the Byzantine set (or, when all
    b+1 digits are distinct, all but the last digit process, with the last
    one merely lying on a single link).
    """
    b = cfg.b
    n = cfg.n
    if cfg.m == 0 or cfg.d == 0:
        raise PreconditionError("round lower bound needs m, d > 0")
    if n <= b + 3:
        raise PreconditionError("construction needs n > b + 3")
    max_x = n ** (b + 1)
    if not 0 <= x <= max_x:
        raise PreconditionError(f"x must lie in 0..{max_x}")

    k = b + 1
    space = PathSpace(n, k)
    off = space.offsets

    digits: tuple[int, ...] | None = None
    if x < max_x:
        ds = []
        v = x
        for _ in range(b + 1):
            ds.append(v % n)
            v //= n
        digits = tuple(reversed(ds))

    avail = sorted(set(range(n)) - set(digits or ()), reverse=True)
    qb1, qb2 = avail[0], avail[1]
    alpha = threshold_view(cfg, transmitter, x, qb1)
    alpha_next = threshold_view(cfg, transmitter, x + 1, qb2)

    if digits is None or digits[0] != transmitter:
        const = ZERO if digits is None or transmitter < digits[0] else ONE
        vals = np.full(space.size, const, dtype=np.int8)
        link = Scenario(cfg, k, transmitter, vals)
        return RoundBoundFamily(x, alpha, alpha_next, (link,), (qb1, qb2))

    def pattern_value(path: tuple[int, ...]) -> int:
        j = 1
        while j < len(path) and j <= b and path[j] == digits[j]:
            j += 1
        if j == len(path):
            return ONE
        tau = digits[j] if j <= b else qb1
        return ONE if path[j] >= tau else ZERO

    sigma = np.empty(space.size, dtype=np.int8)
    for idx in range(space.size):
        sigma[idx] = pattern_value(space.decode(idx, transmitter))

    distinct = set(digits)
    if len(distinct) <= b:
        link = Scenario(cfg, k, transmitter, sigma, byz=distinct)
        return RoundBoundFamily(x, alpha, alpha_next, (link,), (qb1, qb2))

    # All b+1 digit processes are distinct: a Byzantine set that large is
    # inadmissible, so the last digit process is downgraded to a single
    # lying link instead.
    phi = sigma.copy()
    digit_tail = x % n**b
    base = int(off[b + 1]) + digit_tail * n
    for q in range(n):
        phi[base + q] = ZERO if q == qb2 else ONE
    raw = Scenario(cfg, k, transmitter, sigma, byz=distinct)
    link = Scenario(cfg, k, transmitter, phi, byz=frozenset(digits[:b]), dfaulty={digits[b]})
    return RoundBoundFamily(x, alpha, alpha_next, (raw, link), (qb1, qb2))


def pair_checks(pair: WitnessPair) -> list[tuple[str, bool]]:
    """Machine checks for a witness pair: both scenarios admissible with
    the fault sets the construction assigns, and exact view equality on
    the designated set."""
    checks: list[tuple[str, bool]] = []
    if isinstance(pair.alpha, SignedScenario):
        checks.append(("alpha-admissible", validate_signed_scenario(pair.alpha).admissible))
        checks.append(("beta-admissible", validate_signed_scenario(pair.beta).admissible))
        for p in sorted(pair.indist_set):
            same = signed_views_equal(signed_view_of(pair.alpha, p), signed_view_of(pair.beta, p))
            checks.append((f"views-equal-p{p}", same))
    else:
        checks.append(("alpha-admissible", validate_scenario(pair.alpha).admissible))
        checks.append(("beta-admissible", validate_scenario(pair.beta).admissible))
        for p in sorted(pair.indist_set):
            same = views_equal(view_of(pair.alpha, p), view_of(pair.beta, p))
            checks.append((f"views-equal-p{p}", same))
    checks.append(("required-outputs-differ", pair.expected_outputs[0] != pair.expected_outputs[1]))
    return checks


def family_checks(fam: RoundBoundFamily) -> list[tuple[str, bool]]:
    """Machine checks for one round-bound link: the admissible carrier
    reproduces both threshold views on the decision coordinates, and the
    raw/downgraded carriers agree on the owners' full views."""
    checks: list[tuple[str, bool]] = []
    link = fam.links[-1]
    checks.append(("link-admissible", validate_scenario(link).admissible))
    v1 = view_of(link, fam.owners[0])
    v2 = view_of(link, fam.owners[1])
    checks.append(("alpha-final-round", final_round_equal(v1, fam.alpha)))
    checks.append(("alpha-next-final-round", final_round_equal(v2, fam.alpha_next)))
    for extra in fam.links[:-1]:
        same = views_equal(view_of(extra, fam.owners[0]), v1) and views_equal(
            view_of(extra, fam.owners[1]), v2
        )
        checks.append(("carriers-agree-on-owners", same))
    max_x = link.cfg.n ** (link.cfg.b + 1)
    if fam.x == 0:
        checks.append(("alpha-constant-one", bool(np.all(fam.alpha.values == ONE))))
    if fam.x == max_x:
        checks.append(("alpha-next-constant-zero", bool(np.all(fam.alpha_next.values == ZERO))))
    return checks
