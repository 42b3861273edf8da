"""Signed-message model and the (b+2)-round signed agreement rule.

Signatures are perfect, not cryptographic: a non-Byzantine process's
signature cannot be forged and any alteration of signed content is
detectable, so a relayed chain is verifiable exactly when, at every
non-Byzantine position, the carried value matches what that signer really
committed. Forgery positions are therefore derivable from the value tree
plus the Byzantine set; the adversary simply cannot construct a verifying
chain that misattributes a value to a non-Byzantine signer.

The decision rule collects, over all distinct-signer relay chains of
depth up to b+2, the values whose chains verify, and outputs a
deterministic representative of that set (its minimum under the domain
order; the empty value when nothing verifies). For a non-Byzantine
transmitter the set is the singleton carrying its initial value; for a
Byzantine transmitter any two non-Byzantine processes collect the same
set, so outputs still agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import BOT
from .paths import Path
from .scenario import (
    PreconditionError,
    Scenario,
    ValidationReport,
    resilience_holds_signed,
    validate_scenario,
)


@dataclass(frozen=True)
class SignedChain:
    """A value plus its claimed signer chain.

    ``forged_at`` holds the positions whose claimed signatures are not
    genuine; a chain verifies iff it is empty.
    """

    value: int
    signers: Path
    forged_at: frozenset[int]


def verify_chain(chain: SignedChain) -> bool:
    return not chain.forged_at


def derive_chains(scn: Scenario) -> dict[Path, SignedChain]:
    """Ground-truth chains for every path of a scenario.

    Position j (signer ``path[j]``) is forged exactly when the signer is
    non-Byzantine and the carried value differs from the value that signer
    committed at its own point in the relay.
    """
    chains: dict[Path, SignedChain] = {}
    for path in scn.space.iter_paths_lex(scn.transmitter):
        value = scn.value_at(path)
        forged = frozenset(
            j
            for j in range(len(path) - 1)
            if path[j] not in scn.byz and value != scn.value_at(path[: j + 1])
        )
        chains[path] = SignedChain(value=value, signers=path[:-1], forged_at=forged)
    return chains


class SignedScenario:
    """A scenario whose messages carry signature chains."""

    __slots__ = ("scenario", "chains")

    def __init__(self, scenario: Scenario, chains: dict[Path, SignedChain] | None = None):
        self.scenario = scenario
        self.chains = chains if chains is not None else derive_chains(scenario)

    @property
    def cfg(self):
        return self.scenario.cfg

    @property
    def k(self) -> int:
        return self.scenario.k

    @property
    def transmitter(self) -> int:
        return self.scenario.transmitter

    @property
    def byz(self) -> frozenset[int]:
        return self.scenario.byz

    @property
    def dfaulty(self) -> frozenset[int]:
        return self.scenario.dfaulty

    def chain_at(self, path: Path) -> SignedChain:
        return self.chains[tuple(path)]


def validate_signed_scenario(ss: SignedScenario) -> ValidationReport:
    """Scenario admissibility plus the unforgeability clauses.

    Chains may over-forge (an adversary can break its own chains) but a
    mismatching non-Byzantine position must be marked; signer lists and
    carried values must agree with the value tree.
    """
    base = validate_scenario(ss.scenario)
    violations = list(base.violations)
    scn = ss.scenario
    for path in scn.space.iter_paths_lex(scn.transmitter):
        chain = ss.chains.get(tuple(path))
        if chain is None:
            violations.append((path, "missing-chain"))
            continue
        if chain.signers != path[:-1]:
            violations.append((path, "chain-signers"))
        if chain.value != scn.value_at(path):
            violations.append((path, "chain-value"))
            continue
        for j in range(len(path) - 1):
            if (
                path[j] not in scn.byz
                and chain.value != scn.value_at(path[: j + 1])
                and j not in chain.forged_at
            ):
                violations.append((path, f"unforgeability:pos={j}"))
    return ValidationReport(
        admissible=not violations,
        violations=tuple(violations),
        inferred_link_sets=base.inferred_link_sets,
    )


class SignedView:
    """One process's signed view: the chain received for every relay path."""

    __slots__ = ("cfg", "k", "transmitter", "owner", "domain", "chains")

    def __init__(self, cfg, k, transmitter, owner, chains: dict[Path, SignedChain], domain):
        self.cfg = cfg
        self.k = k
        self.transmitter = transmitter
        self.owner = owner
        self.chains = chains
        self.domain = domain

    def chain_at(self, path: Path) -> SignedChain:
        return self.chains[tuple(path)]


def signed_view_of(ss: SignedScenario, p: int) -> SignedView:
    if not 0 <= p < ss.cfg.n:
        raise PreconditionError("process id out of range")
    scn = ss.scenario
    view_space = type(scn.space)(scn.cfg.n, scn.k - 1)
    chains = {
        path: ss.chains[path + (p,)]
        for path in view_space.iter_paths_lex(scn.transmitter)
    }
    return SignedView(scn.cfg, scn.k, scn.transmitter, p, chains, scn.domain)


def _distinct_paths(n: int, transmitter: int, max_len: int):
    def walk(path: tuple[int, ...], used: frozenset[int]):
        yield path
        if len(path) < max_len:
            for q in range(n):
                if q not in used:
                    yield from walk(path + (q,), used | {q})

    yield from walk((transmitter,), frozenset({transmitter}))


def sba_collect(view: SignedView) -> set[int]:
    """Values carried by verifying chains over distinct-signer paths."""
    collected: set[int] = set()
    for path in _distinct_paths(view.cfg.n, view.transmitter, view.k):
        chain = view.chain_at(path)
        if verify_chain(chain):
            collected.add(chain.value)
    return collected


def sba_pp(view: SignedView) -> int:
    """Signed agreement decision on a (b+2)-round signed view."""
    b = view.cfg.b
    if view.k != b + 2:
        raise PreconditionError(f"expected a {b + 2}-round signed view, got {view.k}")
    if not resilience_holds_signed(view.cfg):
        raise PreconditionError("system outside the signed resilience bound")
    collected = sba_collect(view)
    return min(collected) if collected else BOT
