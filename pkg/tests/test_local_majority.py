from __future__ import annotations

import pytest

from partialbyz import (
    ONE,
    ZERO,
    PreconditionError,
    SystemConfig,
    View,
    fast_condition_holds,
    lm2,
    lm3,
    resilience_holds,
    validate_scenario,
    view_of,
)
from partialbyz.adversary import random_scenario

from _helpers import build_by_rule, constant_scenario


def direct_lm3(scn, owner, prefix, suffix=()):
    """Independent two-stage count straight from the filter's definition."""
    cfg = scn.cfg
    thr = cfg.n - cfg.m - cfg.b - 1
    stage_two = []
    for a in range(cfg.n):
        if a == prefix[-1]:
            continue
        entries = [
            scn.value_at(prefix + (a, c) + tuple(suffix) + (owner,))
            for c in range(cfg.n)
            if c != a
        ]
        qualifiers = [v for v in range(3) if entries.count(v) >= thr]
        if len(qualifiers) == 1:
            stage_two.append(qualifiers[0])
    for v in range(3):
        if 2 * stage_two.count(v) > len(stage_two):
            return v
    return 0


def build_lying_scenario():
    """(7,1,1,1), k=3: correct transmitter holds 0; process 2 lies (value 1)
    to exactly one receiver each round; process 3 is Byzantine sending 1
    everywhere."""
    cfg = SystemConfig(7, 1, 1, 1)
    victims = {1: 4, 2: 5, 3: 6}

    def rule(sender, receiver, rnd, parent_value, parent_path):
        if sender == 3:
            return ONE
        if sender == 2 and receiver == victims[rnd]:
            return ONE
        return parent_value

    scn = build_by_rule(cfg, 3, ZERO, rule, byz=(3,), dfaulty=(2,))
    assert validate_scenario(scn).admissible
    return scn


def test_lm3_failure_free_returns_prefix_value():
    cfg = SystemConfig(5, 1, 1, 1)
    scn = constant_scenario(cfg, 4, ONE)
    for owner in range(cfg.n):
        assert lm3(view_of(scn, owner), (0,)) == ONE
        assert lm3(view_of(scn, owner), (0, 2)) == ONE


def test_lm3_corrects_partial_and_byzantine_lies():
    scn = build_lying_scenario()
    for owner in range(7):
        if owner in scn.byz:
            continue
        view = view_of(scn, owner)
        assert lm3(view, (0,)) == ZERO
        assert lm3(view, (0,)) == direct_lm3(scn, owner, (0,))


def test_lm3_matches_direct_count_with_suffix():
    cfg = SystemConfig(7, 1, 1, 1)
    scn = random_scenario(cfg, 4, seed=11)
    for owner in (0, 2, 5):
        view = view_of(scn, owner)
        for prefix, suffix in (((0,), ()), ((0,), (3,)), ((0, 6), ())):
            assert lm3(view, prefix, suffix) == direct_lm3(scn, owner, prefix, suffix)


def test_lm3_view_locality():
    # outputs depend only on the accessed nested coordinates: copy them
    # from one view into another and the results must coincide
    cfg = SystemConfig(6, 1, 1, 1)
    scn_a = random_scenario(cfg, 4, seed=3)
    scn_b = random_scenario(cfg, 4, seed=4)
    view_a = view_of(scn_a, 1)
    view_b = view_of(scn_b, 5)
    suffix_a, suffix_b = (2,), (4,)
    vals = view_b.values.copy()
    vals.setflags(write=True)
    for a in range(cfg.n):
        for c in range(cfg.n):
            src = view_a.space.index((0, a, c) + suffix_a, 0)
            dst = view_b.space.index((0, a, c) + suffix_b, 0)
            vals[dst] = view_a.values[src]
    patched = View(cfg, 4, 0, 5, vals)
    assert lm3(patched, (0,), suffix_b) == lm3(view_a, (0,), suffix_a)


def test_lm3_recovers_sender_value_under_resilience():
    cfg = SystemConfig(7, 1, 1, 1)
    assert resilience_holds(cfg)
    for seed in range(40):
        scn = random_scenario(cfg, 4, seed=seed)
        for prefix in [(0,)] + [(0, x) for x in range(cfg.n)]:
            if prefix[-1] in scn.byz:
                continue
            expected = scn.value_at(prefix)
            for owner in range(cfg.n):
                if owner in scn.byz:
                    continue
                assert lm3(view_of(scn, owner), prefix) == expected


def test_lm3_threshold_unique_under_resilience():
    # inside the bound at most one value can reach the stage-one threshold
    cfg = SystemConfig(7, 1, 1, 1)
    thr = cfg.n - cfg.m - cfg.b - 1
    for seed in range(30):
        scn = random_scenario(cfg, 3, seed=seed)
        for owner in range(cfg.n):
            for a in range(1, cfg.n):
                entries = [
                    scn.value_at((0, a, c, owner)) for c in range(cfg.n) if c != a
                ]
                assert sum(entries.count(v) >= thr for v in range(3)) <= 1


def test_lm2_failure_free():
    cfg = SystemConfig(6, 2, 1, 0)
    scn = constant_scenario(cfg, 3, ONE)
    assert lm2(view_of(scn, 1), (0,)) == ONE


def test_lm2_majority_count_explicit():
    # (6,2,1,0), k=3: the two partially faulty processes can spoil at most
    # two of the five entries, so three zeros always survive
    cfg = SystemConfig(6, 2, 1, 0)

    def rule(sender, receiver, rnd, parent_value, parent_path):
        if sender in (1, 2) and receiver == 3:
            return ONE
        return parent_value

    scn = build_by_rule(cfg, 3, ZERO, rule, dfaulty=(1, 2))
    assert validate_scenario(scn).admissible
    view = view_of(scn, 3)
    entries = [view.value_at((0, 4, a)) for a in range(6) if a != 4]
    assert entries.count(ZERO) >= cfg.n - 1 - cfg.m - cfg.b
    assert lm2(view, (0, 4)) == ZERO


def test_lm2_recovers_sender_value_under_fast_condition():
    cfg = SystemConfig(6, 2, 1, 0)
    assert fast_condition_holds(cfg) and cfg.n > 2 * cfg.b + 1
    for seed in range(40):
        scn = random_scenario(cfg, 4, seed=seed)
        for prefix in [(0,)] + [(0, x) for x in range(cfg.n)]:
            if prefix[-1] in scn.byz:
                continue
            expected = scn.value_at(prefix)
            for owner in range(cfg.n):
                if owner in scn.byz:
                    continue
                assert lm2(view_of(scn, owner), prefix) == expected


def test_lm_determinism():
    cfg = SystemConfig(7, 1, 1, 1)
    view = view_of(random_scenario(cfg, 4, seed=9), 2)
    assert lm3(view, (0,), (1,)) == lm3(view, (0,), (1,))
    assert lm2(view, (0, 1), (2,)) == lm2(view, (0, 1), (2,))


def test_lm_window_preconditions():
    cfg = SystemConfig(5, 1, 1, 1)
    view = view_of(random_scenario(cfg, 3, seed=0), 1)
    with pytest.raises(PreconditionError):
        lm3(view, (0,), (1,))  # i + 3 + |s| exceeds k
    with pytest.raises(PreconditionError):
        lm3(view, (1,))  # prefix must start at the transmitter
    with pytest.raises(PreconditionError):
        lm2(view, (0, 1), (3,))  # i + 2 + |s| exceeds k
    assert lm2(view, (0, 1)) in (0, 1, 2)  # widest two-round window at k=3
