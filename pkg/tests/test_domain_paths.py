from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from partialbyz.domain import BOT, DEFAULT_DOMAIN, ONE, ZERO, ValueDomain
from partialbyz.paths import PathError, PathSpace, ScenarioSizeError


def test_default_domain_order():
    assert DEFAULT_DOMAIN.symbols == ("⊥", "0", "1")
    assert BOT < ZERO < ONE
    assert DEFAULT_DOMAIN.code("⊥") == BOT
    assert DEFAULT_DOMAIN.symbol(ONE) == "1"


def test_domain_rejects_bad_shapes():
    with pytest.raises(ValueError):
        ValueDomain(("0", "1"))  # no empty value
    with pytest.raises(ValueError):
        ValueDomain(("0", "⊥", "1"))  # empty value not smallest
    with pytest.raises(ValueError):
        ValueDomain(("⊥", "0", "0", "1"))


def test_domain_can_extend():
    dom = ValueDomain(("⊥", "0", "1", "2"))
    assert dom.code("2") == 3


@given(st.integers(2, 7), st.integers(0, 4), st.data())
def test_path_index_roundtrip(n, max_tail, data):
    space = PathSpace(n, max_tail)
    idx = data.draw(st.integers(0, space.size - 1))
    tx = data.draw(st.integers(0, n - 1))
    path = space.decode(idx, tx)
    assert space.index(path, tx) == idx
    assert path[0] == tx


def test_lexicographic_iteration_is_sorted():
    space = PathSpace(3, 2)
    paths = list(space.iter_paths_lex(1))
    assert paths == sorted(paths)
    assert len(paths) == space.size


def test_path_validation():
    space = PathSpace(4, 2)
    with pytest.raises(PathError):
        space.index((1, 0), transmitter=0)  # wrong root
    with pytest.raises(PathError):
        space.index((0, 4), transmitter=0)  # label out of range
    with pytest.raises(PathError):
        space.index((0, 1, 1, 1), transmitter=0)  # too long


def test_size_guard():
    with pytest.raises(ScenarioSizeError):
        PathSpace(10, 8)
