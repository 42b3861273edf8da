"""Local-majority filters.

Both filters reconstruct, inside a single process's view, the value a
non-Byzantine relay actually sent, by thresholded counting over the
copies other processes forwarded. The three-round filter burns two extra
relay hops and works under the general resilience bound; the two-round
filter burns one hop and needs the stronger fast condition. Outputs
depend only on the accessed nested sub-view coordinates, which is what
makes the iterated view transform sound.
"""

from __future__ import annotations

from . import kernels
from .paths import Path
from .scenario import PreconditionError, View


def _lm(view: View, prefix: Path, suffix: Path, window: int) -> int:
    n = view.cfg.n
    i = len(prefix) - 1
    if i < 0 or prefix[0] != view.transmitter:
        raise PreconditionError("prefix must start at the transmitter")
    for label in tuple(prefix) + tuple(suffix):
        if not 0 <= label < n:
            raise PreconditionError(f"label {label} outside 0..{n - 1}")
    slen = len(suffix)
    if i + window + slen > view.k:
        raise PreconditionError(
            f"filter window exceeds view: i={i}, |s|={slen}, k={view.k}"
        )
    pref_val = view.space.tail_value(prefix)
    s_val = 0
    for label in suffix:
        s_val = s_val * n + label
    return kernels.lm_single(
        view.values,
        view.space.offsets,
        n,
        len(view.domain),
        view.transmitter,
        view.cfg.m,
        view.cfg.b,
        window,
        i,
        pref_val,
        slen,
        s_val,
    )


def lm3(view: View, prefix: Path, suffix: Path = ()) -> int:
    """Three-round local majority at ``prefix`` as seen through ``suffix``.

    For each candidate relay, the (n-1)-entry multiset of second-hop
    copies is scanned; a value reaching the n-m-b-1 threshold joins the
    stage-two multiset (nothing joins if two values qualify, which cannot
    happen inside the resilience bound). The output is the strict
    majority of stage two, or the empty value.
    """
    return _lm(view, prefix, suffix, 3)


def lm2(view: View, prefix: Path, suffix: Path = ()) -> int:
    """Two-round local majority: strict majority of the n-1 direct copies,
    or the empty value on a tie."""
    return _lm(view, prefix, suffix, 2)
