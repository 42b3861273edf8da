"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python
module is the fallback and the reference. Consumers must call through
this module (``kernels.lm_single(...)``) so `use_backend` can rebind the
active implementation, which the benchmark and the equivalence tests rely
on. Set ``PARTIALBYZ_PURE_KERNELS=1`` to force the pure backend.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels

_BACKENDS = {"pure": _pykernels}
if os.environ.get("PARTIALBYZ_PURE_KERNELS") != "1":
    try:
        from . import _ckernels

        _BACKENDS["compiled"] = _ckernels
    except ImportError:
        pass

BACKEND = "compiled" if "compiled" in _BACKENDS else "pure"
_impl = _BACKENDS[BACKEND]


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def lm_single(*args):
    return _impl.lm_single(*args)


def view_transform_values(*args):
    return _impl.view_transform_values(*args)


def om_decide_values(*args):
    return _impl.om_decide_values(*args)


@contextmanager
def use_backend(name: str):
    global _impl, BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    prev_impl, prev_name = _impl, BACKEND
    _impl, BACKEND = _BACKENDS[name], name
    try:
        yield
    finally:
        _impl, BACKEND = prev_impl, prev_name
