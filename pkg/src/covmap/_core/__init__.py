"""Hot-kernel backends: compiled extension when built, numpy otherwise.

Set COVMAP_BACKEND=py or COVMAP_BACKEND=compiled to force a choice; the
benchmark uses the explicit ``backend=`` argument to time both.
"""

from __future__ import annotations

import os

from . import search_py

try:
    from . import _search as _compiled
except ImportError:
    _compiled = None

HAVE_COMPILED = _compiled is not None


def default_backend() -> str:
    forced = os.environ.get("COVMAP_BACKEND")
    if forced in ("py", "compiled"):
        return forced
    return "compiled" if HAVE_COMPILED else "py"


def block_search(j, xs, ys, iters: int, tol: float, backend: str | None = None):
    """Dispatch the alternating product-vector search; returns (values, xs, ys)."""
    choice = backend or default_backend()
    if choice == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel requested but not built")
        return _compiled.block_search(j, xs, ys, int(iters), float(tol))
    if choice != "py":
        raise ValueError(f"unknown backend {choice!r}")
    return search_py.block_search(j, xs, ys, int(iters), float(tol))
