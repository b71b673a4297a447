"""Kernel backend selection.

Two interchangeable backends exist: `native` (Cython extension, built by
setup.py) and `reference` (pure numpy). The default picks native when the
extension imported; set DRAFTKIT_KERNELS=native|reference to force one.
Rendering output is bit-identical between the two by construction.
"""
from __future__ import annotations

import os
from types import ModuleType

from draftkit._kernels import reference

try:
    from draftkit._kernels import _native as native
except ImportError:
    native = None  # pure install or failed build; the fallback covers it


def _select() -> ModuleType:
    choice = os.environ.get("DRAFTKIT_KERNELS", "auto").strip().lower()
    if choice in ("", "auto"):
        return native if native is not None else reference
    if choice == "native":
        if native is None:
            raise RuntimeError(
                "DRAFTKIT_KERNELS=native but the compiled extension is not available"
            )
        return native
    if choice in ("reference", "numpy"):
        return reference
    raise RuntimeError(f"unknown DRAFTKIT_KERNELS value: {choice!r}")


_active = _select()


def get_backend(name: str | None = None) -> ModuleType:
    """Resolve a backend by name; None returns the active default."""
    if name is None:
        return _active
    if name == "native":
        if native is None:
            raise RuntimeError("compiled kernel backend is not available")
        return native
    if name in ("reference", "numpy"):
        return reference
    raise ValueError(f"unknown kernel backend: {name!r}")


def backend_name() -> str:
    return _active.name


def available_backends() -> tuple[str, ...]:
    return ("native", "reference") if native is not None else ("reference",)
