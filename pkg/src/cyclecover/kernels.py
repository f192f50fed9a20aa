"""Kernel implementation selection.

The hot loops exist twice: a compiled Cython extension (``_kernel_c``) and a
pure-Python fallback (``_kernel_py``) with identical semantics. The compiled
one is used when it imported successfully; set ``CYCLECOVER_KERNEL=py`` or
``=c`` to force a choice (forcing ``c`` raises if the extension is missing).
"""

from __future__ import annotations

import os

_forced = os.environ.get("CYCLECOVER_KERNEL", "").strip().lower()
if _forced not in ("", "c", "py"):
    raise RuntimeError(f"CYCLECOVER_KERNEL must be 'c' or 'py', not {_forced!r}")

if _forced == "py":
    from . import _kernel_py as _impl

    IMPLEMENTATION = "py"
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[attr-defined]

        IMPLEMENTATION = "c"
    except ImportError:
        if _forced == "c":
            raise
        from . import _kernel_py as _impl

        IMPLEMENTATION = "py"

ROLE_JOINING = 0
ROLE_TYPE_A = 1
ROLE_TYPE_B = 2

build_walk = _impl.build_walk
classify = _impl.classify
count_types = _impl.count_types
enumerate_types = _impl.enumerate_types
anneal_run = _impl.anneal_run


def implementations() -> dict[str, object]:
    """All importable kernel modules, keyed by name (for tests/benchmarks)."""
    from . import _kernel_py

    impls: dict[str, object] = {"py": _kernel_py}
    try:
        from . import _kernel_c  # type: ignore[attr-defined]

        impls["c"] = _kernel_c
    except ImportError:
        pass
    return impls
