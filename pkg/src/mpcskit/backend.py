"""Scan-kernel backend selection.

Prefers the compiled extension when it importable; otherwise the
pure-Python reference kernel. Both expose ``scan_mpcs`` with identical
semantics and deterministic ordering, so the choice only affects speed.
"""

from __future__ import annotations

try:  # pragma: no cover - exercised indirectly
    from . import _scan as _impl
except ImportError:  # pragma: no cover
    from . import _scan_py as _impl

scan_mpcs = _impl.scan_mpcs
BACKEND = _impl.BACKEND


def available_backends() -> tuple:
    names = []
    try:
        from . import _scan  # noqa: F401

        names.append("compiled")
    except ImportError:
        pass
    names.append("python")
    return tuple(names)
