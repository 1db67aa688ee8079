"""Gate-kernel backend selection.

Prefers the compiled extension; falls back to the numpy kernels when the
extension is missing or ``HEPGROVER_PURE_PYTHON`` is set in the environment.
Both backends expose identical in-place signatures and produce matching
amplitudes, so everything above this module is backend-agnostic.
"""
from __future__ import annotations

import os

from hepgrover import _gatekernels_py

try:
    from hepgrover import _gatekernels as _compiled
except ImportError:
    _compiled = None

if _compiled is not None and not os.environ.get("HEPGROVER_PURE_PYTHON"):
    _active = _compiled
    BACKEND = "compiled"
else:
    _active = _gatekernels_py
    BACKEND = "python"

phase_flip = _active.phase_flip
phase_s = _active.phase_s
flip = _active.flip
hadamard = _active.hadamard
pauli_y = _active.pauli_y


def available_backends():
    """Importable kernel backends, keyed by name (for tests and benchmarks)."""
    backends = {"python": _gatekernels_py}
    if _compiled is not None:
        backends["compiled"] = _compiled
    return backends
