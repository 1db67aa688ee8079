"""Pure-Python gate kernels, the numpy fallback for the compiled core.

Amplitude arrays are C-contiguous complex128 of length 2**n with index bit k
holding qubit k (qubit 0 least significant). All kernels mutate in place.
"""
from __future__ import annotations

import numpy as np

_SQRT1_2 = 2.0 ** -0.5


def _pair_base(dim: int, tbit: int, cmask: int) -> np.ndarray:
    # indices with the target bit clear and every control bit set
    idx = np.arange(dim, dtype=np.intp)
    keep = (idx & tbit) == 0
    if cmask:
        keep &= (idx & cmask) == cmask
    return idx[keep]


def phase_flip(amps: np.ndarray, mask: int) -> None:
    """Negate every amplitude whose index has all `mask` bits set."""
    idx = np.arange(amps.shape[0], dtype=np.intp)
    amps[(idx & mask) == mask] *= -1.0


def phase_s(amps: np.ndarray, tbit: int) -> None:
    """Multiply by i every amplitude whose index has the target bit set."""
    idx = np.arange(amps.shape[0], dtype=np.intp)
    amps[(idx & tbit) != 0] *= 1j


def flip(amps: np.ndarray, tbit: int, cmask: int = 0) -> None:
    """Swap amplitude pairs differing in the target bit, controls all set."""
    i0 = _pair_base(amps.shape[0], tbit, cmask)
    i1 = i0 | tbit
    tmp = amps[i0].copy()
    amps[i0] = amps[i1]
    amps[i1] = tmp


def hadamard(amps: np.ndarray, tbit: int) -> None:
    i0 = _pair_base(amps.shape[0], tbit, 0)
    i1 = i0 | tbit
    a0 = amps[i0]
    a1 = amps[i1]
    amps[i0] = (a0 + a1) * _SQRT1_2
    amps[i1] = (a0 - a1) * _SQRT1_2


def pauli_y(amps: np.ndarray, tbit: int) -> None:
    i0 = _pair_base(amps.shape[0], tbit, 0)
    i1 = i0 | tbit
    a0 = amps[i0]
    a1 = amps[i1]
    amps[i0] = a1 * -1j
    amps[i1] = a0 * 1j
