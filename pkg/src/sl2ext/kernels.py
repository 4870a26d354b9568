"""Bulk numeric kernels: layered Ext tables and the deficit inequality grid.

Each kernel has a numba implementation (``*_numba``) and a pure-numpy one
(``*_numpy``); the public wrappers pick numba when it is available and not
disabled via ``SL2EXT_DISABLE_NUMBA``.

Layer tables
------------
``E_s[m, n] = dim Ext^m(Delta(n), nabla(2)^(s))`` on the triangle ``m + n <= T``.
The recursion sums ``E_{s-1}`` along the anti-diagonal ``m' + n' = m + n//p``
from ``n' = n//p`` upward, so each layer is one suffix sum per anti-diagonal
followed by a gather, O(T^2) per layer.
"""
from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit


_INT64_MAX = np.iinfo(np.int64).max


class KernelOverflow(ArithmeticError):
    """An int64 accumulator wrapped; the caller must retry with exact integers."""


@njit(cache=True)
def _layer_numba(prev, p, T):
    out = np.zeros((T + 1, T + 1), dtype=np.int64)
    suffix = np.zeros((T + 1, T + 1), dtype=np.int64)
    overflow = False
    for t in range(T + 1):
        acc = 0
        for a in range(t, -1, -1):
            v = prev[t - a, a]
            # written as a bound test: LLVM may fold `acc + v < acc` away
            if v > _INT64_MAX - acc:
                overflow = True
                return out, overflow
            acc += v
            suffix[t, a] = acc
    for m in range(T + 1):
        for n in range(T + 1 - m):
            q = n // p
            r = n - q * p
            if (q % 2 == 0 and r == 0) or (q % 2 == 1 and r == p - 2):
                out[m, n] = suffix[m + q, q]
    return out, overflow


def _layer_numpy(prev: np.ndarray, p: int, T: int) -> tuple[np.ndarray, bool]:
    t_idx, a_idx = np.tril_indices(T + 1)
    diag = np.zeros((T + 1, T + 1), dtype=prev.dtype)
    diag[t_idx, a_idx] = prev[t_idx - a_idx, a_idx]
    suffix = np.cumsum(diag[:, ::-1], axis=1)[:, ::-1]
    # partial sums of non-negative int64 terms turn negative at the first wrap
    overflow = prev.dtype != object and bool((suffix < 0).any())

    m_idx = t_idx - a_idx
    n_idx = a_idx
    q, r = np.divmod(n_idx, p)
    ok = ((q % 2 == 0) & (r == 0)) | ((q % 2 == 1) & (r == p - 2))
    out = np.zeros((T + 1, T + 1), dtype=prev.dtype)
    out[m_idx[ok], n_idx[ok]] = suffix[m_idx[ok] + q[ok], q[ok]]
    return out, overflow


def base_layer(T: int, dtype=np.int64) -> np.ndarray:
    base = np.zeros((T + 1, T + 1), dtype=dtype)
    if T >= 2:
        base[0, 2] = 1
    return base


def ext_layers(p: int, s_max: int, T: int, use_numba: bool | None = None) -> list[np.ndarray]:
    """Return ``[E_0, ..., E_{s_max}]`` on the triangle ``m + n <= T``.

    Entries outside the triangle are zero and meaningless. The int64 path
    raises :class:`KernelOverflow` rather than wrapping; :func:`exact_ext_layers`
    handles the retry.
    """
    if use_numba is None:
        use_numba = HAVE_NUMBA
    layers = [base_layer(T)]
    for _ in range(s_max):
        if use_numba:
            nxt, overflow = _layer_numba(layers[-1], p, T)
        else:
            nxt, overflow = _layer_numpy(layers[-1], p, T)
        if overflow:
            raise KernelOverflow(f"int64 overflow building Ext layer (p={p}, T={T})")
        layers.append(nxt)
    return layers


def exact_ext_layers(p: int, s_max: int, T: int, use_numba: bool | None = None) -> list[np.ndarray]:
    """Like :func:`ext_layers` but falls back to Python-int object arrays on overflow."""
    try:
        return ext_layers(p, s_max, T, use_numba)
    except KernelOverflow:
        layers = [base_layer(T, dtype=object)]
        for _ in range(s_max):
            layers.append(_layer_numpy(layers[-1], p, T)[0])
        return layers


@njit(cache=True)
def _deficit_grid_numba(p, s_max, a_max, b_max):
    checked = 0
    violations = 0
    for s in range(s_max + 1):
        lo = 2 * p**s
        hi = 2 * p ** (s + 1)
        for a in range(a_max + 1):
            for b in range(b_max + 1):
                if a + b >= lo:
                    continue
                for i in range(b + 1):
                    checked += 1
                    if (a + i) + p * (b - i) + (p - 2) >= hi:
                        violations += 1
    return checked, violations


def _deficit_grid_numpy(p: int, s_max: int, a_max: int, b_max: int) -> tuple[int, int]:
    a = np.arange(a_max + 1, dtype=np.int64)[:, None, None]
    b = np.arange(b_max + 1, dtype=np.int64)[None, :, None]
    i = np.arange(b_max + 1, dtype=np.int64)[None, None, :]
    parent = (a + i) + p * (b - i) + (p - 2)
    checked = violations = 0
    for s in range(s_max + 1):
        mask = (i <= b) & (a + b < 2 * p**s)
        checked += int(mask.sum())
        violations += int((mask & (parent >= 2 * p ** (s + 1))).sum())
    return checked, violations


def deficit_grid(p: int, s_max: int, a_max: int, b_max: int, use_numba: bool | None = None) -> tuple[int, int]:
    """Count ``(checked, violations)`` of the precursor deficit inequality.

    For every ``a <= a_max``, ``b <= b_max``, ``0 <= i <= b``, ``s <= s_max``
    with ``a + b < 2 p^s``, the precursor weight sum
    ``(a+i) + p(b-i) + (p-2)`` must stay below ``2 p^(s+1)``.
    """
    if use_numba is None:
        use_numba = HAVE_NUMBA
    fn = _deficit_grid_numba if use_numba else _deficit_grid_numpy
    checked, violations = fn(p, s_max, a_max, b_max)
    return int(checked), int(violations)
