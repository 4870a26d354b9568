"""Hilbert series of the polynomial algebra generated by the universal classes.

For twist ``r`` the classes ``e_1, ..., e_r`` live in degrees ``2 p^(i-1)``,
each contributing a copy of the dual of gl2 (dimension 4). The generated
algebra is ``(x)_i S((gl2^(r))^*)`` with generators in degree ``2 p^(i-1)``,
whose Hilbert series is ``prod_i (1 - t^(2 p^(i-1)))^(-4)``.

This is the series of the generator algebra only, an upper-bound witness for
the growth of the cohomology ring, not the series of the ring itself.
"""
from __future__ import annotations

from math import comb
from typing import NamedTuple

from .weights import check_prime

GL2_DIM = 4


class LedgerEntry(NamedTuple):
    index: int
    degree: int
    dim: int


def generator_ledger(r: int, p: int) -> list[LedgerEntry]:
    """Degrees of the universal classes needed at twist ``r``.

    ``e_i`` pulled back along ``r - i`` Frobenius iterates lands in
    ``H^(2p^(i-1))(GL2, gl2^(r))``: the coefficient twist moves, the degree
    does not.
    """
    check_prime(p)
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return [LedgerEntry(i, 2 * p ** (i - 1), GL2_DIM) for i in range(1, r + 1)]


def symmetric_power_series(degree: int, dim: int, N: int) -> list[int]:
    """Coefficients of ``(1 - t^degree)^(-dim)`` up to ``t^N``."""
    coeffs = [0] * (N + 1)
    for k in range(N // degree + 1):
        coeffs[k * degree] = comb(k + dim - 1, dim - 1)
    return coeffs


def convolve(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, x in enumerate(a[: N + 1]):
        if x:
            for j, y in enumerate(b[: N + 1 - i]):
                out[i + j] += x * y
    return out


def hilbert(r: int, p: int, N: int) -> list[int]:
    """Exact coefficients ``c_0..c_N`` of the generator algebra's Hilbert series."""
    if N < 0:
        raise ValueError(f"max degree must be >= 0, got {N}")
    series = [1] + [0] * N
    for entry in generator_ledger(r, p):
        series = convolve(series, symmetric_power_series(entry.degree, entry.dim, N), N)
    return series
