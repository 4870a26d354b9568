"""Weight arithmetic and block combinatorics for SL2 in characteristic p.

Dominant weights are non-negative integers (``n * fundamental weight -> n``).
Blocks are described by the closed form in terms of the base-p split
``n = p*a + i``; the predicate is a *necessary* condition for two weights to
share a block, and callers only use it in the sound direction (predicate
false implies the relevant Ext group vanishes).
"""
from __future__ import annotations

from typing import NamedTuple


class PadicSplit(NamedTuple):
    a: int
    i: int


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    """Return ``p`` unchanged, raising ``ValueError`` unless it is a prime int."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise TypeError(f"prime must be an int, got {type(p).__name__}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return p


def check_weight(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"weight must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"weight must be non-negative, got {n}")
    return n


def p_decompose(n: int, p: int) -> PadicSplit:
    """Split ``n = p*a + i`` with ``0 <= i <= p-1``."""
    check_weight(n)
    check_prime(p)
    a, i = divmod(n, p)
    return PadicSplit(a, i)


def same_block(lam: int, mu: int, p: int) -> bool:
    """Closed-form block condition for two dominant weights.

    With ``lam = p*a + i`` and ``mu = p*b + j``: if ``i == p-1`` the answer is
    ``j == p-1``; otherwise it is ``(a-b even and j == i)`` or
    ``(a-b odd and j == p-2-i)``.
    """
    a, i = p_decompose(lam, p)
    b, j = p_decompose(mu, p)
    if i == p - 1:
        return j == p - 1
    if (a - b) % 2 == 0:
        return j == i
    return j == p - 2 - i


def in_block_of_two_p_s(lam: int, s: int, p: int) -> bool:
    """Block condition for ``lam`` against the weight ``2 p^s`` (``s >= 1``).

    ``2 p^s = p * (2 p^(s-1)) + 0`` with an even quotient, so the general rule
    collapses to: ``a`` even and ``i == 0``, or ``a`` odd and ``i == p-2``.
    """
    if s < 1:
        raise ValueError(f"twist s must be >= 1, got {s}")
    a, i = p_decompose(lam, p)
    if a % 2 == 0:
        return i == 0
    return i == p - 2
