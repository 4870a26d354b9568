"""Brute-force checks that do not share code with the closed forms.

Nothing here imports the block predicate or the memoized engine, so an error
in either cannot confirm itself.

Dot-action convention: with ``rho = 1`` the affine Weyl group of SL2 acts on
weights by the reflections ``x -> 2mp - x - 2`` for ``m`` in ``Z``.
"""
from __future__ import annotations

from functools import lru_cache


class GuardExceeded(RuntimeError):
    """The naive expansion visited more nodes than its guard allows."""


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")


@lru_cache(maxsize=64)
def orbit_labels(p: int, bound: int) -> tuple[int, ...]:
    """Label each weight in ``[0, bound]`` by its dot-orbit, closed within the window.

    The label of a class is its smallest member.
    """
    _check_prime(p)
    labels = [-1] * (bound + 1)
    for start in range(bound + 1):
        if labels[start] != -1:
            continue
        labels[start] = start
        frontier = [start]
        while frontier:
            x = frontier.pop()
            # 0 <= 2mp - x - 2 <= bound
            m_lo = -(-(x + 2) // (2 * p))
            m_hi = (bound + x + 2) // (2 * p)
            for m in range(m_lo, m_hi + 1):
                y = 2 * m * p - x - 2
                if labels[y] == -1:
                    labels[y] = start
                    frontier.append(y)
    return tuple(labels)


def orbit_linked(lam: int, mu: int, p: int, bound: int) -> bool:
    """Whether ``mu`` lies in the dot-orbit of ``lam`` generated inside ``[0, bound]``."""
    if lam < 0 or mu < 0:
        raise ValueError("weights must be non-negative")
    if bound < max(lam, mu) + 2 * p:
        raise ValueError(f"bound {bound} is below max(lambda, mu) + 2p = {max(lam, mu) + 2 * p}")
    labels = orbit_labels(p, bound)
    return labels[lam] == labels[mu]


def naive_ext_dim(m: int, n: int, s: int, p: int, guard: int = 1_000_000) -> int:
    """Full tree expansion of the Ext recursion with no memo table.

    ``guard`` caps the number of tree nodes visited; exceeding it raises
    :class:`GuardExceeded` instead of returning a partial count. Intended for
    small inputs (p <= 3, s <= 2, m <= 12, n <= 20).
    """
    _check_prime(p)
    if min(m, n, s) < 0:
        raise ValueError("m, n, s must be non-negative")
    visited = 0
    # every weight in the tree is <= n + m, and the targets are 2p^t for t <= s
    labels = orbit_labels(p, max(n + m, 2 * p**s) + 2 * p)

    def expand(m: int, n: int, s: int) -> int:
        nonlocal visited
        visited += 1
        if visited > guard:
            raise GuardExceeded(f"naive expansion exceeded {guard} nodes")
        if s == 0:
            return int(m == 0 and n == 2)
        if labels[n] != labels[2 * p**s]:
            return 0
        total = 0
        for i in range(m + 1):
            total += expand(m - i, n // p + i, s - 1)
        return total

    return expand(m, n, s)
