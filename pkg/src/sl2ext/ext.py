"""Exact dimensions of Ext groups ``Ext^m(Delta(n), nabla(2)^(s))`` for SL2.

The recursion used throughout:

* ``s = 0``: higher Ext between Weyl and induced modules vanishes, so the
  dimension is 1 when ``(m, n) == (0, 2)`` and 0 otherwise.
* ``s >= 1``: if ``n`` fails the block test against ``2 p^s`` the group is 0;
  otherwise it is the direct sum over ``i = 0..m`` of
  ``Ext^(m-i)(Delta(n//p + i), nabla(2)^(s-1))``.

Summing over ``n`` gives ``Ext^q(k, nabla(2)^(r))``, which also equals
``Ext^q(k, gl2^(r))`` and, by restriction, the GL2 group. That identification
is only established at the top degree ``q = 2 p^(r-1)``; other ``q`` are
computed by the same formula but flagged as extrapolation.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .kernels import exact_ext_layers
from .weights import check_prime, check_weight, in_block_of_two_p_s


@dataclass(frozen=True)
class ExtQuery:
    """``Ext^m(Delta(n), nabla(2)^(s))`` over a field of characteristic ``p``."""

    m: int
    n: int
    s: int
    p: int

    def __post_init__(self):
        for name in ("m", "n", "s"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an int")
            if value < 0:
                raise ValueError(f"{name} must be non-negative, got {value}")
        check_prime(self.p)

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.m, self.n, self.s, self.p)

    @property
    def node_id(self) -> str:
        return f"{self.m}:{self.n}:{self.s}"


def top_degree(r: int, p: int) -> int:
    """The degree ``2 p^(r-1)`` where the universal class lives."""
    if r < 1:
        raise ValueError(f"twist r must be >= 1, got {r}")
    return 2 * p ** (r - 1)


class ExtEngine:
    """Memoized evaluator for the Ext recursion.

    One engine may be shared between threads: lookups are lock-free, writes to
    the memo table and the layer-table cache are serialized. Values are plain
    Python ints, so nothing can overflow.
    """

    def __init__(self):
        self._memo: dict[tuple[int, int, int, int], int] = {}
        self._tables: dict[int, tuple[int, int, list]] = {}
        self._lock = threading.Lock()
        self.expansions = 0

    def clear(self):
        with self._lock:
            self._memo.clear()
            self._tables.clear()
            self.expansions = 0

    def ext_delta_nabla2(self, m: int, n: int, s: int, p: int) -> int:
        """``dim Ext^m(Delta(n), nabla(2)^(s))``."""
        ExtQuery(m, n, s, p)
        return self._ext(m, n, s, p)

    def _ext(self, m: int, n: int, s: int, p: int) -> int:
        key = (m, n, s, p)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if s == 0:
            value = 1 if (m == 0 and n == 2) else 0
        elif not in_block_of_two_p_s(n, s, p):
            value = 0
        else:
            base = n // p
            if s == 1:
                # only the summand i = m can hit (0, 2) at twist 0
                value = 1 if base + m == 2 else 0
            else:
                memo = self._memo
                value = 0
                # recursion depth is bounded by s, so plain recursion is safe
                for i in range(m + 1):
                    sub = memo.get((m - i, base + i, s - 1, p))
                    value += self._ext(m - i, base + i, s - 1, p) if sub is None else sub
            with self._lock:
                self.expansions += 1
        with self._lock:
            self._memo.setdefault(key, value)
        return value

    def layers(self, p: int, s_max: int, T: int) -> list:
        """Cached bulk tables ``E_0..E_{s_max}`` covering ``m + n <= T``."""
        check_prime(p)
        cached = self._tables.get(p)
        if cached is not None and cached[0] >= T and cached[1] >= s_max:
            return cached[2]
        if cached is not None:
            T = max(T, cached[0])
            s_max = max(s_max, cached[1])
        built = exact_ext_layers(p, s_max, T)
        with self._lock:
            self._tables[p] = (T, s_max, built)
        return built

    def decompose_ext_k_nabla2(self, q: int, r: int, p: int) -> list[tuple[int, int]]:
        """Per-summand dimensions ``(n, dim Ext^(q-n)(Delta(n), nabla(2)^(r-1)))``."""
        check_weight(q)
        if r < 1:
            raise ValueError(f"twist r must be >= 1, got {r}")
        table = self.layers(p, r - 1, q)[r - 1]
        return [(n, int(table[q - n, n])) for n in range(q + 1)]

    def ext_k_nabla2(self, q: int, r: int, p: int) -> int:
        """``dim Ext^q(k, nabla(2)^(r))`` as the sum of the decomposition."""
        return sum(d for _, d in self.decompose_ext_k_nabla2(q, r, p))

    def ext_k_gl2_top(self, r: int, p: int) -> int:
        """``dim Ext^(2p^(r-1))(k, gl2^(r))``; same for SL2 and GL2."""
        return self.ext_k_nabla2(top_degree(r, p), r, p)


_default_engine = ExtEngine()


def default_engine() -> ExtEngine:
    return _default_engine


def ext_delta_nabla2(m: int, n: int, s: int, p: int) -> int:
    return _default_engine.ext_delta_nabla2(m, n, s, p)


def ext_k_nabla2(q: int, r: int, p: int) -> int:
    return _default_engine.ext_k_nabla2(q, r, p)


def ext_k_gl2_top(r: int, p: int) -> int:
    return _default_engine.ext_k_gl2_top(r, p)


def decompose_ext_k_nabla2(q: int, r: int, p: int) -> list[tuple[int, int]]:
    return _default_engine.decompose_ext_k_nabla2(q, r, p)


# Weyl filtration of gl2 = L(1) (x) L(1): sections Delta(2) and Delta(0).
_GL2_WEYL_SECTIONS = {0: 1, 2: 1}


def weyl_multiplicities_gl2() -> dict[int, int]:
    return dict(_GL2_WEYL_SECTIONS)


def hom_gl2_nabla(n: int) -> int:
    """``dim Hom_G(gl2, nabla(n))``, i.e. the multiplicity of ``Delta(n)`` in gl2."""
    check_weight(n)
    return _GL2_WEYL_SECTIONS.get(n, 0)


@dataclass
class CornerReport:
    r: int
    p: int
    dim: int
    steps: list[str] = field(default_factory=list)


def e2_corner_report(r: int, p: int) -> CornerReport:
    """Reduce the spectral-sequence corner ``E_2^(0, 2p^(r-1))`` to a multiplicity.

    Chain: ``Hom_G(gl2^(r-1), nabla(2p^(r-1)))`` -> fixed points under the
    (r-1)-th Frobenius kernel turn ``nabla(2p^(r-1))`` into ``nabla(2)^(r-1)``
    -> untwisting gives ``Hom_G(gl2, nabla(2))`` -> Weyl-filtration
    multiplicity of ``Delta(2)`` in gl2.
    """
    check_prime(p)
    q = top_degree(r, p)
    frob = p ** (r - 1)
    untwisted, rem = divmod(q, frob)
    if rem:
        raise AssertionError("top degree is not divisible by the Frobenius power")
    dim = hom_gl2_nabla(untwisted)
    steps = [
        f"E2[0,{q}] = Hom_G(gl2^({r - 1}), nabla({q}))",
        f"nabla({q})^(G_{r - 1}) = nabla({untwisted})^({r - 1})",
        f"Hom_G/G_{r - 1}(gl2^({r - 1}), nabla({untwisted})^({r - 1})) = Hom_G(gl2, nabla({untwisted}))",
        f"dim Hom_G(gl2, nabla({untwisted})) = [gl2 : Delta({untwisted})] = {dim}",
    ]
    return CornerReport(r=r, p=p, dim=dim, steps=steps)


def e2_corner_dim(r: int, p: int) -> int:
    return e2_corner_report(r, p).dim
