"""Grid verification of the Ext computations.

Each check yields :class:`CheckResult` records; :func:`run_checks` orders them
canonically (by prime, then twist) so reports are byte-stable.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .ext import ExtEngine, ExtQuery, e2_corner_dim, top_degree
from .hilbert import GL2_DIM, convolve, hilbert, symmetric_power_series
from .kernels import deficit_grid
from .oracles import naive_ext_dim, orbit_linked
from .trace import TraceDag, leaf_path_count, trace, verify_deficit
from .weights import check_prime, same_block

PASS = "pass"
FAIL = "fail"
SKIP = "skip"

# Trace DAGs grow roughly cubically in the top degree.
TRACE_DEGREE_LIMIT = 200


@dataclass
class CheckResult:
    check: str
    p: int
    r: int | None
    status: str
    detail: str
    failures: list = field(default_factory=list)

    def line(self) -> str:
        where = f"p={self.p}" + (f" r={self.r}" if self.r is not None else "")
        return f"{self.status.upper():4} {self.check:<16} {where:<10} {self.detail}"

    def as_dict(self) -> dict:
        return asdict(self)


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def check_top_dim(engine: ExtEngine, p: int, r: int) -> CheckResult:
    dim = engine.ext_k_gl2_top(r, p)
    return CheckResult("top-dim", p, r, _status(dim == 1), f"q={top_degree(r, p)} dim={dim}",
                       [] if dim == 1 else [{"q": top_degree(r, p), "dim": dim}])


def check_vanishing(engine: ExtEngine, p: int, r: int) -> CheckResult:
    """``Ext^(2p^r - n)(Delta(n), nabla(2)^(r)) == 0`` for ``0 <= n < 2p^r``."""
    q = 2 * p**r
    bad = []
    for n in range(q):
        d = engine.ext_delta_nabla2(q - n, n, r, p)
        if d:
            bad.append({"n": n, "dim": d})
    return CheckResult("vanishing", p, r, _status(not bad), f"n<{q} nonzero={len(bad)}", bad)


def check_corner(engine: ExtEngine, p: int, r: int) -> CheckResult:
    q = top_degree(r, p)
    corner = e2_corner_dim(r, p)
    decomposition = engine.decompose_ext_k_nabla2(q, r, p)
    bad = [{"n": n, "dim": d} for n, d in decomposition if (d != 0) != (n == q)]
    top = decomposition[-1][1]
    ok = corner == 1 and top == corner and not bad
    return CheckResult("corner", p, r, _status(ok), f"corner={corner} summand[n={q}]={top}", bad)


def top_traces(p: int, r: int) -> list[TraceDag]:
    q = top_degree(r, p)
    return [trace(ExtQuery(q - n, n, r - 1, p)) for n in range(q + 1)]


def check_unique_chain(p: int, r: int, dags: list[TraceDag]) -> CheckResult:
    leaf = ExtQuery(0, 2, 0, p)
    total = sum(leaf_path_count(d, leaf) for d in dags)
    nonzero = sorted({q.key for d in dags for q in d.nonzero()}, key=lambda k: -k[2])
    expected = [(0, 2 * p ** (r - s), r - s, p) for s in range(1, r + 1)]
    ok = total == 1 and nonzero == expected
    chain = " -> ".join(f"({m},{n},{s})" for m, n, s, _ in nonzero)
    failures = [] if ok else [{"leaf_paths": total, "nonzero": [list(k[:3]) for k in nonzero]}]
    return CheckResult("unique-chain", p, r, _status(ok), f"leaf_paths={total} chain={chain}", failures)


def check_deficit_traces(p: int, r: int, dags: list[TraceDag]) -> CheckResult:
    checked = 0
    bad = []
    for d in dags:
        report = verify_deficit(d)
        checked += report.checked
        bad.extend({"root": d.root.query.node_id, "node": v.node_id} for v in report.violations)
    return CheckResult("deficit-trace", p, r, _status(not bad), f"nonzero_nodes={checked} violations={len(bad)}", bad)


def check_deficit_grid(p: int, s_max: int = 3, a_max: int = 100, b_max: int = 100) -> CheckResult:
    checked, violations = deficit_grid(p, s_max, a_max, b_max)
    return CheckResult("deficit-grid", p, None, _status(violations == 0),
                       f"cases={checked} violations={violations}",
                       [] if violations == 0 else [{"violations": violations}])


def check_oracle_ext(engine: ExtEngine, p: int, s_max: int = 2, n_max: int = 20, m_max: int = 12) -> CheckResult:
    bad = []
    count = 0
    for s in range(s_max + 1):
        for n in range(n_max + 1):
            for m in range(m_max + 1):
                count += 1
                fast = engine.ext_delta_nabla2(m, n, s, p)
                slow = naive_ext_dim(m, n, s, p)
                if fast != slow:
                    bad.append({"m": m, "n": n, "s": s, "engine": fast, "naive": slow})
    return CheckResult("oracle-ext", p, None, _status(not bad), f"queries={count} mismatches={len(bad)}", bad)


def block_vs_orbit(p: int, limit: int = 500) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Pairs where the orbit and the closed form disagree.

    Returns ``(necessity_failures, sufficiency_gaps)``: the first lists pairs
    that are orbit-linked but fail the predicate (a real error), the second
    pairs that pass the predicate without being orbit-linked.
    """
    bound = limit + 2 * p
    necessity, sufficiency = [], []
    for lam in range(limit + 1):
        for mu in range(limit + 1):
            linked = orbit_linked(lam, mu, p, bound)
            predicate = same_block(lam, mu, p)
            if linked and not predicate:
                necessity.append((lam, mu))
            elif predicate and not linked:
                sufficiency.append((lam, mu))
    return necessity, sufficiency


def check_oracle_blocks(p: int, limit: int = 500) -> CheckResult:
    necessity, sufficiency = block_vs_orbit(p, limit)
    detail = f"weights<={limit} necessity_failures={len(necessity)} sufficiency_gaps={len(sufficiency)}"
    if sufficiency:
        lam, mu = sufficiency[0]
        detail += f" (first gap {lam},{mu})"
    return CheckResult("oracle-blocks", p, None, _status(not necessity), detail,
                       [{"lambda": lam, "mu": mu} for lam, mu in necessity[:20]])


def check_hilbert(p: int, r: int, N: int = 40) -> CheckResult:
    series = hilbert(r, p, N)
    extended = convolve(series, symmetric_power_series(2 * p**r, GL2_DIM, N), N)
    ok = (series[0] == 1 and all(c == 0 for c in series[1::2]) and all(c >= 0 for c in series)
          and extended == hilbert(r + 1, p, N))
    return CheckResult("hilbert", p, r, _status(ok), f"N={N} c[:7]={series[:7]}")


def check_hilbert_binomial(N: int = 20) -> CheckResult:
    series = hilbert(1, 2, N)
    expected = [0] * (N + 1)
    for k in range(N // 2 + 1):
        expected[2 * k] = (k + 3) * (k + 2) * (k + 1) // 6
    return CheckResult("hilbert-binom", 2, 1, _status(series == expected), f"N={N}")


def run_checks(primes: list[int], r_max: int, engine: ExtEngine | None = None) -> list[CheckResult]:
    """Run every check over ``primes x {1..r_max}`` in canonical order."""
    for p in primes:
        check_prime(p)
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    engine = engine or ExtEngine()
    results = [check_hilbert_binomial()]
    for p in sorted(set(primes)):
        results.append(check_deficit_grid(p))
        results.append(check_oracle_ext(engine, p))
        results.append(check_oracle_blocks(p))
        for r in range(1, r_max + 1):
            results.append(check_top_dim(engine, p, r))
            results.append(check_vanishing(engine, p, r))
            results.append(check_corner(engine, p, r))
            q = top_degree(r, p)
            if q <= TRACE_DEGREE_LIMIT:
                dags = top_traces(p, r)
                results.append(check_unique_chain(p, r, dags))
                results.append(check_deficit_traces(p, r, dags))
            else:
                for name in ("unique-chain", "deficit-trace"):
                    results.append(CheckResult(name, p, r, SKIP, f"q={q} exceeds trace limit {TRACE_DEGREE_LIMIT}"))
            results.append(check_hilbert(p, r))
    return results
