"""Conjecture polynomials, checkers and the resumable sweep ledger."""

from __future__ import annotations

import json
import logging
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .ehrhart import diff_hstar, hstar_triangulation
from .errors import IdentityFailure, PreconditionError, ResourceError
from .geometry import extremal_class, z2
from .graph import Edge, Graph, canonical_code, enumerate_connected_graphs, is_two_connected
from .poly import GammaDecomposition, IntPolynomial, gamma_decompose, is_palindromic, poly_sum
from .triangulation import SimplicialComplex, h_polynomial, visible_triangulation

log = logging.getLogger(__name__)

CROSS_CHECK_MAX_N = 6


def _two_connected(g: Graph) -> None:
    if not is_two_connected(g):
        raise PreconditionError("operation requires a 2-connected graph")


def c_ij(g: Graph, ij: tuple[int, int], cross_check: bool = True) -> IntPolynomial:
    """h*_G - h*_(G minus ij) through the cone triangulation, verified for small n."""
    c = diff_hstar(g, ij)
    if cross_check and g.n <= CROSS_CHECK_MAX_N:
        direct = hstar_triangulation(g) - hstar_triangulation(g.delete_edge(*ij))
        if direct != c:
            raise IdentityFailure(f"difference formula {c} != direct subtraction {direct} for {g}, edge {ij}")
    return c


def edge_gammas(g: Graph) -> dict[Edge, tuple[IntPolynomial, GammaDecomposition]]:
    _two_connected(g)
    d = g.n - 1
    out = {}
    for e in g.sorted_edges:
        c = c_ij(g, e)
        out[e] = (c, gamma_decompose(c, d))
    return out


def z_poly(g: Graph) -> IntPolynomial:
    """Sum over edges of the gamma polynomials of the deletion differences."""
    return poly_sum(gd.as_polynomial() for _, gd in edge_gammas(g).values())


# ---------------------------------------------------------------- layered sum


@dataclass(frozen=True)
class LayeredSum:
    edge: tuple[int, int]
    distances: tuple[int, ...]  # decreasing
    levels: tuple[SimplicialComplex, ...]
    level_h: tuple[IntPolynomial, ...]
    summands: tuple[IntPolynomial, ...]
    facet_counts: tuple[int, ...]  # simplices at exactly each distance

    @property
    def rhs(self) -> IntPolynomial:
        return poly_sum(self.summands).shift(1) * 2

    def differences(self) -> list[IntPolynomial]:
        prev = IntPolynomial()
        out = []
        for h in self.level_h:
            out.append(h - prev)
            prev = h
        return out


def layered_sum(g: Graph, ij: tuple[int, int]) -> LayeredSum:
    """Filter the visible triangulation by lattice distance (height - 1) to e_ij."""
    _two_connected(g)
    vt = visible_triangulation(g, tuple(ij))
    dist = [(s, ht - 1) for s, ht in vt.simplices]
    ladder = sorted({d for _, d in dist}, reverse=True)
    levels, hs, summands, counts = [], [], [], []
    prev = IntPolynomial()
    for d in ladder:
        cx = SimplicialComplex(s for s, x in dist if x >= d)
        h = h_polynomial(cx)
        levels.append(cx)
        hs.append(h)
        summands.append((h - prev) * IntPolynomial.geometric(d))
        counts.append(sum(1 for _, x in dist if x == d))
        prev = h
    return LayeredSum(tuple(ij), tuple(ladder), tuple(levels), tuple(hs), tuple(summands), tuple(counts))


@dataclass(frozen=True)
class ConjSumVerdict:
    edge: tuple[int, int]
    equal: bool
    palindromic: bool
    nonnegative: bool
    witness: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.equal and self.palindromic and self.nonnegative


def check_conj_sum(g: Graph, ij: tuple[int, int]) -> ConjSumVerdict:
    """Layered right-hand side against c^ij; summands symmetric about (n-3)/2, nonnegative."""
    ls = layered_sum(g, ij)
    c = c_ij(g, ij)
    d = g.n - 3
    equal = ls.rhs == c
    bad_pal = [k for k, s in enumerate(ls.summands) if not is_palindromic(s, d)]
    bad_neg = [k for k, s in enumerate(ls.summands) if not s.nonnegative()]
    witness = None
    if not equal or bad_pal or bad_neg:
        witness = {
            "edge": list(ij),
            "c": c.to_list(),
            "rhs": ls.rhs.to_list(),
            "distances": list(ls.distances),
            "summands": [s.to_list() for s in ls.summands],
            "non_palindromic": bad_pal,
            "negative": bad_neg,
        }
    return ConjSumVerdict(tuple(ij), equal, not bad_pal, not bad_neg, witness)


def z2_identity(g: Graph) -> bool:
    """Quadratic coefficient of Z_G equals 2 z_2(G)."""
    _two_connected(g)
    if g.n < 5:
        raise PreconditionError("the identity concerns gamma_2, which needs n >= 5")
    return z_poly(g)[2] == 2 * z2(g)


def check_theorem_A(g: Graph) -> bool:
    return z2(g) >= 0


def check_corollary_Z0(g: Graph) -> bool:
    if g.n < 3:
        raise PreconditionError("the extremal characterisation is stated for n >= 3")
    return (z2(g) == 0) == (extremal_class(g) != "none")


# ---------------------------------------------------------------- shellability


@dataclass(frozen=True)
class ShellingResult:
    status: str  # "shellable", "not_shellable", "inconclusive"
    order: Optional[tuple[frozenset, ...]] = None
    nodes: int = 0


def _fits(face: frozenset, prefix: Sequence[frozenset]) -> bool:
    if not prefix:
        return True
    inter = {face & p for p in prefix}
    maximal = [x for x in inter if not any(x < y for y in inter)]
    return all(len(x) == len(face) - 1 for x in maximal)


def find_shelling(
    groups: Sequence[Sequence[frozenset]], budget: int = DEFAULT_LIMITS.shell_budget
) -> ShellingResult:
    """Backtracking shelling search; facets of ``groups[k]`` all precede ``groups[k+1]``."""
    flat = [(k, f) for k, grp in enumerate(groups) for f in grp]
    if not flat:
        return ShellingResult("shellable", (), 0)
    sizes = {len(f) for _, f in flat}
    if len(sizes) > 1:
        raise PreconditionError("shelling requires a pure complex")
    remaining_in = [len(grp) for grp in groups]
    used = [False] * len(flat)
    order: list[frozenset] = []
    nodes = 0
    exhausted = True

    def current_group() -> int:
        return next((k for k, r in enumerate(remaining_in) if r), len(groups))

    def rec() -> bool:
        nonlocal nodes, exhausted
        if len(order) == len(flat):
            return True
        grp = current_group()
        for idx, (k, f) in enumerate(flat):
            if used[idx] or k != grp:
                continue
            if not _fits(f, order):
                continue
            nodes += 1
            if nodes > budget:
                exhausted = False
                return False
            used[idx] = True
            remaining_in[k] -= 1
            order.append(f)
            if rec():
                return True
            order.pop()
            remaining_in[k] += 1
            used[idx] = False
            if nodes > budget:
                return False
        return False

    if rec():
        return ShellingResult("shellable", tuple(order), nodes)
    return ShellingResult("not_shellable" if exhausted else "inconclusive", None, nodes)


def shellability_probe(c: SimplicialComplex, budget: int = DEFAULT_LIMITS.shell_budget) -> ShellingResult:
    if not c.is_pure():
        raise PreconditionError("shelling requires a pure complex")
    return find_shelling([list(c.facets)], budget)


@dataclass(frozen=True)
class LayerShellReport:
    edge: tuple[int, int]
    levels: tuple[str, ...]
    layered: str


def layer_shellability(g: Graph, ij: tuple[int, int], budget: int = DEFAULT_LIMITS.shell_budget) -> LayerShellReport:
    ls = layered_sum(g, ij)
    levels = tuple(shellability_probe(cx, budget).status for cx in ls.levels)
    groups = []
    seen: set[frozenset] = set()
    for cx in ls.levels:
        new = [f for f in cx.facets if f not in seen]
        seen.update(new)
        groups.append(new)
    return LayerShellReport(tuple(ij), levels, find_shelling(groups, budget).status)


# ---------------------------------------------------------------- sweep


SUITES = ("theoremA", "corollaryZ0", "zg", "conjsum", "z2id", "shell")
TWO_CONNECTED_SUITES = frozenset({"zg", "conjsum", "z2id", "shell"})
VERDICTS = (
    "zg_nonneg",
    "conjsum_equal",
    "summands_palindromic",
    "summands_nonneg",
    "theoremA",
    "corollaryZ0",
    "z2_identity",
    "shellable",
)


def _ekey(e: Sequence[int]) -> str:
    return f"{e[0]}-{e[1]}"


def check_graph(g: Graph, checks: Iterable[str], shell_budget: int = DEFAULT_LIMITS.shell_budget) -> dict:
    """One ledger record; a verdict stays ``None`` only when its check did not apply."""
    checks = set(checks)
    t0 = time.perf_counter()
    verdicts: dict[str, Optional[bool]] = {k: None for k in VERDICTS}
    rec: dict = {"code": canonical_code(g), "n": g.n, "m": len(g.edges), "checks": sorted(checks)}
    witnesses: list[dict] = []
    if "theoremA" in checks:
        verdicts["theoremA"] = check_theorem_A(g)
        rec["z2"] = z2(g)
        if not verdicts["theoremA"]:
            witnesses.append({"check": "theoremA", "z2": rec["z2"]})
    if "corollaryZ0" in checks and g.n >= 3:
        verdicts["corollaryZ0"] = check_corollary_Z0(g)
        if not verdicts["corollaryZ0"]:
            witnesses.append({"check": "corollaryZ0", "z2": z2(g), "class": extremal_class(g)})
    two_conn = is_two_connected(g)
    if two_conn and checks & {"zg", "z2id", "conjsum"}:
        eg = edge_gammas(g)
        rec["c"] = {_ekey(e): c.to_list() for e, (c, _) in eg.items()}
        rec["gamma"] = {_ekey(e): list(gd.gamma) for e, (_, gd) in eg.items()}
        zg = poly_sum(gd.as_polynomial() for _, gd in eg.values())
        rec["Z_G"] = zg.to_list()
        if "zg" in checks:
            verdicts["zg_nonneg"] = zg.nonnegative()
            if not verdicts["zg_nonneg"]:
                witnesses.append({"check": "zg", "Z_G": zg.to_list()})
        if "z2id" in checks and g.n >= 5:
            verdicts["z2_identity"] = zg[2] == 2 * z2(g)
            if not verdicts["z2_identity"]:
                witnesses.append({"check": "z2id", "z2_of_Z": zg[2], "z2_graph": z2(g)})
    if two_conn and "conjsum" in checks:
        vs = [check_conj_sum(g, e) for e in g.sorted_edges]
        verdicts["conjsum_equal"] = all(v.equal for v in vs)
        verdicts["summands_palindromic"] = all(v.palindromic for v in vs)
        verdicts["summands_nonneg"] = all(v.nonnegative for v in vs)
        witnesses += [{"check": "conjsum", **v.witness} for v in vs if v.witness]
    if two_conn and "shell" in checks:
        reports = [layer_shellability(g, e, shell_budget) for e in g.sorted_edges]
        statuses = [s for r in reports for s in r.levels + (r.layered,)]
        rec["shell"] = {_ekey(r.edge): {"levels": list(r.levels), "layered": r.layered} for r in reports}
        if "not_shellable" in statuses:
            verdicts["shellable"] = False
            witnesses.append({"check": "shell", "reports": rec["shell"]})
        elif "inconclusive" not in statuses:
            verdicts["shellable"] = True
    rec["verdicts"] = verdicts
    rec["witnesses"] = witnesses
    rec["wall_time"] = round(time.perf_counter() - t0, 6)
    return rec


def read_ledger(path: str) -> list[dict]:
    if not os.path.exists(path):
        return []
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


@dataclass
class SweepSummary:
    checks: tuple[str, ...]
    n_range: tuple[int, int]
    graphs_checked: int = 0
    graphs_skipped: int = 0
    passed: dict[str, int] = field(default_factory=dict)
    failed: dict[str, int] = field(default_factory=dict)
    failures: list[dict] = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def status(self) -> int:
        if self.failures:
            return 1
        return 3 if self.budget_exhausted else 0

    def to_json(self) -> dict:
        return {
            "checks": list(self.checks),
            "n_range": list(self.n_range),
            "graphs_checked": self.graphs_checked,
            "graphs_skipped": self.graphs_skipped,
            "passed": dict(sorted(self.passed.items())),
            "failed": dict(sorted(self.failed.items())),
            "failures": self.failures,
            "budget_exhausted": self.budget_exhausted,
            "status": self.status,
        }

    def table(self) -> str:
        lines = [f"sweep n={self.n_range[0]}..{self.n_range[1]} checks={','.join(self.checks)}"]
        lines.append(f"graphs checked {self.graphs_checked}, skipped (already in ledger) {self.graphs_skipped}")
        for k in VERDICTS:
            p, f = self.passed.get(k, 0), self.failed.get(k, 0)
            if p or f:
                lines.append(f"  {k:<22} pass {p:>6}  fail {f:>4}")
        for fl in self.failures:
            lines.append(f"  COUNTEREXAMPLE {fl['code']}: {fl['failed']}")
        if self.budget_exhausted:
            lines.append("  time budget exhausted; rerun with the same ledger to resume")
        return "\n".join(lines)


class _Worker:
    def __init__(self, checks: tuple[str, ...], shell_budget: int) -> None:
        self.checks = checks
        self.shell_budget = shell_budget

    def __call__(self, g: Graph) -> dict:
        return check_graph(g, self.checks, self.shell_budget)


def sweep(
    n_min: int,
    n_max: int,
    checks: Iterable[str],
    jobs: int = 1,
    ledger_path: Optional[str] = None,
    two_connected_only: Optional[bool] = None,
    allow_large: bool = False,
    time_budget: Optional[float] = None,
    limits: Limits = DEFAULT_LIMITS,
) -> SweepSummary:
    """Run ``checks`` over canonical graphs, appending one JSON line per new graph."""
    requested = set(checks)
    unknown = requested - set(SUITES)
    checks = tuple(c for c in SUITES if c in requested)
    if unknown or not checks:
        raise PreconditionError(f"unknown or empty check suite: {sorted(unknown) or 'none'}")
    if n_max > 7 and not allow_large:
        raise ResourceError("sweeps beyond n=7 are opt-in (allow_large / --allow-large)")
    if two_connected_only is None:
        two_connected_only = set(checks) <= TWO_CONNECTED_SUITES
    # a graph is skipped only if some earlier record already ran every requested check
    covered: dict[str, set[str]] = {}
    for r in read_ledger(ledger_path) if ledger_path else ():
        covered.setdefault(r["code"], set()).update(r.get("checks", ()))
    done = {code for code, ran in covered.items() if set(checks) <= ran}
    summary = SweepSummary(checks, (n_min, n_max))
    start = time.monotonic()

    def stream() -> Iterator[Graph]:
        for n in range(n_min, n_max + 1):
            for g in enumerate_connected_graphs(n, two_connected_only, limits):
                if canonical_code(g) in done:
                    summary.graphs_skipped += 1
                    continue
                yield g

    worker = _Worker(checks, limits.shell_budget)
    out = open(ledger_path, "a") if ledger_path else None
    pool = multiprocessing.Pool(jobs) if jobs > 1 else None
    try:
        results = pool.imap(worker, stream(), chunksize=4) if pool else map(worker, stream())
        for rec in results:
            summary.graphs_checked += 1
            if out:
                out.write(json.dumps(rec, sort_keys=True) + "\n")
                out.flush()
            bad = []
            for k, v in rec["verdicts"].items():
                if v is True:
                    summary.passed[k] = summary.passed.get(k, 0) + 1
                elif v is False:
                    summary.failed[k] = summary.failed.get(k, 0) + 1
                    bad.append(k)
            if bad:
                summary.failures.append({"code": rec["code"], "failed": bad, "witnesses": rec["witnesses"]})
            if time_budget is not None and time.monotonic() - start > time_budget:
                summary.budget_exhausted = True
                break
    finally:
        if pool:
            pool.terminate()
        if out:
            out.close()
    return summary
