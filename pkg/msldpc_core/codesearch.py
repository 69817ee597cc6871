# msldpc_core/codesearch.py
"""
Bounded exhaustive search for low-weight idempotents in the spectral domain.

Subsets I of the degree-sorted factors of z^n + 1 are enumerated depth first.
A branch is extended only while

    sum of deg f_i over I  <=  sqrt(n) + delta          (weight of u)

and a subset becomes a candidate when theta = sum of theta_i over I satisfies

    wt(theta) <= (1 - r_min) * n                        (rate)
    r_theta > d                                         (BCH run)

Candidates that define a degenerate code are dropped; the rest are turned into
CodeRecords, deduplicated by generator polynomial and sorted by
(weight, n - k, subset). Both bound comparisons are exact (integers and
Fractions), so tie cases never depend on floating point.

Top-level branches may be explored by worker threads. Each branch buffers its
records and buffers are merged in branch order, so the output does not depend
on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple
import logging
import threading

from pydantic import Field, field_validator
from sympy import divisors

from msldpc_core import settings
from msldpc_core.codecraft import build_code, is_orthogonal
from msldpc_core.cyclotomic import FactorSet
from msldpc_core.errors import (
    BudgetExceeded,
    LengthMismatch,
    SpectralLawViolation,
    ZeroPolynomial,
)
from msldpc_core.fieldcore import FieldContext
from msldpc_core.msdomain import ms_inverse
from msldpc_core.polyring import (
    BinaryPolynomial,
    cyclic_run_bits,
    poly_divide_exact,
    poly_gcd,
    poly_mod,
)
from msldpc_core.record import CodeRecord

log = logging.getLogger(__name__)

OnRecord = Callable[[CodeRecord], None]


class SearchConfig(settings.ConfigModel):
    n: int = Field(ge=3)
    r_min: float = Field(ge=0.0, lt=1.0)
    d: int = Field(ge=1)
    delta: int = Field(default=1, ge=0)
    max_results: Optional[int] = Field(default=None, ge=1)
    budget: Optional[int] = Field(default=None, ge=1)
    workers: int = Field(default_factory=settings.search_workers, ge=1)

    @field_validator("n")
    @classmethod
    def _odd(cls, v: int) -> int:
        if v % 2 == 0:
            raise ValueError("n must be odd")
        return v

    @property
    def max_theta_weight(self) -> Fraction:
        return (1 - Fraction(str(self.r_min))) * self.n


# ---------- bounds ----------
def within_weight_bound(deg_sum: int, n: int, delta: int) -> bool:
    """deg_sum <= sqrt(n) + delta, decided in integers."""
    x = deg_sum - delta
    return x <= 0 or x * x <= n


def within_rate_bound(theta_weight: int, cfg: SearchConfig) -> bool:
    return theta_weight <= cfg.max_theta_weight


def within_run_bound(r_theta: int, cfg: SearchConfig) -> bool:
    return r_theta > cfg.d


# ---------- non-degeneracy ----------
def is_nondegenerate(u: BinaryPolynomial, n: int) -> bool:
    """
    0 < k < n, and for every proper divisor n' of n neither h(x) = gcd(x^n+1, u)
    nor g(x) = (x^n+1)/h(x) divides x^n' + 1.
    """
    if u.is_zero():
        raise ZeroPolynomial("u must be nonzero")
    if u.degree >= n:
        raise LengthMismatch(f"u has degree {u.degree} >= n={n}")
    x_n = BinaryPolynomial.x_n_plus_1(n)
    h = poly_gcd(x_n, u)
    if h.degree in (0, n):
        return False
    g = poly_divide_exact(x_n, h)
    for n_sub in divisors(n)[:-1]:
        x_sub = BinaryPolynomial.x_n_plus_1(n_sub)
        if poly_mod(x_sub, h).is_zero() or poly_mod(x_sub, g).is_zero():
            return False
    return True


def _period_masks(n: int) -> List[int]:
    """For each proper divisor n' of n, the bit mask of multiples of n / n'."""
    masks = []
    for n_sub in divisors(n)[:-1]:
        q = n // n_sub
        m = 0
        for j in range(0, n, q):
            m |= 1 << j
        masks.append(m)
    return masks


def _nonroot_mask(theta_bits: int, n: int) -> int:
    """Bit j set iff u(alpha^j) != 0, read off theta (coefficient of z^(n-j))."""
    out = 0
    while theta_bits:
        low = theta_bits & -theta_bits
        e = low.bit_length() - 1
        out |= 1 << ((n - e) % n)
        theta_bits ^= low
    return out


def _nondegenerate_spectrum(theta_bits: int, n: int, masks: List[int]) -> bool:
    """is_nondegenerate decided from theta alone (roots of h, roots of g)."""
    full = (1 << n) - 1
    nonroots = _nonroot_mask(theta_bits, n)
    roots = full & ~nonroots
    if roots == 0 or nonroots == 0:
        return False
    return not any((roots & ~m) == 0 or (nonroots & ~m) == 0 for m in masks)


# ---------- dedup list ----------
class CodesList:
    """Ordered record list keyed by generator polynomial."""

    def __init__(self):
        self._records: List[CodeRecord] = []
        self._keys: Dict[str, int] = {}

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[CodeRecord]:
        return iter(self._records)

    def __contains__(self, key: str) -> bool:
        return key in self._keys

    def records(self) -> List[CodeRecord]:
        return list(self._records)

    def sorted(self) -> List[CodeRecord]:
        return sorted(self._records, key=lambda r: r.sort_key())


def dedup_insert(rec: CodeRecord, codes: CodesList) -> bool:
    """Insert unless a record with the same generator polynomial is present."""
    key = rec.dedup_key
    if key in codes._keys:
        return False
    codes._keys[key] = len(codes._records)
    codes._records.append(rec)
    return True


# ---------- search ----------
@dataclass
class SearchStats:
    nodes: int = 0
    candidates: int = 0
    degenerate: int = 0
    duplicates: int = 0
    records: int = 0
    truncated: bool = False

    def to_dict(self) -> Dict[str, object]:
        return {
            "nodes": self.nodes,
            "candidates": self.candidates,
            "degenerate": self.degenerate,
            "duplicates": self.duplicates,
            "records": self.records,
            "truncated": self.truncated,
        }


@dataclass
class _NodeCounter:
    budget: Optional[int]
    count: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def tick(self) -> None:
        with self.lock:
            self.count += 1
            over = self.budget is not None and self.count > self.budget
        if over:
            raise BudgetExceeded(f"search visited more than {self.budget} nodes", nodes=self.count)


class _Searcher:
    def __init__(self, cfg: SearchConfig, fs: FactorSet, ctx: FieldContext):
        self.cfg = cfg
        self.fs = fs
        self.ctx = ctx
        self.n = fs.n
        self.degrees = [e.degree for e in fs]
        self.thetas = [e.theta.bits for e in fs]
        self.masks = _period_masks(self.n)
        self.counter = _NodeCounter(cfg.budget)
        self.stats_lock = threading.Lock()
        self.stats = SearchStats()

    def _bump(self, name: str) -> None:
        with self.stats_lock:
            setattr(self.stats, name, getattr(self.stats, name) + 1)

    def explore_branch(self, first: int, emit: Callable[[CodeRecord], None]) -> None:
        """Subtree rooted at the single-factor subset {first} (0-based)."""
        if not within_weight_bound(self.degrees[first], self.n, self.cfg.delta):
            return
        self._visit((first,), self.degrees[first], self.thetas[first], emit)

    def _visit(self, subset: Tuple[int, ...], deg_sum: int, theta: int,
               emit: Callable[[CodeRecord], None]) -> None:
        self.counter.tick()
        self._consider(subset, theta, emit)
        for i in range(subset[-1] + 1, len(self.degrees)):
            nxt = deg_sum + self.degrees[i]
            if not within_weight_bound(nxt, self.n, self.cfg.delta):
                break  # degrees ascend, so every later factor fails too
            self._visit(subset + (i,), nxt, theta ^ self.thetas[i], emit)

    def _consider(self, subset: Tuple[int, ...], theta: int, emit: Callable[[CodeRecord], None]) -> None:
        n = self.n
        wt_theta = theta.bit_count()
        if not within_rate_bound(wt_theta, self.cfg):
            return
        r_theta = cyclic_run_bits(theta, n)
        if not within_run_bound(r_theta, self.cfg):
            return
        self._bump("candidates")
        indices = tuple(i + 1 for i in subset)
        if not _nondegenerate_spectrum(theta, n, self.masks):
            self._bump("degenerate")
            log.debug("subset %s rejected: degenerate", indices)
            return
        emit(self._make_record(indices, theta, r_theta))

    def _make_record(self, indices: Tuple[int, ...], theta_bits: int, r_theta: int) -> CodeRecord:
        n = self.n
        theta = BinaryPolynomial.from_int(theta_bits)
        u = ms_inverse(theta, self.ctx)
        code = build_code(u, n)
        k = n - theta.weight
        if code.k != k:
            raise SpectralLawViolation(f"subset {indices}: deg gcd(x^n+1, u) = {code.k}, n - wt(theta) = {k}")
        rec = CodeRecord(
            n=n, k=k, subset=indices, u=u, theta=theta, g=code.g,
            bch_bound=r_theta + 1, r_theta=r_theta, orthogonal=is_orthogonal(u, n),
        )
        self._check_bounds(rec)
        return rec

    def _check_bounds(self, rec: CodeRecord) -> None:
        deg_sum = sum(self.degrees[i - 1] for i in rec.subset)
        ok = (
            rec.weight == deg_sum
            and within_weight_bound(deg_sum, self.n, self.cfg.delta)
            and within_rate_bound(rec.theta.weight, self.cfg)
            and within_run_bound(rec.r_theta, self.cfg)
        )
        if not ok:
            raise SpectralLawViolation(f"record for subset {rec.subset} violates the search bounds")


def code_search(cfg: SearchConfig, fs: FactorSet, ctx: FieldContext,
                on_record: Optional[OnRecord] = None,
                stats: Optional[SearchStats] = None) -> List[CodeRecord]:
    """
    Exhaustive bounded search. Returns deduplicated records sorted by
    (weight, n - k, subset), truncated to cfg.max_results when set.

    on_record is called for every newly inserted record in discovery order.
    stats, when given, is filled with node and rejection counts.
    Raises BudgetExceeded (partial = sorted records found so far) when
    cfg.budget nodes are exceeded.
    """
    if cfg.n != fs.n or ctx.n != fs.n:
        raise LengthMismatch(f"config n={cfg.n}, factor set n={fs.n}, field n={ctx.n}")
    if not fs.has_idempotents():
        raise SpectralLawViolation("factor set carries no primitive idempotents")

    searcher = _Searcher(cfg, fs, ctx)
    codes = CodesList()

    def insert(rec: CodeRecord) -> None:
        if dedup_insert(rec, codes):
            log.debug("record %r", rec)
            if on_record is not None:
                on_record(rec)
        else:
            searcher._bump("duplicates")
            log.debug("subset %s rejected: duplicate generator %s", rec.subset, rec.dedup_key)

    exceeded: Optional[BudgetExceeded] = None
    branches = range(fs.t)
    if cfg.workers <= 1:
        try:
            for i in branches:
                searcher.explore_branch(i, insert)
        except BudgetExceeded as e:
            exceeded = e
    else:
        buffers: List[List[CodeRecord]] = [[] for _ in branches]
        failures: List[BudgetExceeded] = []

        def run(i: int) -> None:
            try:
                searcher.explore_branch(i, buffers[i].append)
            except BudgetExceeded as e:
                failures.append(e)

        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            list(pool.map(run, branches))
        for buf in buffers:
            for rec in buf:
                insert(rec)
        if failures:
            exceeded = failures[0]

    result = codes.sorted()
    if cfg.max_results is not None:
        result = result[: cfg.max_results]

    st = searcher.stats
    st.nodes = searcher.counter.count
    st.records = len(result)
    st.truncated = exceeded is not None
    if stats is not None:
        for name, value in st.to_dict().items():
            setattr(stats, name, value)
    log.info("search n=%d r_min=%s d=%d delta=%d: nodes=%d candidates=%d records=%d truncated=%s",
             cfg.n, cfg.r_min, cfg.d, cfg.delta, st.nodes, st.candidates, st.records, st.truncated)

    if exceeded is not None:
        raise BudgetExceeded(str(exceeded), partial=result, nodes=st.nodes)
    return result
