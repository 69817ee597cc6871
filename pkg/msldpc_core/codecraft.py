# msldpc_core/codecraft.py
"""
From an accepted u(x) to a concrete cyclic code, and the measurements made on it.

 - h(x) = gcd(x^n + 1, u(x)), g(x) = (x^n + 1) / h(x), k = deg h
 - parity checks: the n cyclic shifts of u(x) placed as columns, so that
   row i is x^i * u(x^-1) and the null space is exactly the code generated by g
 - orthogonality: all cyclic differences of the support are distinct
 - minimum distance: exhaustive Gray-code walk over the message space, budget-gated
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, Optional, Tuple
import logging

import numpy as np
from scipy import sparse

from msldpc_core import settings
from msldpc_core.errors import BudgetExceeded, LengthMismatch, ZeroDimension, ZeroPolynomial
from msldpc_core.polyring import (
    BinaryPolynomial,
    max_cyclic_run,
    poly_divide_exact,
    poly_gcd,
)

log = logging.getLogger(__name__)

# Low message bits enumerated as a table, the rest walked in Gray order.
_TABLE_BITS = 16


@dataclass(frozen=True)
class CyclicCode:
    n: int
    k: int
    g: BinaryPolynomial
    h: BinaryPolynomial
    u: BinaryPolynomial

    @property
    def rate(self) -> float:
        return self.k / self.n

    def __repr__(self):
        return f"CyclicCode(({self.n},{self.k}), g={self.g.to_text()!r})"


def _check_nonzero_reduced(u: BinaryPolynomial, n: int) -> None:
    if u.is_zero():
        raise ZeroPolynomial("u must be nonzero")
    if u.degree >= n:
        raise LengthMismatch(f"u has degree {u.degree} >= n={n}")


def build_code(u: BinaryPolynomial, n: int) -> CyclicCode:
    _check_nonzero_reduced(u, n)
    h = poly_gcd(BinaryPolynomial.x_n_plus_1(n), u)
    k = h.degree
    if k == 0:
        raise ZeroDimension(f"u={u.to_text()} has no roots among the {n}-th roots of unity: k=0")
    g = poly_divide_exact(BinaryPolynomial.x_n_plus_1(n), h)
    return CyclicCode(n=n, k=k, g=g, h=h, u=u)


def bch_run(theta: BinaryPolynomial, n: int) -> int:
    return max_cyclic_run(theta, n)


def bch_bound(theta: BinaryPolynomial, n: int) -> int:
    """Classical BCH lower bound on d_min: longest run of nonzero spectral coefficients, plus one."""
    return bch_run(theta, n) + 1


# ---------- parity-check matrices ----------
@dataclass(frozen=True)
class CirculantMatrix:
    """
    Binary circulant: row i is row 0 cyclically shifted right by i.
    num_rows < n gives the leading rows only (rank-reduced form).
    """
    n: int
    first_row: Tuple[int, ...]
    num_rows: int = -1

    def __post_init__(self):
        object.__setattr__(self, "first_row", tuple(sorted(set(int(e) % self.n for e in self.first_row))))
        if self.num_rows < 0:
            object.__setattr__(self, "num_rows", self.n)
        if not 0 < self.num_rows <= self.n:
            raise ValueError(f"num_rows must lie in 1..{self.n}, got {self.num_rows}")

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.num_rows, self.n)

    @property
    def row_weight(self) -> int:
        return len(self.first_row)

    def row_support(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted((e + i) % self.n for e in self.first_row))

    def _coords(self) -> Tuple[np.ndarray, np.ndarray]:
        first = np.asarray(self.first_row, dtype=np.int64)
        rows = np.repeat(np.arange(self.num_rows, dtype=np.int64), first.size)
        cols = (rows + np.tile(first, self.num_rows)) % self.n
        return rows, cols

    def to_dense(self) -> np.ndarray:
        m = np.zeros(self.shape, dtype=np.uint8)
        rows, cols = self._coords()
        m[rows, cols] = 1
        return m

    def to_sparse(self) -> sparse.csr_matrix:
        rows, cols = self._coords()
        data = np.ones(rows.size, dtype=np.uint8)
        return sparse.csr_matrix((data, (rows, cols)), shape=self.shape)

    def reduced(self, k: int) -> "CirculantMatrix":
        """Leading n-k rows; these are linearly independent."""
        return CirculantMatrix(self.n, self.first_row, self.n - k)

    def rank(self) -> int:
        return gf2_rank(self.to_dense())


def parity_check_matrix(u: BinaryPolynomial, n: int) -> CirculantMatrix:
    """n x n circulant whose columns are the cyclic shifts of u (row i = x^i u(x^-1))."""
    _check_nonzero_reduced(u, n)
    return CirculantMatrix(n, u.reciprocal(n).exponents())


def generator_matrix(code: CyclicCode) -> np.ndarray:
    """k x n matrix with rows x^i g(x), i = 0..k-1."""
    G = np.zeros((code.k, code.n), dtype=np.uint8)
    g = np.asarray(code.g.exponents(), dtype=np.int64)
    for i in range(code.k):
        G[i, g + i] = 1
    return G


# ---------- orthogonality ----------
def _support(u: BinaryPolynomial, n: int) -> np.ndarray:
    _check_nonzero_reduced(u, n)
    return np.asarray(u.exponents(), dtype=np.int64)


def _differences(u: BinaryPolynomial, n: int) -> np.ndarray:
    s = _support(u, n)
    d = (s[:, None] - s[None, :]) % n
    return d[~np.eye(s.size, dtype=bool)]


def is_orthogonal(u: BinaryPolynomial, n: int) -> bool:
    """No two ordered support pairs share a cyclic difference: the circulant has no 4-cycles."""
    d = _differences(u, n)
    return np.unique(d).size == d.size


def satisfies_weight_condition(u: BinaryPolynomial, n: int) -> bool:
    """w(w-1) <= n, necessary for orthogonality."""
    w = u.weight
    return w * (w - 1) <= n


@dataclass(frozen=True)
class DifferenceProfile:
    n: int
    multiplicity: Dict[int, int] = field(default_factory=dict)  # difference -> ordered-pair count

    @property
    def repeated(self) -> Dict[int, int]:
        return {d: c for d, c in self.multiplicity.items() if c > 1}

    @property
    def four_cycles(self) -> int:
        """4-cycles in the Tanner graph of the full n-row circulant."""
        half = sum(comb(c, 2) for d, c in self.multiplicity.items() if d <= (self.n - 1) // 2)
        return self.n * half

    @property
    def orthogonal(self) -> bool:
        return not self.repeated


def difference_profile(u: BinaryPolynomial, n: int) -> DifferenceProfile:
    d = _differences(u, n)
    values, counts = np.unique(d, return_counts=True)
    return DifferenceProfile(n=n, multiplicity={int(v): int(c) for v, c in zip(values, counts)})


# ---------- GF(2) linear algebra ----------
def _rref(M: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    A = (np.asarray(M) & 1).astype(bool)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.flatnonzero(A[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        mask = A[:, c].copy()
        mask[r] = False
        A[mask] ^= A[r]
        pivots.append(c)
        r += 1
    return A[:r], tuple(pivots)


def gf2_rank(M: np.ndarray) -> int:
    return len(_rref(M)[1])


def gf2_nullspace(M: np.ndarray) -> np.ndarray:
    """Basis of {c : M c^T = 0} as rows of a uint8 matrix."""
    R, pivots = _rref(M)
    n = np.asarray(M).shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, p in enumerate(pivots):
            if R[i, f]:
                basis[row, p] = 1
    return basis


# ---------- minimum distance ----------
def _pack_rows(G: np.ndarray) -> np.ndarray:
    packed = np.packbits(G.astype(np.uint8), axis=1, bitorder="little")
    pad = (-packed.shape[1]) % 8
    if pad:
        packed = np.pad(packed, ((0, 0), (0, pad)))
    return np.ascontiguousarray(packed).view(np.uint64)


def min_distance_of_matrix(G: np.ndarray, budget: Optional[int] = None,
                           lower_bound: Optional[int] = None) -> int:
    """Minimum weight over the nonzero span of the rows of a full-rank G."""
    k = G.shape[0]
    budget = settings.dmin_budget() if budget is None else int(budget)
    if k == 0:
        raise ZeroDimension("generator matrix has no rows")
    if (1 << k) > budget:
        raise BudgetExceeded(f"2^{k} messages exceed the enumeration budget {budget}")

    rows = _pack_rows(G)
    low = min(k, _TABLE_BITS)
    table = np.zeros((1 << low, rows.shape[1]), dtype=np.uint64)
    for i in range(low):
        table[1 << i: 1 << (i + 1)] = table[: 1 << i] ^ rows[i]
    high_rows = rows[low:]

    best = None
    current = np.zeros(rows.shape[1], dtype=np.uint64)
    for step in range(1 << (k - low)):
        if step:
            bit = (step & -step).bit_length() - 1
            current ^= high_rows[bit]
        weights = np.bitwise_count(table ^ current).sum(axis=1, dtype=np.int64)
        if step == 0:
            weights = weights[1:]
        w = int(weights.min()) if weights.size else None
        if w is not None and (best is None or w < best):
            best = w
            if lower_bound is not None and best <= lower_bound:
                break
    return int(best)


def min_distance_exact(code: CyclicCode, budget: Optional[int] = None,
                       lower_bound: Optional[int] = None) -> int:
    """
    Exact d_min by enumerating all 2^k - 1 nonzero codewords.
    lower_bound (a proven bound such as the BCH bound) allows stopping as soon as it is met.
    """
    d = min_distance_of_matrix(generator_matrix(code), budget=budget, lower_bound=lower_bound)
    log.debug("d_min(%d,%d) = %d", code.n, code.k, d)
    return d
