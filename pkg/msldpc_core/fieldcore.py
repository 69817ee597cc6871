# msldpc_core/fieldcore.py
"""
GF(2^m), the splitting field of z^n + 1 over GF(2).

Elements are integers whose bits are the coordinates over the polynomial
basis of the modulus (bit i = coefficient of z^i). Multiplication goes
through log/antilog tables held as numpy arrays; tables are capped at
2^m entries with m <= settings.max_field_degree().

Choices that make every downstream coefficient pattern reproducible:
 - modulus: the irreducible polynomial of degree m with the smallest integer encoding
 - gamma: the smallest primitive element for that modulus
 - alpha = gamma^((2^m - 1) / n), a primitive n-th root of unity
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple
import logging

import numpy as np
from sympy import factorint
from sympy.ntheory import n_order
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from msldpc_core import settings
from msldpc_core.errors import DivisionByZero, EvenLength, FieldTooLarge, LengthTooSmall
from msldpc_core.polyring import BinaryPolynomial

log = logging.getLogger(__name__)

# Field elements are plain ints (coordinate bit vectors).
FieldElement = int


def _is_irreducible(bits: int) -> bool:
    coeffs = [int(c) for c in bin(bits)[2:]]  # highest degree first
    return bool(gf_irreducible_p(coeffs, 2, ZZ))


def lowest_irreducible(m: int) -> int:
    """Smallest integer encoding of an irreducible binary polynomial of degree m."""
    for cand in range((1 << m) | 1, 1 << (m + 1), 2):
        if _is_irreducible(cand):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {m}")  # unreachable for m >= 1


def _build_tables(modulus: int, m: int, gamma: int) -> Tuple[np.ndarray, np.ndarray]:
    order = (1 << m) - 1
    exp = np.zeros(2 * order, dtype=np.int64)
    logt = np.full(1 << m, -1, dtype=np.int64)
    x = 1
    for i in range(order):
        exp[i] = x
        logt[x] = i
        x = _mulmod(x, gamma, modulus, m)
    exp[order:] = exp[:order]
    return exp, logt


def _mulmod(a: int, b: int, modulus: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= modulus
    return r


def _smallest_primitive(modulus: int, m: int) -> int:
    order = (1 << m) - 1
    if order == 1:
        return 1
    cofactors = [order // p for p in factorint(order)]
    for g in range(2, 1 << m):
        if all(_powmod(g, c, modulus, m) != 1 for c in cofactors):
            return g
    raise ValueError("no primitive element found")  # unreachable for a field


def _powmod(a: int, e: int, modulus: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _mulmod(r, a, modulus, m)
        a = _mulmod(a, a, modulus, m)
        e >>= 1
    return r


@dataclass(frozen=True, eq=False)
class FieldContext:
    """
    Immutable GF(2^m) context for code length n.
    Safe to share between threads: all methods are pure.
    """
    n: int
    m: int
    modulus: int
    gamma: int
    alpha: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    alpha_powers: np.ndarray = field(repr=False)  # alpha^i for i = 0..n-1

    @property
    def order(self) -> int:
        """Size of the multiplicative group, 2^m - 1."""
        return (1 << self.m) - 1

    @property
    def modulus_poly(self) -> BinaryPolynomial:
        return BinaryPolynomial.from_int(self.modulus)

    # ---------- element arithmetic ----------
    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a ^ b

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if a == 0:
            if e < 0:
                raise DivisionByZero("0 has no negative powers")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.order])

    def inv(self, a: FieldElement) -> FieldElement:
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(2^m)")
        return int(self.exp_table[(-int(self.log_table[a])) % self.order])

    def alpha_pow(self, i: int) -> FieldElement:
        return int(self.alpha_powers[i % self.n])

    # ---------- evaluation ----------
    def eval_poly(self, p: BinaryPolynomial, e: FieldElement) -> FieldElement:
        """Sum over the support of p of e^k."""
        if not p.support:
            return 0
        if e == 0:
            return 1 if 0 in p.support else 0
        lg = int(self.log_table[e])
        idx = (np.fromiter(p.support, dtype=np.int64, count=p.weight) * lg) % self.order
        return int(np.bitwise_xor.reduce(self.exp_table[idx]))

    def evaluate_at_roots(self, p: BinaryPolynomial) -> np.ndarray:
        """(p(alpha^0), ..., p(alpha^(n-1))) as an int64 array."""
        if not p.support:
            return np.zeros(self.n, dtype=np.int64)
        exps = np.fromiter(p.support, dtype=np.int64, count=p.weight)
        j = np.arange(self.n, dtype=np.int64)
        idx = np.outer(j, exps % self.n) % self.n
        return np.bitwise_xor.reduce(self.alpha_powers[idx], axis=1)


def build_field(n: int) -> FieldContext:
    """Splitting field of z^n + 1 with a fixed primitive n-th root of unity alpha."""
    return _build_field_cached(int(n), settings.max_field_degree())


@lru_cache(maxsize=32)
def _build_field_cached(n: int, max_degree: int) -> FieldContext:
    if n % 2 == 0:
        raise EvenLength(f"code length must be odd, got n={n}")
    if n < 3:
        raise LengthTooSmall(f"code length must be at least 3, got n={n}")
    m = int(n_order(2, n))
    if m > max_degree:
        raise FieldTooLarge(f"n={n} needs GF(2^{m}); the configured cap is m <= {max_degree}")

    modulus = lowest_irreducible(m)
    gamma = _smallest_primitive(modulus, m)
    exp, logt = _build_tables(modulus, m, gamma)
    order = (1 << m) - 1
    step = order // n
    alpha = int(exp[step])
    alpha_powers = exp[(np.arange(n, dtype=np.int64) * step) % order].copy()
    for arr in (exp, logt, alpha_powers):
        arr.setflags(write=False)

    log.info("built GF(2^%d) for n=%d: modulus=%s gamma=%d alpha=%d",
             m, n, BinaryPolynomial.from_int(modulus).to_text("z"), gamma, alpha)
    return FieldContext(n=n, m=m, modulus=modulus, gamma=gamma, alpha=alpha,
                        exp_table=exp, log_table=logt, alpha_powers=alpha_powers)


def eval_poly(p: BinaryPolynomial, e: FieldElement, ctx: FieldContext) -> FieldElement:
    return ctx.eval_poly(p, e)


def field_add(a: FieldElement, b: FieldElement, ctx: FieldContext) -> FieldElement:
    return ctx.add(a, b)


def field_mul(a: FieldElement, b: FieldElement, ctx: FieldContext) -> FieldElement:
    return ctx.mul(a, b)


def field_pow(a: FieldElement, e: int, ctx: FieldContext) -> FieldElement:
    return ctx.pow(a, e)


def field_inv(a: FieldElement, ctx: FieldContext) -> FieldElement:
    return ctx.inv(a)
