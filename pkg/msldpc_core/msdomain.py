# msldpc_core/msdomain.py
"""
Mattson-Solomon domain for binary idempotents.

The transform places u(alpha^j) at z^(n-j); its inverse reads u_i = theta(alpha^i)
(1/n = 1 since n is odd). Both are exposed only on idempotents, where every
evaluation is 0 or 1 and the image is again a binary idempotent.

What the search reads off theta = sum of theta_i over a subset I, without leaving
the z-domain:
 - wt(u) = sum of deg f_i over I
 - number of roots of u among the n-th roots of unity = n - wt(theta) = k
 - longest cyclic run of nonzero coefficients of theta = BCH run
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Tuple
import logging

import numpy as np

from msldpc_core import settings
from msldpc_core.cyclotomic import FactorSet, factorize
from msldpc_core.errors import (
    EmptySubset,
    FactorizationError,
    LengthMismatch,
    NotAFactor,
    NotIdempotent,
    SpectralLawViolation,
    ZeroPolynomial,
)
from msldpc_core.fieldcore import FieldContext, build_field
from msldpc_core.polyring import (
    BinaryPolynomial,
    cyclic_run_bits,
    is_idempotent,
    poly_divide_exact,
    poly_inverse_mod,
    poly_mul,
)

log = logging.getLogger(__name__)


def _binary_values(vals: np.ndarray, what: str) -> np.ndarray:
    if np.any((vals != 0) & (vals != 1)):
        raise SpectralLawViolation(f"{what}: evaluations outside GF(2) on an idempotent input")
    return vals


def _require_idempotent(p: BinaryPolynomial, n: int, name: str) -> None:
    if p.degree >= n:
        raise LengthMismatch(f"{name} has degree {p.degree} >= n={n}")
    if not is_idempotent(p, n):
        raise NotIdempotent(f"{name} {p.to_text()} is not an idempotent mod x^{n}+1")


def primitive_idempotent(f: BinaryPolynomial, fs: FactorSet, ctx: FieldContext) -> BinaryPolynomial:
    """theta with theta = 1 mod f and theta = 0 mod (z^n+1)/f, by CRT."""
    entry = fs.find(f)
    if entry is None:
        raise NotAFactor(f"{f.to_text('z')} is not a factor in the factor set for n={fs.n}")
    n = fs.n
    k = poly_divide_exact(BinaryPolynomial.x_n_plus_1(n), f)
    k_inv = poly_inverse_mod(k, f)
    theta = poly_mul(k, k_inv).reduce(n)

    if not is_idempotent(theta, n):
        raise SpectralLawViolation(f"CRT result for {f.to_text('z')} is not idempotent")
    vals = _binary_values(ctx.evaluate_at_roots(theta), "primitive idempotent")
    if set(np.flatnonzero(vals).tolist()) != set(entry.coset.members):
        raise SpectralLawViolation(f"theta for {f.to_text('z')} is not 1 exactly on its coset")
    return theta


def ms_transform(u: BinaryPolynomial, ctx: FieldContext) -> BinaryPolynomial:
    """Spectrum of an idempotent u: coefficient of z^(n-j) is u(alpha^j)."""
    n = ctx.n
    _require_idempotent(u, n, "u")
    vals = _binary_values(ctx.evaluate_at_roots(u), "ms_transform")
    return BinaryPolynomial(frozenset((n - int(j)) % n for j in np.flatnonzero(vals)))


def ms_inverse(theta: BinaryPolynomial, ctx: FieldContext) -> BinaryPolynomial:
    """x-domain idempotent with u_i = theta(alpha^i)."""
    _require_idempotent(theta, ctx.n, "theta")
    vals = _binary_values(ctx.evaluate_at_roots(theta), "ms_inverse")
    return BinaryPolynomial(frozenset(int(i) for i in np.flatnonzero(vals)))


@dataclass(frozen=True)
class SpectralPair:
    u: BinaryPolynomial
    theta: BinaryPolynomial
    n: int

    @staticmethod
    def from_u(u: BinaryPolynomial, ctx: FieldContext) -> "SpectralPair":
        return SpectralPair(u=u, theta=ms_transform(u, ctx), n=ctx.n)

    @staticmethod
    def from_theta(theta: BinaryPolynomial, ctx: FieldContext) -> "SpectralPair":
        return SpectralPair(u=ms_inverse(theta, ctx), theta=theta, n=ctx.n)

    @property
    def k(self) -> int:
        return self.n - self.theta.weight


def _indices(I: Iterable[int], fs: FactorSet) -> Tuple[int, ...]:
    idx = tuple(sorted(set(int(i) for i in I)))
    if not idx:
        raise EmptySubset("subset of factor indices is empty")
    for i in idx:
        if not 1 <= i <= fs.t:
            raise IndexError(f"factor index {i} outside 1..{fs.t}")
    return idx


def subset_theta(I: Iterable[int], fs: FactorSet) -> BinaryPolynomial:
    """Sum of theta_i over the 1-based subset I."""
    if not fs.has_idempotents():
        raise FactorizationError("factor set carries no primitive idempotents; use prepare_factor_set")
    bits = 0
    for i in _indices(I, fs):
        bits ^= fs.entry(i).theta.bits
    return BinaryPolynomial.from_int(bits)


def subset_idempotent(I: Iterable[int], fs: FactorSet) -> BinaryPolynomial:
    """The x-domain idempotent of I directly: union of the cosets of the chosen factors."""
    members: set[int] = set()
    for i in _indices(I, fs):
        members.update(fs.entry(i).coset.members)
    return BinaryPolynomial(frozenset(members))


def spectral_weight_law(I: Iterable[int], fs: FactorSet, ctx: FieldContext) -> Tuple[int, int]:
    """
    (wt(u), number of n-th roots of unity that are roots of u) predicted from the
    z-domain, cross-checked against u = ms_inverse(theta).
    """
    idx = _indices(I, fs)
    theta = subset_theta(idx, fs)
    wt_u = sum(fs.entry(i).degree for i in idx)
    roots = fs.n - theta.weight

    u = ms_inverse(theta, ctx)
    measured_roots = int(np.count_nonzero(ctx.evaluate_at_roots(u) == 0))
    if u.weight != wt_u or measured_roots != roots:
        raise SpectralLawViolation(
            f"subset {idx}: predicted (wt={wt_u}, roots={roots}), measured (wt={u.weight}, roots={measured_roots})"
        )
    return wt_u, roots


@dataclass(frozen=True)
class SpectralProfile:
    """Root structure of an arbitrary binary polynomial over the n-th roots of unity."""
    n: int
    nonroots: Tuple[int, ...]  # j with u(alpha^j) != 0
    bch_run: int

    @property
    def num_roots(self) -> int:
        return self.n - len(self.nonroots)

    @property
    def k(self) -> int:
        return self.num_roots

    @property
    def bch_bound(self) -> int:
        return self.bch_run + 1


def spectral_profile(u: BinaryPolynomial, ctx: FieldContext) -> SpectralProfile:
    """Nonroots and BCH run of any nonzero reduced u, idempotent or not."""
    if u.is_zero():
        raise ZeroPolynomial("spectral profile of the zero polynomial")
    if u.degree >= ctx.n:
        raise LengthMismatch(f"u has degree {u.degree} >= n={ctx.n}")
    vals = ctx.evaluate_at_roots(u)
    nonroots = tuple(int(j) for j in np.flatnonzero(vals))
    mask = 0
    for j in nonroots:
        mask |= 1 << j
    return SpectralProfile(n=ctx.n, nonroots=nonroots, bch_run=cyclic_run_bits(mask, ctx.n))


@lru_cache(maxsize=16)
def _prepare_cached(n: int, max_degree: int) -> Tuple[FieldContext, FactorSet]:
    ctx = build_field(n)
    fs = factorize(n, ctx)
    thetas: List[BinaryPolynomial] = [primitive_idempotent(e.f, fs, ctx) for e in fs]
    return ctx, fs.with_idempotents(thetas)


def prepare_factor_set(n: int) -> Tuple[FieldContext, FactorSet]:
    """Field context plus the factor set with every theta_i filled in."""
    return _prepare_cached(int(n), settings.max_field_degree())
