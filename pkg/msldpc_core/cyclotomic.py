# msldpc_core/cyclotomic.py
"""
Cyclotomic cosets modulo n and the factorization of z^n + 1 into binary
irreducibles, one minimal polynomial per coset.

Factors are ordered by ascending degree with ties broken by coset leader, so
the 1-based position of a factor (the subset index used by the code search)
is reproducible everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from msldpc_core.errors import (
    EvenLength,
    FactorizationError,
    LengthMismatch,
    LengthTooSmall,
    NonBinaryCoefficient,
)
from msldpc_core.fieldcore import FieldContext
from msldpc_core.polyring import BinaryPolynomial, poly_mul

log = logging.getLogger(__name__)


def check_length(n: int) -> None:
    if n % 2 == 0:
        raise EvenLength(f"code length must be odd, got n={n}")
    if n < 3:
        raise LengthTooSmall(f"code length must be at least 3, got n={n}")


@dataclass(frozen=True)
class CyclotomicCoset:
    leader: int
    members: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, j: int) -> bool:
        return j in self.members

    def to_dict(self) -> Dict[str, Any]:
        return {"leader": self.leader, "size": self.size, "members": list(self.members)}


def cosets(n: int) -> List[CyclotomicCoset]:
    """Partition of {0..n-1} into orbits under doubling mod n, sorted by (size, leader)."""
    check_length(n)
    seen = [False] * n
    out: List[CyclotomicCoset] = []
    for s in range(n):
        if seen[s]:
            continue
        orbit = []
        j = s
        while not seen[j]:
            seen[j] = True
            orbit.append(j)
            j = (2 * j) % n
        out.append(CyclotomicCoset(leader=s, members=tuple(sorted(orbit))))
    out.sort(key=lambda c: (c.size, c.leader))
    return out


def minimal_polynomial(c: CyclotomicCoset, ctx: FieldContext) -> BinaryPolynomial:
    """Product of (z - alpha^j) over the coset, checked to land in GF(2)[z]."""
    coeffs = [1]  # field elements, lowest degree first
    for j in c.members:
        root = ctx.alpha_pow(j)
        nxt = [0] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i + 1] ^= a
            nxt[i] ^= ctx.mul(root, a)
        coeffs = nxt
    bad = [i for i, a in enumerate(coeffs) if a not in (0, 1)]
    if bad:
        raise NonBinaryCoefficient(
            f"minimal polynomial of coset {c.leader} mod {ctx.n} has non-binary coefficients at {bad}"
        )
    return BinaryPolynomial.from_exponents(i for i, a in enumerate(coeffs) if a == 1)


@dataclass(frozen=True)
class FactorEntry:
    index: int  # 1-based position in the sorted factor set
    coset: CyclotomicCoset
    f: BinaryPolynomial
    theta: Optional[BinaryPolynomial] = None

    @property
    def degree(self) -> int:
        return self.f.degree

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "index": self.index,
            "leader": self.coset.leader,
            "degree": self.degree,
            "members": list(self.coset.members),
            "f": self.f.to_text("z"),
        }
        if self.theta is not None:
            d["theta"] = self.theta.to_text("z")
        return d


@dataclass(frozen=True)
class FactorSet:
    """
    Irreducible factors f_1..f_t of z^n + 1, degree-sorted, each paired with its
    coset and (once msdomain has filled it in) its primitive idempotent.
    Immutable: with_idempotents returns a new set.
    """
    n: int
    entries: Tuple[FactorEntry, ...] = field(default_factory=tuple)

    @property
    def t(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, index: int) -> FactorEntry:
        """Entry by 1-based index."""
        if not 1 <= index <= self.t:
            raise IndexError(f"factor index {index} outside 1..{self.t}")
        return self.entries[index - 1]

    def degrees(self) -> List[int]:
        return [e.degree for e in self.entries]

    def has_idempotents(self) -> bool:
        return all(e.theta is not None for e in self.entries)

    def find(self, f: BinaryPolynomial) -> Optional[FactorEntry]:
        for e in self.entries:
            if e.f == f:
                return e
        return None

    def with_idempotents(self, thetas: Sequence[BinaryPolynomial]) -> "FactorSet":
        if len(thetas) != self.t:
            raise LengthMismatch(f"expected {self.t} idempotents, got {len(thetas)}")
        return FactorSet(self.n, tuple(replace(e, theta=th) for e, th in zip(self.entries, thetas)))

    def dump_lines(self) -> List[str]:
        return [f"{e.index}, {e.coset.leader}, {e.degree}, {e.f.to_text('z')}" for e in self.entries]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "t": self.t, "factors": [e.to_dict() for e in self.entries]}


def _product(polys: Iterable[BinaryPolynomial]) -> BinaryPolynomial:
    acc = BinaryPolynomial.one()
    for p in polys:
        acc = poly_mul(acc, p)
    return acc


def factorize(n: int, ctx: FieldContext) -> FactorSet:
    """z^n + 1 = f_1 ... f_t, product identity verified before returning."""
    check_length(n)
    if ctx.n != n:
        raise LengthMismatch(f"field context built for n={ctx.n}, asked to factor n={n}")

    entries = []
    for idx, c in enumerate(cosets(n), start=1):
        f = minimal_polynomial(c, ctx)
        if f.degree != c.size:
            raise FactorizationError(f"factor for coset {c.leader} has degree {f.degree}, coset size {c.size}")
        entries.append(FactorEntry(index=idx, coset=c, f=f))

    if _product(e.f for e in entries) != BinaryPolynomial.x_n_plus_1(n):
        raise FactorizationError(f"product of minimal polynomials is not z^{n}+1")

    log.info("factored z^%d+1 into t=%d irreducibles, degrees %s", n, len(entries), [e.degree for e in entries])
    return FactorSet(n=n, entries=tuple(entries))
