# msldpc_core/polyring.py
"""
Binary polynomial arithmetic.

BinaryPolynomial is a sparse value type (the set of exponents carrying a 1).
Exact arithmetic in GF(2)[x] and the modular ring GF(2)[x]/(x^n + 1) run on a
dense integer encoding (bit i = coefficient of x^i), which makes carry-less
products, Euclid and long division a handful of shifts and XORs.

x^n - 1 is written x^n + 1 throughout: the characteristic is 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Tuple
import re

from msldpc_core.errors import (
    BothZero,
    DivisionByZero,
    LengthMismatch,
    NonzeroRemainder,
    PolynomialParseError,
)

_TERM_RE = re.compile(r"^(?:(?P<one>1)|(?P<var>[xz])(?:\s*(?:\^|\*\*)\s*\{?\s*(?P<exp>\d+)\s*\}?)?)$")


# ---------- dense (integer) kernels ----------
def _clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-encoded polynomials."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def _divmod(a: int, b: int) -> Tuple[int, int]:
    if b == 0:
        raise DivisionByZero("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while a and a.bit_length() - 1 >= db:
        s = a.bit_length() - 1 - db
        q |= 1 << s
        a ^= b << s
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _divmod(a, b)[1]
    return a


def _fold(r: int, n: int) -> int:
    """Reduce modulo x^n + 1 (x^n == 1)."""
    mask = (1 << n) - 1
    while r >> n:
        r = (r & mask) ^ (r >> n)
    return r


def _longest_run(bits: int) -> int:
    run = 0
    while bits:
        bits &= bits << 1
        run += 1
    return run


def cyclic_run_bits(bits: int, n: int) -> int:
    """Longest cyclic run of set bits among positions 0..n-1."""
    full = (1 << n) - 1
    bits &= full
    if bits == full:
        return n
    return _longest_run(bits | (bits << n))


@dataclass(frozen=True)
class BinaryPolynomial:
    """
    Polynomial over GF(2) stored by its support.
    Used for both variables: x-domain idempotents u(x), generators g(x), and
    z-domain spectra theta(z), factors f(z).
    """
    support: FrozenSet[int] = frozenset()

    def __post_init__(self):
        s = frozenset(int(e) for e in self.support)
        if any(e < 0 for e in s):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "support", s)

    # ---------- constructors ----------
    @staticmethod
    def from_exponents(exponents: Iterable[int]) -> "BinaryPolynomial":
        """Build from a list of exponents; repeated exponents cancel in pairs."""
        s: set[int] = set()
        for e in exponents:
            s ^= {int(e)}
        return BinaryPolynomial(frozenset(s))

    @staticmethod
    def from_int(bits: int) -> "BinaryPolynomial":
        if bits < 0:
            raise ValueError("bit encoding must be non-negative")
        out = []
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return BinaryPolynomial(frozenset(out))

    @staticmethod
    def from_text(text: str) -> "BinaryPolynomial":
        """
        Parse the canonical text form, e.g. "1+x^2+x^8" (also accepts z, x^{12}, x**3).
        Repeated terms cancel modulo 2. "0" is the zero polynomial.
        """
        if text is None or not str(text).strip():
            raise PolynomialParseError("empty polynomial text")
        compact = re.sub(r"\s+", "", str(text)).lstrip("$").rstrip("$")
        if compact == "0":
            return BinaryPolynomial()
        exps = []
        for term in compact.split("+"):
            m = _TERM_RE.match(term)
            if not m:
                raise PolynomialParseError(f"cannot parse term {term!r} in {text!r}")
            if m.group("one"):
                exps.append(0)
            else:
                exps.append(int(m.group("exp")) if m.group("exp") is not None else 1)
        return BinaryPolynomial.from_exponents(exps)

    @staticmethod
    def one() -> "BinaryPolynomial":
        return BinaryPolynomial(frozenset({0}))

    @staticmethod
    def x_n_plus_1(n: int) -> "BinaryPolynomial":
        return BinaryPolynomial(frozenset({0, n}))

    @staticmethod
    def all_ones(n: int) -> "BinaryPolynomial":
        return BinaryPolynomial(frozenset(range(n)))

    # ---------- views ----------
    @cached_property
    def bits(self) -> int:
        r = 0
        for e in self.support:
            r |= 1 << e
        return r

    def to_int(self) -> int:
        return self.bits

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return max(self.support) if self.support else -1

    def is_zero(self) -> bool:
        return not self.support

    def exponents(self) -> Tuple[int, ...]:
        return tuple(sorted(self.support))

    def to_text(self, var: str = "x") -> str:
        if not self.support:
            return "0"
        parts = []
        for e in self.exponents():
            if e == 0:
                parts.append("1")
            elif e == 1:
                parts.append(var)
            else:
                parts.append(f"{var}^{e}")
        return "+".join(parts)

    def __str__(self) -> str:
        return self.to_text("x")

    def __repr__(self) -> str:
        return f"BinaryPolynomial({self.to_text('x')!r})"

    # ---------- cheap algebra ----------
    def __add__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(self.support ^ other.support)

    __xor__ = __add__

    def shift(self, s: int, n: int) -> "BinaryPolynomial":
        """x^s * p mod (x^n + 1)."""
        return BinaryPolynomial(frozenset((e + s) % n for e in self.support))

    def reciprocal(self, n: int) -> "BinaryPolynomial":
        """p(x^-1) mod (x^n + 1)."""
        return BinaryPolynomial(frozenset((-e) % n for e in self.support))

    def reduce(self, n: int) -> "BinaryPolynomial":
        return BinaryPolynomial.from_int(_fold(self.bits, n))


def _check_reduced(p: BinaryPolynomial, n: int, name: str) -> None:
    if p.degree >= n:
        raise LengthMismatch(f"{name} has degree {p.degree} >= n={n}; reduce it modulo x^{n}+1 first")


# ---------- public operations ----------
def poly_mul(a: BinaryPolynomial, b: BinaryPolynomial) -> BinaryPolynomial:
    """Exact product in GF(2)[x]."""
    return BinaryPolynomial.from_int(_clmul(a.bits, b.bits))


def poly_mul_mod(a: BinaryPolynomial, b: BinaryPolynomial, n: int) -> BinaryPolynomial:
    """Product modulo x^n + 1; both operands must already be reduced."""
    _check_reduced(a, n, "left operand")
    _check_reduced(b, n, "right operand")
    return BinaryPolynomial.from_int(_fold(_clmul(a.bits, b.bits), n))


def poly_divmod(num: BinaryPolynomial, den: BinaryPolynomial) -> Tuple[BinaryPolynomial, BinaryPolynomial]:
    q, r = _divmod(num.bits, den.bits)
    return BinaryPolynomial.from_int(q), BinaryPolynomial.from_int(r)


def poly_mod(a: BinaryPolynomial, m: BinaryPolynomial) -> BinaryPolynomial:
    return BinaryPolynomial.from_int(_divmod(a.bits, m.bits)[1])


def poly_gcd(a: BinaryPolynomial, b: BinaryPolynomial) -> BinaryPolynomial:
    """Monic gcd by Euclid in GF(2)[x] (every nonzero binary polynomial is monic)."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return BinaryPolynomial.from_int(_gcd(a.bits, b.bits))


def poly_divide_exact(num: BinaryPolynomial, den: BinaryPolynomial) -> BinaryPolynomial:
    q, r = _divmod(num.bits, den.bits)
    if r:
        raise NonzeroRemainder(f"{den} does not divide {num}")
    return BinaryPolynomial.from_int(q)


def poly_inverse_mod(a: BinaryPolynomial, m: BinaryPolynomial) -> BinaryPolynomial:
    """a^-1 mod m by the extended Euclidean algorithm."""
    r0, r1 = m.bits, _divmod(a.bits, m.bits)[1]
    s0, s1 = 0, 1
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ _clmul(q, s1)
    if r0 != 1:
        raise DivisionByZero(f"{a} is not invertible modulo {m}")
    return BinaryPolynomial.from_int(_divmod(s0, m.bits)[1])


def is_idempotent(p: BinaryPolynomial, n: int) -> bool:
    """p o p == p mod x^n+1, i.e. the support is closed under doubling mod n."""
    _check_reduced(p, n, "polynomial")
    return frozenset((2 * e) % n for e in p.support) == p.support


def max_cyclic_run(p: BinaryPolynomial, n: int) -> int:
    """Longest run of consecutive exponents (indices mod n) present in the support."""
    _check_reduced(p, n, "polynomial")
    return cyclic_run_bits(p.bits, n)
