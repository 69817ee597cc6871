# File: tests/test_polyring.py
import pytest

from msldpc_core.errors import (
    BothZero,
    DivisionByZero,
    LengthMismatch,
    NonzeroRemainder,
    PolynomialParseError,
)
from msldpc_core.polyring import (
    BinaryPolynomial,
    is_idempotent,
    max_cyclic_run,
    poly_divide_exact,
    poly_divmod,
    poly_gcd,
    poly_inverse_mod,
    poly_mod,
    poly_mul,
    poly_mul_mod,
)

P = BinaryPolynomial.from_text


def test_parse_accepts_common_spellings():
    assert P("1+x^2+x^8").exponents() == (0, 2, 8)
    assert P("x^{12} + x").exponents() == (1, 12)
    assert P("$1+z**3$").exponents() == (0, 3)
    assert P("0").is_zero()


def test_parse_cancels_repeated_terms():
    assert P("x+x").is_zero()
    assert P("1+x+x^2+x").exponents() == (0, 2)


@pytest.mark.parametrize("bad", ["", "1+y", "x^", "2x", "x^-1"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(PolynomialParseError):
        P(bad)


def test_text_form_is_canonical():
    assert P("x^4+1+x^2+x").to_text() == "1+x+x^2+x^4"
    assert P("z^3+z+1").to_text("z") == "1+z+z^3"
    assert BinaryPolynomial().to_text() == "0"


def test_views():
    p = P("1+x^3+x^5")
    assert p.weight == 3
    assert p.degree == 5
    assert p.to_int() == 0b101001
    assert BinaryPolynomial.from_int(0b101001) == p
    assert BinaryPolynomial().degree == -1


def test_shift_and_reciprocal():
    p = P("1+x+x^3")
    assert p.shift(5, 7) == P("x+x^5+x^6")
    assert p.reciprocal(7) == P("1+x^4+x^6")


def test_product_and_modular_product():
    assert poly_mul(P("1+x"), P("1+x")) == P("1+x^2")
    assert poly_mul(P("1+x"), P("1+x+x^2")) == P("1+x^3")
    assert poly_mul_mod(P("x^6"), P("x^2"), 7) == P("x")


def test_modular_product_requires_reduced_operands():
    with pytest.raises(LengthMismatch):
        poly_mul_mod(P("x^7"), P("1"), 7)


def test_divmod():
    q, r = poly_divmod(P("1+x^3"), P("1+x"))
    assert q == P("1+x+x^2")
    assert r.is_zero()
    q, r = poly_divmod(P("x^4"), P("1+x+x^3"))
    assert poly_mul(q, P("1+x+x^3")) + r == P("x^4")
    assert r.degree < 3
    with pytest.raises(DivisionByZero):
        poly_divmod(P("x"), BinaryPolynomial())


def test_exact_division():
    assert poly_divide_exact(P("1+x^7"), P("1+x+x^3")) == P("1+x+x^2+x^4")
    with pytest.raises(NonzeroRemainder):
        poly_divide_exact(P("1+x^7"), P("1+x^2"))


def test_gcd_finds_common_roots():
    # u = 1+x+x^2+x^4 vanishes at the roots of (1+x)(1+x^2+x^3)
    assert poly_gcd(P("1+x^7"), P("1+x+x^2+x^4")) == P("1+x+x^2+x^4")
    assert poly_gcd(P("1+x^7"), P("x^3+x^5+x^6")) == P("1+x^2+x^3")
    assert poly_gcd(P("1+x^3"), P("1+x")) == P("1+x")
    assert poly_gcd(BinaryPolynomial(), P("1+x")) == P("1+x")
    with pytest.raises(BothZero):
        poly_gcd(BinaryPolynomial(), BinaryPolynomial())


def test_inverse_mod():
    assert poly_inverse_mod(P("x"), P("1+x+x^3")) == P("1+x^2")
    inv = poly_inverse_mod(P("1+x+x^2"), P("1+x+x^3"))
    assert poly_mod(poly_mul(inv, P("1+x+x^2")), P("1+x+x^3")) == P("1")
    with pytest.raises(DivisionByZero):
        poly_inverse_mod(P("1+x"), P("1+x^2"))


def test_idempotent_means_closed_under_doubling():
    assert is_idempotent(P("1+x+x^2+x^4"), 7)
    assert is_idempotent(P("x^3+x^5+x^6"), 7)
    assert is_idempotent(BinaryPolynomial.all_ones(15), 15)
    assert not is_idempotent(P("1+x"), 7)
    for p in (P("1+x+x^2+x^4"), P("x^3+x^5+x^6")):
        assert poly_mul_mod(p, p, 7) == p


def test_max_cyclic_run_wraps_around():
    assert max_cyclic_run(P("1+x^3+x^5+x^6"), 7) == 3
    assert max_cyclic_run(P("x^3+x^5+x^6"), 7) == 2
    assert max_cyclic_run(BinaryPolynomial.all_ones(7), 7) == 7
    assert max_cyclic_run(BinaryPolynomial(), 7) == 0
    with pytest.raises(LengthMismatch):
        max_cyclic_run(P("x^9"), 7)
