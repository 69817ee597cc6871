# File: tests/test_cyclotomic.py
import itertools

import pytest

from msldpc_core.cyclotomic import cosets, factorize, minimal_polynomial
from msldpc_core.errors import EvenLength, LengthMismatch, LengthTooSmall
from msldpc_core.fieldcore import build_field
from msldpc_core.polyring import BinaryPolynomial, poly_gcd, poly_mul


def test_cosets_mod_7():
    assert [c.members for c in cosets(7)] == [(0,), (1, 2, 4), (3, 5, 6)]


def test_cosets_mod_3():
    cs = cosets(3)
    assert [(c.leader, c.size) for c in cs] == [(0, 1), (1, 2)]


def test_cosets_sorted_by_size_then_leader():
    assert [(c.leader, c.size) for c in cosets(21)] == [(0, 1), (7, 2), (3, 3), (9, 3), (1, 6), (5, 6)]
    assert [c.size for c in cosets(15)] == [1, 2, 4, 4, 4]


@pytest.mark.parametrize("n", [7, 15, 21, 45, 63, 93])
def test_cosets_partition_and_are_doubling_orbits(n):
    cs = cosets(n)
    flat = sorted(j for c in cs for j in c.members)
    assert flat == list(range(n))
    for c in cs:
        assert {(2 * j) % n for j in c.members} == set(c.members)
        assert c.leader == min(c.members)


def test_length_preconditions():
    with pytest.raises(EvenLength):
        cosets(8)
    with pytest.raises(LengthTooSmall):
        cosets(1)


def test_minimal_polynomials_for_n7():
    ctx = build_field(7)
    cs = cosets(7)
    assert [minimal_polynomial(c, ctx).to_text("z") for c in cs] == ["1+z", "1+z+z^3", "1+z^2+z^3"]


def test_factor_table_dump():
    fs = factorize(7, build_field(7))
    assert fs.t == 3
    assert fs.dump_lines() == [
        "1, 0, 1, 1+z",
        "2, 1, 3, 1+z+z^3",
        "3, 3, 3, 1+z^2+z^3",
    ]
    assert not fs.has_idempotents()


@pytest.mark.parametrize("n", [3, 7, 9, 15, 21, 31, 51, 63, 93, 105, 127])
def test_product_of_factors_is_z_n_plus_1(n):
    fs = factorize(n, build_field(n))
    prod = BinaryPolynomial.one()
    for e in fs:
        prod = poly_mul(prod, e.f)
    assert prod == BinaryPolynomial.x_n_plus_1(n)
    assert fs.degrees() == sorted(fs.degrees())
    assert [e.degree for e in fs] == [e.coset.size for e in fs]
    assert [e.index for e in fs] == list(range(1, fs.t + 1))


def test_factors_are_pairwise_coprime():
    fs = factorize(63, build_field(63))
    for a, b in itertools.combinations(fs, 2):
        assert poly_gcd(a.f, b.f) == BinaryPolynomial.one()


def test_entry_and_find():
    fs = factorize(7, build_field(7))
    assert fs.entry(2).f == BinaryPolynomial.from_text("1+z+z^3")
    assert fs.find(BinaryPolynomial.from_text("1+z^2+z^3")).index == 3
    assert fs.find(BinaryPolynomial.from_text("1+z^2")) is None
    with pytest.raises(IndexError):
        fs.entry(0)


def test_factorize_rejects_foreign_context():
    with pytest.raises(LengthMismatch):
        factorize(15, build_field(7))
