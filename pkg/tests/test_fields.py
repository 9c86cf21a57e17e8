from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from exminor.fields import (
    SUPPORTED_ORDERS,
    FieldMismatchError,
    add,
    get_field,
    inv,
    matrix_rank,
    mul,
    neg,
)

from .oracles import rank_mod_p


def test_gf3_one_plus_minus_one():
    f = get_field(3)
    assert add(f.element(1), f.element("-1")).is_zero()


def test_gf8_alpha_plus_alpha():
    f = get_field(8)
    a = f.element("a")
    assert (a + a).is_zero()


def test_gf4_omega_plus_one_is_omega_squared():
    f = get_field(4)
    w = f.element("w")
    assert add(w, f.element(1)) == f.element("w2")
    assert w * w == f.element("w2")


def test_gf8_alpha_cubed():
    f = get_field(8)
    a = f.element("a")
    assert mul(mul(a, a), a) == f.element("a+1")
    assert str(a ** 3) == "a+1"


def test_gf3_neg_one():
    f = get_field(3)
    assert neg(f.element(1)).value == 2


def test_gf5_inverse_of_two():
    # brute force over residues
    expected = next(b for b in range(5) if 2 * b % 5 == 1)
    assert inv(get_field(5).element(2)).value == expected == 3


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms_exhaustive(q):
    f = get_field(q)
    els = range(q)
    for a, b in product(els, els):
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    for a, b, c in product(els, els, els):
        assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
        assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    for a in els:
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("q", [4, 8])
def test_frobenius(q):
    f = get_field(q)
    for a, b in product(range(q), repeat=2):
        s = f.add(a, b)
        assert f.mul(s, s) == f.add(f.mul(a, a), f.mul(b, b))


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_element_orders_divide_group_order(q):
    f = get_field(q)
    for a in range(1, q):
        assert (q - 1) % f.order_of(a) == 0


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_format_parse_roundtrip(q):
    f = get_field(q)
    for a in range(q):
        assert f.parse(f.format(a)) == a


def test_gf8_powers_parse():
    f = get_field(8)
    assert f.parse("a2") == f.mul(2, 2)
    assert f.format(f.parse("a2+a+1")) == "a2+a+1"


def test_field_names():
    assert get_field("gf4") is get_field(4)
    with pytest.raises(ValueError):
        get_field(7)
    with pytest.raises(ValueError):
        get_field(4).parse("x")


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        get_field(4).element(1) + get_field(8).element(1)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        get_field(5).inv(0)


@given(
    st.sampled_from([2, 3, 5]),
    st.integers(1, 4),
    st.integers(1, 6),
    st.data(),
)
def test_matrix_rank_matches_reference_elimination(p, nrows, ncols, data):
    rows = [[data.draw(st.integers(0, p - 1)) for _ in range(ncols)] for _ in range(nrows)]
    assert matrix_rank(get_field(p), rows) == rank_mod_p(rows, p)


@given(st.sampled_from([4, 8]), st.lists(st.integers(0, 7), min_size=6, max_size=6))
def test_rank_invariant_under_row_scaling(q, entries):
    f = get_field(q)
    rows = [[x % q for x in entries[:3]], [x % q for x in entries[3:]]]
    scaled = [[f.mul(2, x) for x in rows[0]], rows[1]]
    assert matrix_rank(f, rows) == matrix_rank(f, scaled)
