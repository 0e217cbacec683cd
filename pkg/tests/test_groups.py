from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flowcrit.groups import Group, make_group, parse_boundary

Z3, Z4, Z22 = make_group([3]), make_group([4]), make_group([2, 2])


def test_orders():
    assert Z3.order() == 3
    assert Z22.order() == 4
    assert Z4.order() == 4
    assert Z4 != Z22


@pytest.mark.parametrize("orders", [[], [1], [3, 0]])
def test_rejects_bad_orders(orders):
    with pytest.raises(ValueError):
        make_group(orders)


def test_small_arithmetic():
    assert Z3.add((1,), (2,)) == (0,)
    assert Z22.add((1, 0), (1, 1)) == (0, 1)
    assert Z22.neg((1, 1)) == (1, 1)
    assert Z4.neg((1,)) == (3,)


def test_arity_mismatch():
    with pytest.raises(ValueError):
        Z22.add((1,), (1, 0))


def test_nonzero_elements_order():
    assert Z3.nonzero_elements() == [(1,), (2,)]
    assert Z22.nonzero_elements() == [(0, 1), (1, 0), (1, 1)]
    assert Z4.nonzero_elements() == [(1,), (2,), (3,)]


def test_parse_spec_round_trip():
    for spec in ("3", "2,2", "4", "2,3,5"):
        assert Group.parse(spec).spec == spec


def test_parse_boundary():
    assert parse_boundary(Z3, "1,1,1,0") == ((1,), (1,), (1,), (0,))
    assert parse_boundary(Z22, "0,1;0,1;0,0", 3) == ((0, 1), (0, 1), (0, 0))
    with pytest.raises(ValueError):
        parse_boundary(Z3, "1,2", 3)


def test_encoding_tables_agree_with_tuples():
    for grp in (Z3, Z4, Z22, make_group([2, 3])):
        table, negs = grp.add_table, grp.neg_table
        for a in grp.elements():
            assert grp.decode(grp.encode(a)) == a
            assert grp.decode(negs[grp.encode(a)]) == grp.neg(a)
            for b in grp.elements():
                assert grp.decode(table[grp.encode(a)][grp.encode(b)]) == grp.add(a, b)


groups = st.lists(st.integers(2, 6), min_size=1, max_size=3).map(make_group)


@st.composite
def group_and_elements(draw, k=3):
    grp = draw(groups)
    elems = [tuple(draw(st.integers(0, o - 1)) for o in grp.orders) for _ in range(k)]
    return grp, elems


@given(group_and_elements())
def test_abelian_group_laws(data):
    grp, (a, b, c) = data
    assert grp.add(a, b) == grp.add(b, a)
    assert grp.add(grp.add(a, b), c) == grp.add(a, grp.add(b, c))
    assert grp.neg(grp.neg(a)) == a
    assert grp.is_zero(grp.add(a, grp.neg(a)))
    assert grp.add(a, grp.zero()) == a


@given(groups)
def test_nonzero_count(grp):
    nz = grp.nonzero_elements()
    assert len(nz) == grp.order() - 1
    assert grp.zero() not in nz
    assert nz == sorted(nz)
