import pytest

from divfilters.errors import FilterConstructionError, ParseError
from divfilters.filters import (
    a_sub_h,
    d_member,
    divides_tilde,
    filter_member,
    interpolation_check,
    make_filter,
    parse_filter_spec,
    principal,
    product_member,
    scale_filter,
)
from divfilters.semantics import is_upward_closed, member
from divfilters.setexpr import (
    Comp,
    Inter,
    Lit,
    Mult,
    PrimesIdx,
    Up,
    parse_expr,
)

BUDGET = 10**4


def test_make_filter_examples():
    f = principal(6)
    assert f.core == Lit(frozenset({6})) and f.point == 6
    g = make_filter([Mult(2), Mult(3)])
    assert g.core == Inter(Mult(2), Mult(3)) and g.fip_witness == 6
    with pytest.raises(FilterConstructionError):
        make_filter([Mult(2), Comp(Mult(2))])


def test_parse_filter_spec():
    assert parse_filter_spec("principal:6").point == 6
    g = parse_filter_spec("gen:[mult(2);mult(3)]")
    assert g.gens == (Mult(2), Mult(3))
    with pytest.raises(ParseError):
        parse_filter_spec("principal:0")
    with pytest.raises(ParseError):
        parse_filter_spec("nonsense")


def test_filter_member_examples():
    assert filter_member(principal(6), Mult(3), BUDGET).proved
    v = filter_member(make_filter([Mult(6)]), Mult(2), BUDGET)
    assert v.proved and v.certificate == "structural"
    v = filter_member(
        make_filter([Up(PrimesIdx(1, 2))]), Lit(frozenset({4})), BUDGET
    )
    assert v.refuted and v.certificate == 2


def test_divides_tilde_examples():
    assert divides_tilde(principal(6), principal(18), BUDGET).proved
    assert divides_tilde(principal(6), principal(8), BUDGET).refuted
    assert divides_tilde(
        make_filter([Mult(6)]), make_filter([Mult(12)]), BUDGET
    ).proved
    v = divides_tilde(
        make_filter([Up(PrimesIdx(1, 2))]),
        make_filter([Up(PrimesIdx(2, 2))]),
        BUDGET,
    )
    assert v.refuted and v.certificate == 3


def test_product_member_examples():
    assert product_member(principal(4), principal(9), Mult(6), BUDGET).proved
    v = product_member(
        make_filter([Up(PrimesIdx(1, 4))]),
        make_filter([Up(PrimesIdx(2, 4))]),
        Up(PrimesIdx(3, 4)),
        BUDGET,
    )
    assert v.refuted
    v = product_member(principal(2), make_filter([Mult(3)]), Mult(6), BUDGET)
    assert v.proved


def test_product_member_principal_law():
    for f in (2, 3, 5, 7):
        for g in (2, 4, 9):
            for e in (Mult(6), Mult(4), parse_expr("level(2)")):
                assert (
                    product_member(principal(f), principal(g), e, BUDGET).state
                    is member(e, f * g, BUDGET).state
                )


def test_d_member_examples():
    assert d_member(principal(6), Mult(3), BUDGET).proved
    v = d_member(principal(6), Mult(4), BUDGET)
    assert v.refuted
    # an upward-closed member of the filter is in D(F)
    assert d_member(principal(6), Mult(2), BUDGET).proved


def test_a_sub_h_examples():
    pred = a_sub_h(Mult(6), principal(2), BUDGET)
    for m in range(1, 300):
        assert member(pred, m, BUDGET).proved == (m % 3 == 0)
    e = parse_expr("up({4,9})")
    pred = a_sub_h(e, principal(1), BUDGET)
    for m in range(1, 300):
        assert member(pred, m, BUDGET).proved == member(e, m, BUDGET).proved
    pred = a_sub_h(Up(Lit(frozenset({4}))), principal(2), BUDGET)
    for m in range(1, 300):
        assert member(pred, m, BUDGET).proved == (m % 2 == 0)


def test_a_sub_h_upward_closed_when_host_is():
    pred = a_sub_h(Mult(6), principal(2), BUDGET)
    for m in (3, 6, 9):
        for k in range(2, 21):
            if member(pred, m, BUDGET).proved:
                assert member(pred, k * m, BUDGET).proved


def test_interpolation_examples():
    f = make_filter([Mult(24)])
    v = interpolation_check(f, f, 10**3)
    assert v.proved
    a, c, b = v.certificate
    assert a != c != b and c % a == 0 and b % c == 0
    assert interpolation_check(principal(2), principal(6), 10**3).refuted
    anti = make_filter([Lit(frozenset({2, 3, 5, 7}))])
    assert interpolation_check(anti, anti, 10).refuted


def test_scale_filter():
    assert scale_filter(principal(6), 5).point == 30
    f = make_filter([Mult(6)])
    sf = scale_filter(f, 4)
    # scaled core denotes 4 * 6N = multiples of 24
    for m in range(1, 200):
        assert member(sf.core, m, BUDGET).proved == (m % 24 == 0)


def test_eq1_upward_closed_members_are_in_d():
    cases = [
        (principal(6), Mult(2)),
        (principal(6), Mult(3)),
        (make_filter([Mult(12)]), Mult(4)),
        (make_filter([Up(PrimesIdx(1, 2))]), Up(PrimesIdx(1, 2))),
    ]
    for f, e in cases:
        assert is_upward_closed(e, BUDGET).proved
        assert filter_member(f, e, BUDGET).proved
        assert d_member(f, e, BUDGET).proved
