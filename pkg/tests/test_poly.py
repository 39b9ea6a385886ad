import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tgrs.ff import make_field
from tgrs.poly import MultiPoly, PolyError, count_zeros, format_poly, parse_poly, scalar_multiple

F17 = make_field(17)


def poly_strategy(F, nvars, max_terms=5, max_deg=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * nvars), st.integers(0, F.q - 1))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((MultiPoly(F, nvars, {e: c}) for e, c in ts), MultiPoly(F, nvars)))


def test_char2_square():
    F2 = make_field(2)
    x1 = MultiPoly.variable(F2, 1, 0) + MultiPoly.constant(F2, 1, 1)
    assert x1 * x1 == parse_poly(F2, 1, "x0^2 + 1")


def test_two_variable_p_evaluates():
    p = parse_poly(F17, 2, "11xy+12x+10y+2", ["x", "y"])
    assert p.eval([0, 0]).index == 2
    assert format_poly(p, ["x", "y"]) == "11*x*y + 12*x + 10*y + 2"


@settings(max_examples=100, deadline=None)
@given(poly_strategy(F17, 2), poly_strategy(F17, 2), st.integers(0, 16), st.integers(0, 16))
def test_ring_homomorphism(a, b, x, y):
    F = F17
    assert (a * b).eval_index((x, y)) == F.mul(a.eval_index((x, y)), b.eval_index((x, y)))
    assert (a + b).eval_index((x, y)) == F.add(a.eval_index((x, y)), b.eval_index((x, y)))
    assert (a - b).eval_index((x, y)) == F.sub(a.eval_index((x, y)), b.eval_index((x, y)))
    assert a.scale(3).eval_index((x, y)) == F.mul(3, a.eval_index((x, y)))


@settings(max_examples=100, deadline=None)
@given(poly_strategy(F17, 3))
def test_format_parse_round_trip(p):
    assert parse_poly(F17, 3, format_poly(p)) == p


def test_round_trip_extension_field():
    F9 = make_field(3, 2)
    p = parse_poly(F9, 2, "z^3*x0^2*x1 + 2*x1 + z")
    assert parse_poly(F9, 2, format_poly(p)) == p
    assert p.eval_index((0, 0)) == F9.parse("z")


def test_no_zero_coefficients_stored():
    p = parse_poly(F17, 1, "3*x0 + 14*x0")
    assert p.is_zero() and p.terms == {}


def test_count_zeros():
    assert count_zeros(MultiPoly(F17, 2)) == 289
    lin = parse_poly(F17, 1, "5*x0 + 3")
    assert count_zeros(lin) == 1
    p = parse_poly(F17, 2, "x0*x1")
    assert count_zeros(p) == 33
    with pytest.raises(PolyError):
        count_zeros(MultiPoly.variable(make_field(101), 5, 0))


def test_count_zeros_matches_naive():
    F = make_field(3, 2)
    p = parse_poly(F, 3, "x0^2*x1 + z*x2 + 2")
    naive = sum(1 for pt in itertools.product(range(9), repeat=3) if p.eval_index(pt) == 0)
    assert count_zeros(p) == naive


def test_scalar_multiple_and_monic():
    p = parse_poly(F17, 2, "3*x0^2 + 5*x1 + 1")
    assert scalar_multiple(p.scale(7), p).index == 7
    assert scalar_multiple(p, p + MultiPoly.constant(F17, 2, 1)) is None
    m = p.monic()
    assert m.leading()[1] == 1 and scalar_multiple(p, m) is not None


def test_mismatched_operands():
    with pytest.raises(PolyError):
        MultiPoly(F17, 2) + MultiPoly(F17, 3)
    with pytest.raises(PolyError):
        parse_poly(F17, 2, "x0*w")
    with pytest.raises(PolyError):
        MultiPoly(F17, 2).eval_index((1,))


def test_lenient_parse():
    a = parse_poly(F17, 2, "x**2 * y + 3 x", ["x", "y"])
    b = parse_poly(F17, 2, "x^2y+3x", ["x", "y"])
    assert a == b
    assert parse_poly(F17, 2, "x - y", ["x", "y"]).eval_index((0, 1)) == 16
