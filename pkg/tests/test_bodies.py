from decimal import Decimal, getcontext
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from pluripot.bodies import (Surd, SurdSegment, lens_surrogate, quadrilateral_body,
                             rational_segment, sqrt2_segment, unit_square)
from pluripot.logsupport import slice_body
from pluripot.ratgeom import Body, GeometryError

getcontext().prec = 80
fracs = st.fractions(min_value=-50, max_value=50, max_denominator=400)


def _dec(fr):
    return Decimal(fr.numerator) / Decimal(fr.denominator)


def test_quadrilateral_body():
    S = quadrilateral_body()
    assert S.extreme == ((0, 0), (0, 1), (F(1, 5), 0), (F(4, 5), F(1, 5)))
    with pytest.raises(GeometryError):
        quadrilateral_body("1/2", "1/3")


def test_lens_vertices_lie_on_the_two_circles():
    L = lens_surrogate()
    assert len(L.extreme) == 256
    for x, y in L.extreme:
        on_first = (x - 1) ** 2 + y ** 2 == 1
        on_second = x ** 2 + (y - 1) ** 2 == 1
        assert on_first or on_second
    # only the origin touches the axes
    assert [v for v in L.extreme if 0 in v] == [(0, 0)]
    assert slice_body(L, [0]) == Body([(0,)]) and slice_body(L, [1]) == Body([(0,)])
    with pytest.raises(ValueError):
        lens_surrogate(7)


def test_rational_segment_and_square():
    seg = rational_segment((1, "3/2"))
    assert seg.extreme == ((0, 0), (1, F(3, 2)))
    assert unit_square() == Body.cube(2)


@settings(max_examples=300, deadline=None)
@given(fracs, fracs, st.sampled_from([2, 3, 5, 7]))
def test_surd_sign_matches_high_precision(p, q, d):
    s = Surd.of(p, q, d)
    ref = _dec(p) + _dec(q) * Decimal(d).sqrt()
    assert s.sign() == (ref > 0) - (ref < 0)


@settings(max_examples=100, deadline=None)
@given(fracs, fracs, fracs, fracs)
def test_surd_arithmetic(a, b, c, e):
    x, y = Surd.of(a, b), Surd.of(c, e)
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-9, abs=1e-9)
    assert float(x + y) == pytest.approx(float(x) + float(y), rel=1e-9, abs=1e-9)
    assert (x - x).sign() == 0


def test_surd_field_mismatch():
    with pytest.raises(ValueError):
        Surd.of(1, 1, 2) + Surd.of(1, 1, 3)


def test_sqrt2_segment():
    seg = sqrt2_segment()
    assert isinstance(seg, SurdSegment) and seg.dim == 2
    assert seg.contains_lattice((0, 0), 3)
    assert not seg.contains_lattice((5, 7), 10)
    # a segment with a rational direction in the same representation does contain lattice points
    rat = SurdSegment([Surd.of(1), Surd.of(2)])
    assert rat.contains_lattice((2, 4), 2) and not rat.contains_lattice((3, 6), 2)
    with pytest.raises(GeometryError):
        SurdSegment([Surd.of(-1), Surd.of(1)])
    with pytest.raises(GeometryError):
        SurdSegment([Surd.of(0), Surd.of(0)])
