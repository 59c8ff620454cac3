import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from teich.qseries import (
    BElement,
    NonSimpleRoot,
    NotInvertible,
    PoleAtZero,
    QSeries,
    VariableMismatch,
    hensel_solve_quadratic,
)

VS = ("x", "y")
N = 5


def _series(coeffs):
    return QSeries(VS, N, coeffs)


@st.composite
def series(draw):
    n_terms = draw(st.integers(0, 6))
    coeffs = {}
    for _ in range(n_terms):
        e = (draw(st.integers(0, N)), draw(st.integers(0, N)))
        coeffs[e] = Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 5)))
    return _series(coeffs)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == _series({})
    assert a * QSeries.constant(1, VS, N) == a


@settings(max_examples=40, deadline=None)
@given(series())
def test_invert_units(a):
    u = a + QSeries.constant(1 + abs(a.constant_term()) + 1, VS, N)
    assert (u * u.invert()) == QSeries.constant(1, VS, N)


def test_invert_nonunit_rejected():
    x = QSeries.gen("x", VS, N)
    with pytest.raises(NotInvertible):
        x.invert()
    with pytest.raises(NotInvertible):
        _series({}).invert()


def test_truncation_is_total_degree():
    x = QSeries.gen("x", VS, N)
    y = QSeries.gen("y", VS, N)
    high = x * x * x * y * y * y   # degree 6 > N
    assert high.is_zero()


def test_variable_mismatch():
    x = QSeries.gen("x", ("x",), N)
    y = QSeries.gen("y", ("y",), N)
    with pytest.raises(VariableMismatch):
        x + y
    assert x.with_vars(("x", "y")) + y.with_vars(("x", "y")) == \
        QSeries(("x", "y"), N, {(1, 0): 1, (0, 1): 1})


def test_substitute():
    x = QSeries.gen("x", VS, N)
    y = QSeries.gen("y", VS, N)
    s = (1 + x * y + 3 * x)
    at = s.substitute({"x": Fraction(1, 2)})
    assert at.vars == ("y",)
    assert at == QSeries(("y",), N, {(0,): Fraction(5, 2), (1,): Fraction(1, 2)})
    assert s.substitute({"x": 0, "y": 7}).as_rational() == 1


def test_belement_reduction_and_inverse():
    x = QSeries.gen("x", VS, N)
    b = BElement(x * x, (1, 0))     # x^2 / x reduces to x
    assert b.is_polynomial() and b.as_qseries() == x
    u = BElement(x * (1 + x), (0, 0))
    inv = u.invert()
    assert u * inv == BElement.constant(1, VS, N)
    mixed = BElement(x + QSeries.gen("y", VS, N))
    with pytest.raises(NotInvertible):
        mixed.invert()


def test_belement_substitute_pole():
    binv = BElement.monomial_inverse("x", VS, N)
    with pytest.raises(PoleAtZero):
        binv.substitute({"x": 0})
    assert binv.substitute({"x": Fraction(1, 3)}) == BElement.constant(3, ("y",), N)


def test_hensel_binomial_oracle():
    # r^2 = 1 + x: root is the binomial series for sqrt(1+x)
    vs = ("x",)
    one = QSeries.constant(1, vs, N)
    x = QSeries.gen("x", vs, N)
    r = hensel_solve_quadratic(one, QSeries.constant(0, vs, N), -(one + x), Fraction(1))
    binom = QSeries(vs, N, {
        (k,): Fraction(math.comb(2 * k, k), (-4) ** k * (1 - 2 * k)) * Fraction(-1) ** k
        for k in range(N + 1)
    })
    # independent closed form: C(1/2, k) via falling factorial
    def half_choose(k):
        num = Fraction(1)
        top = Fraction(1, 2)
        for i in range(k):
            num *= top - i
        return num / math.factorial(k)
    expect = QSeries(vs, N, {(k,): half_choose(k) for k in range(N + 1)})
    assert r == expect
    # and the other root
    r2 = hensel_solve_quadratic(one, QSeries.constant(0, vs, N), -(one + x), Fraction(-1))
    assert r2 == -expect


def test_hensel_repeated_root():
    vs = ("x",)
    one = QSeries.constant(1, vs, N)
    x = QSeries.gen("x", vs, N)
    # (r-1)^2 = x has a double root at x=0
    with pytest.raises(NonSimpleRoot):
        hensel_solve_quadratic(one, -2 * one, one - x, Fraction(1))
