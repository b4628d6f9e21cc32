"""Foundation checks: scalars, series, sampling, exact solving."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from qpainleve.core import (
    AlgNum,
    GuardConfig,
    I_UNIT,
    INF,
    InconsistentOverdetermined,
    ParamPoint,
    SQRT2,
    SQRT3,
    SingularSystem,
    SymPoly,
    TSeries,
    TimeKind,
    check_guards,
    fit_polynomial,
    rat,
    sample_params,
    series_combine,
    series_dlog,
    solve_exact,
)

rationals = st.builds(
    rat, st.integers(-40, 40), st.integers(1, 8)
)


def alg_nums():
    key = st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1))
    return st.dictionaries(key, rationals, max_size=4).map(AlgNum)


def small_series():
    exps = st.builds(rat, st.integers(-12, 24), st.integers(1, 4))
    return st.dictionaries(exps, rationals, max_size=5).map(lambda d: TSeries(d))


# -- AlgNum ------------------------------------------------------------------


def test_algnum_generators():
    assert I_UNIT * I_UNIT == -1
    assert SQRT2 * SQRT2 == 2
    assert SQRT3 * SQRT3 == 3
    r6 = SQRT2 * SQRT3
    assert r6 * r6 == 6
    z = (1 + I_UNIT) * (1 - I_UNIT)
    assert z == 2


@given(alg_nums(), alg_nums(), alg_nums())
@settings(max_examples=60, deadline=None)
def test_algnum_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + AlgNum(0) == x
    assert x * AlgNum(1) == x


@given(alg_nums())
@settings(max_examples=60, deadline=None)
def test_algnum_inverse(x):
    if not x:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
        return
    assert x * x.inverse() == 1


@given(alg_nums())
@settings(max_examples=40, deadline=None)
def test_algnum_complex_embedding(x):
    lhs = (x * x).to_complex()
    r = x.to_complex()
    assert abs(lhs - r * r) < 1e-9 * (1 + abs(lhs))


def test_algnum_rational_detection():
    assert AlgNum(rat(3, 7)).is_rational()
    assert AlgNum(rat(3, 7)).rational_value() == rat(3, 7)
    assert not SQRT2.is_rational()
    with pytest.raises(ValueError):
        SQRT2.rational_value()


# -- TSeries -----------------------------------------------------------------


def test_series_exact_examples():
    one_plus = TSeries({0: 1, 1: 1})
    one_minus = TSeries({0: 1, 1: -1})
    assert series_combine(one_plus, one_minus, "add") == TSeries({0: 2})
    half = TSeries({rat(1, 2): 1})
    assert series_combine(half, half, "mul") == TSeries({1: 1})


def test_series_log_derivative_examples():
    f = TSeries({3: 3})
    assert series_dlog(f, TimeKind.LOG) == TSeries({3: 9})
    assert series_dlog(f, TimeKind.PLAIN) == TSeries({2: 9})
    assert series_dlog(TSeries({2: 1}), TimeKind.LOG_SHIFT) == TSeries({3: 2, 2: -2})
    assert series_dlog(TSeries({0: 5}), TimeKind.LOG).is_zero()


@given(small_series(), small_series(), small_series())
@settings(max_examples=60, deadline=None)
def test_series_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(small_series(), small_series(), st.sampled_from(TimeKind.ALL))
@settings(max_examples=80, deadline=None)
def test_series_leibniz(f, g, kind):
    lhs = series_dlog(f * g, kind)
    rhs = series_dlog(f, kind) * g + f * series_dlog(g, kind)
    assert lhs == rhs


def test_truncation_propagation():
    # truncation order of a product: min over (order_i + min_exp_other)
    f = TSeries({1: 1}, order=4)
    g = TSeries({2: 1}, order=10)
    assert (f * g).order == 6  # 4 + 2
    h = TSeries({-1: 1}, order=3)
    assert (f * h).order == 3  # 4 + (-1)
    assert (f + g).order == 4
    exact = TSeries({0: 1})
    assert (f * exact).order == 4
    assert (exact * exact).order is INF


def test_truncation_drops_coeff_access():
    f = TSeries({0: 1, 5: 1}, order=4)
    assert 5 not in f.terms
    with pytest.raises(KeyError):
        f.coeff(4)
    assert f.coeff(3) == 0
    assert f.coeff(0) == 1


@given(small_series())
@settings(max_examples=60, deadline=None)
def test_series_inverse_roundtrip(f):
    if f.is_zero():
        with pytest.raises(ZeroDivisionError):
            f.inverse(order=5)
        return
    # request enough order that the constant term of f * inv stays visible
    inv = f.inverse(order=rat(1) - f.min_exp())
    prod = f * inv
    assert prod.order > 0
    assert prod.terms == {0: 1}


def test_series_inverse_of_monomial_is_exact():
    f = TSeries({rat(3, 2): rat(2, 5)})
    inv = f.inverse()
    assert inv.order is INF
    assert inv == TSeries({rat(-3, 2): rat(5, 2)})


# -- sampling ----------------------------------------------------------------


def test_sample_params_deterministic():
    p1 = sample_params(123, 4)
    p2 = sample_params(123, 4)
    assert p1 == p2
    p3 = sample_params(124, 4)
    assert p1 != p3


def test_sample_params_guards_hold():
    guards = GuardConfig()
    for seed in range(6):
        p = sample_params(seed, 4, guards)
        assert check_guards(p, guards)
        assert p.eps == p.eps1 + p.eps2
        assert p.kappa == p.eps2 - p.eps1


def test_guard_rejects_resonance():
    # 2a = -eps1 - eps2 sits on the resonance lattice
    p = ParamPoint(rat(2, 3), rat(5, 7), -(rat(2, 3) + rat(5, 7)) / 2, ())
    assert not check_guards(p, GuardConfig(mass_guards=False))


def test_guard_rejects_small_weight_denominator():
    # (2a + eps)/kappa an integer: denominator 1 <= 2*n_max*k_max
    p = ParamPoint(rat(1, 3), rat(7, 3), rat(-1, 3), ())
    w = (2 * p.a + p.eps) / p.kappa
    assert w.denominator == 1
    assert not check_guards(p, GuardConfig(mass_guards=False))


def test_param_point_rejects_degenerate():
    with pytest.raises(ValueError):
        ParamPoint(0, 1, 1)
    with pytest.raises(ValueError):
        ParamPoint(1, -1, 1)  # eps = 0
    with pytest.raises(ValueError):
        ParamPoint(1, 1, 1)  # kappa = 0


# -- exact linear algebra ----------------------------------------------------


@given(
    st.lists(rationals, min_size=1, max_size=13),
    st.integers(0, 3),
)
@settings(max_examples=40, deadline=None)
def test_fit_polynomial_roundtrip(coeffs, extra):
    degree = len(coeffs) - 1
    xs = [rat(k) for k in range(degree + 1 + extra)]
    ys = [sum(c * x**i for i, c in enumerate(coeffs)) for x in xs]
    got = fit_polynomial(xs, ys, degree)
    assert got == list(coeffs)


def test_solve_exact_square():
    sol = solve_exact([[2, 1], [1, 3]], [rat(5), rat(10)])
    assert sol == [rat(1), rat(3)]


def test_solve_exact_overdetermined_consistent():
    sol = solve_exact([[1, 1], [1, -1], [3, 1]], [rat(3), rat(1), rat(7)])
    assert sol == [rat(2), rat(1)]


def test_solve_exact_overdetermined_inconsistent():
    with pytest.raises(InconsistentOverdetermined):
        solve_exact([[1, 1], [1, -1], [3, 1]], [rat(3), rat(1), rat(8)])


def test_solve_exact_singular():
    with pytest.raises(SingularSystem):
        solve_exact([[1, 2], [2, 4]], [rat(1), rat(2)])
    with pytest.raises(SingularSystem):
        solve_exact([[1, 2]], [rat(1)])


def test_solve_exact_algebraic_scalars():
    # x + y = sqrt2, x - y = i  =>  x = (sqrt2 + i)/2
    sol = solve_exact([[1, 1], [1, -1]], [SQRT2, I_UNIT])
    assert sol[0] * 2 == SQRT2 + I_UNIT
    assert sol[1] * 2 == SQRT2 - I_UNIT


# -- SymPoly -----------------------------------------------------------------


def test_sympoly_arithmetic():
    c = SymPoly.symbol(3)
    p = c * c + 2 * c + 1
    assert p.eval_at(rat(2)) == 9
    assert p.degree() == 2
    assert (p - p).is_zero()


def test_sympoly_degree_cap():
    c = SymPoly.symbol(2)
    with pytest.raises(ValueError):
        _ = (c * c) * c
