import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tscalc import (
    DomainError,
    FinitePoints,
    GeometricLattice,
    Interval,
    Method,
    NoConvergence,
    NotInKappaKappa,
    NumericConfig,
    PointClass,
    PointNotInScale,
    ReflectionInadmissible,
    UniformLattice,
    Weights,
    ZeroPoint,
    delta_derivative,
    diamond_alpha_derivative,
    gamma_weights,
    h_symmetric_quotient,
    nabla_derivative,
    normalize,
    q_symmetric_quotient,
    symmetric_derivative,
)
from tscalc.derivatives import extrapolate
from tscalc.expr import evaluate, parse

from helpers import SCALES, close

# -- symmetric derivative: examples ----------------------------------------------


def test_square_on_integers(Z):
    r = symmetric_derivative("t^2", Z, 3.0)
    assert r.value == 6.0
    assert r.method is Method.CLOSED_FORM_SCATTERED and r.err_estimate == 0.0
    assert r.point_class is PointClass.ISOLATED


def test_abs_at_zero_on_reals(R):
    r = symmetric_derivative("abs(t)", R, 0.0)
    assert r.value == 0.0
    assert r.method is Method.NUMERIC_DENSE_LIMIT and r.point_class is PointClass.DENSE


def test_square_on_q_lattice():
    T = normalize([GeometricLattice(0.5, None, None, include_zero=True)])
    assert symmetric_derivative("t^2", T, 1.0).value == 2.5


def test_abs_on_point_plus_interval():
    T = normalize([FinitePoints((-1,)), Interval(0, 2)])
    r = symmetric_derivative("abs(t)", T, 0.0)
    assert r.value == -1.0 and r.point_class is PointClass.RIGHT_DENSE_LEFT_SCATTERED


def test_patched_t_sin_inverse_t(R):
    assert symmetric_derivative("if t==0 then 0 else t*sin(1/t)", R, 0.0).value == 0.0


def test_inverse_square_at_zero_never_evaluates_zero(R):
    assert symmetric_derivative("1/t^2", R, 0.0).value == 0.0


def test_dense_point_between_interval_and_lattice():
    # left side is a continuum, the right side a q-lattice accumulating at 0
    T = normalize([Interval(-1, 0), GeometricLattice(0.5, 0, None, include_zero=True)])
    r = symmetric_derivative("t^3 + 2*t", T, 0.0)
    assert r.value == pytest.approx(2.0, rel=1e-12)


# -- errors ---------------------------------------------------------------------


def test_reflection_inadmissible_on_q_closure(Qc):
    with pytest.raises(ReflectionInadmissible) as info:
        symmetric_derivative("t^2", Qc, 0.0)
    assert info.value.code == "reflection_inadmissible"


def test_reflection_inadmissible_at_interval_endpoint():
    with pytest.raises(ReflectionInadmissible):
        symmetric_derivative("t^2", normalize([Interval(0, 1)]), 1.0)


def test_not_in_kappa_kappa():
    T = normalize([UniformLattice(0, 1, 0, 10)])
    for t in (0.0, 10.0):
        with pytest.raises(NotInKappaKappa):
            symmetric_derivative("t", T, t)
        with pytest.raises(NotInKappaKappa):
            gamma_weights(T, t)


def test_point_not_in_scale(Z):
    with pytest.raises(PointNotInScale):
        symmetric_derivative("t", Z, 0.5)


def test_domain_error_propagates(Z):
    with pytest.raises(DomainError):
        symmetric_derivative("1/t", Z, 1.0)


@pytest.mark.parametrize("f", ["if t==0 then 0 else sin(1/t)", "1/t", "if t>0 then sqrt(t) else -sqrt(-t)"])
def test_no_convergence(R, f):
    with pytest.raises(NoConvergence):
        symmetric_derivative(f, R, 0.0)


def test_numeric_config_validation():
    for bad in ({"h0": 0}, {"shrink": 1}, {"levels": 1}, {"target_rtol": 0}, {"richardson_order": 0}):
        with pytest.raises(ValueError):
            NumericConfig(**bad)


def test_numeric_config_is_used(R):
    fine = symmetric_derivative("exp(t)", R, 0.3, NumericConfig(h0=1e-3, levels=8))
    assert fine.value == pytest.approx(math.cos(0) * math.exp(0.3), rel=1e-10)


# -- extrapolation ------------------------------------------------------------------


def test_extrapolate_removes_even_powers():
    hs = [0.1 / 2 ** k for k in range(5)]
    vals = [3.0 + 2 * h * h - 5 * h ** 4 for h in hs]
    v, err = extrapolate(hs, vals, 2, 1e-12)
    assert v == pytest.approx(3.0, abs=1e-13) and err <= 1e-12


def test_extrapolate_first_order():
    hs = [0.1 / 2 ** k for k in range(6)]
    v, _ = extrapolate(hs, [1.0 + 4 * h + h * h for h in hs], 1, 1e-12)
    assert v == pytest.approx(1.0, abs=1e-12)


def test_extrapolate_diverging_sequence():
    hs = [0.1 / 2 ** k for k in range(6)]
    with pytest.raises(NoConvergence):
        extrapolate(hs, [1 / h for h in hs], 2, 1e-8)


# -- delta, nabla, gamma, diamond-alpha ----------------------------------------------


def test_delta_nabla_examples(Z):
    assert delta_derivative("t^2", Z, 3.0).value == 7.0
    assert nabla_derivative("t^2", Z, 3.0).value == 5.0
    assert delta_derivative("abs(t)", Z, 0.0).value == 1.0
    assert nabla_derivative("abs(t)", Z, 0.0).value == -1.0


def test_delta_on_interval():
    I = normalize([Interval(0, 1)])
    assert delta_derivative("t^2", I, 0.5).value == pytest.approx(1.0, abs=1e-8)
    assert nabla_derivative("t^2", I, 0.5).value == pytest.approx(1.0, abs=1e-8)


def test_one_sided_at_interval_ends_uses_available_side():
    I = normalize([Interval(0, 1)])
    assert delta_derivative("t^2", I, 1.0).value == pytest.approx(2.0, abs=1e-8)
    assert nabla_derivative("t^2", I, 0.0).value == pytest.approx(0.0, abs=1e-8)


def test_delta_excluded_at_scattered_maximum():
    T = normalize([UniformLattice(0, 1, 0, 10)])
    with pytest.raises(NotInKappaKappa):
        delta_derivative("t", T, 10.0)
    assert nabla_derivative("t", T, 10.0).value == 1.0


@pytest.mark.parametrize("name", list(SCALES))
def test_identity_has_unit_derivatives(name):
    make, pts = SCALES[name]
    T = make()
    for t in pts:
        if T.in_kappa_kappa(t) and T.in_kappa(t):
            assert delta_derivative("t", T, t).value == pytest.approx(1.0, abs=1e-10)
            assert nabla_derivative("t", T, t).value == pytest.approx(1.0, abs=1e-10)


def test_gamma_examples(Z, M):
    assert gamma_weights(normalize([Interval(0, 1)]), 0.5) == Weights(0.5, 0.5)
    assert gamma_weights(Z, 3.0) == Weights(0.5, 0.5)
    w = gamma_weights(M, 1.0)
    assert (w.gamma, w.gamma_tilde) == (1.0, 0.0)


def test_diamond_alpha_examples(Z, M):
    assert diamond_alpha_derivative("t^2", Z, 3.0, 0.5) == 6.0
    assert diamond_alpha_derivative("t^3", Z, 2.0, 1.0) == delta_derivative("t^3", Z, 2.0).value
    assert diamond_alpha_derivative("t^2", M, 1.0, 1.0) == symmetric_derivative("t^2", M, 1.0).value
    with pytest.raises(ValueError):
        diamond_alpha_derivative("t", Z, 3.0, 1.5)


# -- quantum quotients -------------------------------------------------------------


def test_h_quotient_examples():
    assert h_symmetric_quotient("t^2", 3.0, 1.0) == 6.0
    assert h_symmetric_quotient("abs(t)", 0.0, 0.25) == 0.0
    assert h_symmetric_quotient("t", 1.7, 0.3) == pytest.approx(1.0, rel=1e-15)


def test_q_quotient_examples():
    assert q_symmetric_quotient("t^2", 1.0, 0.5) == 2.5
    assert q_symmetric_quotient("t", 0.25, 0.5) == 1.0
    with pytest.raises(ZeroPoint):
        q_symmetric_quotient("t^2", 0.0, 0.5)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([1.0, 0.5, 0.1, 0.25, 3.0]), st.integers(-200, 200),
       st.sampled_from(["t^2", "t^3 - t", "sin(t)", "exp(t/10)", "abs(t)", "1/(1+t^2)"]))
def test_h_lattice_coincidence_is_exact(h, k, f):
    T = normalize([UniformLattice(0, h)])
    t = k * h
    assert symmetric_derivative(f, T, t).value == h_symmetric_quotient(f, t, h)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([0.5, 0.8, 0.25]), st.integers(-20, 20),
       st.sampled_from(["t^2", "t^3", "1/t", "sin(t)", "ln(t)"]))
def test_q_lattice_coincidence(q, k, f):
    T = normalize([GeometricLattice(q, None, None, include_zero=True)])
    t = q ** k
    assume(t > 1e-6)  # points within the absolute fuzz of 0 merge with it
    got = symmetric_derivative(f, T, t).value
    assert got == pytest.approx(q_symmetric_quotient(f, t, q), rel=1e-12)


# -- properties over the standard scales ------------------------------------------------


def _valid(T, pts):
    return [t for t in pts if T.in_kappa_kappa(t)]


@pytest.mark.parametrize("name", list(SCALES))
def test_constant_and_identity(name):
    make, pts = SCALES[name]
    T = make()
    for t in _valid(T, pts):
        try:
            one = symmetric_derivative("t", T, t).value
        except ReflectionInadmissible:
            continue
        assert abs(one - 1.0) <= 1e-10
        assert abs(symmetric_derivative("7.5", T, t).value) <= 1e-10


@pytest.mark.parametrize("name", list(SCALES))
def test_inverse_closed_form(name):
    make, pts = SCALES[name]
    T = make()
    for t in _valid(T, pts):
        try:
            d = symmetric_derivative("1/t", T, t)
        except (ReflectionInadmissible, DomainError, NoConvergence):
            continue
        expected = -1.0 / (T.sigma(t) * T.rho(t))
        rtol = 1e-7 if d.point_class.is_dense else 1e-12
        assert close(d.value, expected, rtol), (t, d)


@pytest.mark.parametrize("name", list(SCALES))
def test_identity_v(name):
    make, pts = SCALES[name]
    T = make()
    for f in ("t^2", "t^3", "exp(t)", "sin(t)"):
        e = parse(f)
        for t in _valid(T, pts):
            try:
                d = symmetric_derivative(e, T, t).value
            except ReflectionInadmissible:
                continue
            lhs = evaluate(e, T.sigma(t))
            rhs = evaluate(e, T.rho(t)) + d * (T.sigma(t) - T.rho(t))
            assert close(lhs, rhs, 1e-8)


@pytest.mark.parametrize("f, df", [
    ("t^2", lambda t: 2 * t),
    ("t^3", lambda t: 3 * t * t),
    ("sin(t)", math.cos),
    ("exp(t)", math.exp),
])
def test_numeric_matches_classical_derivative(f, df):
    T = normalize([Interval(-2, 3)])
    for k in range(1, 50):
        t = -2 + k * 0.1
        r = symmetric_derivative(f, T, t)
        assert r.method is Method.NUMERIC_DENSE_LIMIT
        assert close(r.value, df(t), 1e-6)


@pytest.mark.parametrize("name", list(SCALES))
def test_method_matches_point_class(name):
    make, pts = SCALES[name]
    T = make()
    for t in _valid(T, pts):
        try:
            r = symmetric_derivative("t^2", T, t)
        except ReflectionInadmissible:
            continue
        assert (r.method is Method.CLOSED_FORM_SCATTERED) == (not r.point_class.is_dense)
        assert math.isfinite(r.err_estimate) and r.err_estimate >= 0


@pytest.mark.parametrize("name", list(SCALES))
def test_gamma_weights_bounded(name):
    make, pts = SCALES[name]
    T = make()
    for t in _valid(T, pts):
        w = gamma_weights(T, t)
        assert 0.0 <= w.gamma <= 1.0 and 0.0 <= w.gamma_tilde <= 1.0
        assert w.gamma + w.gamma_tilde == 1.0


def test_results_deterministic(R, Z):
    for T, t in ((R, 0.3), (Z, 2.0)):
        assert symmetric_derivative("exp(t)*sin(t)", T, t) == symmetric_derivative("exp(t)*sin(t)", T, t)
