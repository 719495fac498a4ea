import itertools

import pytest
import sympy
from hypothesis import given, strategies as st

from towercalc.forms import (Form, GradeError, R_op, T_op, monomial_average,
                             poly_sphere_average, radial_one_form,
                             sphere_inner_product)
from towercalc.ring import QQ, RadialRingElement, monomials, qq

R = RadialRingElement

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=5).map(qq)


@st.composite
def homogeneous_forms(draw, n=3, q=None, degree=None):
    """Random homogeneous q-form with coefficients c * r^b * x^alpha."""
    if q is None:
        q = draw(st.integers(0, n))
    if degree is None:
        degree = draw(st.integers(-3, 3))
    form = Form.zero(n, q)
    idx_choices = list(itertools.combinations(range(1, n + 1), q))
    for _ in range(draw(st.integers(1, 3))):
        e = draw(st.integers(0, 2))
        alpha = draw(st.sampled_from(list(monomials(n, e))))
        b = degree - e
        if (degree - e) % 2 != 0:
            alpha_list = list(alpha)
            alpha_list[draw(st.integers(0, n - 1))] += 1
            alpha = tuple(alpha_list)
            e += 1
            b = degree - e
        coef = R.from_poly(n, {alpha: draw(rationals)}).mul_r_power(b)
        form = form + Form.dx(n, draw(st.sampled_from(idx_choices)), coef)
    return form


def test_component_keys_validated():
    with pytest.raises(ValueError):
        Form(3, 2, {(2, 1): R.one(3)})      # not increasing
    with pytest.raises(ValueError):
        Form(3, 1, {(4,): R.one(3)})        # out of range


def test_wedge_known_products():
    n = 3
    dx1, dx2 = Form.dx(n, (1,)), Form.dx(n, (2,))
    assert dx1.wedge(dx2) == Form.dx(n, (1, 2))
    assert dx2.wedge(dx1) == Form.dx(n, (1, 2)).scale(qq(-1))
    assert dx1.wedge(dx1).is_zero()


@given(homogeneous_forms(q=1), homogeneous_forms(q=1))
def test_wedge_anticommutes_on_one_forms(a, b):
    assert a.wedge(b) == b.wedge(a).scale(qq(-1))


@given(homogeneous_forms(q=1), homogeneous_forms(q=1), homogeneous_forms(q=1))
def test_wedge_associates(a, b, c):
    assert a.wedge(b.wedge(c)) == (a.wedge(b)).wedge(c)


def test_hodge_star_basis_values():
    n = 3
    assert Form.dx(n, (1,)).hodge_star() == Form.dx(n, (2, 3))
    assert Form.dx(n, (2,)).hodge_star() == Form.dx(n, (1, 3)).scale(qq(-1))
    assert Form.dx(n, ()).hodge_star() == Form.dx(n, (1, 2, 3))


@given(homogeneous_forms())
def test_hodge_star_is_involutive(f):
    assert f.hodge_star().hodge_star() == f


@given(homogeneous_forms(q=1, degree=2))
def test_second_exterior_derivative_vanishes(f):
    assert f.rot().rot().is_zero()


@given(homogeneous_forms(q=2, degree=2))
def test_second_codifferential_vanishes(f):
    assert f.div().div().is_zero()


@given(homogeneous_forms())
def test_codifferential_matches_direct_index_formula(f):
    if f.q == 0:
        return
    assert f.div() == f.div_direct()


@given(homogeneous_forms())
def test_radial_operators_square_to_zero(f):
    assert R_op(R_op(f)).is_zero()
    assert T_op(T_op(f)).is_zero()


@given(homogeneous_forms())
def test_radial_anticommutator_is_r_squared(f):
    if f.q in (0, 3):
        return   # on scalars/top forms one factor collapses the identity
    got = R_op(T_op(f)) + T_op(R_op(f))
    assert got == f.mul_r_power(2)


@given(homogeneous_forms())
def test_tangential_cartan_identity(f):
    # d(T f) + T(d f): multiplication by (degree + rank) on homogeneous forms;
    # at the rank edges the collapsed factor contributes nothing
    n, q, h = f.n, f.q, f.homogeneous_degree()
    if h is None:
        return
    lhs = Form.zero(n, q)
    if q > 0:
        lhs = lhs + T_op(f).rot()
    if q < n:
        lhs = lhs + T_op(f.rot())
    assert lhs == f.scale(qq(h + q))


@given(homogeneous_forms())
def test_radial_cartan_identity(f):
    # div(R f) + R(div f): multiplication by (n + degree - rank)
    n, q, h = f.n, f.q, f.homogeneous_degree()
    if h is None:
        return
    lhs = Form.zero(n, q)
    if q < n:
        lhs = lhs + R_op(f).div()
    if q > 0:
        lhs = lhs + R_op(f.div())
    assert lhs == f.scale(qq(n + h - q))


@given(homogeneous_forms())
def test_radial_weight_commutators(f):
    # moving r^(2a) through the derivative leaves 2a r^(2a-2) (radial part)
    a = 1
    if f.q < f.n:
        lhs = f.mul_r_power(2 * a).rot() - f.rot().mul_r_power(2 * a)
        assert lhs == R_op(f).mul_r_power(2 * a - 2).scale(qq(2 * a))
    if f.q > 0:
        lhs = f.mul_r_power(2 * a).div() - f.div().mul_r_power(2 * a)
        assert lhs == T_op(f).mul_r_power(2 * a - 2).scale(qq(2 * a))


@given(homogeneous_forms(degree=2))
def test_laplacian_factorizations_agree(f):
    assert f.laplacian() == f.laplacian_factored()


def test_grade_guards():
    n = 3
    with pytest.raises(GradeError):
        Form.dx(n, (1, 2, 3)).rot()
    with pytest.raises(GradeError):
        Form.from_scalar(R.one(n)).div()


def test_zero_form_radial_conventions():
    n = 3
    f = Form.from_scalar(R.variable(n, 1))
    assert T_op(f).is_zero() and T_op(f).q == 0
    top = Form.dx(n, (1, 2, 3))
    assert R_op(top).is_zero() and R_op(top).q == n


def test_radial_one_form_is_r_op_of_one():
    n = 3
    assert radial_one_form(n) == R_op(Form.from_scalar(R.one(n)))


# ---------------------------------------------------------------------------
# sphere moments
# ---------------------------------------------------------------------------

def sympy_sphere_average(alpha):
    """Oracle: integrate the monomial over S^2 in spherical coordinates."""
    theta, phi = sympy.symbols("theta phi")
    x = sympy.sin(theta) * sympy.cos(phi)
    y = sympy.sin(theta) * sympy.sin(phi)
    z = sympy.cos(theta)
    integrand = (x ** alpha[0]) * (y ** alpha[1]) * (z ** alpha[2]) * sympy.sin(theta)
    val = sympy.integrate(sympy.integrate(integrand, (phi, 0, 2 * sympy.pi)),
                          (theta, 0, sympy.pi))
    return sympy.nsimplify(val / (4 * sympy.pi))


@pytest.mark.parametrize("alpha,expected", [
    ((0, 0, 0), QQ(1)),
    ((1, 0, 0), QQ(0)),
    ((2, 0, 0), QQ(1, 3)),
    ((1, 1, 0), QQ(0)),
    ((2, 2, 0), QQ(1, 15)),
    ((4, 0, 0), QQ(1, 5)),
    ((2, 2, 2), QQ(1, 105)),
    ((6, 0, 0), QQ(1, 7)),
])
def test_monomial_average_known_values(alpha, expected):
    assert monomial_average(alpha, 3) == expected
    assert sympy.Rational(str(expected)) == sympy_sphere_average(alpha)


def test_monomial_average_odd_exponent_vanishes():
    assert monomial_average((3, 2, 0), 3) == QQ(0)
    assert monomial_average((0, 1, 4), 3) == QQ(0)


def test_poly_sphere_average_is_linear():
    p = {(2, 0, 0): qq(3), (0, 0, 0): qq(1), (1, 0, 0): qq(7)}
    assert poly_sphere_average(p, 3) == qq(3) * QQ(1, 3) + qq(1)


@given(homogeneous_forms())
def test_sphere_inner_product_positive_definite(f):
    v = sphere_inner_product(f, f)
    assert (v > 0) == (not f.is_zero())
    assert v >= 0


@given(homogeneous_forms(q=1, degree=1), homogeneous_forms(q=1, degree=1))
def test_sphere_inner_product_symmetric_bilinear(a, b):
    assert sphere_inner_product(a, b) == sphere_inner_product(b, a)
    assert sphere_inner_product(a + b, b) == \
        sphere_inner_product(a, b) + sphere_inner_product(b, b)


@given(homogeneous_forms())
def test_form_serialization_round_trip(f):
    assert Form.from_obj(f.to_obj()) == f
