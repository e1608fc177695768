import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from qphase import hwgroup, linalg, sl2r
from qphase.sl2r import GridSpec

A1, A2 = sp.symbols("a1 a2", positive=True)
U_, V_ = A1 + sp.I * A2, A1 - sp.I * A2

# phase-space generators as differential operators in (a1, a2)
OPS = (
    lambda f: -sp.I * (A1 * sp.diff(f, A2) + A2 * sp.diff(f, A1)) / 2,
    lambda f: -sp.I * (A1 * sp.diff(f, A2) - A2 * sp.diff(f, A1)) / 2,
    lambda f: -sp.I * (A1 * sp.diff(f, A1) - A2 * sp.diff(f, A2)) / 2,
)

WEDGE = GridSpec(1.0, 1.2, 0.4, 0.6, 1e-3)


def symbolic_poly_rep(ell2):
    """Matrices of K_j on u^(l+m) v^(l-m) by symbolic differentiation."""
    u, v = sp.symbols("u v")
    n = ell2 + 1
    basis = [U_ ** (ell2 - i) * V_**i for i in range(n)][::-1]  # m = -l .. l
    mats = []
    for op in OPS:
        M = np.zeros((n, n), complex)
        for c, f in enumerate(basis):
            img = sp.expand(op(f).subs({A1: (u + v) / 2, A2: (u - v) / (2 * sp.I)}))
            poly = sp.Poly(img, u, v)
            for r in range(n):
                a, b = r, ell2 - r  # u^a v^b with a = l + m
                M[r, c] = complex(poly.coeff_monomial(u**a * v**b))
        mats.append(M)
    return mats


@pytest.mark.parametrize("ell2", range(0, 5))
def test_poly_rep_matches_symbolic_action(ell2):
    rep = sl2r.poly_rep(ell2 / 2)
    for got, want in zip((rep.K1, rep.K2, rep.K3), symbolic_poly_rep(ell2)):
        assert np.abs(got - want).max() < 1e-12


@pytest.mark.parametrize("ell2", range(0, 17))
def test_brackets_and_casimir(ell2):
    rep = sl2r.poly_rep(ell2 / 2)
    L = ell2 / 2
    assert rep.dim == ell2 + 1
    assert max(sl2r.bracket_residuals(rep.K1, rep.K2, rep.K3).values()) <= 1e-12
    eye = np.eye(rep.dim)
    assert np.abs(sl2r.casimir(rep) - L * (L + 1) * eye).max() <= 1e-12
    assert np.abs(sl2r.ladder_casimir(rep) + L * (L + 1) * eye).max() <= 1e-12


def test_k2_spectrum():
    rep = sl2r.poly_rep(3)
    assert np.allclose(np.sort(np.linalg.eigvals(rep.K2).real), np.arange(-3, 4))


def test_ladder_ell_2():
    rep = sl2r.poly_rep(2)
    L = 2
    for i, m in enumerate(rep.m_values):
        e = np.zeros(rep.dim)
        e[i] = 1
        up = rep.raising @ e
        down = rep.lowering @ e
        want_up = np.zeros(rep.dim)
        want_down = np.zeros(rep.dim)
        if i + 1 < rep.dim:
            want_up[i + 1] = -(L - m)
        if i > 0:
            want_down[i - 1] = L + m
        assert np.abs(up - want_up).max() < 1e-14
        assert np.abs(down - want_down).max() < 1e-14


def test_poly_rep_rejects_bad_ell():
    for bad in (-1, 0.3, 1.25):
        with pytest.raises(ValueError):
            sl2r.poly_rep(bad)


def test_subgroup_matrices(rng):
    assert np.array_equal(sl2r.subgroup_matrix(3, 0), np.eye(2))
    for _ in range(100):
        t, s = rng.uniform(-3, 3, 2)
        for j in (1, 2, 3):
            assert abs(np.linalg.det(sl2r.subgroup_matrix(j, t)) - 1) < 1e-13
        prod = sl2r.subgroup_matrix(2, t) @ sl2r.subgroup_matrix(2, s)
        assert np.abs(prod - sl2r.subgroup_matrix(2, t + s)).max() < 1e-13


def test_generators_are_subgroup_derivatives():
    eps = 1e-6
    for j, k in enumerate(sl2r.GENERATORS_2x2, start=1):
        fd = (sl2r.subgroup_matrix(j, eps) - sl2r.subgroup_matrix(j, -eps)) / (2 * eps)
        assert np.abs(fd - k).max() < 1e-9


def test_2x2_hermitized_brackets():
    assert max(sl2r.bracket_residuals(*sl2r.hermitian_generators_2x2()).values()) <= 1e-12


def test_unitary_element_is_inverse_subgroup():
    for j in (1, 2, 3):
        assert np.abs(sl2r.unitary_element_2x2(j, 0.4) - sl2r.subgroup_matrix(j, -0.4)).max() < 1e-12


@pytest.mark.parametrize("j,gamma", [(1, 0.7), (2, 1.0), (3, 1.1), (2, 0.5)])
def test_eigenfunctions_symbolically(j, gamma):
    g = sp.Rational(str(gamma))
    e = {
        1: sp.exp(sp.I * g * sp.log((A1 + A2) / (A1 - A2))),
        2: sp.exp(2 * sp.I * g * sp.atan2(A2, A1)),
        3: sp.exp(sp.I * g * sp.log(A1 / A2)),
    }[j]
    assert sp.simplify(OPS[j - 1](e) - g * e) == 0
    f = sp.lambdify((A1, A2), e)
    assert abs(sl2r.eigenfunction(j, 1.1, 0.5, gamma) - f(1.1, 0.5)) < 1e-12


def test_grid_eigencheck_examples():
    assert sl2r.grid_eigencheck(3, 0.0, WEDGE) <= 1e-12
    assert sl2r.grid_eigencheck(2, 1.0, GridSpec(0.5, 0.7, 0.5, 0.7, 1e-3)) <= 5e-3
    assert sl2r.grid_eigencheck(1, 0.7, WEDGE) <= 5e-3


@pytest.mark.parametrize("j,gamma", [(1, 0.7), (2, 1.0), (3, 1.1)])
def test_h_squared_convergence(j, gamma):
    ratio = sl2r.convergence_ratio(lambda G: sl2r.grid_eigencheck(j, gamma, G), WEDGE)
    assert abs(ratio - 4) < 0.1


def test_singular_grids_rejected():
    with pytest.raises(sl2r.SingularGridError):
        sl2r.grid_eigencheck(1, 0.7, GridSpec(0.5, 0.7, 0.5, 0.7, 1e-3))  # crosses a1 = a2
    with pytest.raises(sl2r.SingularGridError):
        sl2r.grid_eigencheck(3, 1.0, GridSpec(0.5, 0.7, -0.1, 0.1, 1e-3))
    with pytest.raises(sl2r.SingularGridError):
        sl2r.grid_eigencheck(2, 1.0, GridSpec(-0.1, 0.1, -0.1, 0.1, 1e-3))
    with pytest.raises(sl2r.SingularGridError):
        sl2r.grid_eigencheck(2, 0.5, GridSpec(-0.7, -0.5, -0.1, 0.1, 1e-3))


def test_factor_lambda_trivial_directions():
    f = sl2r.factor_lambda((0, 0, 1.3), "elliptic")
    assert f.a == 0 and f.b == 0 and abs(f.Lambda - 1.3) < 1e-15
    f = sl2r.factor_lambda((0, 0.8, 0), "hyperbolic")
    assert f.a == 0 and f.b == 0 and abs(f.Lambda - 0.8) < 1e-15
    assert f.conjugation_residual < 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(-3, 3), st.floats(-0.95, 0.95), st.floats(-3, 3))
def test_factor_lambda_elliptic_random(l1, frac, l3):
    if abs(l1) < 1e-3:
        return
    f = sl2r.factor_lambda(sl2r.Sl2rParam((l1, frac * l1, l3)), "elliptic")
    assert f.reconstruction_error <= 1e-10
    assert f.conjugation_residual <= 1e-10


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(0.1, 3), st.floats(-2, 2), st.booleans())
def test_factor_lambda_hyperbolic_random(l1, extra, l3, neg):
    l2 = np.hypot(l1, l3) + extra
    f = sl2r.factor_lambda((l1, -l2 if neg else l2, l3), "hyperbolic")
    assert f.reconstruction_error <= 1e-10
    assert f.conjugation_residual <= 1e-10


def test_factor_lambda_wrong_mode():
    with pytest.raises(ValueError):
        sl2r.factor_lambda((0, 2, 0), "elliptic")
    with pytest.raises(ValueError):
        sl2r.factor_lambda((1, 0, 1), "hyperbolic")
    with pytest.raises(ValueError):
        sl2r.factor_lambda((1, 0, 1), "parabolic")


def test_h_chi_reductions():
    pt = (1.1, 0.5)
    assert abs(sl2r.h_chi_eval(pt, 0.9, 0, 0) - sl2r.eigenfunction(3, *pt, 0.9)) < 1e-15
    vals = sl2r.h_chi_eval(WEDGE.mesh(), 0.0, 0.3, 0.2)
    assert np.abs(vals - 1).max() == 0


def test_h_chi_eigencheck():
    assert sl2r.h_chi_eigencheck(1.1, 0.3, 0.2, WEDGE) <= 5e-3
    ratio = sl2r.convergence_ratio(lambda G: sl2r.h_chi_eigencheck(1.1, 0.3, 0.2, G), WEDGE)
    assert abs(ratio - 4) < 0.1


def test_h_chi_symbolic():
    a, b, g = sp.Rational(3, 10), sp.Rational(1, 5), sp.Rational(11, 10)
    ca, sa = sp.cos(a / 2), sp.sin(a / 2)
    M = sp.Matrix([[ca, sa], [-sa, ca]]) * sp.diag(sp.exp(b / 2), sp.exp(-b / 2))
    b1, b2 = M * sp.Matrix([A1, A2])
    h = sp.exp(sp.I * g * sp.log(b1 / b2))
    n = (sp.sin(a) * sp.cosh(b), sp.sin(a) * sp.sinh(b), sp.cos(a))
    lhs = sum(c * op(h) for c, op in zip(n, OPS))
    val = complex((lhs - g * h).subs({A1: 1.1, A2: 0.5}).evalf())
    assert abs(val) < 1e-12


def test_qho_generators():
    assert max(sl2r.qho_bracket_residuals(12).values()) <= 1e-10
    K1, K2, K3 = sl2r.qho_generators(12)
    # truncation only touches the top level
    assert np.allclose(np.diag(K2)[:11], (np.arange(11) + 0.5) / 2)
    assert np.linalg.eigvalsh(K2).min() > 0


def test_no_partner_for_qho_rotation():
    K2 = sl2r.qho_generators(8)[1]
    assert not hwgroup.partner_exists(linalg.expm_small(-1j * 0.7 * K2)).found
