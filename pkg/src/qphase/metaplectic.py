"""Gauss-sum construction of the unitary Ghat(R) for R in SL(2, Z_D).

The three-case Gauss-sum formula, read literally at a matrix M, produces an
operator X with X S_m X^dagger = S_{M^T m}.  ``metaplectic_g`` therefore
evaluates the formula at R^T and takes the adjoint, which yields the
covariance used everywhere in this package:

    Ghat(R)^dagger S_m Ghat(R) = S_{R m},
    Ghat(R)^dagger Delta(n) Ghat(R) = Delta(R n).

With that convention R -> Ghat(R) reverses products, so Ghat(A) Ghat(B) is
proportional to Ghat(B A).
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import phase_fit, unitarity_error
from .modring import SL2Elem, gauss_sum, mod_inverse, require_odd_prime, sl2_mul
from .schwinger import expand, gamma0, s_phase_table, schwinger_s
from .wk import delta_table

GENERIC, PARABOLIC, DIAGONAL, IDENTITY = "generic", "parabolic", "diagonal", "identity"


@dataclass(frozen=True)
class MetaplecticOp:
    r: SL2Elem
    mat: np.ndarray = field(repr=False)
    case_tag: str

    @property
    def d(self) -> int:
        return self.r.d


def _phase(d: int, x: np.ndarray) -> np.ndarray:
    return np.exp(1j * gamma0(d) * (x % d))


def _gauss_formula(d: int, s1: int, t1: int, s2: int, t2: int) -> tuple[np.ndarray, str]:
    """The three-case expansion evaluated at [[s1, t1], [s2, t2]]."""
    delta = (2 - s1 - t2) % d
    ph = s_phase_table(d)
    m = np.arange(d)
    if delta:
        inv = mod_inverse(2 * delta, d)
        a, b = m[:, None], m[None, :]
        x = (t1 * a * a + (t2 - s1) * a * b - s2 * b * b) * inv
        coeffs = _phase(d, x) * ph
        pre = gauss_sum(1, d) * gauss_sum(delta, d) / d
        return pre * expand(d, coeffs), GENERIC
    if t1:
        inv2, inv1 = mod_inverse(2 * t1, d), mod_inverse(t1, d)
        coeffs = np.zeros((d, d), dtype=np.complex128)
        # label (a (s1 - 1) / t1, a), division taken in Z_d
        rows = (m * (s1 - 1) * inv1) % d
        coeffs[rows, m] = _phase(d, m * m * inv2) * ph[rows, m]
        return gauss_sum(-2 * t1, d) / np.sqrt(d) * expand(d, coeffs), PARABOLIC
    if s2:
        inv2 = mod_inverse(2 * s2, d)
        coeffs = np.zeros((d, d), dtype=np.complex128)
        coeffs[m, 0] = _phase(d, -m * m * inv2) * ph[m, 0]
        return gauss_sum(-2 * s2, d) / np.sqrt(d) * expand(d, coeffs), DIAGONAL
    return np.eye(d, dtype=np.complex128), IDENTITY


def metaplectic_g(r: SL2Elem) -> MetaplecticOp:
    d = r.d
    require_odd_prime(d)
    if r.det != 1:
        raise ValueError("determinant must be 1 mod d")
    rt = r.transpose()
    mat, tag = _gauss_formula(d, rt.s1, rt.t1, rt.s2, rt.t2)
    return MetaplecticOp(r, np.ascontiguousarray(mat.conj().T), tag)


def covariance_error(g: MetaplecticOp) -> float:
    """max_m ||G^dagger S_m G - S_{R m}||_F."""
    d, G = g.d, g.mat
    Gh = G.conj().T
    worst = 0.0
    for m1 in range(d):
        for m2 in range(d):
            lhs = Gh @ schwinger_s(d, m1, m2) @ G
            worst = max(worst, float(np.linalg.norm(lhs - schwinger_s(d, *g.r.act(m1, m2)))))
    return worst


def wk_covariance_error(g: MetaplecticOp, table: np.ndarray | None = None) -> float:
    """max_n ||G^dagger Delta(n) G - Delta(R n)||_F."""
    d, G = g.d, g.mat
    if table is None:
        table = delta_table(d)
    lhs = np.einsum("ij,abjk,kl->abil", G.conj().T, table, G)
    worst = 0.0
    for n1 in range(d):
        for n2 in range(d):
            worst = max(worst, float(np.linalg.norm(lhs[n1, n2] - table[g.r.act(n1, n2)])))
    return worst


def unitarity(g: MetaplecticOp) -> float:
    return unitarity_error(g.mat)


class ProjectivityError(ArithmeticError):
    pass


def projective_multiplier(r1: SL2Elem, r2: SL2Elem, tol: float = 1e-9) -> tuple[complex, float]:
    """Phase lam with Ghat(r1) Ghat(r2) = lam Ghat(r2 r1); returns (lam, residual).

    The composite is r2 r1 because the covariance convention makes the
    assignment R -> Ghat(R) an anti-homomorphism.
    """
    prod = metaplectic_g(r1).mat @ metaplectic_g(r2).mat
    target = metaplectic_g(sl2_mul(r2, r1)).mat
    lam, res = phase_fit(prod, target)
    if res > tol:
        raise ProjectivityError(f"residual {res:.3e} after phase extraction")
    return lam, res


def projective_order(g: MetaplecticOp, cap: int | None = None, tol: float = 1e-9) -> int:
    """Least k >= 1 with G^k proportional to the identity."""
    d = g.d
    cap = cap or d**3
    x = g.mat.copy()
    eye = np.eye(d)
    for k in range(1, cap + 1):
        _, res = phase_fit(x, eye)
        if res <= tol:
            return k
        x = x @ g.mat
    raise ArithmeticError("no projective order found")
