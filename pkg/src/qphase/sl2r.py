"""SL(2, R) canonical transformations at three levels.

* 2x2 subgroup matrices and their generators.
* Exact finite-dimensional representations on homogeneous polynomials of
  degree 2l in u = a1 + i a2, v = a1 - i a2.
* Finite-difference checks of the l = 0 phase-space eigenfunctions.

The phase-space generators are the first-order operators

    K1 = -i (a1 d2 + a2 d1) / 2
    K2 = -i (a1 d2 - a2 d1) / 2
    K3 = -i (a1 d1 - a2 d2) / 2

i.e. K_j f = -i (A_j a) . grad f with A = (k1, -k2, k3), where k_j is the
derivative at 0 of the 2x2 subgroup Omega_j.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import expm_small

K1_2x2 = 0.5 * np.array([[0.0, 1.0], [1.0, 0.0]])
K2_2x2 = 0.5 * np.array([[0.0, 1.0], [-1.0, 0.0]])
K3_2x2 = 0.5 * np.array([[1.0, 0.0], [0.0, -1.0]])
GENERATORS_2x2 = (K1_2x2, K2_2x2, K3_2x2)
VECTOR_FIELDS = (K1_2x2, -K2_2x2, K3_2x2)


def subgroup_matrix(j: int, t: float) -> np.ndarray:
    c = t / 2
    if j == 1:
        return np.array([[np.cosh(c), np.sinh(c)], [np.sinh(c), np.cosh(c)]])
    if j == 2:
        return np.array([[np.cos(c), np.sin(c)], [-np.sin(c), np.cos(c)]])
    if j == 3:
        return np.array([[np.exp(c), 0.0], [0.0, np.exp(-c)]])
    raise ValueError("j must be 1, 2 or 3")


def hermitian_generators_2x2() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """K_j = -i k_j: these obey the same brackets as the phase-space K_j."""
    return tuple(-1j * k for k in GENERATORS_2x2)


def unitary_element_2x2(j: int, gamma: float) -> np.ndarray:
    """exp(-i gamma K_j) in the defining representation, equal to Omega_j(-gamma)."""
    return expm_small(-1j * gamma * hermitian_generators_2x2()[j - 1])


def lambda_element_2x2(lam) -> np.ndarray:
    K = hermitian_generators_2x2()
    return expm_small(-1j * sum(x * k for x, k in zip(lam, K)))


# polynomial representations


@dataclass(frozen=True)
class PolyRep:
    ell: Fraction
    K1: np.ndarray = field(repr=False)
    K2: np.ndarray = field(repr=False)
    K3: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return int(2 * self.ell) + 1

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.dim) - float(self.ell)

    @property
    def raising(self) -> np.ndarray:
        """K1 - i K3 = -u d/dv: e(m) -> -(l - m) e(m + 1)."""
        return self.K1 - 1j * self.K3

    @property
    def lowering(self) -> np.ndarray:
        """K1 + i K3 = v d/du: e(m) -> (l + m) e(m - 1)."""
        return self.K1 + 1j * self.K3


def _as_half_integer(ell) -> Fraction:
    x = Fraction(ell).limit_denominator(2)
    if x < 0 or x.denominator > 2 or abs(float(x) - float(ell)) > 1e-12:
        raise ValueError("ell must be a nonnegative integer or half-integer")
    return x


def poly_rep(ell) -> PolyRep:
    """Matrices of K1, K2, K3 on the basis e(m) = u^(l+m) v^(l-m), m = -l..l."""
    ell = _as_half_integer(ell)
    n = int(2 * ell) + 1
    m = np.arange(n) - float(ell)
    L = float(ell)
    low = np.zeros((n, n), dtype=np.complex128)  # v du
    up = np.zeros((n, n), dtype=np.complex128)  # -u dv
    for i in range(n):
        if i > 0:
            low[i - 1, i] = L + m[i]
        if i < n - 1:
            up[i + 1, i] = -(L - m[i])
    K1 = (low + up) / 2
    K3 = 1j * (up - low) / 2
    K2 = np.diag(m).astype(np.complex128)
    return PolyRep(ell, K1, K2, K3)


def casimir(rep: PolyRep) -> np.ndarray:
    """K2^2 - K1^2 - K3^2, equal to l(l+1) I."""
    return rep.K2 @ rep.K2 - rep.K1 @ rep.K1 - rep.K3 @ rep.K3


def ladder_casimir(rep: PolyRep) -> np.ndarray:
    """(K+K- + K-K+)/2 - K2^2 with K+- = K1 +- i K3; equals -l(l+1) I."""
    kp = rep.K1 + 1j * rep.K3
    km = rep.K1 - 1j * rep.K3
    return 0.5 * (kp @ km + km @ kp) - rep.K2 @ rep.K2


def bracket_residuals(K1, K2, K3) -> dict[str, float]:
    def c(a, b):
        return a @ b - b @ a

    return {
        "[K1,K2] = iK3": float(np.abs(c(K1, K2) - 1j * K3).max()),
        "[K2,K3] = iK1": float(np.abs(c(K2, K3) - 1j * K1).max()),
        "[K1,K3] = iK2": float(np.abs(c(K1, K3) - 1j * K2).max()),
    }


# quantum harmonic oscillator realization


def qho_generators(M: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x^2 - p^2)/4, (x^2 + p^2)/4, (xp + px)/4 on the first M Fock states."""
    a = np.diag(np.sqrt(np.arange(1, M)), 1).astype(np.complex128)
    ad = a.conj().T
    x = (a + ad) / np.sqrt(2)
    p = (a - ad) / (1j * np.sqrt(2))
    return (x @ x - p @ p) / 4, (x @ x + p @ p) / 4, (x @ p + p @ x) / 4


def qho_bracket_residuals(M: int) -> dict[str, float]:
    """Brackets on the leading (M - 2) block, away from the truncation edge."""
    K1, K2, K3 = qho_generators(M)
    b = M - 2

    def c(x, y):
        return (x @ y - y @ x)[:b, :b]

    return {
        "[K1,K2] = iK3": float(np.abs(c(K1, K2) - 1j * K3[:b, :b]).max()),
        "[K2,K3] = iK1": float(np.abs(c(K2, K3) - 1j * K1[:b, :b]).max()),
        "[K1,K3] = iK2": float(np.abs(c(K1, K3) - 1j * K2[:b, :b]).max()),
    }


# factorization of Lambda . K


@dataclass(frozen=True)
class Sl2rParam:
    lambda_vec: tuple[float, float, float]

    @property
    def invariant(self) -> float:
        l1, l2, l3 = self.lambda_vec
        return l1 * l1 + l3 * l3 - l2 * l2


@dataclass(frozen=True)
class Factorization:
    mode: str
    a: float
    b: float
    Lambda: float
    reconstruction_error: float
    conjugation_residual: float


def _elliptic(l1, l2, l3):
    inv = l1 * l1 + l3 * l3 - l2 * l2
    if inv <= 0 or abs(l2) > abs(l1) or (abs(l2) == abs(l1) and l1 != 0):
        raise ValueError("elliptic mode needs Lambda^2 > 0 and |L2| < |L1| (or L1 = L2 = 0)")
    lam = np.sqrt(inv)
    b = np.arctanh(l2 / l1) if l1 != 0 else 0.0
    sin_a = np.sign(l1) * np.sqrt(max(l1 * l1 - l2 * l2, 0.0)) / lam
    a = np.arctan2(sin_a, l3 / lam)
    vec = (lam * np.sin(a) * np.cosh(b), lam * np.sin(a) * np.sinh(b), lam * np.cos(a))
    T = unitary_element_2x2(2, -a) @ unitary_element_2x2(3, b)
    core = unitary_element_2x2(3, lam)
    return a, b, lam, vec, T, core


def _hyperbolic(l1, l2, l3):
    inv = l2 * l2 - l1 * l1 - l3 * l3
    if inv <= 0:
        raise ValueError("hyperbolic mode needs L2^2 > L1^2 + L3^2")
    lam = np.sign(l2) * np.sqrt(inv)
    a = np.arccosh(max(l2 / lam, 1.0))
    b = np.arctan2(l1 / lam, l3 / lam) if (l1 or l3) else 0.0
    vec = (lam * np.sinh(a) * np.sin(b), lam * np.cosh(a), lam * np.sinh(a) * np.cos(b))
    # the parameter signs are both negated relative to the plain G1^a G2^b
    T = unitary_element_2x2(1, -a) @ unitary_element_2x2(2, -b)
    core = unitary_element_2x2(2, lam)
    return a, b, lam, vec, T, core


def factor_lambda(p: Sl2rParam | tuple, mode: str) -> Factorization:
    """Write exp(-i Lambda.K) as T^-1 G_j^Lambda T and verify it on 2x2 matrices.

    elliptic:   L = Lam (sin a cosh b, sin a sinh b, cos a),  T = G2^-a G3^b,  j = 3
    hyperbolic: L = Lam (sinh a sin b, cosh a, sinh a cos b), T = G1^-a G2^-b, j = 2
    """
    vec_in = p.lambda_vec if isinstance(p, Sl2rParam) else tuple(p)
    l1, l2, l3 = (float(x) for x in vec_in)
    if mode == "elliptic":
        a, b, lam, vec, T, core = _elliptic(l1, l2, l3)
    elif mode == "hyperbolic":
        a, b, lam, vec, T, core = _hyperbolic(l1, l2, l3)
    else:
        raise ValueError("mode must be 'elliptic' or 'hyperbolic'")
    recon = float(np.max(np.abs(np.subtract(vec, (l1, l2, l3)))))
    lhs = lambda_element_2x2((l1, l2, l3))
    rhs = np.linalg.inv(T) @ core @ T
    return Factorization(mode, float(a), float(b), float(lam), recon, float(np.abs(lhs - rhs).max()))


# phase-space eigenfunctions on grids


@dataclass(frozen=True)
class GridSpec:
    a1_min: float
    a1_max: float
    a2_min: float
    a2_max: float
    h: float

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        n1 = int(round((self.a1_max - self.a1_min) / self.h)) + 1
        n2 = int(round((self.a2_max - self.a2_min) / self.h)) + 1
        return (self.a1_min + self.h * np.arange(n1), self.a2_min + self.h * np.arange(n2))

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        x, y = self.axes()
        return np.meshgrid(x, y, indexing="ij")

    def halved(self) -> "GridSpec":
        return GridSpec(self.a1_min, self.a1_max, self.a2_min, self.a2_max, self.h / 2)

    def corners(self) -> np.ndarray:
        return np.array(
            [[self.a1_min, self.a2_min], [self.a1_min, self.a2_max],
             [self.a1_max, self.a2_min], [self.a1_max, self.a2_max]]
        )


class SingularGridError(ValueError):
    pass


def _line_clearance(grid: GridSpec, normal) -> float:
    """Distance from the rectangle to the line normal . a = 0 (0 if crossed)."""
    v = grid.corners() @ np.asarray(normal, dtype=float)
    if v.min() <= 0 <= v.max():
        return 0.0
    return float(np.abs(v).min() / np.linalg.norm(normal))


def _point_clearance(grid: GridSpec) -> float:
    dx = max(grid.a1_min, 0.0, -grid.a1_max)
    dy = max(grid.a2_min, 0.0, -grid.a2_max)
    return float(np.hypot(dx, dy))


def check_grid(j: int, gamma: float, grid: GridSpec, margin: float | None = None) -> None:
    """Raise SingularGridError when the grid comes within ``margin`` of the singular locus.

    The default margin is 10 grid steps.
    """
    margin = 10 * grid.h if margin is None else margin
    if j == 1:
        clear = min(_line_clearance(grid, (1, -1)), _line_clearance(grid, (1, 1)))
    elif j == 2:
        clear = _point_clearance(grid)
        if float(gamma) != int(gamma):
            # branch cut along the negative a1 axis
            near_axis = grid.a2_min - margin <= 0 <= grid.a2_max + margin
            if near_axis and grid.a1_min <= margin:
                clear = 0.0
    elif j == 3:
        clear = min(_line_clearance(grid, (1, 0)), _line_clearance(grid, (0, 1)))
    else:
        raise ValueError("j must be 1, 2 or 3")
    if clear <= margin:
        raise SingularGridError(f"grid is within {margin:g} of the singular locus of e_{j}")


def eigenfunction(j: int, a1, a2, gamma: float) -> np.ndarray:
    """The l = 0 eigenfunction e_j(a, gamma), unnormalized (C_j = 1)."""
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    if j == 1:
        return np.exp(1j * gamma * np.log(((a1 + a2) / (a1 - a2)).astype(complex)))
    if j == 2:
        return np.exp(2j * gamma * np.arctan2(a2, a1))
    if j == 3:
        return np.exp(1j * gamma * np.log((a1 / a2).astype(complex)))
    raise ValueError("j must be 1, 2 or 3")


def apply_vector_field(B: np.ndarray, f: np.ndarray, a1: np.ndarray, a2: np.ndarray, h: float) -> np.ndarray:
    """-i (B a) . grad f on interior points, by central differences."""
    d1 = (f[2:, 1:-1] - f[:-2, 1:-1]) / (2 * h)
    d2 = (f[1:-1, 2:] - f[1:-1, :-2]) / (2 * h)
    x, y = a1[1:-1, 1:-1], a2[1:-1, 1:-1]
    v1 = B[0, 0] * x + B[0, 1] * y
    v2 = B[1, 0] * x + B[1, 1] * y
    return -1j * (v1 * d1 + v2 * d2)


def _residual(Kf: np.ndarray, f: np.ndarray, gamma: float) -> float:
    inner = f[1:-1, 1:-1]
    return float(np.linalg.norm(Kf - gamma * inner) / np.linalg.norm(inner))


def grid_eigencheck(j: int, gamma: float, grid: GridSpec) -> float:
    """Relative residual ||K_j e_j - gamma e_j|| / ||e_j|| over interior grid points."""
    check_grid(j, gamma, grid)
    a1, a2 = grid.mesh()
    f = eigenfunction(j, a1, a2, gamma)
    return _residual(apply_vector_field(VECTOR_FIELDS[j - 1], f, a1, a2, grid.h), f, gamma)


def convergence_ratio(residual_fn, grid: GridSpec) -> float:
    """residual(h) / residual(h/2); close to 4 for a second-order scheme."""
    return residual_fn(grid) / residual_fn(grid.halved())


def transport_matrix(a: float, b: float) -> np.ndarray:
    """Point map a -> Omega2(a) Omega3(b) a used to carry e3 onto the Lambda direction."""
    return subgroup_matrix(2, a) @ subgroup_matrix(3, b)


def lambda_direction(a: float, b: float) -> np.ndarray:
    return np.array([np.sin(a) * np.cosh(b), np.sin(a) * np.sinh(b), np.cos(a)])


def h_chi_eval(alpha, gamma: float, a: float, b: float) -> np.ndarray | complex:
    a1, a2 = (np.asarray(x, dtype=float) for x in alpha)
    M = transport_matrix(a, b)
    b1 = M[0, 0] * a1 + M[0, 1] * a2
    b2 = M[1, 0] * a1 + M[1, 1] * a2
    if np.any(np.abs(b1) < 1e-12) or np.any(np.abs(b2) < 1e-12):
        raise SingularGridError("transported point lies on the singular locus of e_3")
    val = eigenfunction(3, b1, b2, gamma)
    return complex(val) if val.ndim == 0 else val


def h_chi_eigencheck(gamma: float, a: float, b: float, grid: GridSpec, margin: float | None = None) -> float:
    """Relative residual of n.K h = gamma h, n = (sin a cosh b, sin a sinh b, cos a)."""
    margin = 10 * grid.h if margin is None else margin
    a1, a2 = grid.mesh()
    M = transport_matrix(a, b)
    b1 = M[0, 0] * a1 + M[0, 1] * a2
    b2 = M[1, 0] * a1 + M[1, 1] * a2
    if min(np.abs(b1).min(), np.abs(b2).min()) <= margin:
        raise SingularGridError("transported grid is too close to the singular locus of e_3")
    f = h_chi_eval((a1, a2), gamma, a, b)
    n = lambda_direction(a, b)
    B = sum(c * A for c, A in zip(n, VECTOR_FIELDS))
    return _residual(apply_vector_field(B, f, a1, a2, grid.h), f, gamma)
