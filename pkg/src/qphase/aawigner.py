"""Action-angle Wigner function in the number-phase realization.

Two kernels are available.  ``delta_ct`` is the number-phase operator

    Delta_CT(J, theta) = 1/(2 pi d) sum_m exp(i(g m1 J - m2 theta)) exp(-i g m1 m2 / 2) E_N^m1 E_phi^m2

with E_N = exp(-i g N), labels m in the symmetric range around 0 and half
weight on the two Nyquist labels when d is even.  ``aa_wigner`` uses the
sector form

    W(J, theta) = 1/(2 pi) sum_{|k| < d} exp(-i k theta) conj(a(J - k/2)) a(J + k/2)

where a(x) = psi_x when x is an integer in 0..d-1 and 0 otherwise: the
half-integer shifted Fock sector is orthogonal to the integer one, and the
number labels do not wrap.  This form reproduces the pure-Fock and split
state closed forms exactly and transports rigidly under H = omega n.
"""

from dataclasses import dataclass, field
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as P

from . import _kernels
from .qosc import phase_operator
from .schwinger import gamma0
from .wk import as_state

# W_psi(t)(J, theta) = W_psi(0)(J, theta - s omega t) for H = omega n
TRANSPORT_SIGN = -1


@dataclass(frozen=True)
class ShiftedFock:
    d: int
    n: int
    beta: float
    vector: np.ndarray = field(repr=False)


def shifted_fock(d: int, n: int, beta: float) -> ShiftedFock:
    """|n + beta> = d^(-1/2) sum_l exp(-i g (n + beta) l) |phi>_l."""
    if not 0 <= beta < 1:
        raise ValueError("beta must lie in [0, 1)")
    phis = phase_operator(d).phase_states
    l = np.arange(d)
    c = np.exp(-1j * gamma0(d) * (n + beta) * l) / np.sqrt(d)
    return ShiftedFock(d, n, float(beta), phis @ c)


def delta_ct(d: int, J: float, theta: float) -> np.ndarray:
    return _kernels.delta_ct(d, J, theta)


def delta_sector(d: int, J: float, theta: float) -> np.ndarray:
    """Operator whose expectation value is ``aa_wigner``."""
    p = _two_j(J)
    out = np.zeros((d, d), dtype=np.complex128)
    for k in range(-(d - 1), d):
        lo2, hi2 = p - k, p + k
        if lo2 % 2 or not (0 <= lo2 < 2 * d and 0 <= hi2 < 2 * d):
            continue
        out[lo2 // 2, hi2 // 2] += np.exp(-1j * k * theta) / (2 * np.pi)
    return out


def _two_j(J) -> int:
    p = int(round(2 * float(J)))
    if abs(p - 2 * float(J)) > 1e-9:
        raise ValueError("2J must be an integer")
    return p


@dataclass(frozen=True)
class AAGrid:
    d: int
    J_values: np.ndarray
    theta_values: np.ndarray
    W: np.ndarray  # rows J, columns theta

    @property
    def T(self) -> int:
        return self.theta_values.size


def j_grid(d: int) -> np.ndarray:
    return np.arange(2 * d) / 2


def theta_grid(T: int) -> np.ndarray:
    return 2 * np.pi * np.arange(T) / T


def aa_wigner(psi, J: float, theta: float) -> float:
    v = as_state(psi)
    return float(_kernels.aa_table(v, np.array([_two_j(J)]), np.array([float(theta)]))[0, 0])


def aa_grid(psi, T: int | None = None) -> AAGrid:
    v = as_state(psi)
    d = v.size
    T = 4 * d if T is None else T
    Js, ths = j_grid(d), theta_grid(T)
    W = _kernels.aa_table(v, np.arange(2 * d), ths)
    return AAGrid(d, Js, ths, W)


def aa_marginals(psi, grid: AAGrid) -> tuple[np.ndarray, np.ndarray]:
    """P(J) from the k = 0 term and P(theta) = sum over the J grid of W."""
    v = as_state(psi)
    pj = np.zeros(grid.J_values.size)
    pj[::2] = np.abs(v) ** 2
    return pj, grid.W.sum(axis=0)


def trapezoid_periodic(values: np.ndarray, thetas: np.ndarray) -> float:
    """Integral over [0, 2 pi) of a periodic function sampled on a uniform grid."""
    return float(values.sum() * 2 * np.pi / thetas.size)


# symbols


def wwm_symbol(F, J_values, theta_values, kernel: str = "ct") -> np.ndarray:
    """Table f(J, theta) = 2 pi Tr{F Delta(J, theta)}.

    ``kernel="ct"`` pairs with Delta_CT; ``kernel="aa"`` with the sector
    operator behind ``aa_wigner``.  For diagonal F = H(N) both give H(J) at
    integer J, but only "aa" vanishes at half-integer J.
    """
    F = np.asarray(F, dtype=np.complex128)
    d = F.shape[0]
    build = {"ct": delta_ct, "aa": delta_sector}[kernel]
    out = np.empty((len(J_values), len(theta_values)), dtype=np.complex128)
    for a, J in enumerate(J_values):
        for b, th in enumerate(theta_values):
            out[a, b] = 2 * np.pi * np.trace(F @ build(d, J, th))
    return out


# spectra and dynamics


@dataclass(frozen=True)
class SpectrumFn:
    """H(n) as a real polynomial, coefficients in increasing degree."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = np.trim_zeros(np.asarray(self.coeffs, dtype=float), "b")
        object.__setattr__(self, "coeffs", tuple(float(x) for x in c) or (0.0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n):
        return P.polyval(np.asarray(n, dtype=float), self.coeffs)

    def derivative(self, k: int) -> "SpectrumFn":
        return SpectrumFn(tuple(P.polyder(self.coeffs, k)) if k <= self.degree else (0.0,))

    def matrix(self, d: int) -> np.ndarray:
        return np.diag(self(np.arange(d))).astype(np.complex128)


def evolve(psi0, H: SpectrumFn, t: float) -> np.ndarray:
    v = np.asarray(psi0, dtype=np.complex128)
    return np.exp(-1j * H(np.arange(v.size)) * t) * v


def moyal_rhs(grid: AAGrid, H: SpectrumFn) -> AAGrid:
    """dW/dt = -i {H(J + (i/2) d_theta) - H(J - (i/2) d_theta)} W.

    The difference keeps only odd Taylor terms,
    2 sum_{j odd} H^(j)(J) / j! ((i/2) d_theta)^j,
    and d_theta is applied spectrally on the uniform theta grid.
    """
    if H.degree > 4:
        raise ValueError("moyal_rhs supports polynomials of degree <= 4")
    T = grid.T
    if T < 2 * grid.d - 1:
        raise ValueError("theta grid too coarse for the Wigner modes")
    X = np.fft.fft(grid.W, axis=1)
    # derivative symbol: d_theta exp(i q theta) = i q exp(i q theta)
    q = np.fft.fftfreq(T, d=1.0 / T)
    x = (0.5j) * (1j * q)  # (i/2) d_theta on each mode
    J = grid.J_values[:, None]
    diff = np.zeros((grid.J_values.size, T), dtype=np.complex128)
    for j in range(1, H.degree + 1, 2):
        diff += 2 * H.derivative(j)(J) / factorial(j) * x[None, :] ** j
    rhs = np.fft.ifft(-1j * diff * X, axis=1)
    if np.abs(rhs.imag).max() > 1e-9 * max(1.0, np.abs(rhs.real).max()):
        raise ArithmeticError("Moyal right-hand side is not real")
    return AAGrid(grid.d, grid.J_values, grid.theta_values, rhs.real)


@dataclass(frozen=True)
class EomReport:
    r: int
    elements: list[dict]  # one entry per n

    @property
    def max_direct_residual(self) -> float:
        return max((e["direct_residual"] for e in self.elements), default=0.0)

    def literal_agrees(self, tol: float = 1e-9, wrap: bool = False) -> bool:
        sel = [e for e in self.elements if e["wrap"] == wrap]
        return all(abs(e["direct_rate"] - e["literal_rate"]) <= tol for e in sel)


def phase_op_eom_check(H: SpectrumFn, r: int, t_samples, d: int, dt: float = 1e-5) -> EomReport:
    """Heisenberg matrix elements <n - r|exp(iHt) E^r exp(-iHt)|n>.

    i d/dt of the element equals (H(n) - H(n - r)) times the element, where
    n - r is the actual (wrapped) label.  Each entry also carries the
    shifted form H(n + r) - H(n), with H read as a polynomial, for comparison.
    """
    E = phase_operator(d).E
    Er = np.linalg.matrix_power(E, r % d) if r % d else np.eye(d, dtype=np.complex128)
    h = H(np.arange(d))

    def heis(t):
        u = np.exp(-1j * h * t)
        return (u.conj()[:, None] * Er) * u[None, :]

    elements = []
    for n in range(d):
        target = (n - r) % d
        direct = h[n] - h[target]
        literal = float(H(n + r) - H(n))
        worst = 0.0
        for t in t_samples:
            el = heis(t)[target, n]
            deriv = 1j * (heis(t + dt)[target, n] - heis(t - dt)[target, n]) / (2 * dt)
            worst = max(worst, abs(deriv - direct * el))
        elements.append(
            {
                "n": n,
                "target": target,
                "wrap": n < r,
                "direct_rate": float(direct),
                "literal_rate": literal,
                "direct_residual": float(worst),
            }
        )
    return EomReport(r, elements)


def rigid_transport_error(psi, omega: float, t: float, T: int | None = None) -> float:
    """max |W_psi(t)(J, theta) - W_psi(0)(J, theta - s omega t)| with s = TRANSPORT_SIGN."""
    v = as_state(psi)
    d = v.size
    T = 4 * d if T is None else T
    ths = theta_grid(T)
    H = SpectrumFn((0.0, omega))
    wt = _kernels.aa_table(evolve(v, H, t), np.arange(2 * d), ths)
    w0 = _kernels.aa_table(v, np.arange(2 * d), ths - TRANSPORT_SIGN * omega * t)
    return float(np.abs(wt - w0).max())
