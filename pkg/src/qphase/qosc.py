"""Admissible q-oscillator at a root of unity and the unitary phase operator.

With q = exp(-i g kappa), h = (d - 1) / 2 and [x] = (q^x - q^-x) / (q - q^-1):

    f(n)     = [n + h] + C,   C = 1 / |sin(g kappa)|
    A |n>    = sqrt(f(n)) |n - 1 mod d>
    Q        = diag(q^(-n - h))

These satisfy A Q = q^-1 Q A,  A^dagger A = C + [N] with [N] = (Q^-1 - Q)/(q - q^-1),
and A A^dagger - q A^dagger A = (1 - q) C + Q.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import fractional_matrix_power

from .linalg import frob
from .schwinger import gamma0, half, schwinger_s, unit_phase


@dataclass(frozen=True)
class QOscillator:
    d: int
    kappa: int
    q: complex
    C: float
    f: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    Adag: np.ndarray = field(repr=False)
    Q: np.ndarray = field(repr=False)

    @property
    def N(self) -> np.ndarray:
        return np.diag(np.arange(self.d)).astype(np.complex128)


def structure_function(d: int, kappa: int) -> np.ndarray:
    g = gamma0(d)
    s = np.sin(g * kappa)
    n = np.arange(d)
    return np.sin(g * kappa * (n + (d - 1) / 2)) / s + 1 / abs(s)


def build_qosc(d: int, kappa: int) -> QOscillator:
    if d < 3 or d % 2 == 0:
        raise ValueError("dimension must be odd and >= 3")
    if kappa % d == 0:
        raise ValueError("kappa must be nonzero mod d")
    g = gamma0(d)
    q = complex(np.exp(-1j * g * kappa))
    f = structure_function(d, kappa)
    if f.min() < -1e-12:
        raise ArithmeticError("structure function went negative")
    n = np.arange(d)
    A = np.zeros((d, d), dtype=np.complex128)
    A[(n - 1) % d, n] = np.sqrt(np.clip(f, 0, None))
    h = (d - 1) // 2
    Q = np.diag(np.exp(1j * g * kappa * (n + h)))  # q^(-n - h)
    return QOscillator(d, kappa, q, 1 / abs(np.sin(g * kappa)), f, A, A.conj().T, Q)


def q_number_op(o: QOscillator) -> np.ndarray:
    Qi = np.linalg.inv(o.Q)
    return (Qi - o.Q) / (o.q - 1 / o.q)


def qosc_algebra_residuals(o: QOscillator) -> dict[str, float]:
    A, Ad, Q, q, C = o.A, o.Adag, o.Q, o.q, o.C
    eye = np.eye(o.d)
    return {
        "AQ = q^-1 QA": frob(A @ Q - Q @ A / q),
        "AdagA = C + [N]": frob(Ad @ A - (C * eye + q_number_op(o))),
        "AAdag - q AdagA = (1-q)C + Q": frob(A @ Ad - q * Ad @ A - ((1 - q) * C * eye + Q)),
    }


# u_q sl(2) from two Schwinger elements


@dataclass(frozen=True)
class UqSl2:
    d: int
    kappa: int
    q: complex
    q_half: complex
    coeff: complex
    Jminus: np.ndarray = field(repr=False)
    Jplus: np.ndarray = field(repr=False)
    L: np.ndarray = field(repr=False)


def uqsl2_from_schwinger(d: int, m: tuple[int, int], mprime: tuple[int, int]) -> UqSl2:
    """J- = c (S_m + S_m'), J+ = J-^dagger, L = S_{m - m'}.

    q = exp(-i g kappa) with kappa = m x m', and q^(1/2) is taken in Z_d.
    The real coefficient c = (-(q^(1/2) - q^(-1/2))^-2)^(1/2) satisfies the
    constraint d d'* = -(q^(1/2) - q^(-1/2))^-2 with d = d' = c.
    """
    h = half(d)
    if h is None:
        raise ValueError("dimension must be odd")
    kappa = (m[0] * mprime[1] - m[1] * mprime[0]) % d
    if kappa == 0:
        raise ValueError("m x m' must be nonzero mod d")
    q = unit_phase(d, -kappa)
    qh = unit_phase(d, -kappa * h)
    c2 = -1 / (qh - 1 / qh) ** 2
    coeff = complex(np.sqrt(c2.real))
    Jm = coeff * (schwinger_s(d, *m) + schwinger_s(d, *mprime))
    L = schwinger_s(d, m[0] - mprime[0], m[1] - mprime[1])
    return UqSl2(d, kappa, q, qh, coeff, Jm, Jm.conj().T, L)


def uqsl2_residuals(u: UqSl2) -> dict[str, float]:
    Jm, Jp, L, q, qh = u.Jminus, u.Jplus, u.L, u.q, u.q_half
    Li = np.linalg.inv(L)
    return {
        "J-L = qLJ-": frob(Jm @ L - q * L @ Jm),
        "J+L = q^-1 LJ+": frob(Jp @ L - L @ Jp / q),
        "[J-,J+] = -(L - L^-1)/(q^1/2 - q^-1/2)": frob(Jm @ Jp - Jp @ Jm + (L - Li) / (qh - 1 / qh)),
        "L unitary": frob(L.conj().T @ L - np.eye(u.d)),
    }


# phase operator


@dataclass(frozen=True)
class PhaseOp:
    d: int
    E: np.ndarray = field(repr=False)
    phase_states: np.ndarray = field(repr=False)  # column r is |phi>_r

    def eigenvalue(self, r: int) -> complex:
        return unit_phase(self.d, r)


def phase_operator(d: int) -> PhaseOp:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    n = np.arange(d)
    E = np.zeros((d, d), dtype=np.complex128)
    E[(n - 1) % d, n] = 1
    states = np.exp(1j * gamma0(d) * (np.outer(n, n) % d)) / np.sqrt(d)
    return PhaseOp(d, E, states)


def phase_eigen_residual(p: PhaseOp) -> float:
    res = 0.0
    for r in range(p.d):
        v = p.phase_states[:, r]
        res = max(res, float(np.linalg.norm(p.E @ v - p.eigenvalue(r) * v)))
    return res


def spectral_power(u: np.ndarray, x: float) -> np.ndarray:
    """u^x for real x on the principal branch (unitary u)."""
    return fractional_matrix_power(u, x)


@dataclass(frozen=True)
class CommutatorReport:
    d: int
    r: int
    qe_residuals: dict[tuple[int, int], float]
    interior: dict[int, complex]  # n -> <n-r|[N,E^r]|n> for n >= r
    wrap: dict[int, complex]  # n -> same element for n < r (label n - r + d)

    @property
    def max_qe_residual(self) -> float:
        return max(self.qe_residuals.values(), default=0.0)

    @property
    def interior_error(self) -> float:
        return max((abs(v + self.r) for v in self.interior.values()), default=0.0)

    @property
    def wrap_error(self) -> float:
        return max((abs(v - (self.d - self.r)) for v in self.wrap.values()), default=0.0)


def number_phase_commutators(d: int, r: int, kappa: int = 1, max_power: int = 3) -> CommutatorReport:
    """Integer-power Q/E relation and the matrix elements of [N, E^r].

    Q^a E^b = q^(ab) E^b Q^a is checked for 0 <= a, b <= max_power.  For
    n >= r the element <n - r|[N, E^r]|n> equals -r; for n < r the target
    label wraps to n - r + d and the element equals d - r.  The Q/E part
    needs an odd d and is left empty otherwise.
    """
    E = phase_operator(d).E
    qe = {}
    o = build_qosc(d, kappa) if d % 2 else None
    for a in range(max_power + 1 if o else 0):
        Qa = np.linalg.matrix_power(o.Q, a)
        for b in range(max_power + 1):
            Eb = np.linalg.matrix_power(E, b)
            qe[(a, b)] = frob(Qa @ Eb - o.q ** (a * b) * Eb @ Qa)
    N = np.diag(np.arange(d)).astype(np.complex128)
    Er = np.linalg.matrix_power(E, r % d) if r % d else np.eye(d, dtype=np.complex128)
    comm = N @ Er - Er @ N
    interior, wrap = {}, {}
    for n in range(d):
        if n >= r:
            interior[n] = complex(comm[n - r, n])
        else:
            wrap[n] = complex(comm[(n - r) % d, n])
    return CommutatorReport(d, r, qe, interior, wrap)
