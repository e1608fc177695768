"""Clock and shift operators, the Schwinger unitary basis and the DFT.

The computational basis is the shift eigenbasis: ``U e_k = e_{k+1}`` and
``V e_k = exp(-i g k) e_k`` with ``g = 2 pi / d``.

Label phase convention.  ``S_m = c(m) U^m1 V^m2`` needs a "half" of the
integer ``m1 m2``.  For odd ``d`` the half is taken in Z_d (multiplication
by ``(d + 1) / 2``), which makes ``S_m`` depend only on ``m mod d`` and
every ``Delta(n)`` Hermitian.  For even ``d`` no such inverse exists and the
literal ``exp(-i pi m1 m2 / d)`` is used on the integer labels as given;
``S_m`` is then periodic only up to a sign, so composition identities hold
for unreduced sums ``m + m'``.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .linalg import eig_unitary


def gamma0(d: int) -> float:
    return 2 * np.pi / d


@dataclass(frozen=True)
class PhaseVec:
    d: int
    m1: int
    m2: int

    def __post_init__(self):
        object.__setattr__(self, "m1", self.m1 % self.d)
        object.__setattr__(self, "m2", self.m2 % self.d)

    def __neg__(self):
        return PhaseVec(self.d, -self.m1, -self.m2)

    def __add__(self, other: "PhaseVec"):
        return PhaseVec(self.d, self.m1 + other.m1, self.m2 + other.m2)

    def cross(self, other: "PhaseVec") -> int:
        return cross(self.m1, self.m2, other.m1, other.m2) % self.d


def cross(m1: int, m2: int, n1: int, n2: int) -> int:
    return m1 * n2 - m2 * n1


def half(d: int) -> int | None:
    """Inverse of 2 in Z_d, or None for even d."""
    return (d + 1) // 2 if d % 2 else None


def unit_phase(d: int, x: int) -> complex:
    """exp(i g x) with the integer x reduced mod d first."""
    return complex(np.exp(1j * gamma0(d) * (x % d)))


def s_phase(d: int, m1: int, m2: int) -> complex:
    """The scalar c(m) in S_m = c(m) U^m1 V^m2."""
    h = half(d)
    if h is not None:
        return unit_phase(d, -m1 * m2 * h)
    return complex(np.exp(-1j * np.pi * m1 * m2 / d))


def composition_phase(d: int, m1: int, m2: int, n1: int, n2: int) -> complex:
    """exp(i g (m x n) / 2), with the same meaning of "half" as ``s_phase``.

    S_m S_n = composition_phase(m, n) S_{m + n}.
    """
    c = cross(m1, m2, n1, n2)
    h = half(d)
    if h is not None:
        return unit_phase(d, c * h)
    return complex(np.exp(1j * np.pi * c / d))


def s_phase_table(d: int) -> np.ndarray:
    """c(m) for all canonical labels 0 <= m1, m2 < d."""
    m = np.arange(d)
    h = half(d)
    if h is not None:
        x = (-np.outer(m, m) * h) % d
        return np.exp(1j * gamma0(d) * x)
    return np.exp(-1j * np.pi * np.outer(m, m) / d)


def shift_power(d: int, k: int) -> np.ndarray:
    """U^k as an exact permutation matrix."""
    return np.roll(np.eye(d, dtype=np.complex128), k % d, axis=0)


def clock_power(d: int, k: int) -> np.ndarray:
    n = np.arange(d)
    return np.diag(np.exp(-1j * gamma0(d) * ((k * n) % d)))


def clock_shift(d: int) -> tuple[np.ndarray, np.ndarray]:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    return shift_power(d, 1), clock_power(d, 1)


def monomial(d: int, m1: int, m2: int) -> np.ndarray:
    """U^m1 V^m2, entry [j, k] = [j == k + m1] exp(-i g m2 k)."""
    k = np.arange(d)
    out = np.zeros((d, d), dtype=np.complex128)
    out[(k + m1) % d, k] = np.exp(-1j * gamma0(d) * ((m2 * k) % d))
    return out


def schwinger_s(d: int, m1: int, m2: int) -> np.ndarray:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    return s_phase(d, m1, m2) * monomial(d, m1, m2)


def expand(d: int, coeffs: np.ndarray) -> np.ndarray:
    """sum_m coeffs[m1, m2] U^m1 V^m2 over canonical labels.

    Callers fold the phase c(m) into ``coeffs`` when they want a sum of
    ``S_m`` rather than bare monomials.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if coeffs.shape != (d, d):
        raise ValueError(f"coefficient table must be {d}x{d}")
    return _kernels.expand_monomials(coeffs)


def fourier(d: int) -> np.ndarray:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    k = np.arange(d)
    return np.exp(-1j * gamma0(d) * (np.outer(k, k) % d)) / np.sqrt(d)


FOURTH_ROOTS = (1 + 0j, 1j, -1 + 0j, -1j)


def dft_multiplicities(d: int) -> dict[complex, int]:
    counts = {r: 0 for r in FOURTH_ROOTS}
    for space in eig_unitary(fourier(d)):
        root = min(FOURTH_ROOTS, key=lambda r: abs(space.eigenvalue - r))
        counts[root] += space.multiplicity
    return counts
