"""Discrete Wigner-Kirkwood operator basis Delta(n) and its Schwinger dual.

    Delta(n) = d^(-3/2) sum_m exp(-i g m x n) S_m
    S_m      = d^(-1/2) sum_n exp(+i g m x n) Delta(n)

The normalization is kept as is, so sum_n Delta(n) = sqrt(d) I and a Wigner
function sums to sqrt(d) rather than 1.
"""

import numpy as np

from . import _kernels
from .schwinger import expand, gamma0, s_phase_table


class NormalizationError(ValueError):
    pass


def _delta_coeffs(d: int, n1: int, n2: int) -> np.ndarray:
    m = np.arange(d)
    x = (-(np.outer(m, np.full(d, n2)) - np.outer(np.full(d, n1), m))) % d  # -(m1 n2 - m2 n1)
    return s_phase_table(d) * np.exp(1j * gamma0(d) * x) * d**-1.5


def delta_wk(d: int, n1: int, n2: int) -> np.ndarray:
    return expand(d, _delta_coeffs(d, n1 % d, n2 % d))


def delta_table(d: int) -> np.ndarray:
    """Array of shape (d, d, d, d); entry [n1, n2] is the matrix Delta(n)."""
    return _kernels.delta_table(s_phase_table(d))


def s_from_delta(d: int, m1: int, m2: int, table: np.ndarray | None = None) -> np.ndarray:
    if table is None:
        table = delta_table(d)
    n = np.arange(d)
    # m x n = m1 n2 - m2 n1 over the (n1, n2) grid
    x = (m1 * n[None, :] - m2 * n[:, None]) % d
    w = np.exp(1j * gamma0(d) * x) / np.sqrt(d)
    return np.tensordot(w, table, axes=([0, 1], [0, 1]))


def as_state(psi, tol: float = 1e-12) -> np.ndarray:
    v = np.asarray(psi, dtype=np.complex128).ravel()
    nrm = np.linalg.norm(v)
    if abs(nrm - 1) > tol:
        raise NormalizationError(f"state norm is {nrm:.15g}, expected 1")
    return v


def wigner_wk(psi, n1: int, n2: int) -> float:
    v = as_state(psi)
    w = np.vdot(v, delta_wk(v.size, n1, n2) @ v)
    if abs(w.imag) > 1e-12:
        raise ArithmeticError(f"Wigner value has imaginary part {w.imag:.3e}")
    return float(w.real)


def wigner_grid(psi, table: np.ndarray | None = None) -> np.ndarray:
    """W(n) for all labels; rows n1, columns n2.

    Complex values are returned for even d, where Delta(n) is not Hermitian
    under the label-phase convention (see ``schwinger``).
    """
    v = as_state(psi)
    d = v.size
    if table is None:
        table = delta_table(d)
    w = np.einsum("j,abjk,k->ab", v.conj(), table, v)
    if d % 2:
        return w.real
    return w
