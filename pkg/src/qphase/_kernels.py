"""Loop kernels with a numba path and a vectorized numpy path.

Set ``QPHASE_DISABLE_NUMBA=1`` to force the numpy implementations.  When
numba is not importable the numpy path is used silently.
"""

import os

import numpy as np

_DISABLED = os.environ.get("QPHASE_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
except ImportError:
    njit = None

USE_NUMBA = njit is not None


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# sum_m B[m1, m2] U^m1 V^m2;  entry [j, k] = sum_m2 B[(j - k) % d, m2] w^(m2 k)


def _expand_loop(coeffs):
    d = coeffs.shape[0]
    w = np.exp(-2j * np.pi * np.arange(d) / d)
    out = np.zeros((d, d), dtype=np.complex128)
    for k in range(d):
        for j in range(d):
            m1 = (j - k) % d
            acc = 0j
            for m2 in range(d):
                acc += coeffs[m1, m2] * w[(m2 * k) % d]
            out[j, k] = acc
    return out


def _expand_np(coeffs):
    d = coeffs.shape[0]
    idx = np.arange(d)
    w = np.exp(-1j * 2 * np.pi / d * (np.outer(idx, idx) % d))
    c = coeffs @ w  # c[m1, k]
    return c[(idx[:, None] - idx[None, :]) % d, idx[None, :]]


# all Delta(n) at once: out[n1, n2] = d^-1.5 sum_m ph[m] w^(m x n) U^m1 V^m2


def _delta_table_loop(ph):
    d = ph.shape[0]
    r = np.exp(2j * np.pi * np.arange(d) / d)
    norm = d**-1.5
    out = np.zeros((d, d, d, d), dtype=np.complex128)
    for n1 in range(d):
        for n2 in range(d):
            for k in range(d):
                for j in range(d):
                    m1 = (j - k) % d
                    acc = 0j
                    for m2 in range(d):
                        x = (-(m1 * n2 - m2 * n1) - m2 * k) % d
                        acc += ph[m1, m2] * r[x]
                    out[n1, n2, j, k] = norm * acc
    return out


def _delta_table_np(ph):
    d = ph.shape[0]
    idx = np.arange(d)
    out = np.empty((d, d, d, d), dtype=np.complex128)
    for n1 in range(d):
        # x[n2, m1, m2] = -(m1 n2 - m2 n1) mod d
        x = (-(idx[None, :, None] * idx[:, None, None]) + idx[None, None, :] * n1) % d
        coeffs = ph[None] * np.exp(1j * 2 * np.pi / d * x) * d**-1.5
        for n2 in range(d):
            out[n1, n2] = _expand_np(coeffs[n2])
    return out


# action-angle Wigner table: rows are 2J = p, columns theta


def _aa_table_loop(psi, p_values, thetas):
    d = psi.shape[0]
    nt = thetas.shape[0]
    # e[k + d - 1, b] = exp(-i k theta_b)
    e = np.empty((2 * d - 1, nt), dtype=np.complex128)
    for k in range(-(d - 1), d):
        for b in range(nt):
            e[k + d - 1, b] = np.exp(-1j * k * thetas[b])
    out = np.zeros((p_values.shape[0], nt))
    for a in range(p_values.shape[0]):
        p = p_values[a]
        # lo + hi = p with both labels in 0..d-1; k = hi - lo
        for lo in range(max(0, p - (d - 1)), min(d - 1, p) + 1):
            hi = p - lo
            c = np.conj(psi[lo]) * psi[hi]
            row = hi - lo + d - 1
            for b in range(nt):
                out[a, b] += (c * e[row, b]).real
    return out / (2.0 * np.pi)


def aa_coefficients(psi, p_values):
    """c[a, k + d - 1] = conj(psi[(p - k)/2]) psi[(p + k)/2], zero off-lattice."""
    d = psi.shape[0]
    ks = np.arange(-(d - 1), d)
    p = np.asarray(p_values)[:, None]
    lo2, hi2 = p - ks[None, :], p + ks[None, :]
    ok = (lo2 % 2 == 0) & (lo2 >= 0) & (lo2 < 2 * d) & (hi2 >= 0) & (hi2 < 2 * d)
    lo = np.where(ok, lo2 // 2, 0)
    hi = np.where(ok, hi2 // 2, 0)
    return np.where(ok, np.conj(psi[lo]) * psi[hi], 0), ks


def _aa_table_np(psi, p_values, thetas):
    c, ks = aa_coefficients(psi, p_values)
    e = np.exp(-1j * np.outer(ks, thetas))
    return (c @ e).real / (2 * np.pi)


# number-phase kernel Delta_CT(J, theta)


def _sym_range(d):
    if d % 2:
        m = np.arange(-(d - 1) // 2, (d - 1) // 2 + 1)
        return m, np.ones(d)
    m = np.arange(-d // 2, d // 2 + 1)
    w = np.ones(d + 1)
    w[0] = w[-1] = 0.5
    return m, w


def _delta_ct_loop(d, J, theta, ms, ws):
    g = 2.0 * np.pi / d
    out = np.zeros((d, d), dtype=np.complex128)
    for j in range(d):
        for b in range(ms.shape[0]):
            m2 = ms[b]
            inner = 0j
            for a in range(ms.shape[0]):
                inner += ws[a] * np.exp(1j * g * ms[a] * (J - j - 0.5 * m2))
            out[j, (j + m2) % d] += ws[b] * np.exp(-1j * m2 * theta) * inner
    return out / (2.0 * np.pi * d)


def _delta_ct_np(d, J, theta, ms, ws):
    g = 2 * np.pi / d
    j = np.arange(d)
    out = np.zeros((d, d), dtype=np.complex128)
    for b, m2 in enumerate(ms):
        x = J - j - 0.5 * m2  # per row j
        inner = (ws[None, :] * np.exp(1j * g * np.outer(x, ms))).sum(axis=1)
        cols = (j + m2) % d
        out[j, cols] += ws[b] * np.exp(-1j * m2 * theta) * inner
    return out / (2 * np.pi * d)


if USE_NUMBA:
    _expand = njit(cache=True)(_expand_loop)
    _delta_table = njit(cache=True)(_delta_table_loop)
    _aa_table = njit(cache=True)(_aa_table_loop)
    _delta_ct = njit(cache=True)(_delta_ct_loop)
else:
    _expand = _expand_np
    _delta_table = _delta_table_np
    _aa_table = _aa_table_np
    _delta_ct = _delta_ct_np


def expand_monomials(coeffs: np.ndarray) -> np.ndarray:
    return _expand(np.ascontiguousarray(coeffs, dtype=np.complex128))


def delta_table(ph: np.ndarray) -> np.ndarray:
    return _delta_table(np.ascontiguousarray(ph, dtype=np.complex128))


def aa_table(psi: np.ndarray, p_values: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    return _aa_table(
        np.ascontiguousarray(psi, dtype=np.complex128),
        np.ascontiguousarray(p_values, dtype=np.int64),
        np.ascontiguousarray(thetas, dtype=np.float64),
    )


def delta_ct(d: int, J: float, theta: float) -> np.ndarray:
    ms, ws = _sym_range(d)
    return _delta_ct(int(d), float(J), float(theta), ms.astype(np.int64), ws)


# plain-python references for the benchmark and the parity tests
numpy_impl = {
    "expand": _expand_np,
    "delta_table": _delta_table_np,
    "aa_table": _aa_table_np,
    "delta_ct": _delta_ct_np,
}
loop_impl = {
    "expand": _expand_loop,
    "delta_table": _delta_table_loop,
    "aa_table": _aa_table_loop,
    "delta_ct": _delta_ct_loop,
}
