"""Dense complex matrix helpers shared by every operator module.

Operators are plain ``numpy`` arrays of dtype ``complex128``; nothing here
wraps them in a class.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

DEFAULT_CLUSTER_TOL = 1e-8


class DimensionError(ValueError):
    pass


class NotUnitaryError(ValueError):
    pass


def as_cmat(a) -> np.ndarray:
    """Return ``a`` as a square complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=np.complex128)


def mat_mul(a, b) -> np.ndarray:
    a, b = as_cmat(a), as_cmat(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_cmat(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_cmat(a)))


def commutator(a, b) -> np.ndarray:
    return a @ b - b @ a


def frob(a) -> float:
    return float(np.linalg.norm(a))


def unitarity_error(a) -> float:
    """Frobenius norm of ``a^dagger a - I``."""
    a = as_cmat(a)
    return frob(a.conj().T @ a - np.eye(a.shape[0]))


def is_unitary(a, tol: float = 1e-10) -> bool:
    a = as_cmat(a)
    return unitarity_error(a) <= tol * a.shape[0]


@dataclass(frozen=True)
class Eigenspace:
    eigenvalue: complex
    multiplicity: int
    basis: np.ndarray  # columns span the eigenspace

    def __iter__(self):
        # allows ``value, mult, basis = space``
        return iter((self.eigenvalue, self.multiplicity, self.basis))


def eig_unitary(a, tol: float = DEFAULT_CLUSTER_TOL) -> list[Eigenspace]:
    """Eigenspaces of a unitary matrix, clustered by phase angle.

    The complex Schur form of a normal matrix is diagonal, so the Schur
    vectors are an orthonormal eigenbasis even inside degenerate clusters.
    Eigenvalues whose phases lie within ``tol`` of a neighbour (going
    around the circle) share a cluster; each cluster reports the mean
    eigenvalue, its size and the corresponding Schur columns.
    """
    a = as_cmat(a)
    d = a.shape[0]
    err = unitarity_error(a)
    if err > max(tol, 1e-10) * d:
        raise NotUnitaryError(f"matrix is not unitary (||a^H a - I||_F = {err:.3e})")
    t, z = scipy.linalg.schur(a, output="complex")
    vals = np.diag(t)
    phases = np.mod(np.angle(vals), 2 * np.pi)
    order = np.argsort(phases, kind="stable")
    phases = phases[order]

    # split wherever the gap between consecutive phases exceeds tol; the
    # wrap-around gap joins the last cluster to the first
    cuts = np.nonzero(np.diff(phases) > tol)[0] + 1
    groups = np.split(np.arange(d), cuts)
    if len(groups) > 1 and (phases[0] + 2 * np.pi - phases[-1]) <= tol:
        groups[0] = np.concatenate([groups[-1], groups[0]])
        groups.pop()

    spaces = []
    for g in groups:
        idx = order[g]
        lam = vals[idx].mean()
        lam /= abs(lam)
        spaces.append(Eigenspace(complex(lam), len(idx), z[:, idx]))
    return spaces


def expm_small(a) -> np.ndarray:
    """Matrix exponential (Pade scaling-and-squaring) for matrices up to 64x64."""
    a = as_cmat(a)
    if a.shape[0] > 64:
        raise DimensionError("expm_small is meant for dim <= 64")
    return scipy.linalg.expm(a)


def phase_fit(a, b) -> tuple[complex, float]:
    """Best unit-modulus ``lam`` with ``a ~ lam * b``; returns (lam, residual).

    The residual is ``||a - lam b||_F``.
    """
    ip = np.vdot(b, a)
    lam = ip / abs(ip) if abs(ip) > 0 else 1.0 + 0j
    return complex(lam), frob(a - lam * b)
