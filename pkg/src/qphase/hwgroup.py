"""Discrete Heisenberg-Weyl groups and unitary canonical partners."""

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .linalg import as_cmat, eig_unitary


@dataclass(frozen=True)
class GammaSpec:
    a: int
    b: int
    c: int
    d: int
    a_prime: int | None
    b_prime: int | None
    valid: bool
    irrep_count: int | None


def gamma_analyze(a: int, b: int, c: int) -> GammaSpec:
    """Validity and irrep count of the group generated by G^a = O^b = Omega^c = 1."""
    if min(a, b, c) < 1:
        raise ValueError("a, b, c must be positive")
    d = gcd(gcd(a, b), c)
    if a % c or b % c:
        return GammaSpec(a, b, c, d, None, None, False, None)
    ap, bp = a // c, b // c
    return GammaSpec(a, b, c, d, ap, bp, True, ap * bp)


def weyl_pair(d: int) -> tuple[np.ndarray, np.ndarray, complex]:
    if d < 1:
        raise ValueError("d must be >= 1")
    omega = complex(np.exp(2j * np.pi * (1 % d) / d))
    k = np.arange(d)
    G = np.diag(np.exp(2j * np.pi * k / d))
    O = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    return G, O, omega


@dataclass(frozen=True)
class PartnerResult:
    found: bool
    O: np.ndarray | None = field(default=None, repr=False)
    omega: complex | None = None
    multiplicities: list[tuple[complex, int]] = field(default_factory=list)


def _fix_phases(basis: np.ndarray) -> np.ndarray:
    out = basis.copy()
    for c in range(out.shape[1]):
        nz = np.flatnonzero(np.abs(out[:, c]) > 1e-12)
        if nz.size:
            z = out[nz[0], c]
            out[:, c] *= abs(z) / z
    return out


def partner_exists(g, tol: float = 1e-8) -> PartnerResult:
    """Look for a unitary O with g O = Omega O g that cycles g's eigenspaces.

    Succeeds when the spectrum is lam * Omega^k for k = 0..p-1, Omega a
    primitive p-th root of unity with p >= 2, and every eigenvalue has the
    same multiplicity.  Otherwise the eigenvalue table is returned as a
    diagnostic.
    """
    g = as_cmat(g)
    spaces = eig_unitary(g, tol)
    table = [(s.eigenvalue, s.multiplicity) for s in spaces]
    p = len(spaces)
    if p < 2 or len({s.multiplicity for s in spaces}) != 1:
        return PartnerResult(False, multiplicities=table)

    omega = complex(np.exp(2j * np.pi / p))
    lam0 = spaces[0].eigenvalue
    ladder = []
    for k in range(p):
        target = lam0 * omega**k
        hit = [s for s in spaces if abs(s.eigenvalue - target) <= max(tol, 1e-9) * 10]
        if len(hit) != 1:
            return PartnerResult(False, multiplicities=table)
        ladder.append(hit[0])

    # O maps the eigenspace of lam0 Omega^k onto that of lam0 Omega^(k+1)
    bases = [_fix_phases(s.basis) for s in ladder]
    O = sum(bases[(k + 1) % p] @ bases[k].conj().T for k in range(p))
    return PartnerResult(True, O, omega, table)
