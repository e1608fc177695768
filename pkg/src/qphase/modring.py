"""Exact integer arithmetic over Z_D and the group SL(2, Z_D)."""

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np


class ModulusError(ValueError):
    pass


def mod_inverse(a: int, d: int) -> int:
    g = gcd(a % d, d)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {d} (gcd = {g})")
    return pow(a % d, -1, d)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % p for p in range(3, isqrt(n) + 1, 2))


def require_odd_prime(d: int) -> None:
    if d == 2 or not is_prime(d):
        raise ModulusError("dimension must be an odd prime")


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(d: int) -> int:
    """Smallest generator of the multiplicative group of Z_d, d an odd prime."""
    require_odd_prime(d)
    phi = d - 1
    qs = _prime_factors(phi)
    for g in range(2, d):
        if all(pow(g, phi // q, d) != 1 for q in qs):
            return g
    raise AssertionError("unreachable for prime d")


def gauss_sum(m: int, d: int) -> complex:
    """(1/sqrt d) sum_n exp(2 pi i m n^2 / d), by direct summation."""
    if d < 2:
        raise ValueError("modulus must be >= 2")
    n = np.arange(d)
    # reduce m n^2 mod d in integers before forming the phase
    x = (m * n * n) % d
    return complex(np.exp(2j * np.pi * x / d).sum() / np.sqrt(d))


@dataclass(frozen=True)
class SL2Elem:
    """Matrix [[s1, t1], [s2, t2]] acting as m -> (s1 m1 + t1 m2, s2 m1 + t2 m2)."""

    d: int
    s1: int
    t1: int
    s2: int
    t2: int

    def __post_init__(self):
        if self.d < 2:
            raise ModulusError("modulus must be >= 2")
        d = self.d
        for name in ("s1", "t1", "s2", "t2"):
            object.__setattr__(self, name, getattr(self, name) % d)
        if self.det != 1 % d:
            raise ValueError(f"determinant {self.det} is not 1 mod {d}")

    @property
    def det(self) -> int:
        return (self.s1 * self.t2 - self.t1 * self.s2) % self.d

    @classmethod
    def identity(cls, d: int) -> "SL2Elem":
        return cls(d, 1, 0, 0, 1)

    @classmethod
    def from_vectors(cls, d: int, s: tuple[int, int], t: tuple[int, int]) -> "SL2Elem":
        """Build from the column vectors s = (s1, s2) and t = (t1, t2)."""
        return cls(d, s[0], t[0], s[1], t[1])

    def matrix(self) -> np.ndarray:
        return np.array([[self.s1, self.t1], [self.s2, self.t2]], dtype=np.int64)

    def act(self, m1: int, m2: int) -> tuple[int, int]:
        d = self.d
        return ((self.s1 * m1 + self.t1 * m2) % d, (self.s2 * m1 + self.t2 * m2) % d)

    def transpose(self) -> "SL2Elem":
        return SL2Elem(self.d, self.s1, self.s2, self.t1, self.t2)

    def is_identity(self) -> bool:
        return (self.s1, self.t1, self.s2, self.t2) == (1 % self.d, 0, 0, 1 % self.d)

    def __matmul__(self, other: "SL2Elem") -> "SL2Elem":
        return sl2_mul(self, other)


def sl2_mul(a: SL2Elem, b: SL2Elem) -> SL2Elem:
    if a.d != b.d:
        raise ModulusError(f"modulus mismatch: {a.d} vs {b.d}")
    return SL2Elem(
        a.d,
        a.s1 * b.s1 + a.t1 * b.s2,
        a.s1 * b.t1 + a.t1 * b.t2,
        a.s2 * b.s1 + a.t2 * b.s2,
        a.s2 * b.t1 + a.t2 * b.t2,
    )


def sl2_inv(a: SL2Elem) -> SL2Elem:
    return SL2Elem(a.d, a.t2, -a.t1, -a.s2, a.s1)


def sl2_group_order(d: int) -> int:
    """|SL(2, Z_d)| = d^3 prod_{p | d} (1 - 1/p^2)."""
    n = d**3
    for p in _prime_factors(d):
        n = n // (p * p) * (p * p - 1)
    return n


def sl2_order(a: SL2Elem) -> int:
    cap = sl2_group_order(a.d)
    x = a
    for k in range(1, cap + 1):
        if x.is_identity():
            return k
        x = sl2_mul(x, a)
    raise ArithmeticError(f"no order found below the group order {cap}")


def g1(d: int) -> SL2Elem:
    return SL2Elem(d, 1, 1, 0, 1)


def g2(d: int, g0: int | None = None) -> SL2Elem:
    if g0 is None:
        g0 = primitive_root(d)
    return SL2Elem(d, g0, 0, 0, mod_inverse(g0, d))


def rotation_family(d: int) -> list[SL2Elem]:
    """All [[a, -b], [b, a]] with a^2 + b^2 = 1 mod d."""
    require_odd_prime(d)
    return [
        SL2Elem(d, a, -b, b, a)
        for a in range(d)
        for b in range(d)
        if (a * a + b * b) % d == 1
    ]


def random_sl2(d: int, rng: np.random.Generator) -> SL2Elem:
    """Uniform draw from SL(2, Z_d) by rejection on the determinant (d prime)."""
    while True:
        s1, t1, s2, t2 = (int(x) for x in rng.integers(0, d, size=4))
        if (s1 * t2 - t1 * s2) % d == 1:
            return SL2Elem(d, s1, t1, s2, t2)
