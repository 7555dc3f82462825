"""Quartic symbols in the plane: roots, hyperbolicity, characteristic frame.

The symbol is L(xi) = a0 xi1^4 + a1 xi1^3 xi2 + a2 xi1^2 xi2^2
+ a3 xi1 xi2^3 + a4 xi2^4.  Its characteristic polynomial is
a0 t^4 + a1 t^3 + a2 t^2 + a3 t + a4, and each real simple root t_j
corresponds to a characteristic direction a^j = (cos p_j, sin p_j) with
-tan(p_j) = t_j, p_j in [0, pi).  L factors as c * prod_j <xi, a^j>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .poly import BiPoly, _exact

ROOT_SEP_TOL = 1e-10     # minimal gap between characteristic roots
REAL_PART_TOL = 1e-10    # |Im| below this (scaled) counts as a real root
HALF_PI_GUARD = 1e-8     # angles this close to pi/2 are rejected
ANGLE_DUP_TOL = 1e-10


class ZeroLeadingCoefficient(ValueError):
    """a0 = 0: the characteristic polynomial degenerates."""


class AngleAtHalfPi(ValueError):
    """An angle too close to pi/2 has no finite root -tan(phi)."""


class DuplicateAngle(ValueError):
    """Characteristic angles must be pairwise distinct mod pi."""


@dataclass(frozen=True)
class QuarticSymbol:
    a0: float
    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self):
        cs = self.coeffs
        if all(c == 0 for c in cs):
            raise ValueError("all five coefficients are zero")
        if cs[0] == 0:
            raise ZeroLeadingCoefficient("leading coefficient a0 must be nonzero")

    @property
    def coeffs(self):
        return (self.a0, self.a1, self.a2, self.a3, self.a4)

    def __call__(self, xi1, xi2):
        """Evaluate the quartic form.  Exact for exact inputs."""
        return (self.a0 * xi1**4 + self.a1 * xi1**3 * xi2
                + self.a2 * xi1**2 * xi2**2 + self.a3 * xi1 * xi2**3
                + self.a4 * xi2**4)

    def char_poly(self, t):
        return self.a0 * t**4 + self.a1 * t**3 + self.a2 * t**2 + self.a3 * t + self.a4

    def as_bipoly(self):
        return BiPoly({(4, 0): _exact(self.a0), (3, 1): _exact(self.a1),
                       (2, 2): _exact(self.a2), (1, 3): _exact(self.a3),
                       (0, 4): _exact(self.a4)})


@dataclass(frozen=True)
class CharacteristicSystem:
    """Characteristic frame of a hyperbolic quartic symbol.

    ``phis`` are sorted ascending in [0, pi); ``lambdas`` are stored in the
    same (phi-paired) order, so -tan(phis[j]) == lambdas[j] holds per index.
    ``tangents[j] = (cos phi_j, sin phi_j)`` and ``normals[j]`` is its
    rotation by +pi/2.  ``scale`` is the constant c in
    L(xi) = c * prod <xi, a^j>.
    """

    lambdas: tuple
    phis: tuple
    tangents: tuple
    normals: tuple
    scale: float

    @classmethod
    def from_phis(cls, phis, scale=None, a0=1.0):
        phis = tuple(sorted(float(p) % math.pi for p in phis))
        for p in phis:
            if abs(p - math.pi / 2) < HALF_PI_GUARD:
                raise AngleAtHalfPi(f"angle {p!r} is within {HALF_PI_GUARD} of pi/2")
        for i in range(4):
            for j in range(i + 1, 4):
                d = abs(phis[i] - phis[j])
                if min(d, math.pi - d) < ANGLE_DUP_TOL:
                    raise DuplicateAngle(f"angles {phis[i]!r} and {phis[j]!r} coincide")
        lams = tuple(-math.tan(p) for p in phis)
        tans = tuple((math.cos(p), math.sin(p)) for p in phis)
        nors = tuple((-t[1], t[0]) for t in tans)
        if scale is None:
            prod = 1.0
            for t in tans:
                prod *= t[0]
            scale = float(a0) / prod
        return cls(lams, phis, tans, nors, float(scale))


@dataclass(frozen=True)
class Hyperbolic:
    system: CharacteristicSystem

    @property
    def is_hyperbolic(self):
        return True


@dataclass(frozen=True)
class Degenerate:
    reason: str               # "multiple_root" or "complex_root"
    offending_root: complex
    root_is_pm_i: bool = False

    @property
    def is_hyperbolic(self):
        return False


def find_roots(sym: QuarticSymbol):
    """Roots of the characteristic quartic, companion matrix + one Newton step.

    Returns four complex numbers sorted by (real, imag).  Residual contract:
    |char_poly(root)| <= 1e-10 * max|a_i| * (1 + |root|)^4.
    """
    cs = [float(c) for c in sym.coeffs]
    roots = np.roots(cs)
    a0, a1, a2, a3, a4 = cs
    scale = max(abs(c) for c in cs)
    refined = []
    for r in roots:
        p = ((a0 * r + a1) * r + a2) * r * r + a3 * r + a4
        dp = (4 * a0 * r + 3 * a1) * r * r + 2 * a2 * r + a3
        if abs(dp) > 1e-8 * scale * (1 + abs(r)) ** 3:
            r = r - p / dp
        refined.append(complex(r))
    refined.sort(key=lambda z: (z.real, z.imag))
    return refined


def classify(sym: QuarticSymbol):
    """Decide hyperbolicity; on success return the characteristic frame.

    Degeneracy checks run in order: multiple roots first (gap <= ROOT_SEP_TOL),
    then complex roots (flagging roots at +-i).
    """
    roots = find_roots(sym)
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(roots[i] - roots[j]) <= ROOT_SEP_TOL:
                r = roots[i]
                return Degenerate("multiple_root", r, _near_pm_i(r))
    for r in roots:
        if abs(r.imag) > REAL_PART_TOL * (1 + abs(r)):
            return Degenerate("complex_root", r, _near_pm_i(r))
    lams = sorted(r.real for r in roots)
    phis = []
    for lam in lams:
        p = math.atan(-lam)
        if p < 0:
            p += math.pi
        phis.append(p)
    system = CharacteristicSystem.from_phis(phis, a0=sym.a0)
    return Hyperbolic(system)


def _near_pm_i(z, tol=ROOT_SEP_TOL):
    return abs(z - 1j) <= tol or abs(z + 1j) <= tol


def from_angles(phis, a0=1.0):
    """Symbol with prescribed characteristic angles, normalized to given a0.

    Coefficients come from exact expansion of the factored form, so a
    round trip through classify() recovers the angles to root-finding
    accuracy.
    """
    system = CharacteristicSystem.from_phis(phis, a0=a0)
    from .poly import symbol_coefficients_exact

    cs = symbol_coefficients_exact(system)
    return QuarticSymbol(*(float(c) for c in cs))


def factorization_residual(system, sym, samples=64, rng_seed=7):
    """max |L(xi) - c prod <xi, a^j>| / (1 + |L(xi)|) over random samples."""
    rng = np.random.default_rng(rng_seed)
    xi = rng.normal(size=(samples, 2))
    direct = sym(xi[:, 0], xi[:, 1])
    prod = np.full(samples, system.scale)
    for a in system.tangents:
        prod = prod * (xi[:, 0] * a[0] + xi[:, 1] * a[1])
    return float(np.max(np.abs(direct - prod) / (1.0 + np.abs(direct))))
