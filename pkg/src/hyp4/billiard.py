"""Characteristic billiard on the unit circle and its periodicity analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TWO_PI = 2.0 * math.pi


def circle_dist(a, b):
    """Distance between two angles on the circle R / 2 pi Z."""
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


@dataclass(frozen=True)
class Verdict:
    periodic: bool
    n: int | None = None       # minimal period when periodic
    n_max: int | None = None   # iteration bound when aperiodic

    def label(self):
        return f"Period({self.n})" if self.periodic else f"Aperiodic(N_max={self.n_max})"


@dataclass(frozen=True)
class Orbit:
    taus: tuple
    verdict: Verdict


@dataclass(frozen=True)
class BilliardMap:
    """Reflection dynamics tau -> 2 phi_j - tau; full sweep is a rotation."""

    phis: tuple

    def __post_init__(self):
        ps = tuple(self.phis)
        if len(ps) != 4 or any(ps[k] >= ps[k + 1] for k in range(3)):
            raise ValueError("phis must be four angles sorted strictly ascending")
        if ps[0] < 0 or ps[-1] >= math.pi:
            raise ValueError("phis must lie in [0, pi)")

    @property
    def delta(self):
        p = self.phis
        return (p[3] - p[2]) + (p[1] - p[0])

    def step(self, j, tau):
        """Single reflection in characteristic j (1-based)."""
        return (2.0 * self.phis[j - 1] - tau) % TWO_PI

    def john_map(self, tau):
        """Composite of the four steps: rigid rotation by 2 delta."""
        return (tau + 2.0 * self.delta) % TWO_PI

    def sweep(self, tau):
        """The four steps applied in index order, for cross-checking."""
        for j in (1, 2, 3, 4):
            tau = self.step(j, tau)
        return tau


def detect_period(bmap: BilliardMap, tau0=0.0, n_max=10000, tol=1e-9):
    """Iterate the John map and report the minimal return period, if any.

    The verdict is independent of tau0 for a rigid rotation; this is
    asserted by rerunning from two shifted starting points.
    """
    verdict = _detect_from(bmap, tau0, n_max, tol)
    for shift in (1.0, 2.5):
        other = _detect_from(bmap, (tau0 + shift) % TWO_PI, n_max, tol)
        if other != verdict:
            raise RuntimeError("periodicity verdict depended on the starting point")
    return verdict


def _detect_from(bmap, tau0, n_max, tol):
    tau = tau0
    for n in range(1, n_max + 1):
        tau = bmap.john_map(tau)
        if circle_dist(tau, tau0) <= tol:
            return Verdict(True, n=n)
    return Verdict(False, n_max=n_max)


def orbit(bmap: BilliardMap, tau0=0.0, n_max=10000, tol=1e-9):
    """Orbit of the John map from tau0 together with its periodicity verdict."""
    verdict = detect_period(bmap, tau0, n_max, tol)
    length = verdict.n if verdict.periodic else n_max
    taus = [tau0]
    for _ in range(length):
        taus.append(bmap.john_map(taus[-1]))
    return Orbit(tuple(taus), verdict)


def _min_denominator(x, q_max, tol):
    """Smallest convergent denominator q <= q_max with |x - p/q| <= tol.

    Walks the continued fraction convergents of x.  Returns (p, q) or None.
    """
    if abs(x - round(x)) <= tol:
        return (int(round(x)), 1)
    h0, h1 = 1, int(math.floor(x))
    k0, k1 = 0, 1
    frac = x - math.floor(x)
    for _ in range(64):
        if abs(x - h1 / k1) <= tol:
            return (h1, k1)
        if frac == 0:
            return None
        frac = 1.0 / frac
        a = int(math.floor(frac))
        frac -= a
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > q_max:
            return None
    return None


@dataclass(frozen=True)
class RationalityResult:
    p: tuple        # 4x4 integer matrix, p[j][k] ~ (phi_j - phi_k) * q / pi
    q: int


def rationality_test(phis, q_max=10000, tol=1e-12):
    """Common-denominator test for all pairwise angle differences over pi.

    Returns RationalityResult(p, q) with the minimal common q <= q_max such
    that (phi_j - phi_k)/pi is within tol of p_jk/q for every pair, or None.
    Candidate denominators come from continued-fraction convergents of each
    difference; minimality of the common q is then settled by a short
    upward scan bounded by their lcm.
    """
    phis = tuple(float(p) for p in phis)
    xs = {}
    dens = []
    for j in range(4):
        for k in range(j + 1, 4):
            x = (phis[j] - phis[k]) / math.pi
            xs[(j, k)] = x
            best = _min_denominator(x, q_max, tol)
            if best is None:
                return None
            dens.append(best[1])
    q_lcm = 1
    for d in dens:
        q_lcm = q_lcm * d // math.gcd(q_lcm, d)
        if q_lcm > q_max:
            return None

    def fits(q):
        mat = [[0] * 4 for _ in range(4)]
        for (j, k), x in xs.items():
            p = round(x * q)
            if abs(x - p / q) > tol:
                return None
            mat[j][k] = p
            mat[k][j] = -p
        return tuple(tuple(row) for row in mat)

    for q in range(max(dens), q_lcm + 1):
        mat = fits(q)
        if mat is not None:
            return RationalityResult(mat, q)
    return None
