"""Polynomial kernel of the homogeneous Dirichlet problem on the unit disk.

Candidates follow the Chebyshev ansatz

    u = sum_j C_j [ T_q(z_j) / (2q) - T_{q-2}(z_j) / (2(q-2)) ],
    z_j = <-n^j, x>,

with q >= 3 and n^j the characteristic normals.  Each summand is a ridge
function annihilated by its own characteristic factor, so L u = 0 exactly;
the coefficient vector C is then chosen to kill both u and u_nu on the
circle, which reduces to a 4 x 4 harmonic condition found by SVD.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import circle_quadrature
from .poly import BiPoly, apply_L, chebyshev, compose_linear

NULLSPACE_TOL = 1e-9


class InvalidKernelDegree(ValueError):
    """The Chebyshev ansatz needs q >= 3 so that both degrees are positive."""


@dataclass
class KernelSolution:
    q: int
    C: np.ndarray
    u: BiPoly
    boundary_residual: float      # max |u|, |u_nu| over certification samples
    interior_scale: float         # max |u| over an interior grid


def _ridge_args(system, theta, r=1.0):
    """z_j = <-n^j, x> at x = r (cos theta, sin theta); identity: r sin(phi_j - theta)."""
    out = []
    for n in system.normals:
        out.append(-(n[0] * r * np.cos(theta) + n[1] * r * np.sin(theta)))
    return out


def _cheb_pair_values(q, t):
    """[T_q/(2q) - T_{q-2}/(2(q-2))](t) and its derivative in t."""
    cq = np.zeros(q + 1)
    cq[q] = 1.0
    cq2 = np.zeros(q - 1)
    cq2[q - 2] = 1.0
    f = (np.polynomial.chebyshev.chebval(t, cq) / (2 * q)
         - np.polynomial.chebyshev.chebval(t, cq2) / (2 * (q - 2)))
    df = (np.polynomial.chebyshev.chebval(t, np.polynomial.chebyshev.chebder(cq)) / (2 * q)
          - np.polynomial.chebyshev.chebval(t, np.polynomial.chebyshev.chebder(cq2)) / (2 * (q - 2)))
    return f, df


def candidate(q, system, C):
    """Exact BiPoly for the Chebyshev ansatz with coefficient vector C."""
    if q < 3:
        raise InvalidKernelDegree("need q >= 3")
    Tq = chebyshev(q)
    Tq2 = chebyshev(q - 2)
    inv2q = Fraction(1, 2 * q)
    inv2q2 = Fraction(1, 2 * (q - 2))
    u = BiPoly()
    for j in range(4):
        n = system.normals[j]
        ridge = (inv2q * compose_linear(Tq, (-n[0], -n[1]))
                 - inv2q2 * compose_linear(Tq2, (-n[0], -n[1])))
        u = u + C[j] * ridge
    return u


def solve_boundary_coefficients(q, system, n_samples=None):
    """Coefficient vectors C with u = u_nu = 0 on the circle, via SVD.

    Samples the ansatz and its radial derivative at n_samples >= 8q angles
    and returns the right singular vectors below NULLSPACE_TOL (possibly
    none).  Vectors are orthonormal.
    """
    if q < 3:
        raise InvalidKernelDegree("need q >= 3")
    if n_samples is None:
        n_samples = 8 * q
    if n_samples < 8 * q:
        raise ValueError("need at least 8q boundary samples")
    theta = 2.0 * math.pi * np.arange(n_samples) / n_samples
    args = _ridge_args(system, theta)
    M = np.empty((2 * n_samples, 4))
    for j in range(4):
        f, df = _cheb_pair_values(q, args[j])
        M[:n_samples, j] = f
        # radial derivative: d/dr [g(r z_j)] at r = 1 is z_j g'(z_j)
        M[n_samples:, j] = args[j] * df
    _, s, vt = np.linalg.svd(M, full_matrices=False)
    null = [vt[k] for k in range(4) if s[k] <= NULLSPACE_TOL * s[0]]
    return [np.asarray(v) for v in null]


def certify(q, system, C, n_boundary=512, n_grid=64):
    """Build the exact candidate and certify boundary vanishing.

    Boundary values of u and u_nu are evaluated in exact rational
    arithmetic (the sampled points are the floating circle nodes embedded
    exactly), so the reported residual is free of expansion cancellation
    noise.  The interior scale is the max of |u| over an n_grid x n_grid
    cartesian grid restricted to the disk.
    """
    u = candidate(q, system, C)
    ux = u.dx1()
    uy = u.dx2()
    theta = 2.0 * math.pi * np.arange(n_boundary) / n_boundary
    res = 0.0
    for th in theta:
        c, s = math.cos(th), math.sin(th)
        val = u.eval_exact(c, s)
        dval = ux.eval_exact(c, s) * Fraction(c) + uy.eval_exact(c, s) * Fraction(s)
        res = max(res, abs(float(val)), abs(float(dval)))
    g = np.linspace(-1.0, 1.0, n_grid)
    X, Y = np.meshgrid(g, g)
    mask = X**2 + Y**2 <= 1.0
    vals = u(X[mask], Y[mask])
    scale = float(np.max(np.abs(vals)))
    return KernelSolution(q, np.asarray(C, dtype=float), u, res, scale)


def kernel_solutions(q, system, n_samples=None, certify_boundary=True):
    """All kernel solutions of the ansatz at degree q (possibly empty)."""
    out = []
    for C in solve_boundary_coefficients(q, system, n_samples):
        if certify_boundary:
            out.append(certify(q, system, C))
        else:
            u = candidate(q, system, C)
            out.append(KernelSolution(q, C, u, float("nan"), float("nan")))
    return out


def gram_condition(solutions, rule=None):
    """Condition number of the Gram matrix of kernel solutions on the disk."""
    if len(solutions) < 2:
        return 1.0
    if rule is None:
        from .geometry import disk_quadrature

        rule = disk_quadrature(32, 64)
    x1, x2 = rule.nodes[:, 0], rule.nodes[:, 1]
    vals = np.vstack([s.u(x1, x2) for s in solutions])
    G = (vals * rule.weights) @ vals.T
    return float(np.linalg.cond(G))


def fredholm_violation_check(system, q_max, period_verdict, rationality):
    """Scan q = 3..q_max for kernel solutions and compare with the dynamics.

    Returns a report dict; ``consistent`` records whether a nonempty kernel
    occurred exactly when the John map is periodic.
    """
    qs = []
    dims = {}
    for q in range(3, q_max + 1):
        null = solve_boundary_coefficients(q, system)
        if null:
            qs.append(q)
            dims[q] = len(null)
    nonempty = bool(qs)
    return {
        "q_max": q_max,
        "qs_with_kernel": qs,
        "null_dims": dims,
        "periodic": bool(period_verdict.periodic),
        "period": period_verdict.n,
        "rational": rationality is not None,
        "rational_q": None if rationality is None else rationality.q,
        "consistent": nonempty == bool(period_verdict.periodic),
    }
