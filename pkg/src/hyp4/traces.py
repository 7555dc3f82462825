"""Boundary trace operators induced by the factorized quartic operator.

With unit tangents a^1..a^4 and L = c <grad,a1><grad,a2><grad,a3><grad,a4>,
four integrations by parts give, for any u, v,

    int_D (Lu v - u Lv) dx =  int_dD T3[u] v
                            - int_dD T2[u] <grad,a1>v
                            + int_dD T1[u] <grad,a2><grad,a1>v
                            - int_dD T0[u] <grad,a3><grad,a2><grad,a1>v,

where the traces are

    T3[u] = c <nu,a1> <grad,a2><grad,a3><grad,a4> u
    T2[u] = c <nu,a2> <grad,a3><grad,a4> u
    T1[u] = c <nu,a3> <grad,a4> u
    T0[u] = c <nu,a4> u.

Each trace carries the scale c exactly once.  On the flat data segment the
boundary normal is nu = (0, -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import QuadratureRule
from .poly import BiPoly, UniPoly, apply_L, apply_directional, _exact

GAMMA0_NORMAL = (0.0, -1.0)


class UnsupportedCurve(ValueError):
    """Cauchy-data reconstruction is only available on the flat segment."""


@dataclass
class TraceSet:
    """Sampled traces T0..T3 on a boundary rule."""

    rule: QuadratureRule
    values: np.ndarray        # shape (4, N), rows are T0, T1, T2, T3

    def row(self, p):
        return self.values[p]

    def min_values(self):
        return [float(v.min()) for v in self.values]


@dataclass(frozen=True)
class CauchyData:
    """Dirichlet-to-third-order data on Gamma0: u, u_nu, u_nunu, u_nununu.

    Each entry is a UniPoly in x1 along the segment.
    """

    phi: UniPoly
    psi: UniPoly
    sigma: UniPoly
    chi: UniPoly


def derivative_chain(u: BiPoly, system):
    """[u, <grad,a4>u, <grad,a3><grad,a4>u, <grad,a2><grad,a3><grad,a4>u]."""
    chain = [u]
    for j in (4, 3, 2):
        chain.append(apply_directional(system.tangents[j - 1], chain[-1]))
    return chain


def tilde_traces(u: BiPoly, system, rule: QuadratureRule) -> TraceSet:
    """Sample T0..T3 of u on a boundary rule (requires rule.normals)."""
    if rule.normals is None:
        raise ValueError("boundary rule must carry normals")
    chain = derivative_chain(u, system)
    x1, x2 = rule.nodes[:, 0], rule.nodes[:, 1]
    c = float(system.scale)
    vals = np.empty((4, len(x1)))
    for p in range(4):
        a = system.tangents[3 - p]   # T_p pairs <nu, a^{4-p}> with chain[p]
        nu_dot_a = rule.normals[:, 0] * a[0] + rule.normals[:, 1] * a[1]
        vals[p] = c * nu_dot_a * chain[p](x1, x2)
    return TraceSet(rule, vals)


def adjoint_chain(v: BiPoly, system):
    """[v, <grad,a1>v, <grad,a2><grad,a1>v, <grad,a3><grad,a2><grad,a1>v]."""
    chain = [v]
    for j in (1, 2, 3):
        chain.append(apply_directional(system.tangents[j - 1], chain[-1]))
    return chain


def green_identity_residual(u, v, system, interior_rule, boundary_rule):
    """Relative defect of the integrated-by-parts identity for the pair (u, v)."""
    Lu = apply_L(system, u)
    Lv = apply_L(system, v)
    xi, yi = interior_rule.nodes[:, 0], interior_rule.nodes[:, 1]
    lhs = interior_rule.integrate(Lu(xi, yi) * v(xi, yi) - u(xi, yi) * Lv(xi, yi))

    ts = tilde_traces(u, system, boundary_rule)
    adj = adjoint_chain(v, system)
    xb, yb = boundary_rule.nodes[:, 0], boundary_rule.nodes[:, 1]
    rhs = 0.0
    sign = 1.0
    for p in range(4):
        rhs += sign * boundary_rule.integrate(ts.row(3 - p) * adj[p](xb, yb))
        sign = -sign
    return abs(lhs - rhs) / (1.0 + abs(lhs))


def sign_check(ts: TraceSet, tol=1e-12):
    """True iff every sampled trace value is >= -tol."""
    return bool(np.all(ts.values >= -tol))


def cauchy_data_from_poly(u: BiPoly) -> CauchyData:
    """Extract (phi, psi, sigma, chi) of u on Gamma0 with nu = (0, -1)."""

    def restrict(p: BiPoly) -> UniPoly:
        deg = p.total_degree
        coeffs = [p.terms.get((i, 0), 0) for i in range(deg + 1)]
        return UniPoly(coeffs)

    d2 = u.dx2()
    d22 = d2.dx2()
    d222 = d22.dx2()
    return CauchyData(
        phi=restrict(u),
        psi=-1 * restrict(d2),
        sigma=restrict(d22),
        chi=-1 * restrict(d222),
    )


def traces_from_cauchy(data: CauchyData, system, rule: QuadratureRule) -> TraceSet:
    """Expand T0..T3 on the flat segment in terms of Cauchy data.

    Every mixed derivative d1^i d2^j u on {x2 = 0} reduces to d/dx1^i of the
    data function for the j-th normal order (with the sign of nu = (0,-1)
    absorbed: d2^j u -> (-1)^j times the j-th data entry).  Raises
    UnsupportedCurve unless the rule's normals are all (0, -1).
    """
    if rule.normals is None or not np.allclose(rule.normals, [0.0, -1.0], atol=1e-12):
        raise UnsupportedCurve("expected the flat segment with normal (0, -1)")
    layers = [data.phi, -1 * data.psi, data.sigma, -1 * data.chi]  # d2^j u on x2=0

    # formal expansion of each directional product in powers of (d1, d2)
    x1 = rule.nodes[:, 0]
    c = float(system.scale)
    vals = np.empty((4, len(x1)))
    for p in range(4):
        op = BiPoly.constant(1)
        for j in range(4, 4 - p, -1):
            a = system.tangents[j - 1]
            op = op * BiPoly({(1, 0): _exact(a[0]), (0, 1): _exact(a[1])})
        a_out = system.tangents[3 - p]
        nu_dot_a = -a_out[1]   # <(0,-1), a>
        total = np.zeros(len(x1))
        for (i, j), coeff in op.terms.items():
            f = layers[j].derivative(i)
            total += float(coeff) * f.eval_float(x1)
        vals[p] = c * nu_dot_a * total
    return TraceSet(rule, vals)


def wave_symbol_on_circle(theta):
    """L(x) = x1 x2 on the unit circle and its first two theta derivatives."""
    s = 0.5 * np.sin(2.0 * theta)
    ds = np.cos(2.0 * theta)
    dds = -2.0 * np.sin(2.0 * theta)
    return s, ds, dds


def wave_trace_L0(u: BiPoly, rule: QuadratureRule):
    """Zeroth wave trace -L(x) u on |x| = 1 for the operator d^2/dx1 dx2."""
    th = rule.params
    x1, x2 = rule.nodes[:, 0], rule.nodes[:, 1]
    s, _, _ = wave_symbol_on_circle(th)
    return -s * u(x1, x2)


def wave_trace_L1(u: BiPoly, rule: QuadratureRule):
    """First wave trace L(x) u_nu + L_tau u_tau + (1/2) L_tautau u on |x| = 1."""
    th = rule.params
    x1, x2 = rule.nodes[:, 0], rule.nodes[:, 1]
    s, ds, dds = wave_symbol_on_circle(th)
    ux = u.dx1()(x1, x2)
    uy = u.dx2()(x1, x2)
    u_nu = ux * x1 + uy * x2
    u_tau = -ux * x2 + uy * x1
    return s * u_nu + ds * u_tau + 0.5 * dds * u(x1, x2)
