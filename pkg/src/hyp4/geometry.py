"""Domains and quadrature: unit disk, circle, segments, characteristic pentagons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .poly import BiPoly

LINE_PARALLEL_TOL = 1e-12


class DegenerateConfiguration(ValueError):
    """Pentagon construction failed: parallel lines or vertices out of range."""


@dataclass
class QuadratureRule:
    """Nodes/weights, optionally with unit normals, edge tags and a 1d parameter.

    Treated as immutable after construction.  Sum of weights equals the
    measure (area or length) of the underlying set.
    """

    nodes: np.ndarray            # (N, 2)
    weights: np.ndarray          # (N,)
    normals: np.ndarray | None = None
    tags: list | None = None
    params: np.ndarray | None = None

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if self.normals is not None:
            self.normals = np.asarray(self.normals, dtype=float)

    def integrate(self, values):
        return float(np.dot(self.weights, np.asarray(values, dtype=float)))

    def integrate_poly(self, p: BiPoly):
        return self.integrate(p(self.nodes[:, 0], self.nodes[:, 1]))


@dataclass(frozen=True)
class SegmentGamma0:
    """The data segment [a, b] x {0} on the x1 axis."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError("need a < b")

    @property
    def length(self):
        return self.b - self.a


@dataclass(frozen=True)
class Edge:
    start: tuple
    end: tuple
    label: str                  # "C1".."C4" or "Gamma0"
    char_index: int | None      # 1-based characteristic index, None for Gamma0

    @property
    def length(self):
        return math.hypot(self.end[0] - self.start[0], self.end[1] - self.start[1])


@dataclass(frozen=True)
class CharacteristicPentagon:
    """Pentagon a, O1, C, O2, b bounded by four characteristics and Gamma0."""

    vertices: tuple             # (a, O1, C, O2, b) as 2-tuples
    edges: tuple                # five Edge objects in boundary order
    gamma0: SegmentGamma0
    assignment: tuple           # (j_a, j_C1, j_C2, j_b), 1-based

    @property
    def area(self):
        return abs(self.signed_area)

    @property
    def signed_area(self):
        vs = self.vertices
        s = 0.0
        for k in range(len(vs)):
            x1, y1 = vs[k]
            x2, y2 = vs[(k + 1) % len(vs)]
            s += x1 * y2 - x2 * y1
        return 0.5 * s

    @property
    def centroid(self):
        vs = np.asarray(self.vertices)
        return vs.mean(axis=0)


def _intersect_lines(p, d, q, e):
    """Intersection of p + t*d and q + s*e; raises on near-parallel lines."""
    det = d[0] * (-e[1]) - (-e[0]) * d[1]
    norm = math.hypot(*d) * math.hypot(*e)
    if abs(det) <= LINE_PARALLEL_TOL * norm:
        raise DegenerateConfiguration("characteristic lines are parallel")
    rx, ry = q[0] - p[0], q[1] - p[1]
    t = (rx * (-e[1]) - (-e[0]) * ry) / det
    return (p[0] + t * d[0], p[1] + t * d[1])


def _segments_cross(p1, p2, p3, p4):
    """Proper crossing test for open segments (shared endpoints do not count)."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def pentagon(C, gamma0: SegmentGamma0, system, assignment):
    """Build the characteristic pentagon for apex point C over gamma0.

    ``assignment = (j_a, j_C1, j_C2, j_b)`` names which characteristic
    (1-based index into the sorted frame) runs through a, through C toward
    O1, through C toward O2, and through b.  Raises DegenerateConfiguration
    when lines are parallel, an intersection leaves {x2 > 0}, or the
    resulting polygon is not simple.
    """
    C = (float(C[0]), float(C[1]))
    if not C[1] > 0:
        raise DegenerateConfiguration("apex point must satisfy x2 > 0")
    ja, jc1, jc2, jb = assignment
    if sorted((ja, jc1, jc2, jb)) != [1, 2, 3, 4]:
        raise DegenerateConfiguration("assignment must use each characteristic once")
    tans = system.tangents
    a_pt = (gamma0.a, 0.0)
    b_pt = (gamma0.b, 0.0)
    O1 = _intersect_lines(a_pt, tans[ja - 1], C, tans[jc1 - 1])
    O2 = _intersect_lines(b_pt, tans[jb - 1], C, tans[jc2 - 1])
    for name, pt in (("O1", O1), ("O2", O2)):
        if not pt[1] > 0:
            raise DegenerateConfiguration(f"{name} left the open upper half-plane")
    verts = (a_pt, O1, C, O2, b_pt)
    edges = (
        Edge(a_pt, O1, f"C{ja}", ja),
        Edge(O1, C, f"C{jc1}", jc1),
        Edge(C, O2, f"C{jc2}", jc2),
        Edge(O2, b_pt, f"C{jb}", jb),
        Edge(b_pt, a_pt, "Gamma0", None),
    )
    for e in edges:
        if e.length <= LINE_PARALLEL_TOL:
            raise DegenerateConfiguration("degenerate zero-length edge")
    n = len(verts)
    segs = [(e.start, e.end) for e in edges]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(*segs[i], *segs[j]):
                raise DegenerateConfiguration("pentagon boundary self-intersects")
    return CharacteristicPentagon(verts, edges, gamma0, tuple(assignment))


def admissible_check(C, gamma0: SegmentGamma0, system):
    """True iff some characteristic assignment yields a valid pentagon."""
    import itertools

    if not (C[1] > 0):
        return False
    for jc in itertools.permutations(range(1, 5), 2):
        rest = [j for j in range(1, 5) if j not in jc]
        for ja, jb in (rest, rest[::-1]):
            try:
                pentagon(C, gamma0, system, (ja, jc[0], jc[1], jb))
                return True
            except DegenerateConfiguration:
                continue
    return False


def gauss_legendre_01(n):
    """Gauss-Legendre nodes/weights transplanted to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def disk_quadrature(n_r=32, n_t=64):
    """Tensor rule on the unit disk: Gauss-Legendre in r times uniform in theta.

    Exact (to roundoff) for polynomials of total degree <= min(2 n_r - 1, n_t - 1).
    """
    r, wr = gauss_legendre_01(n_r)
    th = 2.0 * math.pi * np.arange(n_t) / n_t
    wt = 2.0 * math.pi / n_t
    R, TH = np.meshgrid(r, th, indexing="ij")
    WR, _ = np.meshgrid(wr, th, indexing="ij")
    nodes = np.column_stack([(R * np.cos(TH)).ravel(), (R * np.sin(TH)).ravel()])
    weights = (WR * R * wt).ravel()
    return QuadratureRule(nodes, weights)


def circle_quadrature(n=512):
    """Equispaced trapezoid rule on the unit circle, outward normals attached."""
    th = 2.0 * math.pi * np.arange(n) / n
    nodes = np.column_stack([np.cos(th), np.sin(th)])
    weights = np.full(n, 2.0 * math.pi / n)
    return QuadratureRule(nodes, weights, normals=nodes.copy(),
                          tags=["circle"] * n, params=th)


def segment_quadrature(gamma0: SegmentGamma0, n=64, normal=(0.0, -1.0)):
    """Gauss-Legendre rule on gamma0 with the downward boundary normal."""
    t, w = gauss_legendre_01(n)
    x1 = gamma0.a + (gamma0.b - gamma0.a) * t
    nodes = np.column_stack([x1, np.zeros(n)])
    weights = w * gamma0.length
    normals = np.tile(np.asarray(normal, dtype=float), (n, 1))
    return QuadratureRule(nodes, weights, normals=normals,
                          tags=["Gamma0"] * n, params=x1)


def _triangle_rule(v0, v1, v2, degree=10):
    """Duffy-transform tensor rule on a triangle, exact to given total degree."""
    n = degree // 2 + 1
    u, wu = gauss_legendre_01(n)
    v, wv = gauss_legendre_01(n)
    U, V = np.meshgrid(u, v, indexing="ij")
    WU, WV = np.meshgrid(wu, wv, indexing="ij")
    # reference map (u, v) -> u*e1 + v(1-u)*e2 with jacobian (1-u)
    l1 = U.ravel()
    l2 = (V * (1.0 - U)).ravel()
    w = (WU * WV * (1.0 - U)).ravel()
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    v2 = np.asarray(v2, dtype=float)
    area2 = abs((v1[0] - v0[0]) * (v2[1] - v0[1]) - (v2[0] - v0[0]) * (v1[1] - v0[1]))
    nodes = (np.outer(1.0 - l1 - l2, v0) + np.outer(l1, v1) + np.outer(l2, v2))
    return nodes, w * area2


def polygon_quadrature(polygon, n_per_edge=32, interior_degree=10):
    """Boundary and interior rules for a polygon.

    ``polygon`` is either an object with ``edges``/``vertices`` (such as
    CharacteristicPentagon) or a plain sequence of vertices.  The boundary
    rule carries per-edge tags, arclength parameters and outward normals;
    the interior rule comes from a centroid fan of Duffy triangle rules.
    """
    if hasattr(polygon, "edges"):
        edges = list(polygon.edges)
        vertices = list(polygon.vertices)
    else:
        vertices = [tuple(map(float, v)) for v in polygon]
        edges = [Edge(vertices[k], vertices[(k + 1) % len(vertices)], f"E{k}", None)
                 for k in range(len(vertices))]
    centroid = np.asarray(vertices, dtype=float).mean(axis=0)

    t, w = gauss_legendre_01(n_per_edge)
    nodes, weights, normals, tags, params = [], [], [], [], []
    s0 = 0.0
    for e in edges:
        p = np.asarray(e.start)
        q = np.asarray(e.end)
        d = q - p
        ln = math.hypot(*d)
        pts = p[None, :] + t[:, None] * d[None, :]
        nv = np.array([d[1], -d[0]]) / ln
        mid = 0.5 * (p + q)
        if np.dot(nv, mid - centroid) < 0:
            nv = -nv
        nodes.append(pts)
        weights.append(w * ln)
        normals.append(np.tile(nv, (n_per_edge, 1)))
        tags.extend([e.label] * n_per_edge)
        params.append(s0 + t * ln)
        s0 += ln
    boundary = QuadratureRule(np.vstack(nodes), np.concatenate(weights),
                              normals=np.vstack(normals), tags=tags,
                              params=np.concatenate(params))

    inodes, iweights = [], []
    for k in range(len(vertices)):
        vn, vw = _triangle_rule(centroid, vertices[k],
                                vertices[(k + 1) % len(vertices)], interior_degree)
        inodes.append(vn)
        iweights.append(vw)
    interior = QuadratureRule(np.vstack(inodes), np.concatenate(iweights))
    return boundary, interior


@dataclass
class DomainPolynomial:
    """Defining polynomial P >= 0 of a bounded domain, with its gradient."""

    P: BiPoly
    grad: tuple = field(init=False)

    def __post_init__(self):
        self.grad = (self.P.dx1(), self.P.dx2())

    @classmethod
    def unit_disk(cls):
        return cls(BiPoly({(0, 0): 1, (2, 0): -1, (0, 2): -1}))

    def check_boundary(self, boundary_points, grad_floor=1e-6):
        """Verify P ~ 0 and |grad P| >= grad_floor on given boundary samples."""
        x1 = boundary_points[:, 0]
        x2 = boundary_points[:, 1]
        vals = self.P(x1, x2)
        g1 = self.grad[0](x1, x2)
        g2 = self.grad[1](x1, x2)
        gn = np.hypot(g1, g2)
        return float(np.max(np.abs(vals))), float(np.min(gn)) >= grad_floor

    def inward_normal_scale(self, x1, x2):
        g1 = self.grad[0](x1, x2)
        g2 = self.grad[1](x1, x2)
        return np.column_stack([g1, g2])


def inside_polygon(points, vertices):
    """Crossing-number point-in-polygon test, vectorized over points."""
    pts = np.asarray(points, dtype=float)
    vs = np.asarray(vertices, dtype=float)
    inside = np.zeros(len(pts), dtype=bool)
    n = len(vs)
    x, y = pts[:, 0], pts[:, 1]
    for k in range(n):
        x1, y1 = vs[k]
        x2, y2 = vs[(k + 1) % n]
        cond = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
        inside ^= cond & (x < np.where(cond, xint, np.inf))
    return inside
