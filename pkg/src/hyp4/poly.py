"""Polynomial algebra in one and two variables, exact where inputs are exact.

Coefficients are kept as ``Fraction`` (or int) whenever possible.  Floating
inputs, e.g. direction cosines of a characteristic frame, are embedded into
the rationals exactly via ``Fraction(float)``, so identities such as the
annihilation of a ridge function by its own directional derivative hold
exactly and not merely to roundoff.  Conversion back to float happens only
at evaluation time.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# relative threshold used by explicit prune() calls on float-contaminated data
PRUNE_REL_TOL = 1e-12


def _exact(x):
    """Embed a scalar into exact arithmetic.  Floats convert exactly."""
    if isinstance(x, (int, Fraction)):
        return x
    return Fraction(float(x))


class UniPoly:
    """Univariate polynomial with coefficients in ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i] = out[i] + c
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] + c
        return UniPoly(out)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return UniPoly(out)
        return UniPoly([other * c for c in self.coeffs])

    __rmul__ = __mul__

    def derivative(self, order=1):
        p = self
        for _ in range(order):
            if p.degree == 0:
                p = UniPoly([0])
            else:
                p = UniPoly([k * c for k, c in enumerate(p.coeffs)][1:])
        return p

    def __call__(self, z):
        """Horner evaluation.  Exact when coefficients and ``z`` are exact."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_float(self, z):
        z = np.asarray(z, dtype=float)
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = acc * z + float(c)
        return acc


def chebyshev(q):
    """Chebyshev polynomial T_q of the first kind, integer coefficients."""
    if q < 0:
        raise ValueError("degree must be nonnegative")
    t0, t1 = UniPoly([1]), UniPoly([0, 1])
    if q == 0:
        return t0
    for _ in range(q - 1):
        t0, t1 = t1, UniPoly([0, 2]) * t1 - t0
    return t1


class BiPoly:
    """Bivariate polynomial as a map (i, j) -> coefficient of x1^i x2^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for key, c in dict(terms).items():
                if c != 0:
                    t[(int(key[0]), int(key[1]))] = c
        self.terms = t

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def variable(cls, which):
        # which = 0 for x1, 1 for x2
        return cls({(1, 0): 1} if which == 0 else {(0, 1): 1})

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __repr__(self):
        items = sorted(self.terms.items())
        return "BiPoly(" + ", ".join(f"x1^{i}*x2^{j}: {c}" for (i, j), c in items) + ")"

    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        if not self.terms:
            return 0
        return max(i + j for i, j in self.terms)

    def max_abs_coeff(self):
        if not self.terms:
            return 0.0
        return max(abs(float(c)) for c in self.terms.values())

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return BiPoly(out)

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            out = {}
            for (i1, j1), a in self.terms.items():
                for (i2, j2), b in other.terms.items():
                    k = (i1 + i2, j1 + j2)
                    s = out.get(k, 0) + a * b
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
            return BiPoly(out)
        if other == 0:
            return BiPoly()
        return BiPoly({k: other * c for k, c in self.terms.items()})

    __rmul__ = __mul__

    def dx1(self):
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i > 0})

    def dx2(self):
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j > 0})

    def prune(self, rel_tol=PRUNE_REL_TOL):
        """Drop coefficients tiny relative to the largest one.

        Only meant to be called at explicit normalization points; arithmetic
        itself never prunes.
        """
        m = self.max_abs_coeff()
        if m == 0.0:
            return BiPoly()
        return BiPoly({k: c for k, c in self.terms.items() if abs(float(c)) > rel_tol * m})

    def __call__(self, x1, x2):
        """Vectorized float evaluation."""
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        out = np.zeros(np.broadcast(x1, x2).shape)
        for (i, j), c in sorted(self.terms.items()):
            out = out + float(c) * x1**i * x2**j
        return out

    def eval_exact(self, x1, x2):
        """Exact evaluation at a single point; floats are embedded exactly."""
        x1 = _exact(x1)
        x2 = _exact(x2)
        imax = max((i for i, _ in self.terms), default=0)
        jmax = max((j for _, j in self.terms), default=0)
        p1 = [Fraction(1)] * (imax + 1)
        p2 = [Fraction(1)] * (jmax + 1)
        for k in range(1, imax + 1):
            p1[k] = p1[k - 1] * x1
        for k in range(1, jmax + 1):
            p2[k] = p2[k - 1] * x2
        acc = Fraction(0)
        for (i, j), c in self.terms.items():
            acc += _exact(c) * p1[i] * p2[j]
        return acc

    def to_triples(self):
        """Serialize as sorted [i, j, coeff] triples with float coefficients."""
        return [[i, j, float(c)] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_triples(cls, triples):
        out = {}
        for i, j, c in triples:
            out[(int(i), int(j))] = out.get((int(i), int(j)), 0) + _exact(c)
        return cls(out)


class DirectionalOp:
    """First-order operator <grad, d> for a fixed direction d (any length)."""

    __slots__ = ("d1", "d2")

    def __init__(self, direction):
        self.d1 = _exact(direction[0])
        self.d2 = _exact(direction[1])

    def __call__(self, p: BiPoly) -> BiPoly:
        return self.d1 * p.dx1() + self.d2 * p.dx2()


def apply_directional(direction, p):
    """Apply <grad, direction> once to a BiPoly."""
    return DirectionalOp(direction)(p)


def apply_L(system, p):
    """Apply the full operator c * prod_j <grad, a^j> to a BiPoly.

    ``system`` only needs ``tangents`` (four direction pairs) and ``scale``.
    The four factors commute, so the application order is immaterial; this
    uses index order 1..4.
    """
    out = p
    for a in system.tangents:
        out = apply_directional(a, out)
    return _exact(system.scale) * out


def apply_coefficient_form(coeffs, p):
    """Apply a0 d1^4 + a1 d1^3 d2 + a2 d1^2 d2^2 + a3 d1 d2^3 + a4 d2^4."""
    d = [p]
    for _ in range(4):
        d.append(d[-1].dx1())
    # d[k] = d1^k p; now take the remaining x2 derivatives
    out = BiPoly()
    for m, a in enumerate(coeffs):
        term = d[4 - m]
        for _ in range(m):
            term = term.dx2()
        out = out + _exact(a) * term
    return out


def compose_linear(Q, b):
    """Compose a univariate polynomial with the linear form b1*x1 + b2*x2."""
    lin = BiPoly({(1, 0): _exact(b[0]), (0, 1): _exact(b[1])})
    out = BiPoly()
    power = BiPoly.constant(1)
    for k, c in enumerate(Q.coeffs):
        if k > 0:
            power = power * lin
        if c != 0:
            out = out + _exact(c) * power
    return out


def ridge_power_basis(system, D, rank_tol=1e-9):
    """Index pairs (j, k) of an independent family of ridge powers z^k(-n^j . x).

    For each degree k the four ridge powers span min(4, k+1) dimensions; a
    rank computation over the monomial basis selects an independent subset
    rather than hardcoding that count.
    """
    chosen = []
    for k in range(D + 1):
        vecs = []
        cand = []
        for j in range(4):
            n = system.normals[j]
            p = compose_linear(UniPoly([0] * k + [1]), (-n[0], -n[1]))
            row = np.array([float(p.terms.get((k - m, m), 0)) for m in range(k + 1)])
            vecs.append(row)
            cand.append((j, k))
        kept_rows = []
        for (j, k2), row in zip(cand, vecs):
            trial = kept_rows + [row]
            m = np.vstack(trial)
            s = np.linalg.svd(m, compute_uv=False)
            if s[-1] > rank_tol * s[0]:
                kept_rows.append(row)
                chosen.append((j, k2))
    return chosen


def kernel_Lplus_basis(system, D):
    """Polynomial kernel basis of the adjoint: independent ridge powers."""
    out = []
    for j, k in ridge_power_basis(system, D):
        n = system.normals[j]
        out.append(compose_linear(UniPoly([0] * k + [1]), (-n[0], -n[1])))
    return out


def symbol_coefficients_exact(system):
    """The five symbol coefficients obtained by exact expansion of the factors."""
    xi1 = BiPoly.variable(0)
    xi2 = BiPoly.variable(1)
    prod = BiPoly.constant(_exact(system.scale))
    for a in system.tangents:
        prod = prod * (_exact(a[0]) * xi1 + _exact(a[1]) * xi2)
    return tuple(prod.terms.get((4 - m, m), Fraction(0)) for m in range(5))
