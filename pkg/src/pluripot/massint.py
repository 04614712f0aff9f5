"""Monge–Ampère total mass, weighted L2 norms of monomials, and the opening-angle cone.

For a monomial ``z^alpha`` the weighted norm reduces, in logarithmic
coordinates, to ``(2 pi)^n \\int exp(<beta, xi> - 2 m phi_S(xi)) d xi`` with
``beta = 2 (alpha + 1)``.  On the normal cone of an extreme point ``s`` the
exponent is the linear form ``<beta - 2 m s, xi>``, which gives a closed form in
the plane; the quadrature route integrates the same function over a box and
bounds the tail by the minimal slope of the exponent on the unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import integrate, special

from ._exact import dot, fvec, to_fraction
from .lp import InfeasibleError, LPProblem, lp_solve
from .polyspace import gap_distance
from .ratgeom import (ApproxVolume, Body, GeometryError, PolyCone, gamma_hull_union,
                      normal_cone, support, volume)

__all__ = ["MassResult", "ma_total_mass", "l2_finiteness", "NormResult",
           "monomial_l2_norm", "quadrilateral_cone_terms", "GammaCone", "gamma_a_cone",
           "opening_cone_hull", "OpeningConeOracle"]

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class MassResult:
    """``(2 pi)^n * factor`` with ``factor = n! vol(S)``."""

    dim: int
    volume: object
    factor: object
    value: float
    approximate: bool = False

    def formula(self) -> str:
        nf = math.factorial(self.dim)
        return f"(2π)^{self.dim} · {nf} · {self.volume}"


def ma_total_mass(S: Body) -> MassResult:
    vol = volume(S)
    n = S.dim
    if isinstance(vol, ApproxVolume):
        factor = math.factorial(n) * vol.value
        return MassResult(n, vol.value, factor, TWO_PI ** n * factor, True)
    factor = math.factorial(n) * vol
    return MassResult(n, vol, factor, TWO_PI ** n * float(factor))


def l2_finiteness(S: Body, alpha: Sequence[int], m: int) -> bool:
    """Exact test of ``alpha + 1 in int(mS)``.

    Facet test for full-dimensional bodies with ``n <= 4``; otherwise a point is
    interior iff the body is full-dimensional and it is a strictly positive
    convex combination of all extreme points (exact LP maximising the least
    weight).
    """
    x = tuple(Fraction(a + 1, m) for a in alpha)
    if len(x) != S.dim:
        raise GeometryError("dimension mismatch")
    if not S.is_full_dim():
        return False
    if S.dim <= 4:
        return S.interior_contains(x)
    ext = list(S.extreme)
    k = len(ext)
    rows = [[v[i] for v in ext] + [0] for i in range(S.dim)]
    rows.append([1] * k + [0])
    rows += [[int(j == i) for j in range(k)] + [-1] for i in range(k)]
    prob = LPProblem(objective=[0] * k + [1], rows=rows,
                     senses=["=="] * (S.dim + 1) + [">="] * k,
                     rhs=list(x) + [1] + [0] * k,
                     bounds=[(0, None)] * k + [(None, 1)], maximize=True)
    try:
        return lp_solve(prob, exact=True).value > 0
    except InfeasibleError:
        return False


@dataclass
class NormResult:
    """Squared weighted L2 norm of a monomial."""

    value: float
    finite: bool
    method: str
    error_bound: float
    parameters: dict = field(default_factory=dict)
    terms: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"value": self.value if self.finite else "infinite", "method": self.method,
                "error_bound": self.error_bound, "parameters": self.parameters}


def _fan_closed_form(S: Body, alpha, m: int):
    """Per-cone closed forms ``|det(r1, r2)| / (<c, r1> <c, r2>)`` in the plane."""
    beta = [2 * (a + 1) for a in alpha]
    terms = []
    for s in S.extreme:
        rays, lin = normal_cone(S, s).vrep()
        if lin or len(rays) != 2:
            raise GeometryError("normal cones of a full-dimensional polygon are pointed")
        r1, r2 = rays
        c = [b - 2 * m * x for b, x in zip(beta, s)]
        c1, c2 = dot(c, r1), dot(c, r2)
        if c1 >= 0 or c2 >= 0:
            return None
        terms.append((tuple(s), abs(r1[0] * r2[1] - r1[1] * r2[0]) / (c1 * c2)))
    return terms


def _min_slope(S: Body, beta, m: int, samples: int = 4096, seed: int = 0) -> float:
    """``min_{|u|=1} (2 m phi_S(u) - <beta, u>)``.

    With ``Q = 2mS - beta`` containing 0 in its interior this is the distance
    from 0 to the boundary of ``Q``, read off the facets for ``n <= 4``.
    Higher dimensions fall back to sampling plus a local refinement.
    """
    n = S.dim
    if n <= 4:
        best = math.inf
        for a, b in S.facets():
            num = 2 * m * b - dot(a, beta)
            best = min(best, float(num) / math.sqrt(sum(float(x) ** 2 for x in a)))
        return best
    from scipy.optimize import minimize
    V = S.float_vertices()
    bet = np.asarray(beta, dtype=float)
    g = lambda u: 2 * m * (V @ u).max() - bet @ u  # noqa: E731
    rng = np.random.default_rng(seed)
    U = rng.normal(size=(samples, n))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    vals = 2 * m * (U @ V.T).max(axis=1) - U @ bet
    u0 = U[int(np.argmin(vals))]
    res = minimize(lambda u: g(u / np.linalg.norm(u)), u0, method="Nelder-Mead")
    return float(min(vals.min(), res.fun))


def _quadrature(S: Body, alpha, m: int, rel: float = 1e-10):
    n = S.dim
    beta = [2 * (a + 1) for a in alpha]
    gamma = _min_slope(S, beta, m)
    if gamma <= 0:
        raise ArithmeticError("integral diverges")
    # tail over |xi| > L is at most |S^{n-1}| Gamma(n, gamma L) / gamma^n
    surf = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
    tail = lambda L: surf * special.gammaincc(n, gamma * L) * math.gamma(n) / gamma ** n  # noqa: E731
    L = 1.0
    while tail(L) > 1e-13:
        L *= 1.5
    V = [tuple(float(c) * 2 * m for c in v) for v in S.extreme]
    bet = [float(b) for b in beta]

    def f(*xi):
        # plain floats: the integrand is called millions of times in n >= 3
        top = max(sum(c * x for c, x in zip(v, xi)) for v in V)
        return math.exp(sum(b * x for b, x in zip(bet, xi)) - top)

    opts = {"epsabs": 1e-14, "epsrel": rel, "limit": 200}
    if n == 1:
        val, err = integrate.quad(lambda t: f(t), -L, L, points=[0.0], **opts)
    elif n == 2:
        ray_dirs = []
        for s in S.extreme:
            ray_dirs += [r for r in normal_cone(S, s).vrep()[0]]
        ray_dirs = [(float(r[0]), float(r[1])) for r in set(ray_dirs)]

        def inner_points(x1):
            pts = [0.0]
            for r0, r1 in ray_dirs:
                if r0 != 0 and x1 * r0 > 0:
                    pts.append(x1 * r1 / r0)
            return {"points": sorted(p for p in pts if -L < p < L), **opts}

        val, err = integrate.nquad(lambda x2, x1: f(x1, x2), [[-L, L], [-L, L]],
                                   opts=[inner_points, {"points": [0.0], **opts}])
    else:
        val, err = integrate.nquad(f, [[-L, L]] * n, opts=[{"points": [0.0], **opts}] * n)
    return val * TWO_PI ** n, (err + tail(L)) * TWO_PI ** n, L, gamma


def monomial_l2_norm(S: Body, alpha: Sequence[int], m: int,
                     mode: str = "closed_form_2d") -> NormResult:
    """``\\int_{C^n} |z^alpha|^2 e^{-2 m H_S}``; ``inf`` when the strict interiority test fails."""
    alpha = tuple(int(a) for a in alpha)
    params = {"alpha": list(alpha), "m": m, "dim": S.dim}
    if mode not in ("closed_form_2d", "quadrature"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "closed_form_2d" and S.dim != 2:
        raise ValueError("closed_form_2d requires n = 2")
    if not l2_finiteness(S, alpha, m):
        return NormResult(math.inf, False, mode + " (interiority test)", 0.0, params)
    if mode == "closed_form_2d":
        terms = _fan_closed_form(S, alpha, m)
        total = sum(t for _, t in terms)
        return NormResult(TWO_PI ** 2 * float(total), True, mode, 0.0, params,
                          [(s, TWO_PI ** 2 * float(t)) for s, t in terms])
    val, err, L, gamma = _quadrature(S, alpha, m)
    params.update(box=L, min_slope=gamma)
    return NormResult(val, True, mode, err, params)


def quadrilateral_cone_terms(m: int = 4, a="1/5", b="4/5", k: int = 1) -> list:
    """The four planar cone integrals for ``z_1^k`` on ``ch{0,(a,0),(b,1-b),(0,1)}``.

    Cones are taken at ``(0,0), (a,0), (b,1-b), (0,1)`` in that order.  Each
    entry is exact and excludes the common ``(2 pi)^2`` factor; ``None`` marks a
    divergent piece.  With ``q = (b-a)/(1-b) + ma - 1 - k`` the cone at
    ``(b,1-b)`` integrates to ``(1/(m-2-k) - 1/q) / (4 (1 - m(1-b)))``.
    """
    a, b = to_fraction(a), to_fraction(b)
    q = (b - a) / (1 - b) + m * a - 1 - k
    r = m - 2 - k
    c = 1 - m * (1 - b)
    return [
        Fraction(1, 4 * (k + 1)),
        1 / (4 * q) if q > 0 else None,
        (Fraction(1, r) - 1 / q) / (4 * c) if (r > 0 and q > 0 and c != 0) else None,
        Fraction(1, 4 * (k + 1) * r) if r > 0 else None,
    ]


# ---------------------------------------------------------------------------
# opening-angle cone


@dataclass(frozen=True)
class GammaCone:
    """Directions within angle ``arccos(-(d_m - a)/sqrt n)`` of ``(1, ..., 1)``."""

    dim: int
    a: float
    d_m: float

    @property
    def half_angle(self) -> float:
        c = -(self.d_m - self.a) / math.sqrt(self.dim)
        return math.acos(max(-1.0, c))

    def contains(self, xi, tol: float = 1e-12) -> bool:
        xi = np.asarray(xi, dtype=float)
        nrm = np.linalg.norm(xi)
        if nrm == 0:
            return True
        cosang = xi.sum() / (nrm * math.sqrt(self.dim))
        return cosang >= math.cos(self.half_angle) - tol

    def boundary_generators(self) -> list:
        """The two boundary rays in the plane, as floats."""
        if self.dim != 2:
            raise ValueError("boundary generators exist only for n = 2")
        th = self.half_angle
        return [(math.cos(math.pi / 4 + s * th), math.sin(math.pi / 4 + s * th))
                for s in (-1, 1)]

    def sectors(self, shrink: float = 1e-9, denominator: int = 10**8) -> list:
        """Two convex rational sectors whose union lies inside the cone (n = 2).

        The half-angle exceeds a right angle, so the cone is not convex; it is
        split at ``(1, 1)``.  Boundary rays are rotated inward by ``shrink``
        before rationalising, so the union is a subset of the true cone and the
        resulting hull contains the true hull.
        """
        if self.dim != 2:
            raise ValueError("sectors exist only for n = 2")
        th = self.half_angle - shrink
        out = []
        for s in (-1, 1):
            ang = math.pi / 4 + s * th
            r = (Fraction(math.cos(ang)).limit_denominator(denominator),
                 Fraction(math.sin(ang)).limit_denominator(denominator))
            if not self.contains([float(r[0]), float(r[1])], tol=0.0):
                raise ArithmeticError("rational boundary ray left the cone")
            out.append(PolyCone(2, generators=[(1, 1), r], check=False))
        return out


def gamma_a_cone(n: int, a: float, d_m: float) -> GammaCone:
    if not (0 <= a < d_m):
        raise ValueError("need 0 <= a < d_m")
    return GammaCone(n, float(a), float(d_m))


class OpeningConeOracle:
    """Sound over-approximation of the hull for ``n >= 3``: finitely many rays of the cone."""

    def __init__(self, S: Body, cone: GammaCone, rays: int = 512, seed: int = 0):
        self.S = S
        self.cone = cone
        rng = np.random.default_rng(seed)
        n = S.dim
        out = [tuple([1] * n)]
        while len(out) < rays:
            u = rng.normal(size=n)
            if cone.contains(u, tol=-1e-9):
                q = tuple(Fraction(float(x)).limit_denominator(10**6) for x in u)
                if cone.contains([float(x) for x in q], tol=0.0):
                    out.append(q)
        self.rays = out
        self.values = [support(S, r) for r in out]

    def contains(self, x) -> bool:
        x = fvec(x)
        if any(c < 0 for c in x):
            return False
        return all(dot(x, r) <= v for r, v in zip(self.rays, self.values))

    def contains_lattice(self, alpha, m: int) -> bool:
        return self.contains(tuple(Fraction(a, m) for a in alpha))


def opening_cone_hull(S: Body, m: int, a: float = 0.0, norm: str = "L2",
                      rays: int = 512):
    """Hull over the opening-angle cone: a :class:`Body` for n = 2, else an oracle."""
    d = gap_distance(S, m, norm)
    cone = gamma_a_cone(S.dim, a, d)
    if S.dim == 1:
        # the cone is all of R (or R minus the negative axis); both give S
        return S
    if S.dim == 2:
        return gamma_hull_union(S, cone.sectors())
    return OpeningConeOracle(S, cone, rays)
