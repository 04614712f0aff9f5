"""Exact rational convex geometry for bodies ``0 in S in R^n_+``.

Bodies are vertex-represented with ``Fraction`` coordinates.  Support values,
membership, hulls and volumes are exact; halfspace descriptions are derived on
demand (ordered hull in the plane, brute-force facets in dimensions 3 and 4,
LP membership beyond that).
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from ._exact import (det, dot, fvec, lcm_denominator, normal_of, nullspace,
                     primitive, rank, rref, solve, to_fraction)
from .lp import InfeasibleError, LPProblem, lp_solve

Rational = Fraction
Point = tuple

__all__ = [
    "Rational", "Body", "PolyCone", "GeometryError",
    "support", "support_many", "extreme_points", "normal_cone", "dual_cone",
    "gamma_hull", "lower_hull", "is_lower_set", "volume", "ApproxVolume",
    "volume_monte_carlo", "in_minus_dual", "separating_direction",
    "cone_rays",
]


class GeometryError(ValueError):
    """Invalid geometric input (dimension mismatch, broken invariant, ...)."""


# ---------------------------------------------------------------------------
# low-level helpers


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2d(points):
    """Strictly convex hull, counter-clockwise, starting at the lexicographic min."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def _in_hull_lp(x, points) -> bool:
    """Exact LP: is ``x`` a convex combination of ``points``?"""
    if not points:
        return False
    n = len(x)
    k = len(points)
    rows = [[p[i] for p in points] for i in range(n)] + [[1] * k]
    rhs = list(x) + [1]
    prob = LPProblem(objective=[0] * k, rows=rows, senses=["=="] * (n + 1), rhs=rhs)
    try:
        lp_solve(prob, exact=True)
    except InfeasibleError:
        return False
    return True


def _affine_basis_coords(points):
    """Coordinates onto which the affine hull projects injectively."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return []
    _, piv = rref(diffs, len(p0))
    return piv


def _int_scale(points):
    """Common denominator ``D`` and integer coordinates ``D * p``."""
    D = lcm_denominator(x for p in points for x in p)
    return D, [tuple(int(x * D) for x in p) for p in points]


def _brute_facets(points):
    """Facets ``(a, b)`` with ``a . x <= b`` of a full-dimensional point set."""
    n = len(points[0])
    D, ip = _int_scale(points)
    found = {}
    for combo in itertools.combinations(range(len(ip)), n):
        a = normal_of([ip[i] for i in combo])
        if not any(a):
            continue
        b = sum(x * y for x, y in zip(a, ip[combo[0]]))
        vals = [sum(x * y for x, y in zip(a, p)) for p in ip]
        if all(v <= b for v in vals):
            pass
        elif all(v >= b for v in vals):
            a = tuple(-x for x in a)
            b = -b
        else:
            continue
        g = math.gcd(*a)
        a = tuple(x // g for x in a)
        key = a
        if key not in found:
            found[key] = Fraction(b // g if b % g == 0 else Fraction(b, g)) / D
    return sorted(found.items())


def _extreme_points(points):
    pts = sorted(set(points))
    if len(pts) <= 1:
        return pts
    n = len(pts[0])
    if n == 1:
        return sorted({min(pts), max(pts)})
    if n == 2:
        return sorted(_hull2d(pts))
    coords = _affine_basis_coords(pts)
    if len(coords) < n:
        if not coords:
            return pts[:1]
        proj = {tuple(p[c] for c in coords): p for p in pts}
        ext = _extreme_points(list(proj))
        return sorted(proj[q] for q in ext)
    return sorted(_extreme_points_full(pts))


def _extreme_points_full(pts):
    """Float-guided extreme points with exact certificates (LP fallback)."""
    from scipy.spatial import ConvexHull, Delaunay
    D, ip = _int_scale(pts)
    arr = np.array([[float(x) for x in p] for p in pts])
    n = arr.shape[1]
    try:
        hull = ConvexHull(arr)
    except Exception:  # degenerate for qhull: decide every point by LP
        return [p for i, p in enumerate(pts)
                if not _in_hull_lp(p, pts[:i] + pts[i + 1:])]
    cand = sorted(set(int(i) for i in hull.vertices))
    ext = []
    for i in cand:
        normal = np.zeros(n)
        for simplex, eq in zip(hull.simplices, hull.equations):
            if i in simplex:
                normal += eq[:n]
        c = primitive([Fraction(float(x)).limit_denominator(10**6) for x in normal])
        vi = sum(a * b for a, b in zip(c, ip[i]))
        if any(c) and all(sum(a * b for a, b in zip(c, ip[j])) < vi
                          for j in range(len(ip)) if j != i):
            ext.append(pts[i])
        elif not _in_hull_lp(pts[i], pts[:i] + pts[i + 1:]):
            ext.append(pts[i])
    others = [i for i in range(len(pts)) if i not in set(cand)]
    if others:
        cpts = [pts[i] for i in cand]
        tri = Delaunay(arr[cand])
        where = tri.find_simplex(arr[others])
        for i, s in zip(others, where):
            ok = False
            if s >= 0:
                verts = [cpts[j] for j in tri.simplices[s]]
                p0 = verts[0]
                M = [[verts[k + 1][r] - p0[r] for k in range(n)] for r in range(n)]
                lam = solve(M, [pts[i][r] - p0[r] for r in range(n)])
                ok = lam is not None and all(x >= 0 for x in lam) and sum(lam) <= 1
            if not ok and not _in_hull_lp(pts[i], pts[:i] + pts[i + 1:]):
                ext.append(pts[i])
    return ext


# ---------------------------------------------------------------------------
# cones


def cone_rays(inequalities: Sequence[Sequence], n: int):
    """Extreme rays and lineality basis of ``{x : <eta, x> >= 0}``.

    Brute force over (d-1)-subsets of the inequalities, where ``d`` is the
    dimension of the pointed part.  Returns ``(rays, lineality)`` as primitive
    integer vectors.
    """
    ineqs = [primitive(fvec(e)) for e in inequalities]
    ineqs = sorted({e for e in ineqs if any(e)})
    lin = nullspace(ineqs, n) if ineqs else [tuple(int(i == j) for j in range(n))
                                             for i in range(n)]
    d = n - len(lin)
    rays = set()
    if d == 0:
        return [], lin
    for subset in itertools.combinations(ineqs, d - 1):
        M = list(subset) + list(lin)
        if rank(M, n) != n - 1:
            continue
        ns = nullspace(M, n)
        r = ns[0]
        for s in (r, tuple(-x for x in r)):
            vals = [sum(a * b for a, b in zip(e, s)) for e in ineqs]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                rays.add(primitive(s))
    return sorted(rays), lin


class PolyCone:
    """Polyhedral cone given by generators and/or inequalities ``<eta, xi> >= 0``."""

    def __init__(self, dim: int, generators: Iterable = (), inequalities: Iterable = (),
                 check: bool = True):
        self.dim = int(dim)
        if self.dim < 1:
            raise GeometryError("cone dimension must be positive")
        self.generators = tuple(fvec(g) for g in generators)
        self.inequalities = tuple(fvec(e) for e in inequalities)
        if not self.generators and not self.inequalities:
            raise GeometryError("a cone needs generators or inequalities")
        for v in self.generators + self.inequalities:
            if len(v) != self.dim:
                raise GeometryError("cone vector has wrong dimension")
        self._vrep = None
        self._hrep = None
        if check and self.generators and self.inequalities and self.dim <= 3:
            hv = PolyCone(self.dim, generators=self.generators, check=False)
            hh = PolyCone(self.dim, inequalities=self.inequalities, check=False)
            if not (hv.subset_of(hh) and hh.subset_of(hv)):
                raise GeometryError("generators and inequalities describe different cones")

    def vrep(self):
        """``(rays, lineality)``; generators of the cone are rays plus +-lineality."""
        if self._vrep is None:
            if self.inequalities:
                self._vrep = cone_rays(self.inequalities, self.dim)
            else:
                rays, lin = cone_rays(self.hrep(), self.dim)
                self._vrep = (rays, lin)
        return self._vrep

    def hrep(self):
        """Inequality normals (primitive integer vectors)."""
        if self._hrep is None:
            if self.inequalities:
                self._hrep = sorted({primitive(e) for e in self.inequalities if any(e)})
            else:
                rays, lin = cone_rays(self.generators, self.dim)
                self._hrep = sorted(set(rays) | set(lin) |
                                    {tuple(-x for x in l) for l in lin})
        return self._hrep

    def all_generators(self):
        rays, lin = self.vrep()
        return list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]

    def contains(self, xi) -> bool:
        xi = fvec(xi)
        return all(dot(e, xi) >= 0 for e in self.hrep())

    def subset_of(self, other: "PolyCone") -> bool:
        return all(other.contains(g) for g in self.all_generators())

    def __eq__(self, other):
        if not isinstance(other, PolyCone) or other.dim != self.dim:
            return NotImplemented
        return self.subset_of(other) and other.subset_of(self)

    def __hash__(self):
        return hash((self.dim, tuple(self.hrep())))

    def is_full_space(self) -> bool:
        return not self.hrep()

    def is_zero(self) -> bool:
        rays, lin = self.vrep()
        return not rays and not lin

    def to_json(self) -> dict:
        out = {"dim": self.dim}
        if self.generators:
            out["generators"] = [[str(x) for x in g] for g in self.generators]
        if self.inequalities:
            out["inequalities"] = [[str(x) for x in e] for e in self.inequalities]
        return out

    @classmethod
    def from_json(cls, data) -> "PolyCone":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"], data.get("generators", ()), data.get("inequalities", ()))

    @classmethod
    def orthant(cls, n: int) -> "PolyCone":
        return cls(n, generators=[tuple(int(i == j) for j in range(n)) for i in range(n)])

    def __repr__(self):
        return (f"PolyCone(dim={self.dim}, generators={len(self.generators)}, "
                f"inequalities={len(self.inequalities)})")


# ---------------------------------------------------------------------------
# bodies


class Body:
    """Compact convex ``S = conv(vertices)`` in ``R^n_+`` with ``0 in S``.

    The vertex list is deduplicated and sorted lexicographically; it need not
    consist of extreme points only (see :func:`extreme_points`).
    """

    def __init__(self, vertices: Iterable, dim: Optional[int] = None, *, check: bool = True):
        pts = [fvec(v) for v in vertices]
        if not pts:
            raise GeometryError("a body needs at least one vertex")
        n = int(dim) if dim is not None else len(pts[0])
        if n < 1:
            raise GeometryError("dimension must be positive")
        for p in pts:
            if len(p) != n:
                raise GeometryError(f"vertex {p} does not have dimension {n}")
            if any(x < 0 for x in p):
                raise GeometryError(f"vertex {tuple(map(str, p))} has a negative coordinate")
        self.dim = n
        self.vertices = tuple(sorted(set(pts)))
        self._ext = None
        self._facets = None
        self._int = None
        if check:
            origin = tuple(Fraction(0) for _ in range(n))
            if origin not in self.vertices and not _in_hull_lp(origin, list(self.vertices)):
                raise GeometryError("the origin is not in the body")

    # -- cached structure -------------------------------------------------
    @property
    def extreme(self) -> tuple:
        if self._ext is None:
            self._ext = tuple(_extreme_points(list(self.vertices)))
        return self._ext

    def _intmat(self):
        if self._int is None:
            D, ip = _int_scale(list(self.extreme))
            self._int = (D, ip)
        return self._int

    def affine_rank(self) -> int:
        return len(_affine_basis_coords(list(self.extreme)))

    def is_full_dim(self) -> bool:
        return self.affine_rank() == self.dim

    def facets(self):
        """Halfspaces ``(a, b)``, ``a . x <= b``, for full-dimensional bodies in n <= 4."""
        if self._facets is None:
            if not self.is_full_dim():
                raise GeometryError("facets are only defined for full-dimensional bodies")
            ext = list(self.extreme)
            n = self.dim
            if n == 1:
                self._facets = [((1,), ext[-1][0]), ((-1,), -ext[0][0])]
            elif n == 2:
                hull = _hull2d(ext)
                out = []
                for p, q in zip(hull, hull[1:] + hull[:1]):
                    a = primitive((q[1] - p[1], p[0] - q[0]))
                    out.append((a, dot(a, p)))
                self._facets = sorted(out)
            elif n <= 4:
                self._facets = _brute_facets(ext)
            else:
                raise GeometryError("exact facets are only computed for n <= 4")
        return self._facets

    # -- queries ----------------------------------------------------------
    def support(self, xi) -> Fraction:
        return support(self, xi)

    def contains(self, x) -> bool:
        x = fvec(x)
        if len(x) != self.dim:
            raise GeometryError("dimension mismatch")
        if self.dim <= 4 and self.is_full_dim():
            return all(dot(a, x) <= b for a, b in self.facets())
        return _in_hull_lp(x, list(self.extreme))

    def interior_contains(self, x) -> bool:
        """Strict interior membership (always False for lower-dimensional bodies)."""
        x = fvec(x)
        if not self.is_full_dim():
            return False
        return all(dot(a, x) < b for a, b in self.facets())

    def scaled(self, t) -> "Body":
        t = to_fraction(t)
        return Body([tuple(t * x for x in v) for v in self.extreme], self.dim, check=False)

    def float_vertices(self) -> np.ndarray:
        return np.array([[float(x) for x in v] for v in self.extreme], dtype=float)

    def slice(self, J: Sequence[int]) -> "Body":
        return slice_face(self, J)

    # -- identity / io ----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Body):
            return NotImplemented
        return self.dim == other.dim and self.extreme == other.extreme

    def __hash__(self):
        return hash((self.dim, self.extreme))

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.extreme)
        return f"Body[{self.dim}]{{{vs}}}"

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[str(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "Body":
        if isinstance(data, str):
            data = json.loads(data)
        if "vertices" not in data:
            raise GeometryError("body JSON needs a 'vertices' list")
        return cls(data["vertices"], data.get("dim"))

    # -- constructors -----------------------------------------------------
    @classmethod
    def simplex(cls, n: int) -> "Body":
        """The standard simplex ``ch{0, e_1, ..., e_n}``."""
        return cls([tuple(0 for _ in range(n))] +
                   [tuple(int(i == j) for j in range(n)) for i in range(n)])

    @classmethod
    def cube(cls, n: int) -> "Body":
        return cls(list(itertools.product((0, 1), repeat=n)))


def slice_face(S: Body, J: Sequence[int]) -> Body:
    """``S_J``: points of ``S`` supported in the coordinates ``J`` (0-based).

    ``S`` lies in the orthant, so ``S ∩ {x_j = 0, j not in J}`` is a face and
    is spanned by the vertices already lying in that coordinate subspace.
    """
    J = sorted(set(int(j) for j in J))
    if not J:
        raise GeometryError("J must be non-empty")
    if J[0] < 0 or J[-1] >= S.dim:
        raise GeometryError("index out of range")
    off = [j for j in range(S.dim) if j not in J]
    verts = [tuple(v[j] for j in J) for v in S.extreme if all(v[k] == 0 for k in off)]
    return Body(verts, len(J), check=False)


# ---------------------------------------------------------------------------
# operations


def support(S: Body, xi) -> Fraction:
    """``max_{s in S} <s, xi>`` over the extreme points, exactly."""
    if len(xi) != S.dim:
        raise GeometryError(f"direction has dimension {len(xi)}, body has {S.dim}")
    if all(isinstance(x, (int, np.integer)) and not isinstance(x, bool) for x in xi):
        D, ip = S._intmat()
        best = max(sum(a * int(b) for a, b in zip(p, xi)) for p in ip)
        return Fraction(best, D)
    xi = fvec(xi)
    return max(dot(v, xi) for v in S.extreme)


def support_many(S: Body, Xi) -> list:
    """Exact support values at many integer directions (rows of ``Xi``)."""
    D, ip = S._intmat()
    V = np.array(ip, dtype=object)
    X = np.array([[int(x) for x in row] for row in Xi], dtype=object)
    vals = V.dot(X.T)
    return [Fraction(int(m), D) for m in vals.max(axis=0)]


def extreme_points(S: Body) -> list:
    """Minimal vertex set, sorted lexicographically."""
    return list(S.extreme)


def normal_cone(S: Body, s) -> PolyCone:
    """``{xi : <s - t, xi> >= 0 for all extreme t}`` at the extreme point ``s``."""
    s = fvec(s)
    if s not in S.extreme:
        raise GeometryError(f"{tuple(map(str, s))} is not an extreme point")
    ineqs = [tuple(a - b for a, b in zip(s, t)) for t in S.extreme if t != s]
    if not ineqs:
        ineqs = [tuple(0 for _ in s)]
    return PolyCone(S.dim, inequalities=ineqs, check=False)


def dual_cone(G: PolyCone) -> PolyCone:
    """``{x : <x, xi> >= 0 for all xi in G}``: generators and inequalities swap."""
    return PolyCone(G.dim, generators=G.inequalities, inequalities=G.generators,
                    check=False)


def _has_positive_direction(G: PolyCone) -> bool:
    n = G.dim
    gens = G.all_generators()
    if not gens:
        return False
    k = len(gens)
    # mu >= 0 with sum mu_i g_i >= 1 componentwise
    rows = [[g[i] for g in gens] for i in range(n)]
    prob = LPProblem(objective=[0] * k, rows=rows, senses=[">="] * n, rhs=[1] * n)
    try:
        lp_solve(prob, exact=True)
    except InfeasibleError:
        return False
    return True


def _vertices_from_halfspaces(cons, n):
    """Vertices of the bounded polyhedron ``{x : a . x <= b}``."""
    icons = []
    seen = set()
    for a, b in cons:
        d = lcm_denominator(list(a) + [b])
        ia = [int(x * d) for x in a]
        ib = int(b * d)
        g = math.gcd(*ia, ib)
        key = (tuple(x // g for x in ia), ib // g)
        if key not in seen and any(key[0]):
            seen.add(key)
            icons.append(key)
    verts = set()
    for combo in itertools.combinations(icons, n):
        M = [list(c[0]) for c in combo]
        dM = det(M)
        if dM == 0:
            continue
        rhs = [c[1] for c in combo]
        num = []
        for i in range(n):
            Mi = [row[:i] + [rhs[r]] + row[i + 1:] for r, row in enumerate(M)]
            num.append(det(Mi))
        if dM < 0:
            dM = -dM
            num = [-x for x in num]
        if all(sum(a * x for a, x in zip(c[0], num)) <= c[1] * dM for c in icons):
            verts.add(tuple(Fraction(x, dM) for x in num))
    return sorted(verts)


def _hull_constraints(S: Body, cones: Sequence[PolyCone]):
    """Halfspaces describing ``{x >= 0 : <x, xi> <= phi_S(xi), xi in union(cones)}``."""
    n = S.dim
    cons = [(tuple(-int(i == j) for j in range(n)), Fraction(0)) for i in range(n)]
    seen = set()
    for G in cones:
        gh = G.hrep()
        for s in S.extreme:
            ncone = normal_cone(S, s)
            rays, lin = cone_rays(list(gh) + list(ncone.hrep()), n)
            dirs = list(rays) + list(lin) + [tuple(-x for x in l) for l in lin]
            for r in dirs:
                if r in seen:
                    continue
                seen.add(r)
                cons.append((r, dot(s, r)))
    return cons


def gamma_hull_union(S: Body, cones: Sequence[PolyCone]) -> Body:
    """Gamma-hull for ``Gamma`` a finite union of polyhedral cones.

    On each piece ``Gamma_i ∩ N_s`` the support function is the linear form
    ``<s, .>``, so the defining family of inequalities reduces to the extreme
    rays (and lineality) of these pieces.
    """
    cons = _hull_constraints(S, cones)
    verts = _vertices_from_halfspaces(cons, S.dim)
    if not verts:
        raise GeometryError("hull computation produced no vertices")
    # boundedness check: every constraint set must cap each coordinate
    bound = max(max(v) for v in verts)
    far = [tuple(bound * 2 + 1 if j == i else 0 for j in range(S.dim)) for i in range(S.dim)]
    for p in far:
        if all(dot(a, p) <= b for a, b in cons):
            raise GeometryError("Gamma-hull is unbounded (no strictly positive direction)")
    return Body(verts, S.dim, check=False)


def gamma_hull(S: Body, G: PolyCone) -> Body:
    """``{x in R^n_+ : <x, xi> <= phi_S(xi) for xi in G}`` as a vertex body."""
    if G.dim != S.dim:
        raise GeometryError("cone and body dimensions differ")
    if G.is_zero():
        raise GeometryError("the cone {0} does not define a hull")
    if not _has_positive_direction(G):
        raise GeometryError("the cone contains no strictly positive direction")
    return gamma_hull_union(S, [G])


def in_minus_dual(x, S: Body, G: PolyCone) -> bool:
    """Exact LP test of ``x in (S - G°) ∩ R^n_+`` (the dual-cone form of the hull)."""
    x = fvec(x)
    if any(c < 0 for c in x):
        return False
    n = S.dim
    ext = list(S.extreme)
    # generators of G° are the inequality normals of G
    dgens = list(G.hrep())
    k, r = len(ext), len(dgens)
    rows = [[v[i] for v in ext] + [-t[i] for t in dgens] for i in range(n)]
    rows.append([1] * k + [0] * r)
    prob = LPProblem(objective=[0] * (k + r), rows=rows, senses=["=="] * (n + 1),
                     rhs=list(x) + [1])
    try:
        lp_solve(prob, exact=True)
    except InfeasibleError:
        return False
    return True


def lower_hull(S: Body) -> Body:
    """Smallest lower set containing ``S``: hull of all vertex cube corners."""
    n = S.dim
    corners = set()
    for v in S.extreme:
        for mask in itertools.product((0, 1), repeat=n):
            corners.add(tuple(x if m else Fraction(0) for x, m in zip(v, mask)))
    return Body(corners, n, check=False)


def is_lower_set(S: Body) -> bool:
    """Vertex-cube criterion: every corner of every ``C_v`` lies in ``S``."""
    n = S.dim
    for v in S.extreme:
        for mask in itertools.product((0, 1), repeat=n):
            if all(mask):
                continue
            c = tuple(x if m else Fraction(0) for x, m in zip(v, mask))
            if c != v and not S.contains(c):
                return False
    return True


def separating_direction(S: Body, x) -> Optional[tuple]:
    """Integer ``xi`` with ``<x, xi> > phi_S(xi)``, or ``None`` if ``x in S``."""
    x = fvec(x)
    n = S.dim
    if n <= 4 and S.is_full_dim():
        for a, b in S.facets():
            if dot(a, x) > b:
                return tuple(a)
        return None
    # maximise <x, xi> - t  s.t. <v, xi> <= t, -1 <= xi <= 1
    ext = list(S.extreme)
    obj = list(x) + [-1]
    rows = [list(v) + [-1] for v in ext]
    prob = LPProblem(objective=obj, rows=rows, senses=["<="] * len(rows),
                     rhs=[0] * len(rows), bounds=[(-1, 1)] * n + [(None, None)],
                     maximize=True)
    res = lp_solve(prob, exact=True)
    if res.value <= 0:
        return None
    return primitive(res.x[:n])


# ---------------------------------------------------------------------------
# volume


def _simplices(points):
    """Pulling triangulation of a full-dimensional point set (index tuples)."""
    n = len(points[0])
    ext = _extreme_points(points)
    if n == 1:
        return [(ext[0], ext[-1])]
    if n == 2:
        hull = _hull2d(ext)
        return [(hull[0], hull[i], hull[i + 1]) for i in range(1, len(hull) - 1)]
    v0 = ext[0]
    out = []
    for a, b in _brute_facets(ext):
        if dot(a, v0) == b:
            continue
        face = [p for p in ext if dot(a, p) == b]
        k = next(i for i, ai in enumerate(a) if ai != 0)
        proj = {tuple(c for j, c in enumerate(p) if j != k): p for p in face}
        for simp in _simplices(list(proj)):
            out.append((v0,) + tuple(proj[q] for q in simp))
    return out


def volume(S: Body):
    """Exact euclidean volume for ``n <= 4``; ``0`` for lower-dimensional bodies.

    For ``n > 4`` an :class:`ApproxVolume` Monte Carlo estimate is returned.
    """
    n = S.dim
    if not S.is_full_dim():
        return Fraction(0)
    if n > 4:
        return volume_monte_carlo(S)
    total = Fraction(0)
    for simp in _simplices(list(S.extreme)):
        p0 = simp[0]
        M = [[q[i] - p0[i] for i in range(n)] for q in simp[1:]]
        total += abs(det(M))
    return total / math.factorial(n)


@dataclass(frozen=True)
class ApproxVolume:
    """Flagged approximate volume: estimate and one standard error."""

    value: float
    stderr: float
    samples: int
    approximate: bool = True

    def __float__(self):
        return self.value


def volume_monte_carlo(S: Body, samples: int = 200_000, seed: int = 0) -> ApproxVolume:
    from scipy.spatial import Delaunay
    V = S.float_vertices()
    if not S.is_full_dim():
        return ApproxVolume(0.0, 0.0, samples)
    lo, hi = V.min(axis=0), V.max(axis=0)
    box = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    X = lo + (hi - lo) * rng.random((samples, V.shape[1]))
    inside = Delaunay(V).find_simplex(X) >= 0
    p = inside.mean()
    return ApproxVolume(box * p, box * math.sqrt(p * (1 - p) / samples), samples)


# ---------------------------------------------------------------------------
# random instances


def random_body(rng: random.Random, n: int, k: int, denom: int = 6, scale: int = 6) -> Body:
    """Random rational body ``conv(0, p_1..p_k)`` with coordinates in ``[0, scale/denom]``."""
    pts = [tuple(0 for _ in range(n))]
    for _ in range(k):
        pts.append(tuple(Fraction(rng.randint(0, scale), denom) for _ in range(n)))
    return Body(pts, n, check=False)
