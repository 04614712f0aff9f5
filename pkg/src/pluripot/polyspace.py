"""Graded polynomial spaces ``P^S_m``: lattice points, S-degree, membership, ``d_m``."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ._exact import fvec
from .bodies import SurdSegment
from .logsupport import hs_eval
from .lp import InfeasibleError, LPProblem, lp_solve
from .ratgeom import Body, GeometryError

__all__ = ["MultiIndexSet", "SparsePoly", "lattice_points", "in_scaled_body",
           "s_degree", "gauge", "is_member", "gap_distance", "min_norm_point",
           "growth_probe", "GrowthReport"]

MultiIndex = Tuple[int, ...]


class MultiIndexSet:
    """Sorted, deduplicated set of exponent vectors."""

    def __init__(self, indices: Iterable[Sequence[int]], dim: Optional[int] = None):
        idx = sorted({tuple(int(x) for x in a) for a in indices})
        for a in idx:
            if any(x < 0 for x in a):
                raise ValueError(f"negative exponent in {a}")
        if dim is None:
            if not idx:
                raise ValueError("dimension needed for an empty set")
            dim = len(idx[0])
        if any(len(a) != dim for a in idx):
            raise ValueError("mixed dimensions")
        self.dim = dim
        self.indices = tuple(idx)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def __contains__(self, a):
        return tuple(a) in set(self.indices)

    def __eq__(self, other):
        if isinstance(other, MultiIndexSet):
            return self.indices == other.indices
        return NotImplemented

    def __le__(self, other):
        return set(self.indices) <= set(other.indices)

    def __repr__(self):
        return f"MultiIndexSet({list(self.indices)})"


class SparsePoly:
    """``sum c_alpha z^alpha`` with complex coefficients; zero terms are dropped."""

    def __init__(self, dim: int, terms: Dict[Sequence[int], complex] = None):
        self.dim = int(dim)
        self.terms: Dict[MultiIndex, complex] = {}
        for a, c in (terms or {}).items():
            a = tuple(int(x) for x in a)
            if len(a) != self.dim or any(x < 0 for x in a):
                raise ValueError(f"bad exponent {a}")
            c = complex(c)
            if c != 0:
                self.terms[a] = self.terms.get(a, 0) + c
        self.terms = {a: c for a, c in sorted(self.terms.items()) if c != 0}

    @classmethod
    def monomial(cls, alpha: Sequence[int], c: complex = 1) -> "SparsePoly":
        return cls(len(alpha), {tuple(alpha): c})

    @classmethod
    def constant(cls, dim: int, c: complex = 1) -> "SparsePoly":
        return cls(dim, {(0,) * dim: c})

    def support(self) -> MultiIndexSet:
        return MultiIndexSet(self.terms, self.dim)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return SparsePoly(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return SparsePoly(self.dim, {a: c * other for a, c in self.terms.items()})
        self._check(other)
        out: Dict[MultiIndex, complex] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return SparsePoly(self.dim, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        result = SparsePoly.constant(self.dim)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _check(self, other):
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def __call__(self, z) -> complex:
        z = np.asarray(z, dtype=complex)
        return complex(sum(c * np.prod(z ** np.array(a)) for a, c in self.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __repr__(self):
        return f"SparsePoly({self.dim}, {self.terms})"

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "terms": [{"alpha": list(a), "re": c.real, "im": c.imag}
                          for a, c in self.terms.items()]}

    @classmethod
    def from_json(cls, data) -> "SparsePoly":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            a = tuple(t["alpha"])
            terms[a] = terms.get(a, 0) + complex(float(t.get("re", 0)), float(t.get("im", 0)))
        return cls(data["dim"], terms)


# ---------------------------------------------------------------------------
# lattice points


def in_scaled_body(S, alpha: Sequence, m) -> bool:
    """Exact test of ``alpha in m S``."""
    if isinstance(S, SurdSegment):
        return S.contains_lattice(alpha, m)
    m = Fraction(m)
    if m == 0:
        return not any(alpha)
    x = tuple(Fraction(a) / m for a in alpha)
    return S.contains(x)


def _box(S, m: int):
    if isinstance(S, SurdSegment):
        return S.bounding_box(m)
    return [int(math.floor(m * max(v[i] for v in S.extreme))) for i in range(S.dim)]


def lattice_points(S, m: int) -> MultiIndexSet:
    """``(mS) ∩ N^n`` by exact membership over the integer bounding box."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if isinstance(S, SurdSegment):
        return MultiIndexSet([a for a in S.lattice_candidates(m)
                              if S.contains_lattice(a, m)], S.dim)
    hi = _box(S, m)
    out = []
    for alpha in np.ndindex(*[h + 1 for h in hi]):
        if in_scaled_body(S, alpha, m):
            out.append(tuple(int(a) for a in alpha))
    return MultiIndexSet(out, S.dim)


def gauge(S: Body, alpha: Sequence) -> Fraction:
    """``min {t >= 0 : alpha in t S}``; ``inf`` outside the cone over ``S``."""
    alpha = fvec(alpha)
    if not any(alpha):
        return Fraction(0)
    verts = [v for v in S.extreme if any(v)]
    if not verts:
        return math.inf
    k = len(verts)
    rows = [[v[i] for v in verts] for i in range(S.dim)]
    prob = LPProblem(objective=[1] * k, rows=rows, senses=["=="] * S.dim, rhs=list(alpha))
    try:
        return lp_solve(prob, exact=True).value
    except InfeasibleError:
        return math.inf


def s_degree(p: SparsePoly, S: Body):
    """Smallest ``m`` with ``p in P^S_m``; ``math.inf`` if there is none."""
    if p.dim != S.dim:
        raise GeometryError("dimension mismatch")
    best = 0
    for a in p.terms:
        g = gauge(S, a)
        if g == math.inf:
            return math.inf
        best = max(best, math.ceil(g))
    return best


def is_member(p: SparsePoly, S, m: int) -> bool:
    """Is every exponent of ``p`` in ``(mS) ∩ N^n``?"""
    return all(in_scaled_body(S, a, m) for a in p.terms)


# ---------------------------------------------------------------------------
# gap distance


def min_norm_point(P: np.ndarray, tol: float = 1e-12, max_iter: int = 10_000):
    """Wolfe's algorithm: the point of ``conv(rows of P)`` closest to the origin."""
    P = np.asarray(P, dtype=float)
    k = int(np.argmin((P * P).sum(axis=1)))
    S = [k]
    lam = np.array([1.0])
    x = P[k].copy()
    scale = max(1.0, float(np.abs(P).max()))
    for _ in range(max_iter):
        j = int(np.argmin(P @ x))
        if x @ x - P[j] @ x <= tol * scale * scale or j in S:
            return x
        S.append(j)
        lam = np.append(lam, 0.0)
        while True:
            Q = P[S]
            # affine minimiser over the current corral
            G = Q @ Q.T
            n = len(S)
            A = np.zeros((n + 1, n + 1))
            A[:n, :n] = G
            A[:n, n] = 1
            A[n, :n] = 1
            rhs = np.zeros(n + 1)
            rhs[n] = 1
            mu = np.linalg.lstsq(A, rhs, rcond=None)[0][:n]
            if np.all(mu > tol):
                lam = mu
                x = mu @ Q
                break
            neg = mu <= tol
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios = np.where(neg, lam / (lam - mu), np.inf)
            theta = min(1.0, float(np.min(ratios)))
            lam = theta * mu + (1 - theta) * lam
            keep = lam > tol
            S = [s for s, kp in zip(S, keep) if kp]
            lam = lam[keep]
            lam = lam / lam.sum()
            x = lam @ P[S]
    return x


def _l1_distance(alpha, verts) -> float:
    """Exact LP over the rational vertices of ``mS``."""
    n, k = len(verts[0]), len(verts)
    # variables: lambda (k), u (n), w (n); alpha - V^T lambda = u - w
    rows = []
    for i in range(n):
        rows.append([v[i] for v in verts] + [1.0 if j == i else 0.0 for j in range(n)]
                    + [-1.0 if j == i else 0.0 for j in range(n)])
    rows.append([1.0] * k + [0.0] * (2 * n))
    prob = LPProblem(objective=[0.0] * k + [1.0] * (2 * n), rows=rows,
                     senses=["=="] * (n + 1), rhs=[Fraction(int(a)) for a in alpha] + [1])
    return float(lp_solve(prob, exact=True).value)


def _l2_distance(alpha, verts: np.ndarray) -> float:
    x = min_norm_point(verts - np.asarray(alpha, dtype=float))
    return float(np.linalg.norm(x))


def _facet_lower_bounds(S: Body, m: int, cands, norm: str):
    """Cheap lower bounds on the distance to ``mS`` from its facets."""
    if not (S.dim <= 4 and S.is_full_dim()):
        return np.zeros(len(cands))
    A = np.array([[float(x) for x in a] for a, _ in S.facets()])
    b = np.array([float(bb) * m for _, bb in S.facets()])
    dual = np.abs(A).max(axis=1) if norm == "L1" else np.linalg.norm(A, axis=1)
    viol = (np.asarray(cands, dtype=float) @ A.T - b) / dual
    return np.maximum(viol.max(axis=1), 0.0)


def gap_distance(S: Body, m: int, norm: str = "L2") -> float:
    """``min`` over ``alpha in N^n \\ mS`` of ``dist(alpha, mS)`` in L1 or L2.

    The search box ``[0, R]^n`` grows until ``R + 1 - max(mS)`` exceeds the
    best distance found: any lattice point outside the box is at least that far
    from ``mS`` in either norm.
    """
    norm = norm.upper()
    if norm not in ("L1", "L2"):
        raise ValueError("norm must be L1 or L2")
    dist = _l1_distance if norm == "L1" else _l2_distance
    exact = [tuple(x * m for x in v) for v in S.extreme]
    verts = np.array([[float(x) for x in v] for v in exact])
    M = float(verts.max())
    best = math.inf
    done = set()
    R = int(math.floor(M)) + 1
    while True:
        cands = [a for a in np.ndindex(*([R + 1] * S.dim)) if a not in done]
        done.update(cands)
        excl = [a for a in cands if not in_scaled_body(S, a, m)]
        if excl:
            lb = _facet_lower_bounds(S, m, excl, norm)
            for i in np.argsort(lb, kind="stable"):
                if lb[i] >= best:
                    break
                best = min(best, dist(excl[i], exact if norm == "L1" else verts))
        if R + 1 - M > best:
            return best
        R += 1


# ---------------------------------------------------------------------------
# growth probe


@dataclass
class GrowthReport:
    radii: list
    sup_ratio: list
    slope: float
    bounded: bool
    samples_per_radius: int
    notes: list = field(default_factory=list)


def growth_probe(p: SparsePoly, S, m: int, a: float = 0.0,
                 radii: Sequence[float] = (1, 4, 16, 64, 256, 1024),
                 samples: int = 200, seed: int = 0, slope_tol: float = 0.05) -> GrowthReport:
    """Empirical sup of ``|p(z)| (1+|z|)^-a e^{-m H_S(z)}`` on ``||z||_inf = R``.

    The trend is called bounded when ``log sup`` grows slower than
    ``slope_tol * log R`` over the upper half of the schedule.  Advisory only.
    """
    if a < 0:
        raise ValueError("a must be non-negative")
    rng = np.random.default_rng(seed)
    n = p.dim
    sups = []
    for R in radii:
        best = 0.0
        # coordinate-axis points, diagonal and random points on the polytorus boundary
        Z = [np.eye(n)[i] * R for i in range(n)] + [np.full(n, R, dtype=complex)]
        for _ in range(samples):
            mod = rng.uniform(0, R, n)
            mod[rng.integers(n)] = R
            Z.append(mod * np.exp(2j * np.pi * rng.random(n)))
        for z in Z:
            z = np.asarray(z, dtype=complex)
            val = abs(p(z)) * (1 + np.linalg.norm(z)) ** (-a) * math.exp(-m * hs_eval(S, z))
            best = max(best, val)
        sups.append(best)
    half = max(2, len(radii) // 2)
    lr = np.log(np.asarray(radii[-half:], dtype=float))
    ls = np.log(np.maximum(np.asarray(sups[-half:]), 1e-300))
    slope = float(np.polyfit(lr, ls, 1)[0]) if len(lr) > 1 else 0.0
    return GrowthReport(list(radii), sups, slope, slope <= slope_tol, samples + n + 1)
