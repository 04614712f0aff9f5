"""Newton polytopes of polynomial maps and the pullback body ``S'``.

``S' = union_{x in S} x_1 S_1 + ... + x_n S_n`` is the convex hull of the
points ``sum_j x_j v_j`` with ``x`` extreme in ``S`` and ``v_j`` extreme in
``S_j``; its support function is ``phi_S(phi_{S_1}, ..., phi_{S_n})``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .logsupport import hs_eval
from .polyspace import SparsePoly
from .ratgeom import Body, GeometryError, support

__all__ = ["PolyMap", "NewtonPolytope", "newton_polytope", "pullback_body",
           "pullback_poly", "composed_support", "ProbeReport", "pullback_exactness_probe"]


class PolyMap:
    """``f = (f_1, ..., f_n): C^l -> C^n`` with nonzero components."""

    def __init__(self, source_dim: int, components: Sequence[SparsePoly]):
        self.source_dim = int(source_dim)
        self.components = list(components)
        if not self.components:
            raise ValueError("a map needs at least one component")
        for c in self.components:
            if c.dim != self.source_dim:
                raise ValueError("component dimension differs from source dimension")
            if c.is_zero():
                raise ValueError("components must be nonzero")

    @property
    def target_dim(self) -> int:
        return len(self.components)

    def __call__(self, z) -> np.ndarray:
        return np.array([c(z) for c in self.components], dtype=complex)

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(n, [SparsePoly.monomial(tuple(int(i == j) for j in range(n))) for i in range(n)])

    def to_json(self) -> dict:
        return {"source_dim": self.source_dim,
                "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data) -> "PolyMap":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["source_dim"], [SparsePoly.from_json(c) for c in data["components"]])


@dataclass(frozen=True)
class NewtonPolytope:
    """Hull of the exponents; ``body`` has 0 adjoined when ``zero_adjoined``."""

    body: Body
    exponents: tuple
    zero_adjoined: bool

    def support(self, xi, adjoined: bool = True) -> Fraction:
        if adjoined:
            return support(self.body, xi)
        return max(sum(Fraction(a) * Fraction(x) for a, x in zip(e, xi)) for e in self.exponents)


def newton_polytope(p: SparsePoly) -> NewtonPolytope:
    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    exps = tuple(sorted(p.terms))
    origin = (0,) * p.dim
    adjoined = origin not in p.terms
    pts = list(exps) + ([origin] if adjoined else [])
    return NewtonPolytope(Body(pts, p.dim, check=False), exps, adjoined)


def pullback_body(S: Body, components: Sequence[Body]) -> Body:
    """``S'`` as a vertex body (reduced to extreme points)."""
    if not isinstance(S, Body) or not all(isinstance(B, Body) for B in components):
        raise GeometryError("pullback needs rational bodies")
    if len(components) != S.dim:
        raise GeometryError("need one component body per coordinate of S")
    dims = {B.dim for B in components}
    if len(dims) != 1:
        raise GeometryError("component bodies must share a dimension")
    ell = dims.pop()
    pts = set()
    for x in S.extreme:
        # Minkowski combination x_1 S_1 + ... + x_n S_n, built one summand at a time
        acc = {(Fraction(0),) * ell}
        for xj, Bj in zip(x, components):
            if xj == 0:
                continue
            acc = {tuple(a + xj * v for a, v in zip(p, w)) for p in acc for w in Bj.extreme}
            if len(acc) > 64:
                acc = set(Body(acc, ell, check=False).extreme)
        pts |= acc
    return Body(pts, ell, check=False)


def composed_support(S: Body, components: Sequence[Body], xi) -> Fraction:
    """Right-hand side of the support identity, ``phi_S(phi_{S_1}(xi), ...)``."""
    return support(S, tuple(support(B, xi) for B in components))


def pullback_poly(f: PolyMap, p: SparsePoly) -> SparsePoly:
    """Expanded composition ``p(f_1, ..., f_n)``."""
    if p.dim != f.target_dim:
        raise ValueError("polynomial and map target dimension differ")
    powers = [dict() for _ in range(f.target_dim)]

    def power(j, k):
        cache = powers[j]
        if k not in cache:
            cache[k] = f.components[j] ** k
        return cache[k]

    out = SparsePoly(f.source_dim)
    for beta, c in p.terms.items():
        term = SparsePoly.constant(f.source_dim, c)
        for j, k in enumerate(beta):
            if k:
                term = term * power(j, k)
        out = out + term
    return out


@dataclass
class ProbeReport:
    radii: list
    max_diff: list
    min_diff: list
    bounded: bool
    warnings: list = field(default_factory=list)


def pullback_exactness_probe(f: PolyMap, S: Body, radii: Sequence[float] = (1, 4, 16, 64, 256),
                             samples: int = 200, seed: int = 0,
                             slope_tol: float = 0.1) -> ProbeReport:
    """Sample ``H_S(f(z)) - H_{S'}(z)`` on tori of growing radius.

    A spread that does not grow with ``log R`` is reported as bounded.  This
    supports, but never certifies, the boundedness condition; properness of
    ``f`` is not checked.
    """
    if f.source_dim != f.target_dim:
        raise ValueError("the probe needs a map C^n -> C^n")
    warnings = ["properness of f is not verified"]
    n = f.source_dim
    comps = [newton_polytope(c).body for c in f.components]
    Sp = pullback_body(S, comps)
    rng = np.random.default_rng(seed)
    # generic rank of the Jacobian by finite differences
    z0 = rng.normal(size=n) + 1j * rng.normal(size=n)
    h = 1e-6
    J = np.array([(f(z0 + h * np.eye(n)[k]) - f(z0 - h * np.eye(n)[k])) / (2 * h)
                  for k in range(n)])
    if np.linalg.matrix_rank(J, tol=1e-6) < n:
        warnings.append("Jacobian is singular at a random point: f looks degenerate")
    mx, mn = [], []
    for R in radii:
        diffs = []
        for _ in range(samples):
            z = R * np.exp(2j * np.pi * rng.random(n))
            diffs.append(hs_eval(S, f(z)) - hs_eval(Sp, z))
        mx.append(float(max(diffs)))
        mn.append(float(min(diffs)))
    spread = np.maximum(np.abs(mx), np.abs(mn))
    lr = np.log(np.asarray(radii, dtype=float))
    slope = float(np.polyfit(lr, spread, 1)[0]) if len(radii) > 1 else 0.0
    return ProbeReport(list(radii), mx, mn, slope <= slope_tol, warnings)
