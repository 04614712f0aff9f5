"""Named bodies and polygonal surrogates.

Besides rational polytopes this module carries :class:`SurdSegment`, a segment
``[0, u]`` whose direction has coordinates in ``Q(sqrt d)``.  Its lattice
membership is decided with exact surd sign arithmetic, so emptiness claims do
not depend on float rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._exact import to_fraction
from .ratgeom import Body, GeometryError

__all__ = ["quadrilateral_body", "lens_surrogate", "rational_segment", "unit_square",
           "Surd", "SurdSegment", "sqrt2_segment"]


def quadrilateral_body(a="1/5", b="4/5") -> Body:
    """``ch{(0,0), (a,0), (b,1-b), (0,1)}``."""
    a, b = to_fraction(a), to_fraction(b)
    if not (0 < a < b < 1):
        raise GeometryError("need 0 < a < b < 1")
    return Body([(0, 0), (a, 0), (b, 1 - b), (0, 1)])


def unit_square() -> Body:
    return Body.cube(2)


def rational_segment(direction: Sequence) -> Body:
    """``{t u : 0 <= t <= 1}`` for a rational direction ``u``."""
    u = tuple(to_fraction(x) for x in direction)
    return Body([tuple(0 for _ in u), u])


def lens_surrogate(vertices: int = 256) -> Body:
    """Inscribed polygon of the lens between the unit circles about ``e_1`` and ``e_2``.

    Every vertex lies exactly on one of the circles (rational parametrisation
    ``u -> (2u^2, 2u) / (u^2 + 1)``) and the polygon meets the axes only at 0.
    """
    if vertices < 4 or vertices % 2:
        raise ValueError("vertex count must be even and at least 4")
    k = (vertices - 2) // 2 + 1  # arcs are sampled at u = i/k, i = 1..k-1
    pts = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(1))]
    for i in range(1, k):
        u = Fraction(i, k)
        x, y = 2 * u * u / (u * u + 1), 2 * u / (u * u + 1)
        pts.append((x, y))
        pts.append((y, x))
    return Body(pts)


@dataclass(frozen=True)
class Surd:
    """``p + q * sqrt(d)`` with rational ``p, q`` and squarefree integer ``d > 1``."""

    p: Fraction
    q: Fraction
    d: int

    @classmethod
    def of(cls, p, q=0, d=2) -> "Surd":
        return cls(to_fraction(p), to_fraction(q), int(d))

    def _lift(self, other):
        if isinstance(other, Surd):
            if other.d != self.d:
                raise ValueError("surds over different fields")
            return other
        return Surd(to_fraction(other), Fraction(0), self.d)

    def __add__(self, other):
        o = self._lift(other)
        return Surd(self.p + o.p, self.q + o.q, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Surd(self.p * o.p + self.q * o.q * self.d,
                    self.p * o.q + self.q * o.p, self.d)

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign, comparing ``p^2`` with ``q^2 d`` when the parts disagree."""
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sp == sq or sq == 0:
            return sp
        if sp == 0:
            return sq
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        if lhs == rhs:
            return 0
        return sp if lhs > rhs else sq

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)


class SurdSegment:
    """The segment ``[0, u]`` with ``u`` in ``Q(sqrt d)^n``, coordinates ``>= 0``."""

    def __init__(self, direction: Sequence[Surd]):
        self.direction = tuple(direction)
        self.dim = len(self.direction)
        if self.dim < 1:
            raise GeometryError("empty direction")
        if any(c.sign() < 0 for c in self.direction):
            raise GeometryError("direction must lie in the closed orthant")
        if all(c.sign() == 0 for c in self.direction):
            raise GeometryError("direction must be nonzero")

    def float_vertices(self) -> np.ndarray:
        return np.array([[0.0] * self.dim, [float(c) for c in self.direction]])

    def slice(self, J):
        J = sorted(set(J))
        off = [j for j in range(self.dim) if j not in J]
        if all(self.direction[j].sign() == 0 for j in off):
            sub = [self.direction[j] for j in J]
            if any(c.sign() for c in sub):
                return SurdSegment(sub)
        return Body([tuple(0 for _ in J)])

    def contains_lattice(self, alpha: Sequence[int], m: int) -> bool:
        """Exact test of ``alpha in m [0, u]``."""
        alpha = [int(x) for x in alpha]
        u = self.direction
        if not any(alpha):
            return True
        # alpha parallel to u
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if (u[j] * alpha[i] - u[i] * alpha[j]).sign() != 0:
                    return False
        i = next(k for k in range(self.dim) if u[k].sign() != 0)
        # alpha = t u with t = alpha_i / u_i; need 0 <= t <= m
        s = u[i].sign()
        if alpha[i] * s < 0:
            return False
        return ((u[i] * m - alpha[i]).sign() * s) >= 0

    def lattice_candidates(self, m: int):
        """Integer points within distance 2 of the segment ``m [0, u]`` per coordinate.

        Points of the segment have ``alpha_j = alpha_i u_j / u_i``, so only the
        integers next to that float value can qualify; each is tested exactly.
        """
        uf = [float(c) for c in self.direction]
        i = max(range(self.dim), key=lambda k: uf[k])
        for ai in range(int(math.floor(m * uf[i])) + 1):
            ranges = []
            for j in range(self.dim):
                if j == i:
                    ranges.append([ai])
                else:
                    c = ai * uf[j] / uf[i]
                    ranges.append([k for k in range(int(math.floor(c)) - 1, int(math.floor(c)) + 3)
                                   if k >= 0])
            for alpha in itertools.product(*ranges):
                yield alpha

    def bounding_box(self, m: int):
        return [int(math.floor(m * float(c))) + 1 for c in self.direction]

    def __repr__(self):
        parts = ", ".join(f"{c.p}+{c.q}*sqrt({c.d})" for c in self.direction)
        return f"SurdSegment[{self.dim}]([0, ({parts})])"


def sqrt2_segment() -> SurdSegment:
    """The segment in direction ``(1, sqrt 2)``."""
    return SurdSegment([Surd.of(1), Surd.of(0, 1, 2)])
