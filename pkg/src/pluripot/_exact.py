"""Small exact linear-algebra kit over ``Fraction`` / ``int``."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np


def to_fraction(x) -> Fraction:
    """Parse ints, Fractions, floats (exact binary value) and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise ValueError(f"non-finite coordinate {x!r}")
        return Fraction(float(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def fvec(v: Iterable) -> tuple:
    return tuple(to_fraction(x) for x in v)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def lcm_denominator(values: Iterable[Fraction]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b),
                  (Fraction(x).denominator for x in values), 1)


def primitive(v: Sequence) -> tuple:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    d = lcm_denominator(v)
    ints = [int(Fraction(x) * d) for x in v]
    g = reduce(math.gcd, (abs(i) for i in ints), 0)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(i // g for i in ints)


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {x : rows . x = 0} as primitive integer vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(primitive(v))
    return basis


def det(M: Sequence[Sequence]):
    """Exact determinant (Bareiss for ints, elimination otherwise)."""
    n = len(M)
    if n == 0:
        return 1
    if all(isinstance(x, int) for r in M for x in r):
        A = [list(r) for r in M]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if p is None:
                    return 0
                A[k], A[p] = A[p], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    A = [[Fraction(x) for x in r] for r in M]
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            A[k], A[p] = A[p], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / A[k][k]
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return d


def solve(M: Sequence[Sequence], b: Sequence):
    """Solve the square system ``M x = b`` exactly; ``None`` if singular."""
    n = len(M)
    R, piv = rref([list(r) + [bb] for r, bb in zip(M, b)], n + 1)
    if len(piv) < n or (piv and piv[-1] == n):
        return None
    return tuple(R[i][n] for i in range(n))


def normal_of(points: Sequence[Sequence[int]]):
    """Integer normal of the affine hyperplane through ``len(p[0])`` points.

    Generalised cross product of the difference vectors; zero if the points
    are affinely dependent.
    """
    p0 = points[0]
    n = len(p0)
    D = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    out = []
    for i in range(n):
        minor = [[r[j] for j in range(n) if j != i] for r in D]
        out.append((-1) ** i * det(minor))
    return tuple(out)
