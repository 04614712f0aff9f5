"""Weighted Siciak extremal functions on finite sample sets, by linear programming.

``phi_m`` maximises ``|p(z)|`` over ``p in P^S_m`` with ``|p(x)| <= e^{m q(x)}``
on the samples.  Each modulus constraint is replaced by the circumscribed
regular ``P``-gon, ``Re(e^{-i phi_k} p(x)) <= e^{m q(x)}``.  That feasible set
is invariant under ``p -> e^{2 pi i / P} p``, so the maximum of ``|p(z)|`` over
the ``P`` objective angles equals the single LP maximum of ``Re p(z)``.  The
true discrete value therefore lies in ``[v cos(pi/P), v]``.

The LP is solved in dual form, which keeps the tableau at ``2N + 1`` rows for a
basis of size ``N``; the witness coefficients are read off the dual prices.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .logsupport import hs_eval
from .lp import LPError, LPProblem, lp_solve
from .polyspace import SparsePoly, lattice_points

__all__ = ["WeightedSampleSet", "PhiResult", "phi_m", "phi_m_many", "fekete_check",
           "FeketeRow", "FeketeReport", "monomial_torus_bound", "validate_weight",
           "WeightReport", "torus_grid", "circle_samples"]


class WeightedSampleSet:
    """Points of ``C^n`` with finite weights ``q``."""

    def __init__(self, points, weights=None, check: bool = True):
        P = np.asarray(points, dtype=complex)
        if P.ndim == 1:
            P = P.reshape(-1, 1)
        if P.shape[0] == 0:
            raise ValueError("a sample set needs at least one point")
        w = np.zeros(P.shape[0]) if weights is None else np.asarray(weights, dtype=float)
        if w.shape != (P.shape[0],):
            raise ValueError("one weight per point is required")
        if check and not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite (omit points with infinite weight)")
        if not np.all(np.isfinite(P)):
            raise ValueError("points must be finite")
        self.points = P
        self.weights = w

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def shifted(self, c: float) -> "WeightedSampleSet":
        return WeightedSampleSet(self.points, self.weights + c)

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "points": [[[float(c.real), float(c.imag)] for c in row] for row in self.points],
                "weights": [float(x) for x in self.weights]}

    @classmethod
    def from_json(cls, data) -> "WeightedSampleSet":
        if isinstance(data, str):
            data = json.loads(data)
        pts = []
        for p in data["points"]:
            if len(p) == 2 and all(isinstance(x, (int, float)) for x in p):
                p = [p]  # bare [re, im] for n = 1
            pts.append([complex(float(re), float(im)) for re, im in p])
        weights = data.get("weights")
        return cls(pts, weights)


def torus_grid(sizes: Sequence[int], radius: float = 1.0) -> WeightedSampleSet:
    """Product of roots of unity, ``prod_j {r e^{2 pi i k / N_j}}``, zero weight."""
    axes = [radius * np.exp(2j * np.pi * np.arange(N) / N) for N in sizes]
    mesh = np.meshgrid(*axes, indexing="ij")
    return WeightedSampleSet(np.stack([g.reshape(-1) for g in mesh], axis=1))


def circle_samples(N: int, radius: float = 1.0) -> WeightedSampleSet:
    return torus_grid([N], radius)


@dataclass
class PhiResult:
    value: float
    lower_bound: float
    upper_bound: float
    upper_factor: float
    basis_size: int
    status: str
    samples: int
    phases: int
    coefficients: dict = field(default_factory=dict)

    def witness(self, dim: int) -> SparsePoly:
        return SparsePoly(dim, self.coefficients)


def _monomials(Z: np.ndarray, basis) -> np.ndarray:
    A = np.asarray(basis, dtype=float)
    out = np.ones((Z.shape[0], len(basis)), dtype=complex)
    for j in range(Z.shape[1]):
        out *= Z[:, [j]] ** A[:, j][None, :]
    return out


def phi_m(S, K: WeightedSampleSet, m: int, z, phases: int = 64,
          real_fast_path: bool = True, tol: float = 1e-10) -> PhiResult:
    """``Phi^S_{K,q,m}(z)`` with its phase-discretisation sandwich."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if phases < 8:
        raise ValueError("at least 8 phases are required")
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != K.dim or S.dim != K.dim:
        raise ValueError("dimension mismatch")
    basis = list(lattice_points(S, m))
    qmin = float(K.weights.min())
    if len(basis) == 1:
        v = math.exp(qmin)
        return PhiResult(v, v, v, 1.0, 1, "solved", len(K), phases,
                         {basis[0]: math.exp(m * qmin)})
    real = (real_fast_path and np.all(K.points.imag == 0) and np.all(z.imag == 0))
    b = np.exp(m * K.weights)
    Mk = _monomials(K.points, basis)
    mz = _monomials(z[None, :], basis)[0]
    N = len(basis)
    if real:
        # real coefficients suffice; |p(x)| <= b is exactly two linear rows
        rows = np.vstack([Mk.real, -Mk.real])
        rhs = np.concatenate([b, b])
        obj = mz.real
        factor = 1.0
    else:
        ang = 2 * np.pi * np.arange(phases) / phases
        rot = np.exp(-1j * ang)
        W = (rot[None, :, None] * Mk[:, None, :]).reshape(-1, N)
        rows = np.hstack([W.real, -W.imag])
        rhs = np.repeat(b, phases)
        obj = np.concatenate([mz.real, -mz.imag])
        factor = 1.0 / math.cos(math.pi / phases)
    # column scaling x_j = x'_j / s_j keeps the dual rows comparable
    s = np.maximum(np.abs(rows).max(axis=0), np.abs(obj))
    s[s == 0] = 1.0
    rows_s = rows / s
    obj_s = obj / s
    # dual: min rhs . y  s.t.  rows_s^T y = obj_s, y >= 0
    prob = LPProblem(objective=rhs, rows=rows_s.T, senses=["=="] * rows_s.shape[1],
                     rhs=obj_s)
    try:
        res = lp_solve(prob, tol=tol)
    except LPError as exc:
        return PhiResult(math.nan, math.nan, math.nan, factor, N, f"failed: {exc}",
                         len(K), phases)
    v = max(float(res.value), math.exp(m * qmin))
    x = np.asarray(res.duals, dtype=float) / s
    if real:
        coef = {a: complex(x[j]) for j, a in enumerate(basis)}
    else:
        coef = {a: complex(x[j], x[N + j]) for j, a in enumerate(basis)}
    val = v ** (1.0 / m)
    lo = (v / factor) ** (1.0 / m)
    return PhiResult(val, max(lo, math.exp(qmin)), val, factor, N, "solved", len(K),
                     phases, {a: c for a, c in coef.items() if c != 0})


def _phi_job(args):
    S, K, m, z, phases = args
    return phi_m(S, K, m, z, phases)


def phi_m_many(S, K, m, Z, phases: int = 64, workers: int = 1) -> list:
    """``phi_m`` at each row of ``Z``, results in input order."""
    jobs = [(S, K, m, z, phases) for z in np.asarray(Z, dtype=complex).reshape(len(Z), -1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_phi_job, jobs))
    return [_phi_job(j) for j in jobs]


@dataclass
class FeketeRow:
    j: int
    k: int
    lhs: float  # j log Phi_j + k log Phi_k
    rhs: float  # (j+k) log Phi_{j+k}
    slack: float
    holds: bool


@dataclass
class FeketeReport:
    values: dict
    rows: list
    sup_estimate: float

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.rows)


def fekete_check(S, K: WeightedSampleSet, pairs: Sequence[tuple], z, phases: int = 64,
                 tol: float = 1e-7) -> FeketeReport:
    """Superadditivity of ``m log Phi_m`` with the combined phase slack.

    With upper values ``v_m`` and true values in ``[v_m cos, v_m]`` the check
    ``log v_j + log v_k <= log v_{j+k} + 2 log(1/cos(pi/P)) + tol`` is implied.
    """
    ms = sorted({m for j, k in pairs for m in (j, k, j + k)})
    vals = {m: phi_m(S, K, m, z, phases) for m in ms}
    rows = []
    for j, k in pairs:
        f = max(vals[j].upper_factor, vals[k].upper_factor, vals[j + k].upper_factor)
        lhs = j * math.log(vals[j].value) + k * math.log(vals[k].value)
        rhs = (j + k) * math.log(vals[j + k].value)
        slack = 2 * math.log(f) + tol
        rows.append(FeketeRow(j, k, lhs, rhs, slack, lhs <= rhs + slack))
    sup = max(r.value for r in vals.values())
    return FeketeReport({m: r.value for m, r in vals.items()}, rows, sup)


def monomial_torus_bound(S, m: int, z) -> float:
    """``max_{alpha in mS} <alpha, Log z> / m``: log of the best monomial on the torus."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if np.any(z == 0):
        raise ValueError("z must have no zero coordinate")
    L = np.log(np.abs(z))
    A = np.asarray(list(lattice_points(S, m)), dtype=float)
    return float((A @ L).max() / m)


@dataclass
class WeightReport:
    finite: bool
    nontrivial: bool
    trend_ok: Optional[bool]
    passed: bool
    notes: list


def validate_weight(S, E: WeightedSampleSet, unbounded: bool = False) -> WeightReport:
    """Advisory admissibility screen for a sampled weight."""
    notes = []
    w = np.asarray(E.weights, dtype=float)
    finite = bool(np.all(np.isfinite(w)))
    if not finite:
        notes.append("weights must be finite and bounded below")
    P = E.points
    ok_pts = P[np.isfinite(w)] if len(w) else P
    real_pts = np.hstack([ok_pts.real, ok_pts.imag])
    spread = 0
    if len(real_pts) > 0:
        centred = real_pts - real_pts.mean(axis=0)
        spread = int(np.linalg.matrix_rank(centred, tol=1e-9)) if len(real_pts) > 1 else 0
    nontrivial = len(ok_pts) >= E.dim + 1 and spread >= E.dim
    if not nontrivial:
        notes.append("too few affinely spread finite-weight points")
    trend = None
    if unbounded and finite:
        norms = np.linalg.norm(P, axis=1)
        order = np.argsort(norms)
        top = order[int(0.9 * len(order)):]
        if len(top) < 3:
            trend = False
            notes.append("not enough samples in the largest-norm decile")
        else:
            gap = np.array([hs_eval(S, P[i]) for i in top]) - w[top]
            slope = np.polyfit(np.log1p(norms[top]), gap, 1)[0]
            trend = bool(slope < 0)
            if not trend:
                notes.append("H_S - q does not decrease along the largest samples")
    passed = finite and nontrivial and (trend is not False)
    return WeightReport(finite, nontrivial, trend, passed, notes)
