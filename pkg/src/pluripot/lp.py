"""Dense two-phase tableau simplex.

The same code runs in exact rational arithmetic (``exact=True``, numpy object
arrays of :class:`fractions.Fraction`, Bland's rule throughout) or in double
precision (Dantzig's rule, switching to Bland's rule once the objective stalls).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "LPProblem",
    "LPResult",
    "LPError",
    "InfeasibleError",
    "UnboundedError",
    "lp_solve",
]


class LPError(Exception):
    """Base class for LP failures."""


class InfeasibleError(LPError):
    """The constraint set is empty."""


class UnboundedError(LPError):
    """The objective is unbounded on the constraint set."""


@dataclass
class LPProblem:
    """``objective . x`` subject to ``rows[i] . x  senses[i]  rhs[i]``.

    ``senses`` entries are ``"<="``, ``">="`` or ``"=="``.  ``bounds`` holds one
    ``(lo, hi)`` pair per variable, ``None`` meaning unbounded on that side; the
    default is ``x >= 0``.
    """

    objective: Sequence
    rows: Sequence[Sequence] = ()
    senses: Sequence[str] = ()
    rhs: Sequence = ()
    bounds: Optional[Sequence[tuple]] = None
    maximize: bool = False

    def __post_init__(self):
        n = len(self.objective)
        if not (len(self.rows) == len(self.senses) == len(self.rhs)):
            raise ValueError("rows, senses and rhs must have equal length")
        for r in self.rows:
            if len(r) != n:
                raise ValueError("constraint row length does not match objective")
        for s in self.senses:
            if s not in ("<=", ">=", "=="):
                raise ValueError(f"unknown constraint sense {s!r}")
        if self.bounds is not None and len(self.bounds) != n:
            raise ValueError("bounds must have one entry per variable")


@dataclass
class LPResult:
    status: str
    value: object = None
    x: list = field(default_factory=list)
    # multipliers of the original rows (sign convention: d value / d rhs)
    duals: list = field(default_factory=list)
    iterations: int = 0


def _zero(exact):
    return Fraction(0) if exact else 0.0


def _to_num(v, exact):
    if exact:
        return v if isinstance(v, Fraction) else Fraction(v)
    return float(v)


class _Tableau:
    """Standard form: minimise c.x subject to A x = b, x >= 0, b >= 0."""

    def __init__(self, A, b, c, exact, tol):
        self.exact = exact
        self.tol = tol
        m, n = A.shape
        self.m, self.n = m, n
        dtype = object if exact else float
        # columns: n structural, m artificial, then rhs
        T = np.empty((m + 1, n + m + 1), dtype=dtype)
        zero = _zero(exact)
        one = Fraction(1) if exact else 1.0
        T[:m, :n] = A
        T[:m, n:n + m] = zero
        for i in range(m):
            T[i, n + i] = one
        T[:m, -1] = b
        T[m, :] = zero
        self.T = T
        self.basis = list(range(n, n + m))
        self.c = c
        self.iterations = 0

    def _gt(self, x, thresh=None):
        return x > (self.tol if thresh is None else thresh)

    def _pivot(self, r, j):
        T = self.T
        T[r, :] = T[r, :] / T[r, j]
        col = T[:, j].copy()
        col[r] = _zero(self.exact)
        if self.exact:
            nz = np.nonzero(col != 0)[0]
            if len(nz):
                T[nz, :] -= np.outer(col[nz], T[r, :])
        else:
            T -= np.outer(col, T[r, :])
            T[:, j] = 0.0
            T[r, j] = 1.0
        self.basis[r] = j
        self.iterations += 1

    def _entering(self, allowed, bland):
        red = self.T[-1, :-1]
        if self.exact:
            cand = [j for j in allowed if red[j] < 0]
            return cand[0] if cand else None
        vals = red[allowed]
        if bland:
            idx = np.nonzero(vals < -self.tol)[0]
            return int(allowed[idx[0]]) if len(idx) else None
        k = int(np.argmin(vals))
        return int(allowed[k]) if vals[k] < -self.tol else None

    def _leaving(self, j):
        T = self.T
        col = T[:-1, j]
        rhs = T[:-1, -1]
        best, best_ratio = None, None
        if self.exact:
            for i in range(self.m):
                if col[i] > 0:
                    ratio = rhs[i] / col[i]
                    if best is None or ratio < best_ratio or (
                            ratio == best_ratio and self.basis[i] < self.basis[best]):
                        best, best_ratio = i, ratio
            return best
        pos = np.nonzero(col > self.tol)[0]
        if not len(pos):
            return None
        ratios = rhs[pos] / col[pos]
        rmin = ratios.min()
        ties = pos[ratios <= rmin + self.tol * max(1.0, abs(rmin))]
        return int(min(ties, key=lambda i: self.basis[i]))

    def run(self, allowed, max_iter):
        bland = self.exact
        stall = 0
        last = self.T[-1, -1]
        while True:
            if self.iterations > max_iter:
                raise LPError("iteration limit reached")
            j = self._entering(allowed, bland)
            if j is None:
                return "optimal"
            r = self._leaving(j)
            if r is None:
                return "unbounded"
            self._pivot(r, j)
            cur = self.T[-1, -1]
            if not self.exact:
                if abs(cur - last) <= self.tol * max(1.0, abs(last)):
                    stall += 1
                    if stall > 50:
                        bland = True
                else:
                    stall = 0
                last = cur

    def set_objective(self, cost):
        """Load reduced costs for ``cost`` (length n + m) given the basis."""
        T = self.T
        row = np.empty(T.shape[1], dtype=T.dtype)
        row[:-1] = cost
        row[-1] = _zero(self.exact)
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb != 0:
                row = row - cb * T[i, :]
        T[-1, :] = row


def _standardize(prob: LPProblem, exact: bool):
    """Return (A, b, c, recover, row_map) for the standard form."""
    n = len(prob.objective)
    bounds = prob.bounds if prob.bounds is not None else [(0, None)] * n
    conv = lambda v: _to_num(v, exact)  # noqa: E731
    zero = _zero(exact)

    # variable substitution x_k = shift_k + sum coef * y_col
    columns = []  # (var index, coefficient)
    shifts = [zero] * n
    extra_rows = []  # (col index, upper bound) for y_col <= ub
    for k, (lo, hi) in enumerate(bounds):
        if lo is not None:
            shifts[k] = conv(lo)
            columns.append((k, 1))
            if hi is not None:
                extra_rows.append((len(columns) - 1, conv(hi) - conv(lo)))
        elif hi is not None:
            shifts[k] = conv(hi)
            columns.append((k, -1))
        else:
            columns.append((k, 1))
            columns.append((k, -1))
    ny = len(columns)

    rows, senses, rhs = [], [], []
    if not exact and len(prob.rows):
        R = np.asarray(prob.rows, dtype=float).reshape(len(prob.rows), n)
        ks = np.array([k for k, _ in columns])
        coefs = np.array([c for _, c in columns], dtype=float)
        Y = R[:, ks] * coefs
        sh = R @ np.asarray(shifts, dtype=float)
        rows = list(Y)
        senses = list(prob.senses)
        rhs = list(np.asarray(prob.rhs, dtype=float) - sh)
    else:
        for r, s, v in zip(prob.rows, prob.senses, prob.rhs):
            rr = [conv(a) for a in r]
            shift = sum((rr[k] * shifts[k] for k in range(n)), zero)
            rows.append([rr[k] * coef for (k, coef) in columns])
            senses.append(s)
            rhs.append(conv(v) - shift)
    for col, ub in extra_rows:
        row = [zero] * ny
        row[col] = conv(1)
        rows.append(row)
        senses.append("<=")
        rhs.append(ub)

    n_slack = sum(1 for s in senses if s != "==")
    m = len(rows)
    dtype = object if exact else float
    A = np.empty((m, ny + n_slack), dtype=dtype)
    A[:, :] = zero
    b = np.empty(m, dtype=dtype)
    sign = []
    si = ny
    for i, (row, s, v) in enumerate(zip(rows, senses, rhs)):
        A[i, :ny] = row
        if s == "<=":
            A[i, si] = conv(1)
            si += 1
        elif s == ">=":
            A[i, si] = conv(-1)
            si += 1
        flip = v < 0
        if flip:
            A[i, :] = -A[i, :]
            v = -v
        b[i] = v
        sign.append(-1 if flip else 1)

    obj = [conv(a) for a in prob.objective]
    if prob.maximize:
        obj = [-a for a in obj]
    c = np.empty(ny + n_slack, dtype=dtype)
    c[:] = zero
    for col, (k, coef) in enumerate(columns):
        c[col] = obj[k] * coef
    const = sum((obj[k] * shifts[k] for k in range(n)), zero)

    def recover(y):
        x = list(shifts)
        for col, (k, coef) in enumerate(columns):
            x[k] = x[k] + coef * y[col]
        return x

    return A, b, c, const, recover, sign, len(prob.rows)


def lp_solve(prob: LPProblem, exact: bool = False, tol: float = 1e-10,
             max_iter: int = 50_000) -> LPResult:
    """Solve ``prob``; raise :class:`InfeasibleError` or :class:`UnboundedError`.

    With ``exact=True`` every coefficient is converted to ``Fraction`` and the
    returned value, solution and duals are exact rationals.
    """
    A, b, c, const, recover, sign, n_orig_rows = _standardize(prob, exact)
    m, n = A.shape
    tol_ = 0 if exact else tol
    if m == 0:
        if any((cj < 0) for cj in c):
            raise UnboundedError("unbounded objective with no constraints")
        y = [_zero(exact)] * n
        x = recover(y)
        val = const
        return LPResult("optimal", -val if prob.maximize else val, x, [], 0)

    tab = _Tableau(A, b, c, exact, tol_)
    zero = _zero(exact)
    one = Fraction(1) if exact else 1.0
    # phase 1
    cost1 = np.empty(n + m, dtype=object if exact else float)
    cost1[:n] = zero
    cost1[n:] = one
    tab.set_objective(cost1)
    allowed = np.arange(n + m)
    status = tab.run(allowed, max_iter)
    scale = max(1.0, float(np.max(np.abs(b.astype(float))))) if not exact else 1
    infeas = -tab.T[-1, -1]
    if (exact and infeas != 0) or (not exact and infeas > 1e-9 * scale):
        raise InfeasibleError("constraint set is empty")
    # drive artificials out of the basis
    keep_rows = []
    for i in range(m):
        if tab.basis[i] >= n:
            row = tab.T[i, :n]
            nz = [j for j in range(n) if (row[j] != 0 if exact else abs(row[j]) > 1e-9)]
            if nz:
                tab._pivot(i, nz[0])
                keep_rows.append(i)
        else:
            keep_rows.append(i)
    if len(keep_rows) < m:
        drop = [i for i in range(m) if i not in keep_rows]
        # redundant rows: remove them (their artificial stays basic at zero)
        T = tab.T
        rows_idx = keep_rows + [m]
        tab.T = T[rows_idx, :]
        tab.basis = [tab.basis[i] for i in keep_rows]
        tab.m = len(keep_rows)
        redundant = set(drop)
    else:
        redundant = set()
    # phase 2
    cost2 = np.empty(n + m, dtype=object if exact else float)
    cost2[:n] = c
    cost2[n:] = zero
    tab.set_objective(cost2)
    allowed = np.arange(n)
    status = tab.run(allowed, max_iter)
    if status == "unbounded":
        raise UnboundedError("objective is unbounded")
    y = [zero] * n
    for i, bj in enumerate(tab.basis):
        if bj < n:
            y[bj] = tab.T[i, -1]
    x = recover(y)
    val = -tab.T[-1, -1] + const  # min value
    # duals of the standard-form rows: reduced cost of artificial k is -pi_k
    pi = []
    art_red = tab.T[-1, n:n + m]
    for k in range(m):
        pk = zero if k in redundant else -art_red[k]
        pi.append(pk * sign[k])
    duals = pi[:n_orig_rows]
    if prob.maximize:
        val = -val
        duals = [-d for d in duals]
    return LPResult("optimal", val, x, duals, tab.iterations)
