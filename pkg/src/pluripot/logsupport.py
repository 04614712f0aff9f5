"""The logarithmic supporting function ``H_S`` on all of ``C^n``.

On the torus part ``H_S(z) = max_v <v, Log z>``.  Where coordinates vanish the
value comes from the slice body ``S_J`` on the support ``J`` of ``z``; a zero
coordinate is never fed to ``log``.  ``H_S(0) = 0``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .ratgeom import Body, GeometryError, slice_face, support

__all__ = ["hs_eval", "hs_eval_many", "sigma", "slice_body", "hs_zero_set_probe",
           "log_plus_support", "grid_csv", "ZERO_TOL"]

ZERO_TOL = 1e-12


def sigma(S: Body) -> Fraction:
    """Logarithmic type ``phi_S(1, ..., 1)``."""
    return support(S, (1,) * S.dim)


def slice_body(S: Body, J: Iterable[int]):
    """``S_J`` for 0-based coordinates ``J``."""
    J = sorted(set(J))
    if not J:
        raise GeometryError("J must be non-empty")
    if isinstance(S, Body):
        return slice_face(S, J)
    return S.slice(J)


def _slice_matrix(S, J: tuple) -> np.ndarray:
    cache = S.__dict__.setdefault("_hs_cache", {})
    M = cache.get(J)
    if M is None:
        if len(J) == S.dim:
            M = S.float_vertices()
        else:
            M = slice_body(S, J).float_vertices()
        cache[J] = M
    return M


def _as_complex(z, n: int) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != n:
        raise GeometryError(f"point has dimension {z.shape[0]}, body has {n}")
    if not np.all(np.isfinite(z)):
        raise ValueError("non-finite coordinate")
    return z


def hs_eval(S, z: Sequence[complex]) -> float:
    """``H_S(z)`` for a single point."""
    z = _as_complex(z, S.dim)
    J = tuple(int(j) for j in np.nonzero(z != 0)[0])
    if not J:
        return 0.0
    M = _slice_matrix(S, J)
    val = float(np.max(M @ np.log(np.abs(z[list(J)]))))
    return max(val, 0.0)


def hs_eval_many(S, Z) -> np.ndarray:
    """``H_S`` on the rows of ``Z``; rows sharing a zero pattern are batched."""
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim == 1:
        Z = Z.reshape(-1, S.dim)
    out = np.zeros(Z.shape[0])
    nz = Z != 0
    patterns = {}
    for i, row in enumerate(nz):
        patterns.setdefault(tuple(np.nonzero(row)[0].tolist()), []).append(i)
    for J, rows in patterns.items():
        if not J:
            continue
        M = _slice_matrix(S, J)
        L = np.log(np.abs(Z[np.ix_(rows, list(J))]))
        out[rows] = np.maximum((L @ M.T).max(axis=1), 0.0)
    return out


def hs_zero_set_probe(S, z, tol: float = ZERO_TOL) -> bool:
    """Is ``z`` in the zero set of ``H_S`` (up to ``tol``)?"""
    return hs_eval(S, z) <= tol


def log_plus_support(S, z) -> float:
    """``phi_S(Log^+ z)``; agrees with ``H_S`` everywhere exactly for lower sets."""
    z = _as_complex(z, S.dim)
    a = np.abs(z)
    lp = np.where(a > 1, np.log(np.where(a > 0, a, 1.0)), 0.0)
    return float(np.max(S.float_vertices() @ lp))


def _grid_chunk(args):
    S, rows = args
    return hs_eval_many(S, rows)


def grid_csv(S, Z, workers: int = 1) -> str:
    """CSV rows ``re_1, im_1, ..., re_n, im_n, H_S`` with 12 significant digits."""
    Z = np.asarray(Z, dtype=complex).reshape(-1, S.dim)
    if workers > 1 and len(Z) > 1000:
        chunks = np.array_split(Z, workers)
        with ProcessPoolExecutor(workers) as ex:
            vals = np.concatenate(list(ex.map(_grid_chunk, [(S, c) for c in chunks])))
    else:
        vals = hs_eval_many(S, Z)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = []
    for j in range(S.dim):
        header += [f"re_{j + 1}", f"im_{j + 1}"]
    w.writerow(header + ["H_S"])
    for row, v in zip(Z, vals):
        cells = []
        for c in row:
            cells += [fmt(c.real), fmt(c.imag)]
        w.writerow(cells + [fmt(v)])
    return buf.getvalue()


def fmt(x: float) -> str:
    """Fixed 12-significant-digit float formatting (negative zero printed as 0)."""
    if x == 0:
        return "0"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"
