"""Named verification suites.

Each suite compares the library against an independent route (closed form vs
quadrature, shoelace vs triangulation, brute force vs LP, ...) and returns a
:class:`SuiteResult` whose rows form a small report table.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

import numpy as np

from .bodies import lens_surrogate, quadrilateral_body, sqrt2_segment
from .extremal import circle_samples, fekete_check, monomial_torus_bound, phi_m, torus_grid
from .logsupport import hs_eval, log_plus_support, slice_body
from .massint import ma_total_mass, monomial_l2_norm, quadrilateral_cone_terms
from .polyspace import SparsePoly, is_member, lattice_points
from .pullback import composed_support, newton_polytope, pullback_body, pullback_poly, PolyMap
from .ratgeom import (Body, PolyCone, extreme_points, gamma_hull, in_minus_dual,
                      is_lower_set, lower_hull, random_body, separating_direction, support)

__all__ = ["SuiteResult", "SUITES", "run_suite", "shoelace"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    rows: List[tuple] = field(default_factory=list)  # (label, ok, detail)
    elapsed: float = 0.0

    def table(self) -> str:
        width = max([len(r[0]) for r in self.rows] + [5])
        lines = [f"{'check':<{width}}  result  detail"]
        for label, ok, detail in self.rows:
            lines.append(f"{label:<{width}}  {'pass' if ok else 'FAIL':<6}  {detail}")
        lines.append(f"suite {self.name}: {'PASS' if self.passed else 'FAIL'} "
                     f"({self.elapsed:.2f} s)")
        return "\n".join(lines)


class _Rows:
    def __init__(self):
        self.rows = []

    def add(self, label, ok, detail=""):
        self.rows.append((label, bool(ok), detail))

    @property
    def ok(self):
        return all(r[1] for r in self.rows)


def shoelace(points) -> Fraction:
    """Polygon area from vertices sorted by angle about their centroid."""
    pts = list(points)
    if len(pts) < 3:
        return Fraction(0)
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    pts.sort(key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))
    s = Fraction(0)
    for (x1, y1), (x2, y2) in zip(pts, pts[1:] + pts[:1]):
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


# ---------------------------------------------------------------------------


def suite_quad_l2(seed: int = 0) -> _Rows:
    """Planar cone integrals for ``z_1`` on the notched quadrilateral, m = 4."""
    r = _Rows()
    m, a, b, k = 4, Fraction(1, 5), Fraction(4, 5), 1
    r.add("a < 1/m", a < Fraction(1, m), f"{a} < {Fraction(1, m)}")
    r.add("m(1-b) < 1", m * (1 - b) < 1, f"{m * (1 - b)}")
    lhs, rhs = (b - a) / (1 - b), m - 2 - a * m
    r.add("(b-a)/(1-b) = 3 > m-2-am = 6/5", lhs == 3 and rhs == Fraction(6, 5) and lhs > rhs,
          f"{lhs} > {rhs}")
    S = quadrilateral_body(a, b)
    r.add("(1,0) not in 4S", (1, 0) not in lattice_points(S, m))
    terms = quadrilateral_cone_terms(m, a, b, k)
    cf = monomial_l2_norm(S, (k, 0), m, "closed_form_2d")
    fan = {tuple(s): v for s, v in cf.terms}
    order = [(0, 0), (a, 0), (b, 1 - b), (0, 1)]
    for s, t in zip(order, terms):
        key = tuple(Fraction(x) for x in s)
        got = fan.get(key)
        ok = t is not None and got is not None and math.isclose(
            float(t) * 4 * math.pi ** 2, got, rel_tol=1e-12)
        r.add(f"cone at ({s[0]},{s[1]})", ok,
              f"closed form 4π²·{t} = {float(t) * 4 * math.pi ** 2:.12g}, fan {got:.12g}")
    total = 4 * math.pi ** 2 * float(sum(terms))
    quad = monomial_l2_norm(S, (k, 0), m, "quadrature")
    rel = abs(quad.value - total) / total
    r.add("closed form finite", math.isfinite(total) and cf.finite, f"{total:.12g}")
    r.add("quadrature within 1e-6", rel <= 1e-6,
          f"{quad.value:.12g} (rel {rel:.2e}, bound {quad.error_bound:.1e})")
    inf = monomial_l2_norm(S, (2, 0), m)
    r.add("alpha=(2,0) infinite", math.isinf(inf.value), str(inf.value))
    return r


def suite_mass(seed: int = 0) -> _Rows:
    r = _Rows()
    for n in range(1, 5):
        res = ma_total_mass(Body.simplex(n))
        r.add(f"simplex n={n}", res.factor == 1, f"factor {res.factor}")
    rng = random.Random(seed)
    bad = 0
    for i in range(20):
        S = random_body(rng, 2, rng.randint(3, 7), denom=rng.randint(2, 9), scale=9)
        res = ma_total_mass(S)
        area = shoelace(extreme_points(S))
        if res.factor / 2 != area:
            bad += 1
    r.add("20 random polygons: factor/2 = shoelace", bad == 0, f"{bad} mismatches")
    return r


def _torus_points(S, rng, count, grid=(16, 8)):
    pts = []
    while len(pts) < count:
        mod = np.exp(rng.uniform(-0.5, 1.5, 2))
        ph = np.exp(2j * np.pi * np.array([rng.integers(grid[0]) / grid[0],
                                           rng.integers(grid[1]) / grid[1]]))
        z = mod * ph
        if hs_eval(S, z) > 0:
            pts.append(z)
    return pts


def suite_torus(seed: int = 0) -> _Rows:
    r = _Rows()
    rng = np.random.default_rng(seed)
    K = torus_grid([16, 8])
    for name, S in (("simplex", Body.simplex(2)), ("quadrilateral", quadrilateral_body())):
        Z = _torus_points(S, rng, 25)
        mono, close, lp_ok, worst = True, True, True, -math.inf
        for z in Z:
            h = hs_eval(S, z)
            vals = [monomial_torus_bound(S, m, z) for m in (1, 2, 4, 8, 16, 32)]
            mono &= all(x <= y + 1e-12 for x, y in zip(vals, vals[1:])) and vals[-1] <= h + 1e-12
            if name == "simplex":
                close &= (h - vals[-1]) <= 0.05 * h
            for m in range(1, 5):
                res = phi_m(S, K, m, z)
                gap = math.log(res.value) - h
                worst = max(worst, gap)
                lp_ok &= res.status == "solved" and gap <= 1e-6
        r.add(f"{name}: monomial bound nondecreasing", mono)
        if name == "simplex":
            r.add(f"{name}: within 5% at m=32", close)
        r.add(f"{name}: log phi_m <= H_S + 1e-6", lp_ok, f"max excess {worst:.2e}")
    return r


def _positive_part(xi):
    return tuple(max(x, 0) for x in xi)


def suite_lower_set(seed: int = 0) -> _Rows:
    r = _Rows()
    rng = random.Random(seed)
    nrng = np.random.default_rng(seed)
    discrepancies, missing, lowers = 0, 0, 0
    for i in range(200):
        n = 2 if i % 2 == 0 else 3
        S = random_body(rng, n, rng.randint(2, 5), denom=rng.randint(2, 6), scale=6)
        if i % 4 == 1:
            S = lower_hull(S)
        cube = is_lower_set(S)
        equal = S == lower_hull(S)
        Xi = nrng.integers(-6, 7, size=(1000, n))
        same = all(support(S, tuple(x)) == support(S, _positive_part(x)) for x in Xi.tolist())
        lowers += cube
        if not (cube == equal == same):
            discrepancies += 1
        if not cube:
            w = next(v for v in lower_hull(S).extreme if not S.contains(v))
            xi = separating_direction(S, w)
            if xi is None or support(S, xi) == support(S, _positive_part(xi)):
                missing += 1
    r.add("pairwise agreement on 200 bodies", discrepancies == 0,
          f"{discrepancies} discrepancies, {lowers} lower sets")
    r.add("witness for every non-lower body", missing == 0, f"{missing} missing")
    return r


def _random_cone(rng, n):
    gens = [tuple(rng.randint(1, 4) for _ in range(n))]
    for _ in range(rng.randint(1, n)):
        gens.append(tuple(rng.randint(-4, 4) for _ in range(n)))
    gens = [g for g in gens if any(g)]
    return gens


def suite_gamma_hull(seed: int = 0) -> _Rows:
    r = _Rows()
    rng = random.Random(seed)
    contain_bad = support_bad = dual_bad = mono_bad = 0
    for i in range(100):
        n = 2 if i % 2 == 0 else 3
        S = random_body(rng, n, rng.randint(2, 4), denom=rng.randint(2, 5), scale=5)
        gens = _random_cone(rng, n)
        G1 = PolyCone(n, generators=gens)
        H1 = gamma_hull(S, G1)
        if not all(H1.contains(v) for v in S.extreme):
            contain_bad += 1
        if any(support(H1, g) != support(S, g) for g in G1.all_generators()):
            support_bad += 1
        if not all(in_minus_dual(v, S, G1) for v in H1.extreme):
            dual_bad += 1
        extra = tuple(rng.randint(-4, 4) for _ in range(n))
        G2 = PolyCone(n, generators=gens + ([extra] if any(extra) else []))
        H2 = gamma_hull(S, G2)
        if not all(H1.contains(v) for v in H2.extreme):
            mono_bad += 1
    r.add("hull contains S", contain_bad == 0, f"{contain_bad} failures")
    r.add("support equality on generators", support_bad == 0, f"{support_bad} failures")
    r.add("hull vertices in (S - dual cone) ∩ orthant", dual_bad == 0, f"{dual_bad} failures")
    r.add("monotone in the cone", mono_bad == 0, f"{mono_bad} failures")
    return r


def suite_irrational_gap(seed: int = 0) -> _Rows:
    r = _Rows()
    S = sqrt2_segment()
    empty = all(lattice_points(S, m).indices == ((0, 0),) for m in range(1, 51))
    r.add("lattice points are {0} for m <= 50", empty)
    z = (math.e, math.e)
    bound = max(monomial_torus_bound(S, m, z) for m in range(1, 51))
    r.add("monomial log bound is 0", bound == 0.0, f"{bound}")
    h = hs_eval(S, z)
    r.add("H_S(e,e) = 1 + sqrt 2", abs(h - (1 + math.sqrt(2))) <= 1e-9, f"{h:.12g}")
    return r


def _random_poly_in(S, m, rng, terms=4):
    pts = list(lattice_points(S, m))
    chosen = rng.sample(pts, min(terms, len(pts)))
    return SparsePoly(S.dim, {a: complex(rng.randint(1, 5), rng.randint(-3, 3)) for a in chosen})


def _random_quadratic(rng, ell):
    monos = [a for a in np.ndindex(*([3] * ell)) if sum(a) <= 2]
    out = {}
    for a in rng.sample(monos, rng.randint(1, 3)):
        out[tuple(int(x) for x in a)] = rng.randint(1, 4)
    return SparsePoly(ell, out)


def suite_pullback(seed: int = 0) -> _Rows:
    r = _Rows()
    rng = random.Random(seed)
    bad = 0
    for _ in range(50):
        n, ell = rng.choice([(2, 2), (2, 3), (3, 2)])
        S = random_body(rng, n, rng.randint(2, 4), denom=rng.randint(1, 4), scale=4)
        comps = [random_body(rng, ell, rng.randint(1, 3), denom=rng.randint(1, 3), scale=3)
                 for _ in range(n)]
        Sp = pullback_body(S, comps)
        for _ in range(200):
            xi = tuple(Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(ell))
            if support(Sp, xi) != composed_support(S, comps, xi):
                bad += 1
                break
    r.add("support identity, 50 instances x 200 directions", bad == 0, f"{bad} failures")
    fails = 0
    for _ in range(50):
        S = random_body(rng, 2, rng.randint(2, 4), denom=rng.randint(1, 3), scale=3)
        p = _random_poly_in(S, 3, rng)
        f = PolyMap(2, [_random_quadratic(rng, 2) for _ in range(2)])
        Sp = pullback_body(S, [newton_polytope(c).body for c in f.components])
        if not is_member(pullback_poly(f, p), Sp, 3):
            fails += 1
    r.add("composition stays in the pullback space", fails == 0, f"{fails} failures")
    return r


def suite_lens(seed: int = 0) -> _Rows:
    r = _Rows()
    L = lens_surrogate(256)
    r.add("256 vertices, all extreme", len(L.vertices) == 256 and len(L.extreme) == 256)
    r.add("axis slices are {0}", all(
        slice_body(L, [j]).extreme == ((Fraction(0),),) for j in (0, 1)))
    axis = [(x, 0) for x in (0.5, 2, 5, 1e3, 1e6)] + [(0, y) for y in (0.5, 3, 1e6)]
    r.add("H_S vanishes on both axes", all(hs_eval(L, z) == 0.0 for z in axis))
    t = 1.0
    z, w = (2 * math.e, 0.0), (0.0, 2 * math.e)
    mid = tuple((a + b) / 2 for a, b in zip(z, w))
    hz, hw, hm = hs_eval(L, z), hs_eval(L, w), hs_eval(L, mid)
    r.add("sublevel set {H_S < 1} is not convex", hz < t and hw < t and hm >= t,
          f"H(z)={hz}, H(w)={hw}, H(midpoint)={hm:.12g}")
    gap = log_plus_support(L, z) - hz
    r.add("product identity fails at the witness", gap > 0.5, f"gap {gap:.12g}")
    rng = np.random.default_rng(seed)
    Sig = Body.simplex(2)
    worst = 0.0
    for _ in range(1000):
        zz = np.exp(rng.uniform(-3, 3, 2)) * np.exp(2j * np.pi * rng.random(2))
        zz[rng.random(2) < 0.1] = 0
        worst = max(worst, abs(hs_eval(Sig, zz) - log_plus_support(Sig, zz)))
    r.add("product identity holds for the simplex", worst <= 1e-9, f"max diff {worst:.1e}")
    return r


def suite_lp_1d(seed: int = 0) -> _Rows:
    r = _Rows()
    S = Body([(0,), (1,)])
    K = circle_samples(64)
    P = 64
    c = math.cos(math.pi / P)
    v = phi_m(S, K, 3, [2.0], P).value
    lo, hi = (8 * c) ** (1 / 3), (8 / c) ** (1 / 3)
    r.add("value at z=2", lo <= v <= hi and abs(v - 2) / 2 <= 2e-3,
          f"{v:.12g} in [{lo:.6g}, {hi:.6g}]")
    v = phi_m(S, K, 3, [0.5], P).value
    r.add("value at z=1/2", abs(v - 1) <= 0.02, f"{v:.12g}")
    rng = np.random.default_rng(seed)
    ok = True
    worst = -math.inf
    for _ in range(10):
        z = np.exp(rng.uniform(-1, 1)) * np.exp(2j * np.pi * rng.random())
        rep = fekete_check(S, K, [(1, 1), (1, 2), (2, 2)], [z], P)
        ok &= rep.ok
        worst = max(worst, max(row.lhs - row.rhs for row in rep.rows))
    r.add("superadditivity at 10 points", ok, f"max lhs-rhs {worst:.2e}")
    return r


SUITES: Dict[str, Callable[[int], _Rows]] = {
    "quad-l2": suite_quad_l2,
    "mass": suite_mass,
    "torus": suite_torus,
    "lower-set": suite_lower_set,
    "gamma-hull": suite_gamma_hull,
    "irrational-gap": suite_irrational_gap,
    "pullback": suite_pullback,
    "lens": suite_lens,
    "lp-1d": suite_lp_1d,
}


def run_suite(name: str, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    rows = SUITES[name](seed)
    return SuiteResult(name, rows.ok, rows.rows, time.perf_counter() - t0)
