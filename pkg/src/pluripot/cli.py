"""Command-line front end.

Exit codes: 0 success, 1 failed check, 2 unreadable or invalid input.
Floats are printed with 12 significant digits, rationals as ``p/q``.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import __version__, checks
from .extremal import WeightedSampleSet, phi_m_many
from .logsupport import fmt, grid_csv
from .massint import ma_total_mass, monomial_l2_norm
from .polyspace import gap_distance, lattice_points
from .pullback import PolyMap, newton_polytope, pullback_body
from .ratgeom import Body, PolyCone, gamma_hull, is_lower_set, lower_hull


class InputError(click.ClickException):
    exit_code = 2


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        snippet = text[max(0, exc.pos - 30):exc.pos + 30].replace("\n", " ")
        raise InputError(f"{path}: invalid JSON ({exc.msg}) near: {snippet!r}")


def _parse(path: str, loader):
    data = _load_json(path)
    try:
        return loader(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc.__class__.__name__}: {exc}; input was "
                         f"{json.dumps(data)[:200]}")


def _body(path):
    return _parse(path, Body.from_json)


def _dump(obj):
    click.echo(json.dumps(obj, indent=2, sort_keys=False))


def _int_list(text: str):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def _grid(spec: str, n: int):
    try:
        lo, hi, num = spec.split(":")
        axis = np.linspace(float(lo), float(hi), int(num))
    except ValueError:
        raise InputError(f"grid must look like START:STOP:NUM, got {spec!r}")
    mesh = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.reshape(-1) for g in mesh], axis=1).astype(complex)


def _points(path: str, n: int):
    data = _load_json(path)
    pts = data["points"] if isinstance(data, dict) else data
    try:
        rows = []
        for p in pts:
            if n == 1 and len(p) == 2 and all(isinstance(x, (int, float)) for x in p):
                p = [p]
            rows.append([complex(float(a), float(b)) for a, b in p])
        Z = np.array(rows, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad point list ({exc})")
    if Z.ndim != 2 or Z.shape[1] != n:
        raise InputError(f"{path}: points must have {n} coordinates")
    return Z


@click.group()
@click.version_option(version=__version__)
def main():
    """Support functions, polynomial spaces and extremal functions for convex bodies."""


@main.command("hs-eval")
@click.option("--body", "body_path", required=True, type=str, help="Body JSON.")
@click.option("--grid", default=None, help="Real grid START:STOP:NUM per coordinate.")
@click.option("--points", "points_path", default=None, help="JSON list of points [[re,im],...].")
@click.option("--workers", default=1, show_default=True, type=click.IntRange(1, 256))
@click.option("--out", default="-", type=click.Path(dir_okay=False, allow_dash=True))
def hs_eval_cmd(body_path, grid, points_path, workers, out):
    """Evaluate H_S on a grid and write CSV."""
    S = _body(body_path)
    if (grid is None) == (points_path is None):
        raise InputError("give exactly one of --grid or --points")
    Z = _grid(grid, S.dim) if grid else _points(points_path, S.dim)
    text = grid_csv(S, Z, workers)
    with click.open_file(out, "w") as fh:
        fh.write(text)


@main.command()
@click.option("--body", "body_path", required=True)
@click.option("-m", "m", required=True, type=click.IntRange(0))
def lattice(body_path, m):
    """Lattice points of mS."""
    S = _body(body_path)
    pts = lattice_points(S, m)
    _dump({"m": m, "count": len(pts), "indices": [list(a) for a in pts]})


@main.command()
@click.option("--body", "body_path", required=True)
@click.option("-m", "m", required=True, type=click.IntRange(1))
@click.option("--norm", type=click.Choice(["L1", "L2"], case_sensitive=False), default="L2",
              show_default=True)
def dm(body_path, m, norm):
    """Distance from mS to the excluded lattice points."""
    click.echo(fmt(gap_distance(_body(body_path), m, norm)))


@main.command()
@click.option("--body", "body_path", required=True)
@click.option("--samples", "samples_path", required=True, help="WeightedSampleSet JSON (K, q).")
@click.option("-m", "m", required=True, type=click.IntRange(1))
@click.option("--points", "points_path", default=None, help="Evaluation points JSON.")
@click.option("--grid", default=None, help="Real grid START:STOP:NUM per coordinate.")
@click.option("--phases", default=64, show_default=True, type=click.IntRange(8))
@click.option("--workers", default=1, show_default=True, type=click.IntRange(1, 256))
def phi(body_path, samples_path, m, points_path, grid, phases, workers):
    """Weighted extremal function values as CSV rows."""
    S = _body(body_path)
    K = _parse(samples_path, WeightedSampleSet.from_json)
    if (grid is None) == (points_path is None):
        raise InputError("give exactly one of --grid or --points")
    Z = _grid(grid, S.dim) if grid else _points(points_path, S.dim)
    results = phi_m_many(S, K, m, Z, phases, workers)
    head = [f"{p}_{j + 1}" for j in range(S.dim) for p in ("re", "im")]
    click.echo(",".join(head + ["m", "value", "lower_bound", "upper_bound", "basis_size"]))
    for z, r in zip(Z, results):
        cells = [fmt(x) for c in z for x in (c.real, c.imag)]
        cells += [str(m), fmt(r.value), fmt(r.lower_bound), fmt(r.upper_bound), str(r.basis_size)]
        click.echo(",".join(cells))


@main.command()
@click.option("--body", "body_path", required=True)
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report.")
def mass(body_path, as_json):
    """Total Monge–Ampère mass (2π)^n · n! · vol(S)."""
    res = ma_total_mass(_body(body_path))
    if as_json:
        _dump({"dim": res.dim, "volume": str(res.volume), "factor": str(res.factor),
               "value": float(fmt(res.value)), "approximate": res.approximate})
    else:
        click.echo(res.formula())
        click.echo(fmt(res.value))


@main.command()
@click.option("--body", "body_path", required=True)
@click.option("--alpha", required=True, help="Exponent, e.g. 1,0.")
@click.option("-m", "m", required=True, type=click.IntRange(1))
@click.option("--mode", type=click.Choice(["closed_form_2d", "quadrature"]),
              default="closed_form_2d", show_default=True)
def l2(body_path, alpha, m, mode):
    """Weighted L2 norm (squared) of a monomial, or "infinite"."""
    S = _body(body_path)
    a = _int_list(alpha)
    if len(a) != S.dim:
        raise InputError(f"alpha {alpha!r} has {len(a)} entries, body has dimension {S.dim}")
    try:
        res = monomial_l2_norm(S, a, m, mode)
    except ValueError as exc:
        raise InputError(str(exc))
    out = res.to_json()
    if res.finite:
        out["value"] = float(fmt(res.value))
    _dump(out)


@main.command()
@click.option("--body", "body_path", required=True)
@click.option("--cone", "cone_path", default=None, help="PolyCone JSON.")
@click.option("--orthant", is_flag=True, help="Use the nonnegative orthant as the cone.")
def hull(body_path, cone_path, orthant):
    """Hull of S over a polyhedral cone of directions."""
    S = _body(body_path)
    if orthant == (cone_path is not None):
        raise InputError("give exactly one of --cone or --orthant")
    G = PolyCone.orthant(S.dim) if orthant else _parse(cone_path, PolyCone.from_json)
    try:
        H = gamma_hull(S, G)
    except ValueError as exc:
        raise InputError(str(exc))
    _dump(H.to_json() | {"vertices": [[str(x) for x in v] for v in H.extreme]})


@main.command()
@click.option("--body", "body_path", required=True)
def lower(body_path):
    """Lower hull of S and whether S is already a lower set."""
    S = _body(body_path)
    H = lower_hull(S)
    _dump({"is_lower": is_lower_set(S),
           "lower_hull": {"dim": H.dim, "vertices": [[str(x) for x in v] for v in H.extreme]}})


@main.command()
@click.option("--map", "map_path", required=True, help="PolyMap JSON.")
@click.option("--body", "body_path", required=True)
def pullback(map_path, body_path):
    """Pullback body S' for a polynomial map."""
    f = _parse(map_path, PolyMap.from_json)
    S = _body(body_path)
    if f.target_dim != S.dim:
        raise InputError(f"map has {f.target_dim} components, body has dimension {S.dim}")
    Sp = pullback_body(S, [newton_polytope(c).body for c in f.components])
    _dump({"dim": Sp.dim, "vertices": [[str(x) for x in v] for v in Sp.extreme]})


@main.command()
@click.argument("suite", type=click.Choice(sorted(checks.SUITES) + ["all"]))
@click.option("--seed", default=0, show_default=True, type=int)
def check(suite, seed):
    """Run a verification suite; exit 0 iff every check passes."""
    names = sorted(checks.SUITES) if suite == "all" else [suite]
    ok = True
    for name in names:
        res = checks.run_suite(name, seed)
        click.echo(res.table())
        ok &= res.passed
    sys.exit(0 if ok else 1)


if __name__ == "__main__":  # pragma: no cover
    main()
