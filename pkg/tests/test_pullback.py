import json
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pluripot.polyspace import SparsePoly, is_member, lattice_points, s_degree
from pluripot.pullback import (PolyMap, composed_support, newton_polytope, pullback_body,
                               pullback_exactness_probe, pullback_poly)
from pluripot.ratgeom import Body, GeometryError, support

from conftest import make_body, seeds

Z1, Z2 = SparsePoly.monomial((1, 0)), SparsePoly.monomial((0, 1))


def _rand_poly(rng, ell, deg=2, terms=3):
    monos = [a for a in np.ndindex(*([deg + 1] * ell)) if sum(a) <= deg]
    chosen = rng.sample(monos, min(terms, len(monos)))
    return SparsePoly(ell, {tuple(int(x) for x in a): rng.randint(1, 4) for a in chosen})


def test_newton_polytope_examples(sigma2):
    N = newton_polytope(SparsePoly.constant(2) + Z1 + Z2)
    assert N.body == sigma2 and not N.zero_adjoined
    N = newton_polytope(SparsePoly.monomial((2, 1)))
    assert N.body == Body([(0, 0), (2, 1)]) and N.zero_adjoined
    assert N.exponents == ((2, 1),)
    N = newton_polytope(SparsePoly.monomial((3, 0)) + SparsePoly.monomial((0, 3)) + Z1 * Z2)
    assert N.body == Body([(0, 0), (3, 0), (0, 3)])
    assert N.body.interior_contains((1, 1))
    # unadjoined support only differs where every exponent pairs negatively with xi
    assert N.support((-1, -1), adjoined=False) == -2
    assert N.support((-1, -1)) == 0
    with pytest.raises(ValueError):
        newton_polytope(SparsePoly(2))


def test_pullback_body_examples(sigma2):
    ident = [newton_polytope(c).body for c in PolyMap.identity(2).components]
    assert pullback_body(sigma2, ident) == sigma2
    seg = Body([(0,), (1,)])
    assert pullback_body(seg, [Body([(0,), (5,)])]) == Body([(0,), (5,)])
    sq = [newton_polytope(Z1 * Z1).body, newton_polytope(Z2).body]
    assert pullback_body(sigma2, sq) == Body([(0, 0), (2, 0), (0, 1)])
    with pytest.raises(GeometryError):
        pullback_body(sigma2, [seg])
    with pytest.raises(GeometryError):
        pullback_body(sigma2, [seg, sigma2])


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 2)]))
def test_support_identity_exact(seed, dims):
    n, ell = dims
    rng = random.Random(seed)
    S = make_body(seed, n, k=3)
    comps = [make_body(seed + 17 * (j + 1), ell, k=3) for j in range(n)]
    Sp = pullback_body(S, comps)
    for _ in range(40):
        xi = tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ell))
        assert support(Sp, xi) == composed_support(S, comps, xi)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_monotone_in_components(seed):
    S = make_body(seed, 2, k=3)
    comps = [make_body(seed + 1, 2, k=2), make_body(seed + 2, 2, k=2)]
    bigger = [Body(list(comps[0].extreme) + list(make_body(seed + 3, 2, k=2).extreme), 2),
              comps[1]]
    small, big = pullback_body(S, comps), pullback_body(S, bigger)
    assert all(big.contains(v) for v in small.extreme)


def test_pullback_poly_examples():
    p = SparsePoly(2, {(1, 1): 2, (0, 2): 1 - 1j})
    assert pullback_poly(PolyMap.identity(2), p) == p
    f = PolyMap(1, [SparsePoly.monomial((2,))])
    q = pullback_poly(f, SparsePoly.monomial((1,)))
    assert q == SparsePoly.monomial((2,))
    assert is_member(q, Body([(0,), (2,)]), 1)
    with pytest.raises(ValueError):
        pullback_poly(f, p)


def test_pullback_poly_evaluates_as_composition():
    rng = random.Random(5)
    f = PolyMap(2, [_rand_poly(rng, 2), _rand_poly(rng, 2)])
    p = _rand_poly(rng, 2, deg=3, terms=4)
    fp = pullback_poly(f, p)
    for z in np.random.default_rng(0).normal(size=(10, 2)) + 0.5j:
        assert fp(z) == pytest.approx(p(f(z)), rel=1e-10)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_membership_preserved_and_degree_bound(seed):
    rng = random.Random(seed)
    S = make_body(seed, 2, k=3)
    m = 3
    L = list(lattice_points(S, m))
    p = SparsePoly(2, {a: rng.randint(1, 5) for a in rng.sample(L, min(4, len(L)))})
    f = PolyMap(2, [_rand_poly(rng, 2), _rand_poly(rng, 2)])
    Sp = pullback_body(S, [newton_polytope(c).body for c in f.components])
    fp = pullback_poly(f, p)
    assert is_member(fp, Sp, m)
    if not fp.is_zero():
        assert s_degree(fp, Sp) <= s_degree(p, S)


def test_probe_examples(sigma2):
    rep = pullback_exactness_probe(PolyMap.identity(2), sigma2, samples=50)
    assert rep.bounded and max(map(abs, rep.max_diff + rep.min_diff)) <= 1e-12
    assert "properness of f is not verified" in rep.warnings
    sq = PolyMap(2, [Z1 * Z1, Z2])
    rep = pullback_exactness_probe(sq, sigma2, samples=50)
    assert rep.bounded
    degen = PolyMap(2, [Z1, Z1])
    rep = pullback_exactness_probe(degen, sigma2, samples=50)
    assert any("singular" in w for w in rep.warnings)
    assert "properness of f is not verified" in rep.warnings
    with pytest.raises(ValueError):
        pullback_exactness_probe(PolyMap(1, [SparsePoly.monomial((1,))] * 2), sigma2)


def test_poly_map_validation_and_json():
    with pytest.raises(ValueError):
        PolyMap(2, [])
    with pytest.raises(ValueError):
        PolyMap(2, [SparsePoly(2)])
    with pytest.raises(ValueError):
        PolyMap(2, [SparsePoly.monomial((1,))])
    f = PolyMap(2, [Z1 * Z1 + Z2, SparsePoly(2, {(0, 1): 2.5j})])
    data = json.loads(json.dumps(f.to_json()))
    assert set(data) == {"source_dim", "components"}
    g = PolyMap.from_json(data)
    assert g.to_json() == f.to_json()


def test_pullback_rejects_irrational_body():
    from pluripot.bodies import sqrt2_segment
    seg = Body([(0, 0), (1, 0)], 2)
    with pytest.raises(GeometryError):
        pullback_body(sqrt2_segment(), [seg, seg])
