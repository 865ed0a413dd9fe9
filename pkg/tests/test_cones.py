from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from hodgecalc.cones import (
    dd_extreme_rays, hull_contains, nonnegative_extreme_rays, _scale_primitive,
)
from hodgecalc.errors import NotSpanned
from hodgecalc.matrices import Mat, kernel_basis, rank


def _brute_force_rays(basis_rows, ambient):
    """Oracle: candidate rays from all support patterns, kept when the
    constrained solution space is a single non-negative line with
    inclusion-minimal support."""
    from hodgecalc.matrices import sub_canonical
    space = sub_canonical(Mat.from_rows([list(r) for r in basis_rows]))
    if space.rows == 0:
        return tuple()
    d = rank(space)
    rays = []
    for size in range(1, ambient + 1):
        for support in combinations(range(ambient), size):
            # vectors in the row space vanishing off the support
            off = [j for j in range(ambient) if j not in support]
            # x = c . rows;  conditions x_j = 0 for j off support
            m = Mat.from_rows([[space[i, j] for i in range(space.rows)]
                               for j in off]) if off else Mat.zeros(0, space.rows)
            if off:
                sols = kernel_basis(m)
            else:
                sols = [tuple(Fraction(1) if i == k else Fraction(0)
                              for i in range(space.rows)) for k in range(space.rows)]
            if len(sols) != 1:
                continue
            x = [Fraction(0)] * ambient
            for c, i in zip(sols[0], range(space.rows)):
                if c:
                    row = space.row(i)
                    x = [a + (c * b).real_or_raise() if hasattr(c * b, "real_or_raise")
                         else a + c * b for a, b in zip(x, row)]
            x = [v.real_or_raise() if hasattr(v, "real_or_raise") else Fraction(v)
                 for v in x]
            if all(v == 0 for v in x):
                continue
            if all(v <= 0 for v in x):
                x = [-v for v in x]
            if any(v < 0 for v in x):
                continue
            actual = frozenset(j for j, v in enumerate(x) if v)
            if not actual <= frozenset(support):
                continue
            rays.append((_scale_primitive(x), actual))
    # keep support-minimal representatives
    out = set()
    for v, sup in rays:
        if not any(sup2 < sup for _, sup2 in rays):
            out.add(v)
    return tuple(sorted(out))


def test_single_ray():
    assert nonnegative_extreme_rays([[1, 1]], 2) == ((1, 1),)


def test_full_space_gives_basis():
    rays = nonnegative_extreme_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3)
    assert rays == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_not_spanned():
    with pytest.raises(NotSpanned):
        nonnegative_extreme_rays([[1, -1]], 2)


def test_halfplane():
    # span{(1,0,-1), (0,1,1)} meets the orthant in a 2-dim cone
    rays = nonnegative_extreme_rays([[1, 0, -1], [0, 1, 1]], 3)
    assert rays == _brute_force_rays([[1, 0, -1], [0, 1, 1]], 3)
    assert len(rays) == 2


def test_seeded_against_brute_force():
    rng = random.Random(19)
    tried = 0
    for _ in range(60):
        ambient = rng.randint(2, 4)
        dim = rng.randint(1, ambient)
        rows = [[rng.randint(-2, 2) for _ in range(ambient)] for _ in range(dim)]
        if rank(Mat.from_rows(rows)) == 0:
            continue
        expected = _brute_force_rays(rows, ambient)
        span_rank = rank(Mat.from_rows([list(r) for r in expected])) if expected else 0
        try:
            rays = nonnegative_extreme_rays(rows, ambient)
        except NotSpanned:
            assert span_rank < rank(Mat.from_rows(rows))
            continue
        tried += 1
        assert rays == expected
    assert tried >= 10


def test_dd_orthant():
    rays, lin = dd_extreme_rays([(1, 0), (0, 1)], 2)
    assert sorted(rays) == [(0, 1), (1, 0)]
    assert lin == ()


def test_hull_membership():
    pts = [(0, 0), (2, 0), (0, 2)]
    assert hull_contains(pts, (1, 1))
    assert hull_contains(pts, (0, 0))
    assert not hull_contains(pts, (2, 1))
    assert not hull_contains(pts, (3, 0))


def test_hull_on_affine_subspace():
    # points on the line x + y = 2
    pts = [(2, 0), (0, 2)]
    assert hull_contains(pts, (1, 1))
    assert not hull_contains(pts, (1, 0))
    assert not hull_contains(pts, (3, -1))
