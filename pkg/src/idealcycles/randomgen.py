"""Seeded random test data for the property suites.

Everything draws from an explicit :class:`random.Random`, so runs are
reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .barhomology import BarSimplex, ConeSimplex, DecoratedSimplex
from .chaincore import Chain, IdealTuple
from .exactnum import Field, GroupElem, ProjPoint, QuadraticField, mobius_from_triple


def default_field() -> QuadraticField:
    return QuadraticField(-3)


def random_scalar(f: Field, rng: random.Random, height: int = 6):
    return f.random(rng, height)


def random_point(f: Field, rng: random.Random, height: int = 6, p_inf: float = 0.1) -> ProjPoint:
    if rng.random() < p_inf:
        return ProjPoint.infinity(f)
    return ProjPoint(f.random(rng, height))


def random_distinct_points(f: Field, rng: random.Random, k: int, height: int = 6,
                           p_inf: float = 0.1) -> list[ProjPoint]:
    pts: list[ProjPoint] = []
    while len(pts) < k:
        p = random_point(f, rng, height, p_inf)
        if p not in pts:
            pts.append(p)
    return pts


def random_tuple(f: Field, rng: random.Random, k: int, distinct: bool = True, **kw) -> IdealTuple:
    if distinct:
        return IdealTuple(random_distinct_points(f, rng, k, **kw))
    return IdealTuple(random_point(f, rng, **kw) for _ in range(k))


def random_group_elem(f: Field, rng: random.Random, height: int = 3, length: int = 3) -> GroupElem:
    """Product of random elementary unipotent matrices, so the determinant is exactly 1."""
    g = GroupElem.identity(f)
    for j in range(length):
        x = f.random(rng, height)
        e = GroupElem(1, x, 0, 1, f) if j % 2 == 0 else GroupElem(1, 0, x, 1, f)
        g = g @ e
    return g


def random_parabolic(f: Field, rng: random.Random, fixed: ProjPoint, height: int = 3) -> GroupElem:
    """A parabolic element fixing ``fixed``: a conjugated translation."""
    while True:
        x = f.random(rng, height)
        if not x.is_zero():
            break
    t = GroupElem(1, x, 0, 1, f)
    if fixed.is_infinity:
        return t
    # h sends inf to fixed: h = [[p, -1], [1, 0]] for fixed = p
    p = fixed.num
    h = GroupElem(p, -1, 1, 0, f)
    return t.conjugate_by(h)


def random_moebius(f: Field, rng: random.Random):
    """A random PGL(2) element (determinant not normalized) mapping a random triple to (inf, 0, 1)."""
    return mobius_from_triple(*random_distinct_points(f, rng, 3))


def random_bar_simplex(f: Field, rng: random.Random, k: int) -> BarSimplex:
    return BarSimplex(random_group_elem(f, rng) for _ in range(k))


def random_cone_simplex(f: Field, rng: random.Random, k: int, cusp: int, fixed: ProjPoint) -> ConeSimplex:
    return ConeSimplex(BarSimplex(random_parabolic(f, rng, fixed) for _ in range(k)), cusp)


def random_decorated(f: Field, rng: random.Random, degree: int, cusp: int | None = None,
                     fixed: ProjPoint | None = None) -> DecoratedSimplex:
    if cusp is None:
        return DecoratedSimplex([random_group_elem(f, rng) for _ in range(degree)])
    return DecoratedSimplex([random_parabolic(f, rng, fixed) for _ in range(degree - 1)], cusp)


def random_four_chain(f: Field, rng: random.Random, n_terms: int = 2, height: int = 4,
                      mode: str = "Q") -> Chain:
    """A chain of 5-tuples with small random coefficients."""
    terms = []
    for _ in range(n_terms):
        coeff = rng.choice([-2, -1, 1, 2])
        terms.append((random_tuple(f, rng, 5, height=height), coeff))
    return Chain(terms, mode)


def random_real_point(f: Field, rng: random.Random, height: int = 8) -> ProjPoint:
    return ProjPoint(f(Fraction(rng.randint(-height * 10, height * 10), rng.randint(1, 10))))
