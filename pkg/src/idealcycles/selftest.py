"""Randomized invariant suites shared by the ``selftest`` command and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import mpmath

from . import randomgen as rg
from .barhomology import (
    Representation,
    chain_boundary,
    decorated_boundary,
    phi_hat,
)
from .blochmachine import algvol, bloch_wigner, class_difference, five_term_boundary
from .chaincore import (
    FREE,
    Chain,
    boundary,
    coinvariant_reduce,
    is_cycle,
    tuple_boundary,
)
from .chainmaps import CuspData, ev, ev_chain, psi_chain, psi_push
from .errors import IdealCyclesError, OnBoundaryFace
from .idealgeom import StraightTetra, point_degree, sample_points, simplex_orientation
from .exactnum import cross_ratio

DEFAULT_SEED = 20240501


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> int:
        return self.total - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures and self.total > 0

    def check(self, condition: bool, info=None) -> None:
        self.total += 1
        if not condition:
            self.failures.append(info)


# ---------------------------------------------------------------------------
# suites; each takes (rng, n) and fills a SuiteResult


def _field():
    return rg.default_field()


def _cusps(f, rng) -> CuspData:
    c1 = rg.random_point(f, rng, p_inf=0.5)
    while True:
        c0 = rg.random_point(f, rng, p_inf=0.0)
        if c0 != c1:
            break
    return CuspData({1: [rg.random_parabolic(f, rng, c1)]}, {1: c1}, c0)


def suite_boundary_squared(rng, n, res: SuiteResult):
    f = _field()
    for j in range(n):
        k = 3 + j % 4
        t = rg.random_tuple(f, rng, k, distinct=j % 5 != 0, height=3)
        res.check(not boundary(boundary(Chain.single(t))), ("tuple", t))
        b = rg.random_bar_simplex(f, rng, 2 + j % 3)
        res.check(not chain_boundary(chain_boundary(Chain.single(b))), ("bar", b))
        fixed = rg.random_point(f, rng, p_inf=0.5)
        c = rg.random_cone_simplex(f, rng, 1 + j % 3, 1, fixed)
        res.check(not chain_boundary(chain_boundary(Chain.single(c))), ("cone", c))


def _reduced_boundary_matches(t_chain: Chain, face_chain: Chain) -> bool:
    return coinvariant_reduce(boundary(t_chain)) == coinvariant_reduce(face_chain)


def suite_ev_bar(rng, n, res: SuiteResult):
    f = _field()
    for j in range(n):
        cusps = _cusps(f, rng)
        b = rg.random_bar_simplex(f, rng, 2 + j % 3)
        lhs = Chain.single(ev(b, cusps))
        rhs = ev_chain(chain_boundary(Chain.single(b)), cusps)
        res.check(_reduced_boundary_matches(lhs, rhs), b)


def suite_ev_cone(rng, n, res: SuiteResult):
    f = _field()
    for j in range(n):
        cusps = _cusps(f, rng)
        c = rg.random_cone_simplex(f, rng, 1 + j % 3, 1, cusps.cusp_point(1))
        lhs = Chain.single(ev(c, cusps))
        rhs = ev_chain(chain_boundary(Chain.single(c)), cusps)
        res.check(_reduced_boundary_matches(lhs, rhs), c)


def _random_decorated(f, rng, j, cusps):
    if j % 2:
        return rg.random_decorated(f, rng, 2 + j % 3, 1, cusps.cusp_point(1))
    return rg.random_decorated(f, rng, 2 + j % 3)


def suite_psi(rng, n, res: SuiteResult):
    f = _field()
    for j in range(n):
        cusps = _cusps(f, rng)
        s = _random_decorated(f, rng, j, cusps)
        lhs = Chain.single(psi_push(s, cusps))
        rhs = psi_chain(decorated_boundary(s), cusps)
        res.check(_reduced_boundary_matches(lhs, rhs), s)


def square_holds(s, cusps: CuspData, rho: Representation | None = None) -> bool:
    """ev(phi_hat(s)) and cr(psi(s)) have the same normal form."""
    left = coinvariant_reduce(Chain.single(ev(phi_hat(s), cusps)))
    right = coinvariant_reduce(Chain.single(psi_push(s, cusps)))
    return left == right


def suite_square(rng, n, res: SuiteResult):
    f = _field()
    for j in range(n):
        cusps = _cusps(f, rng)
        s = _random_decorated(f, rng, j, cusps)
        res.check(square_holds(s, cusps), s)


def suite_fixture_square(rng, n, res: SuiteResult):
    from .cyclefile import load_fixture

    cf = load_fixture("figure_eight")
    cusps = cf.cusp_data()
    for s, _ in cf.decorated.items():
        res.check(square_holds(s, cusps), s)


def suite_ginvariance(rng, n, res: SuiteResult):
    f = _field()
    for j in range(n):
        t = rg.random_tuple(f, rng, 4 + j % 2, height=4)
        g = rg.random_group_elem(f, rng) if j % 2 else rg.random_moebius(f, rng)
        a = coinvariant_reduce(Chain.single(t))
        b = coinvariant_reduce(Chain.single(t.act(g)))
        res.check(a == b, (g, t))


def suite_five_term(rng, n, res: SuiteResult):
    f = _field()
    for _ in range(n):
        t = rg.random_tuple(f, rng, 5, height=5)
        ft = five_term_boundary(t)
        vol = abs(algvol(ft))
        certified = not class_difference(ft, Chain((), "Q"), Chain.single(t))
        consistent = is_cycle(tuple_boundary(t), FREE)
        res.check(vol < 1e-8 and certified and consistent, (t, float(vol)))


def suite_dilog(rng, n, res: SuiteResult):
    for _ in range(n):
        z = mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
        d = bloch_wigner(z)
        sym = max(
            abs(bloch_wigner(mpmath.conj(z)) + d),
            abs(bloch_wigner(1 / z) + d),
            abs(bloch_wigner(1 - z) + d),
            abs(bloch_wigner(1 - 1 / z) - d),
        )
        r = rng.uniform(-10, 10)
        res.check(sym < 1e-10 and abs(bloch_wigner(r)) < 1e-12, z)


def suite_orientation(rng, n, res: SuiteResult):
    f = _field()
    for _ in range(n):
        pts = rg.random_distinct_points(f, rng, 4, height=5)
        z = cross_ratio(*pts).to_complex()
        expected = (z.imag > 0) - (z.imag < 0)
        res.check(simplex_orientation(StraightTetra(pts)) == expected, pts)


def degree_instance(rng, z: Chain, n_points: int, seed: int) -> list[tuple[int, int]]:
    """(deg_y(z), deg_y(z + dw)) at sampled points y for a random 4-chain w."""
    f = z.generators()[0].points[0].field
    w = rg.random_four_chain(f, rng, n_terms=2, height=3)
    dw = boundary(w)
    zw = z + dw
    everything = Chain([(t, 1) for t, _ in z.items()] + [(t, 1) for t, _ in dw.items()])
    pts = sample_points(everything, n_points, seed, footprint=everything)
    return [(point_degree(z, y), point_degree(zw, y)) for y in pts]


def suite_degree_invariance(rng, n, res: SuiteResult, points_per_instance: int = 50):
    from .cyclefile import load_fixture

    z = load_fixture("figure_eight").raw_cycle
    for j in range(n):
        try:
            pairs = degree_instance(rng, z, points_per_instance, rng.randrange(2**31))
        except OnBoundaryFace as exc:
            res.check(False, str(exc))
            continue
        for a, b in pairs:
            res.check(a == b, (j, a, b))


SUITES: list[tuple[str, Callable, int, int]] = [
    # name, function, full count, quick count
    ("boundary squared (tuples, bar, cone)", suite_boundary_squared, 1000, 60),
    ("ev on bar simplices is a chain map", suite_ev_bar, 1000, 60),
    ("ev on cone simplices is a chain map", suite_ev_cone, 500, 40),
    ("psi is a chain map", suite_psi, 500, 40),
    ("square commutes on random simplices", suite_square, 200, 30),
    ("square commutes on fixture simplices", suite_fixture_square, 1, 1),
    ("coinvariants are G-invariant", suite_ginvariance, 500, 30),
    ("five-term relation", suite_five_term, 1000, 40),
    ("dilogarithm symmetries", suite_dilog, 1000, 60),
    ("orientation matches cross-ratio", suite_orientation, 500, 60),
    ("degree is a homology invariant", suite_degree_invariance, 20, 2),
]


def run(seed: int = DEFAULT_SEED, quick: bool = False, only: list[str] | None = None) -> list[SuiteResult]:
    results = []
    for k, (name, fn, full, short) in enumerate(SUITES):
        if only and not any(o in name for o in only):
            continue
        rng = random.Random(seed * 1000 + k)
        res = SuiteResult(name)
        start = time.perf_counter()
        try:
            if fn is suite_degree_invariance and quick:
                fn(rng, short, res, points_per_instance=10)
            else:
                fn(rng, short if quick else full, res)
        except IdealCyclesError as exc:
            res.check(False, f"{type(exc).__name__}: {exc}")
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
