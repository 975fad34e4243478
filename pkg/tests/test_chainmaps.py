import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import K, seeds
from idealcycles import randomgen as rg
from idealcycles import selftest
from idealcycles.barhomology import (
    BarSimplex,
    ConeSimplex,
    DecoratedSimplex,
    Representation,
    chain_boundary,
    decorated_boundary,
)
from idealcycles.chaincore import Chain, IdealTuple, boundary, coinvariant_reduce
from idealcycles.chainmaps import (
    CuspData,
    check_base_point,
    ev,
    ev_chain,
    psi_chain,
    psi_push,
    suggest_base_points,
    verify_commuting_square,
)
from idealcycles.errors import (
    BasePointCollision,
    CuspFixedPointViolation,
    NotRelativeCycle,
    RelatorViolation,
)
from idealcycles.exactnum import GroupElem, ProjPoint

INF = ProjPoint.infinity(K)
ZERO = ProjPoint(K.zero)
T1 = GroupElem(1, 1, 0, 1, K)
VOLUME = 2.029883212819


def P(x):
    return ProjPoint(K.coerce(x))


def cusps_at(c0, c1=INF, gens=(T1,)):
    return CuspData({1: list(gens)}, {1: c1}, c0)


class TestCuspData:
    def test_generator_must_fix_point(self):
        with pytest.raises(CuspFixedPointViolation):
            cusps_at(ZERO, P(1))

    def test_non_parabolic(self):
        h = GroupElem(2, 0, 0, Fraction(1, 2), K)
        with pytest.raises(CuspFixedPointViolation):
            cusps_at(ZERO, INF, [h])
        c = CuspData({1: [h]}, {1: INF}, ZERO, require_parabolic=False)
        assert c.warnings

    def test_base_point_on_cusp(self):
        with pytest.raises(BasePointCollision):
            cusps_at(INF)


class TestEvaluation:
    def test_bar_examples(self):
        c = cusps_at(ZERO)
        assert ev(BarSimplex([T1]), c) == IdealTuple([ZERO, P(1)])
        t = ev(BarSimplex([T1, T1.inverse()]), c)
        assert t == IdealTuple([ZERO, P(1), ZERO])
        assert not coinvariant_reduce(Chain.single(t, 1, "Q"))

    def test_cone_examples(self):
        c = cusps_at(ZERO)
        assert ev(ConeSimplex(BarSimplex([T1]), 1), c) == IdealTuple([ZERO, P(1), INF])
        with pytest.raises(CuspFixedPointViolation):
            ev(ConeSimplex(BarSimplex([GroupElem(0, -1, 1, 0, K)]), 1), c)

    def test_psi_examples(self):
        c = cusps_at(ZERO)
        assert psi_push(DecoratedSimplex([T1]), c) == IdealTuple([ZERO, P(1)])
        assert psi_push(DecoratedSimplex([], 1), c) == IdealTuple([ZERO, INF])

    @given(seeds, st.integers(min_value=2, max_value=4))
    def test_ev_bar_chain_map(self, seed, k):
        rng = random.Random(seed)
        c = selftest._cusps(K, rng)
        b = rg.random_bar_simplex(K, rng, k)
        lhs = coinvariant_reduce(boundary(Chain.single(ev(b, c))))
        assert lhs == coinvariant_reduce(ev_chain(chain_boundary(Chain.single(b)), c))

    @given(seeds, st.integers(min_value=1, max_value=3))
    def test_ev_cone_chain_map(self, seed, k):
        rng = random.Random(seed)
        c = selftest._cusps(K, rng)
        s = rg.random_cone_simplex(K, rng, k, 1, c.cusp_point(1))
        lhs = coinvariant_reduce(boundary(Chain.single(ev(s, c))))
        assert lhs == coinvariant_reduce(ev_chain(chain_boundary(Chain.single(s)), c))

    @given(seeds, st.integers(min_value=1, max_value=4))
    def test_psi_chain_map_and_square(self, seed, degree):
        rng = random.Random(seed)
        c = selftest._cusps(K, rng)
        s = selftest._random_decorated(K, rng, degree, c)
        lhs = coinvariant_reduce(boundary(Chain.single(psi_push(s, c))))
        assert lhs == coinvariant_reduce(psi_chain(decorated_boundary(s), c))
        assert selftest.square_holds(s, c)

    def test_base_point_change_moves_both_routes_together(self, fig8):
        cusps = fig8.cusp_data()
        other = fig8.cusp_data(base_point=ProjPoint(K(Fraction(2, 9), Fraction(3, 13))))
        sample = [s for s, _ in fig8.decorated.items()][:40]
        for s in sample:
            assert selftest.square_holds(s, cusps)
            assert selftest.square_holds(s, other)


class TestCommutingSquare:
    def test_figure_eight(self, fig8):
        rep = verify_commuting_square(fig8.decorated, fig8.cusp_data(), fig8.representation())
        assert rep.chains_equal and rep.generator_mismatches == 0
        assert float(rep.left_volume) == pytest.approx(VOLUME, abs=1e-6)
        assert float(rep.right_volume) == pytest.approx(VOLUME, abs=1e-6)
        assert rep.ok()
        assert rep.l1_norm == len(fig8.decorated)

    def test_conjugated_representation(self, fig8):
        h = GroupElem(1, K.gen, 0, 1, K) @ GroupElem(1, 0, Fraction(1, 3), 1, K)
        rho = Representation.conjugation(h, fig8.generators, fig8.relators)
        rep = verify_commuting_square(fig8.decorated, fig8.cusp_data(), rho)
        assert rep.chains_equal
        assert float(rep.left_volume) == pytest.approx(VOLUME, abs=1e-6)

    def test_z_mode(self, fig8):
        rep = verify_commuting_square(fig8.decorated, fig8.cusp_data(), mode="Z")
        assert rep.ok()

    def test_other_base_point_same_volume(self, fig8):
        cusps = fig8.cusp_data()
        (bp,) = suggest_base_points(fig8.decorated, cusps, Representation.identity(), 1)
        rep = verify_commuting_square(fig8.decorated, fig8.cusp_data(base_point=bp))
        assert rep.chains_equal
        assert float(rep.right_volume) == pytest.approx(VOLUME, abs=1e-6)

    def test_colliding_base_point(self, fig8):
        # 0 lies in the orbit of the cusp point, so some pushed tuples repeat a point
        cusps = fig8.cusp_data(base_point=ZERO)
        with pytest.raises(BasePointCollision) as err:
            check_base_point(fig8.decorated, cusps, Representation.identity())
        assert "try one of" in str(err.value)

    def test_single_simplex_is_not_a_cycle(self, fig8):
        s, _ = fig8.decorated.items()[0]
        with pytest.raises(NotRelativeCycle):
            verify_commuting_square(Chain.single(s, 1, "Q"), fig8.cusp_data())

    def test_representation_must_respect_relators(self, fig8):
        rho = Representation(fig8.generators, ["ab"])
        with pytest.raises(RelatorViolation):
            verify_commuting_square(fig8.decorated, fig8.cusp_data(), rho)

    def test_cusp_torus(self, torus):
        rep = verify_commuting_square(torus.decorated, torus.cusp_data())
        assert rep.chains_equal and rep.left_volume == 0 and rep.right_volume == 0
        assert not rep.left_chain

    def test_report_dict(self, torus):
        d = verify_commuting_square(torus.decorated, torus.cusp_data()).as_dict()
        assert d["chains_equal"] and d["l1_norm"] == "2"
