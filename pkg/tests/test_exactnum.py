import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import K, points, scalars, seeds
from idealcycles import randomgen as rg
from idealcycles.errors import FieldMismatch, InvariantViolation, ParseError, ZeroPoint
from idealcycles.exactnum import (
    ComplexFloatField,
    GroupElem,
    Matrix2,
    ProjPoint,
    QuadraticField,
    cross_ratio,
    field_from_header,
    format_point,
    mobius_apply,
    mobius_from_triple,
    parse_point,
    proj_canonical,
)

INF = ProjPoint.infinity(K)
S = K.gen


def P(x):
    return ProjPoint(K.coerce(x))


class TestQuadraticField:
    def test_sqrt_squares_to_d(self):
        assert S * S == K(-3)

    def test_parse_and_format(self):
        x = K.parse("1/2-3*s")
        assert x == K(Fraction(1, 2), -3)
        assert K.format(x) == "1/2-3*s"
        assert K.parse("s") == S
        assert K.parse("-s") == -S
        assert K.parse("7") == K(7)

    def test_rationals_in_lowest_terms(self):
        x = K(Fraction(6, 4), Fraction(-10, -4))
        assert (x.a.numerator, x.a.denominator) == (3, 2)
        assert x.b == Fraction(5, 2)

    def test_reject_garbage(self):
        with pytest.raises(ParseError):
            K.parse("1+t")

    def test_non_squarefree_rejected(self):
        with pytest.raises(InvariantViolation):
            QuadraticField(-12)

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            K.zero.inverse()

    def test_complex_embedding(self):
        z = ((K(1) + S) / 2).to_complex()
        assert z == pytest.approx(complex(0.5, 3**0.5 / 2))

    def test_header_round_trip(self):
        assert field_from_header(K.header()) == K
        C = ComplexFloatField(100)
        assert field_from_header(C.header()) == C

    @given(scalars, scalars, scalars)
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x and x * y == y * x

    @given(scalars)
    def test_inverses(self, x):
        assert x + (-x) == K.zero
        if not x.is_zero():
            assert x * x.inverse() == K.one

    @given(scalars)
    def test_format_parse_round_trip(self, x):
        assert K.parse(K.format(x)) == x

    @given(scalars, scalars)
    def test_embedding_is_a_homomorphism(self, x, y):
        with mpmath.workprec(212):
            assert abs((x * y).to_mpc() - x.to_mpc() * y.to_mpc()) < mpmath.mpf(2) ** -190 * (1 + abs((x * y).to_mpc()))
            assert abs((x + y).to_mpc() - (x.to_mpc() + y.to_mpc())) < mpmath.mpf(2) ** -190 * (1 + abs(x.to_mpc()) + abs(y.to_mpc()))

    def test_random_field_axioms_1000(self):
        rng = random.Random(7)
        for _ in range(1000):
            x, y, z = (K.random(rng) for _ in range(3))
            assert x * (y + z) == x * y + x * z
            assert (x * y) * z == x * (y * z)
            if not x.is_zero():
                assert x * x.inverse() == K.one


class TestFloatField:
    def test_arithmetic(self):
        C = ComplexFloatField(120)
        x = C.parse("0.5+0.25j")
        assert abs((x * x.inverse()).to_mpc() - 1) < 1e-30

    def test_mismatched_fields(self):
        C = ComplexFloatField(120)
        with pytest.raises(FieldMismatch):
            C.parse("1") + K(1)


class TestProjPoint:
    def test_canonical_examples(self):
        assert proj_canonical(K(6), K(3)) == P(2)
        assert proj_canonical(K(5), K(0)) == INF
        assert proj_canonical(K(0), K(7)) == P(0)

    def test_zero_zero_is_not_a_point(self):
        with pytest.raises(ZeroPoint):
            ProjPoint(K(0), K(0))

    @given(points, scalars)
    def test_canonical_is_idempotent_and_scale_invariant(self, p, lam):
        q = proj_canonical(p.num, p.den)
        assert q == p
        if not lam.is_zero():
            assert ProjPoint(p.num * lam, p.den * lam) == p

    @given(points)
    def test_format_parse_round_trip(self, p):
        assert parse_point(K, format_point(p)) == p

    def test_infinity_sorts_last(self):
        pts = [INF, P(1), P(0), P(-1)]
        assert sorted(pts, key=lambda p: p.sort_key())[-1] == INF


class TestMobius:
    def test_examples(self):
        assert mobius_apply(GroupElem(1, 1, 0, 1, K), P(0)) == P(1)
        assert mobius_apply(GroupElem(0, -1, 1, 0, K), INF) == P(0)
        zeta = (K(1) + S) / 2
        assert mobius_apply(GroupElem.identity(K), ProjPoint(zeta)) == ProjPoint(zeta)

    def test_det_must_be_one(self):
        with pytest.raises(InvariantViolation):
            GroupElem(1, 2, 0, 2, K)

    def test_from_triple(self):
        assert mobius_from_triple(INF, P(0), P(1)).is_identity()
        g = mobius_from_triple(P(0), INF, P(1))
        for z in (P(2), P(Fraction(1, 3)), ProjPoint(S)):
            assert g.apply(z) == ProjPoint(z.num.inverse())
        g = mobius_from_triple(P(1), P(2), P(3))
        assert [g.apply(P(k)) for k in (1, 2, 3)] == [INF, P(0), P(1)]

    @given(seeds)
    def test_composition_and_inverse(self, seed):
        rng = random.Random(seed)
        g, h = rg.random_group_elem(K, rng), rg.random_group_elem(K, rng)
        p = rg.random_point(K, rng)
        assert (g @ h).apply(p) == g.apply(h.apply(p))
        assert g.inverse().apply(g.apply(p)) == p

    def test_composition_500(self):
        rng = random.Random(3)
        for _ in range(500):
            g, h = rg.random_group_elem(K, rng), rg.random_moebius(K, rng)
            p = rg.random_point(K, rng)
            assert (g @ h).apply(p) == g.apply(h.apply(p))
            assert h.inverse().apply(h.apply(p)) == p


class TestCrossRatio:
    def test_normalization(self):
        z = ProjPoint(K(2) + S)
        assert cross_ratio(INF, P(0), P(1), z) == z
        assert cross_ratio(INF, P(0), P(1), INF) == INF

    def test_integer_example(self):
        # (0,1,2) -> (inf,0,1) is z -> 2(z-1)/z, which sends 3 to 4/3
        g = mobius_from_triple(P(0), P(1), P(2))
        assert g.apply(P(3)) == P(Fraction(4, 3))
        assert cross_ratio(P(0), P(1), P(2), P(3)) == P(Fraction(4, 3))

    def test_invariance_500(self):
        rng = random.Random(11)
        for _ in range(500):
            pts = rg.random_distinct_points(K, rng, 4)
            g = rg.random_moebius(K, rng)
            assert cross_ratio(*[g.apply(p) for p in pts]) == cross_ratio(*pts)

    def test_invariance_float_mode(self):
        C = ComplexFloatField(212)
        rng = random.Random(5)
        for _ in range(100):
            pts = [ProjPoint(C.random(rng)) for _ in range(4)]
            g = Matrix2(*(C.random(rng) for _ in range(4)))
            a = cross_ratio(*pts).num.to_mpc()
            b = cross_ratio(*[g.apply(p) for p in pts]).num.to_mpc()
            assert abs(a - b) <= abs(a) * mpmath.mpf(2) ** (-212 + 16)
