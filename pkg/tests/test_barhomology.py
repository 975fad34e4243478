import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import K, seeds
from idealcycles import randomgen as rg
from idealcycles.barhomology import (
    Apex,
    ApexVertex,
    BarSimplex,
    ConeSimplex,
    DecoratedSimplex,
    GammaElem,
    Representation,
    WordEvaluator,
    apply_representation,
    bar_boundary,
    chain_boundary,
    dcone_boundary,
    decorated_boundary,
    evaluate_word,
    free_reduce,
    invert_word,
    phi_hat,
    phi_hat_chain,
)
from idealcycles.chaincore import Chain
from idealcycles.errors import BoundaryOfBasepoint, InvalidDecoration, RelatorViolation
from idealcycles.exactnum import GroupElem, ProjPoint
from idealcycles.fixtures import figure_eight as f8

INF = ProjPoint.infinity(K)
words = st.text(alphabet="aAbB", max_size=12)


def G(rng):
    return rg.random_group_elem(K, rng)


class TestWords:
    def test_free_reduce(self):
        assert free_reduce("aAbBa") == "a"
        assert free_reduce("abBA") == ""
        assert invert_word("aB") == "bA"

    @given(words, words)
    def test_evaluation_is_a_homomorphism(self, u, v):
        gens = f8.GENERATORS
        lhs = evaluate_word(u + v, gens, K)
        rhs = evaluate_word(u, gens, K) @ evaluate_word(v, gens, K)
        assert lhs == rhs
        assert evaluate_word(u + invert_word(u), gens, K).is_identity()

    @given(words)
    def test_cached_evaluator_agrees(self, w):
        ev = WordEvaluator(f8.GENERATORS, K)
        assert ev(w) == evaluate_word(w, f8.GENERATORS, K)

    def test_gamma_elements_concatenate_words(self):
        a, b = f8.gamma("a"), f8.gamma("b")
        ab = a @ b
        assert isinstance(ab, GammaElem) and ab.word == "ab"
        assert ab.inverse().word == "BA"
        assert (ab @ ab.inverse()).is_identity()

    def test_figure_eight_relator(self):
        Representation(f8.GENERATORS, f8.RELATORS).check_relators(K)


class TestBarBoundary:
    def test_low_degree(self, rng):
        g, h = G(rng), G(rng)
        assert not bar_boundary(BarSimplex([g]))
        expected = Chain([(BarSimplex([h]), 1), (BarSimplex([g @ h]), -1), (BarSimplex([g]), 1)])
        assert bar_boundary(BarSimplex([g, h])) == expected

    def test_base_point(self):
        with pytest.raises(BoundaryOfBasepoint):
            bar_boundary(BarSimplex(()))

    @given(seeds, st.integers(min_value=2, max_value=4))
    def test_boundary_squared(self, seed, k):
        rng = random.Random(seed)
        b = Chain.single(rg.random_bar_simplex(K, rng, k))
        assert not chain_boundary(chain_boundary(b))

    def test_degenerate_simplices(self, rng):
        b = rg.random_bar_simplex(K, rng, 2)
        d = b.degeneracy(1, K)
        assert d.degree == 3
        assert not chain_boundary(chain_boundary(Chain.single(d)))
        # faces j and j+1 of s_j b both equal b
        assert d.face(1) == b and d.face(2) == b


class TestConeBoundary:
    def test_cone_over_one_simplex(self, rng):
        g = rg.random_parabolic(K, rng, INF)
        c = ConeSimplex(BarSimplex([g]), 1)
        # the two cone faces over the base point cancel, leaving the base
        assert dcone_boundary(c) == Chain.single(BarSimplex([g]))

    def test_cone_over_base_point(self):
        c = ConeSimplex(BarSimplex(()), 1)
        assert dcone_boundary(c) == Chain([(Apex(1), 1), (BarSimplex(()), -1)])

    def test_bar_input_matches_bar_boundary(self, rng):
        b = rg.random_bar_simplex(K, rng, 2)
        assert dcone_boundary(b) == bar_boundary(b)

    @given(seeds, st.integers(min_value=1, max_value=4))
    def test_boundary_squared(self, seed, k):
        rng = random.Random(seed)
        c = Chain.single(rg.random_cone_simplex(K, rng, k, 1, INF))
        assert not chain_boundary(chain_boundary(c))

    def test_apex_has_no_boundary(self):
        with pytest.raises(BoundaryOfBasepoint):
            dcone_boundary(Apex(1))


class TestDecorated:
    def test_phi_hat_examples(self, rng):
        g1, g2 = G(rng), G(rng)
        assert phi_hat(DecoratedSimplex([g1, g2])) == BarSimplex([g1, g2])
        p = rg.random_parabolic(K, rng, INF)
        assert phi_hat(DecoratedSimplex([p], 1)) == ConeSimplex(BarSimplex([p]), 1)
        assert phi_hat(DecoratedSimplex([])) == BarSimplex(())
        assert phi_hat(ApexVertex(2)) == Apex(2)

    def test_bad_cusp_index(self):
        with pytest.raises(InvalidDecoration):
            DecoratedSimplex([], 0)

    @given(seeds, st.integers(min_value=1, max_value=4), st.booleans())
    def test_phi_hat_is_a_chain_map(self, seed, degree, ideal):
        rng = random.Random(seed)
        if ideal:
            s = rg.random_decorated(K, rng, degree, 1, INF)
        else:
            s = rg.random_decorated(K, rng, degree)
        lhs = chain_boundary(Chain.single(phi_hat(s)))
        rhs = phi_hat_chain(decorated_boundary(s))
        assert lhs == rhs

    def test_phi_hat_chain_map_500(self):
        rng = random.Random(99)
        for j in range(500):
            s = rg.random_decorated(K, rng, 1 + j % 4, 1, INF) if j % 2 else rg.random_decorated(K, rng, 1 + j % 4)
            assert chain_boundary(Chain.single(phi_hat(s))) == phi_hat_chain(decorated_boundary(s))


class TestRepresentation:
    def test_identity_leaves_chains_unchanged(self, rng):
        c = Chain([(rg.random_bar_simplex(K, rng, 3), 1), (rg.random_cone_simplex(K, rng, 2, 1, INF), -2)])
        assert apply_representation(c, Representation.identity()) == c

    @given(seeds)
    def test_conjugation_commutes_with_boundary(self, seed):
        rng = random.Random(seed)
        h = G(rng)
        rho = Representation.conjugation(h)
        c = Chain([(rg.random_bar_simplex(K, rng, 3), 1), (rg.random_cone_simplex(K, rng, 2, 1, INF), 1)])
        lhs = chain_boundary(apply_representation(c, rho))
        rhs = apply_representation(chain_boundary(c), rho)
        assert lhs == rhs

    def test_conjugation_of_words(self):
        h = GroupElem(1, K.gen, 0, 1, K)
        rho = Representation.conjugation(h, f8.GENERATORS, f8.RELATORS)
        rho.check_relators(K)
        rho.check_equivariance(f8.GENERATORS)
        g = f8.gamma("aBAb")
        assert rho(g) == g.conjugate_by(h)
        assert rho.push_point(INF) == h.apply(INF)

    def test_broken_relator(self):
        rho = Representation(f8.GENERATORS, ["ab"])
        with pytest.raises(RelatorViolation):
            rho.check_relators(K)
