from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hypergraphs, signatures, small_fractions
from hyperholant.evaluate import holant_definition
from hyperholant.grid import GridError, build_grid
from hyperholant.hypergraph import (Hypergraph, HypergraphError, are_isomorphic, brute_force_isomorphic,
                                    complete_uniform, from_canonical, path_graph, petersen_graph)
from hyperholant.scalar import I, ONE, ZERO, ExactScalar, S, ScalarError, parse_rational, scalar_ops
from hyperholant.signature import (Signature, SignatureError, geometric, hw_ge1, hw_le1, indicator, mod_p,
                                   normalize_signature, one, signature_eval)


# scalars ------------------------------------------------------------------


def test_scalar_examples():
    assert S("1/2") + S("1/3") == S("5/6")
    assert I * I == S(-1)
    assert (S("2/4") - S("1/2")).is_zero()
    assert scalar_ops(S(2), None, "pow", 10) == S(1024)


def test_scalar_rejects_floats():
    with pytest.raises(ScalarError):
        parse_rational("0.333")
    with pytest.raises(ScalarError):
        S(0.5)
    assert parse_rational("1/3") == Fraction(1, 3)


def test_scalar_json_round_trip():
    for x in (S("1/3"), S(0), ExactScalar(Fraction(1, 2), Fraction(-3, 4))):
        assert ExactScalar.coerce(x.to_json()) == x


@given(small_fractions, small_fractions, small_fractions, small_fractions)
def test_gaussian_field_laws(a, b, c, d):
    x, y = ExactScalar(a, b), ExactScalar(c, d)
    assert x * y == y * x
    assert (x + y) - y == x
    if not y.is_zero():
        assert (x / y) * y == x


# signatures ---------------------------------------------------------------


def test_signature_eval_examples():
    assert signature_eval(hw_le1(), 5) == ZERO
    assert mod_p(2)(4) == ONE
    assert geometric(2)(3) == S(8)
    assert hw_ge1()(100) == ONE and hw_ge1()(0) == ZERO
    assert one()(7) == ONE
    assert indicator([0, 2])(2) == ONE and indicator([0, 2])(3) == ZERO


def test_signature_tails():
    s = Signature([1, 5, 7], "periodic", period=2)
    assert [s(n) for n in range(7)] == [S(x) for x in (1, 5, 7, 5, 7, 5, 7)]
    g = Signature([3, 1], "geometric", ratio="1/2")
    assert g(4) == S("1/8")


def test_canonical_representation():
    assert Signature([1, 0, 1, 0], "periodic", period=2) == mod_p(2)
    assert Signature([1, 2, 4, 8], "geometric", ratio=2) == geometric(2)
    assert Signature([1, 1, 0, 0]) == hw_le1()
    assert hash(Signature([1, 1, 0])) == hash(hw_le1())


def test_signature_errors():
    with pytest.raises(SignatureError):
        Signature([])
    with pytest.raises(SignatureError):
        Signature([1], "geometric")
    with pytest.raises(SignatureError):
        Signature([1, 2], "periodic", period=3)


def test_normalize_examples():
    ns, c = normalize_signature(Signature([3, 6, 12]))
    assert ns == Signature([1, 2, 4]) and c == S(3)
    ns, c = normalize_signature(hw_ge1())
    assert ns == hw_ge1() and c == ONE


def test_normalization_rescales_holant():
    H = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])
    s = Signature([3, 6, 12])
    grid = build_grid(H, s)
    norm, scale = grid.normalized()
    assert scale == S(27)
    for k in range(4):
        assert holant_definition(grid, k) == scale * holant_definition(norm, k)


@given(signatures())
def test_signature_matches_table_and_json(s):
    for n, x in enumerate(s.table):
        assert s(n) == x
    assert Signature.from_json(s.to_json()) == s


@given(signatures())
def test_normalize_then_rescale(s):
    ns, c = normalize_signature(s)
    for n in range(s.max_degree + 4):
        assert ns(n) * c == s(n)


# hypergraphs --------------------------------------------------------------


def test_hypergraph_basics():
    H = Hypergraph(4, [(0, 1), (1, 0), (1, 2, 3)])
    assert H.num_edges == 3 and not H.is_simple() and H.rank == 3
    assert H.degrees() == [2, 3, 1, 1]
    with pytest.raises(HypergraphError):
        Hypergraph(3, [(0, 0)])
    with pytest.raises(HypergraphError):
        Hypergraph(2, [(0, 5)])
    assert Hypergraph.from_json(H.to_json()) == H


def test_canonical_form_examples():
    P = path_graph(3)
    Q = P.relabel([2, 0, 1])
    assert P.canonical_form() == Q.canonical_form()
    two = Hypergraph(4, [(0, 1), (2, 3)])
    assert P.canonical_form() != two.canonical_form()
    g23 = [Hypergraph(3 + 3 - s, [(0, 1, 2), tuple(range(3 - s, 6 - s))]) for s in range(3)]
    assert len({G.canonical_form() for G in g23}) == 3
    assert from_canonical(petersen_graph().canonical_form()).canonical_form() == petersen_graph().canonical_form()


def test_coloured_canonical_form():
    A = Hypergraph(3, [(0, 1), (1, 2)], colours=["a", "b", "a"])
    B = Hypergraph(3, [(0, 1), (1, 2)], colours=["b", "a", "a"])
    assert not are_isomorphic(A, B)
    assert are_isomorphic(A, A.relabel([2, 1, 0]))


@given(hypergraphs(max_n=6, max_edges=5), st.randoms(use_true_random=False))
def test_canonical_form_is_relabel_invariant(H, rnd):
    perm = list(range(H.n))
    rnd.shuffle(perm)
    assert H.relabel(perm).canonical_form() == H.canonical_form()


def test_canonical_form_matches_bijection_search():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 6)
        A = Hypergraph(n, [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(rng.randint(0, 5))])
        B = Hypergraph(n, [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(rng.randint(0, 5))])
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            B = A.relabel(perm)
        assert (A.canonical_form() == B.canonical_form()) == brute_force_isomorphic(A, B)


def test_canonical_form_seven_vertices_exhaustive():
    # every 3-edge 3-uniform hypergraph on 7 vertices obtained by relabelling agrees with brute force
    K = complete_uniform(7, 3)
    rng = random.Random(3)
    for _ in range(20):
        picks = rng.sample(list(K.edges), 4)
        A = Hypergraph(7, picks)
        perm = list(range(7))
        rng.shuffle(perm)
        assert brute_force_isomorphic(A, A.relabel(perm))
        assert A.canonical_form() == A.relabel(perm).canonical_form()


# grids --------------------------------------------------------------------


def test_build_grid_examples():
    K3 = Hypergraph(3, [(0, 1), (1, 2), (0, 2)])
    g = build_grid(K3, hw_le1())
    assert g.uniform and g.simple and g.rank == 2
    multi = build_grid(Hypergraph(2, [(0, 1), (0, 1)]), hw_le1())
    assert not multi.simple
    with pytest.raises(GridError):
        build_grid(K3, [hw_le1(), hw_le1()])
    with pytest.raises(GridError):
        build_grid(K3, Signature([0]))


def test_grid_json_round_trip():
    g = build_grid(Hypergraph(3, [(0, 1), (1, 2)]), [hw_le1(), mod_p(2), hw_le1()])
    from hyperholant.grid import SignatureGrid
    assert SignatureGrid.from_json(g.to_json()) == g
