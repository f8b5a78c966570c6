from __future__ import annotations

import random
from itertools import combinations

import pytest

from hyperholant.evaluate import holant_bruteforce
from hyperholant.fingerprint import EnumerationCapError, fingerprint
from hyperholant.grid import build_grid
from hyperholant.hombasis import (VertexPartition, brute_force_hom, count_aut, count_emb, count_emb_direct,
                                  count_hom, count_sub, dedekind_interpolate, enumerate_uniform_hypergraphs,
                                  enumerate_up_to, expansion_value, hom_expansion, mobius, mobius_bottom,
                                  quotient, tensor_product, vertex_partitions, zeta_coefficient)
from hyperholant.hypergraph import Hypergraph, are_isomorphic, complete_graph, cycle_graph, path_graph, single_edge
from hyperholant.scalar import ONE, ZERO, S
from hyperholant.signature import Signature, geometric, hw_le1, mod_p

K2, K3, P3 = complete_graph(2), complete_graph(3), path_graph(3)
E3 = single_edge(3)


def _part(H, blocks):
    return VertexPartition(H, blocks)


def test_mobius_examples():
    H3, H4 = Hypergraph(3), Hypergraph(4)
    assert mobius(VertexPartition.finest(H3), VertexPartition.coarsest(H3)) == 2
    assert mobius(VertexPartition.finest(H4), VertexPartition.coarsest(H4)) == -6
    for rho in vertex_partitions(H4):
        assert mobius(rho, rho) == 1
        assert mobius(VertexPartition.finest(H4), rho) == mobius_bottom(rho)


def test_quotient_examples():
    Q = quotient(K2, VertexPartition.coarsest(K2))
    assert Q.n == 1 and Q.edges == ((0,),)
    Q = quotient(P3, _part(P3, [[0, 2], [1]]))
    assert Q.n == 2 and Q.num_edges == 1
    assert quotient(P3, VertexPartition.finest(P3)) == P3


def test_hom_examples():
    assert count_hom(K3, K3) == 6
    assert count_hom(E3, E3) == 6
    assert count_hom(K2, K3) == 6
    assert count_emb(K3, K3) == 6
    assert count_emb(K2, P3) == 4
    assert count_aut(single_edge(4)) == 24
    assert count_sub(K2, K3) == 3
    assert count_sub(P3, K3) == 3


def test_hom_agrees_with_map_enumeration():
    rng = random.Random(8)
    for _ in range(150):
        def rand(nmax, emax):
            n = rng.randint(1, nmax)
            r = rng.randint(1, min(3, n))
            return Hypergraph(n, [rng.sample(range(n), rng.randint(1, r)) for _ in range(rng.randint(0, emax))])
        H, G = rand(4, 4), rand(5, 6)
        assert count_hom(H, G) == brute_force_hom(H, G)
        assert count_emb_direct(H, G) == brute_force_hom(H, G, injective=True)


def test_coloured_hom():
    H = Hypergraph(2, [(0, 1)], colours=[0, 1])
    G = Hypergraph(3, [(0, 1), (1, 2)], colours=[0, 1, 0])
    assert count_hom(H, G) == brute_force_hom(H, G) == 2


def test_mobius_round_trip():
    # Hom(H/sigma -> G) = sum_{rho >= sigma} Emb(H/rho -> G), and Emb via Mobius = direct
    graphs = [P3, K3, E3, Hypergraph(4, [(0, 1), (2, 3)]), Hypergraph(4, [(0, 1, 2), (1, 2, 3)])]
    targets = [K3, complete_graph(4), cycle_graph(5), Hypergraph(5, [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 1)])]
    for H in graphs:
        parts = list(vertex_partitions(H))
        for G in targets:
            direct, via = count_emb(H, G, check=True)
            assert direct == via
            for sigma in parts:
                lhs = count_hom(quotient(H, sigma), G)
                rhs = sum(count_emb_direct(quotient(H, rho), G) for rho in parts if sigma.refines(rho))
                assert lhs == rhs


def test_catalogue_sizes():
    assert len(enumerate_uniform_hypergraphs(1, 2)) == 1
    assert len(enumerate_uniform_hypergraphs(2, 2)) == 2
    assert len(enumerate_uniform_hypergraphs(2, 3)) == 3
    assert len(enumerate_uniform_hypergraphs(3, 2)) == 5
    for r in (1, 2, 3, 4):
        assert len(enumerate_uniform_hypergraphs(1, r)) == 1
    with pytest.raises(EnumerationCapError):
        enumerate_uniform_hypergraphs(5, 2)
    cat = enumerate_up_to(3, 3)
    for A, B in combinations(cat, 2):
        assert not are_isomorphic(A, B)
    assert all(H.is_uniform(3) and H.is_simple() and not H.isolated_vertices() for H in cat)


def test_coloured_catalogue():
    cat = enumerate_uniform_hypergraphs(1, 2, [0, 1])
    # an edge with colours {0,0}, {0,1} or {1,1}
    assert len(cat) == 3


def test_zeta_examples():
    assert zeta_coefficient(1, hw_le1(), K2) == S("1/2")
    assert zeta_coefficient(3, hw_le1(), K3) == S("-1/6")
    chi2 = fingerprint(2, hw_le1())
    assert zeta_coefficient(3, hw_le1(), K3) == chi2 ** 3 / count_aut(K3)
    # F* b-regular with k = |E(F*)| and s vanishing on 1..b-1
    assert zeta_coefficient(3, mod_p(2), K3) == mod_p(2)(2) ** 3 / 6
    e = hom_expansion(1, [hw_le1()], 2)
    assert [(P.canonical_form(), c) for P, c in e.terms] == [(K2.canonical_form(), S("1/2"))]
    z = hom_expansion(0, [hw_le1()], 2)
    assert z.terms == [] and z.constant == ONE


def test_zeta_closed_form_on_k_edge_patterns():
    # for F with exactly k edges: zeta(F) = prod_v chi(deg v, s) / Aut(F)
    for s in (hw_le1(), mod_p(2), Signature([1, 2, -1, 3])):
        for k, r in ((2, 2), (3, 2), (2, 3)):
            exp = hom_expansion(k, [s], r)
            for F in enumerate_uniform_hypergraphs(k, r):
                want = ONE
                for d in F.degrees():
                    want = want * fingerprint(d, s)
                assert exp.coefficient(F) == want / count_aut(F)


def test_expansion_identity_small():
    graphs = [K3, P3, cycle_graph(4), Hypergraph(4, [(0, 1), (1, 2), (1, 3)])]
    for s in (hw_le1(), mod_p(2), geometric(2)):
        for k in range(3):
            exp = hom_expansion(k, [s], 2)
            for G in graphs:
                grid = build_grid(G, s)
                assert expansion_value(exp, grid) == holant_bruteforce(grid, k).value


def test_expansion_identity_coloured():
    sigs = [hw_le1(), mod_p(2)]
    G = Hypergraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)], colours=[0, 1, 0, 1])
    grid = build_grid(G, [sigs[c] for c in G.colours])
    for k in range(3):
        exp = hom_expansion(k, sigs, 2)
        assert exp.evaluate(G) == holant_bruteforce(grid, k).value


def test_expansion_rejects_unnormalized():
    with pytest.raises(ValueError):
        hom_expansion(1, [Signature([2, 1])], 2)


def test_tensor_examples():
    T = tensor_product(K2, K2)
    assert T.n == 4 and T.num_edges == 2 and not T.is_connected()
    assert count_hom(K2, T) == 4
    assert count_hom(E3, tensor_product(E3, E3)) == 36
    rng = random.Random(9)
    cat = enumerate_up_to(2, 2)
    for _ in range(5):
        A, B, C = (rng.choice(cat) for _ in range(3))
        assert are_isomorphic(tensor_product(tensor_product(A, B), C), tensor_product(A, tensor_product(B, C)))


def test_interpolation_examples():
    rec = dedekind_interpolate(lambda X: S("1/2") * count_hom(K2, X), 1, 2)
    assert [(P.canonical_form(), c) for P, c in rec.terms] == [(K2.canonical_form(), S("1/2"))]
    assert rec.constant == ZERO
    zero = dedekind_interpolate(lambda X: ZERO, 2, 2)
    assert zero.terms == [] and zero.constant == ZERO


def test_patterns_are_hom_distinguishable():
    for r in (2, 3):
        cat = enumerate_up_to(2, r)
        for A, B in combinations(cat, 2):
            assert any(count_hom(A, X) != count_hom(B, X) for X in cat)
