from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import hypergraphs, random_grid
from hyperholant.evaluate import holant_bruteforce, holant_definition
from hyperholant.fingerprint import EnumerationCapError
from hyperholant.grid import build_grid
from hyperholant.hypergraph import Hypergraph, complete_graph, cycle_graph, path_graph, petersen_graph
from hyperholant.reductions import (ReductionError, VcspInstance, bridge_lift, build_codeword_instance,
                                    build_factor_instance, count_codewords, count_factors, count_hitting_sets,
                                    count_perfect_matchings, dedupe_twins, find_bridge_gadget,
                                    gen_regular_connected, hitting_set_holant, holant_to_vcsp, is_bridge,
                                    pad_gadget, pm_gadget_graph, pm_gadget_hyper, vcsp_to_holant, vcsp_value)
from hyperholant.scalar import ONE, ZERO, S
from hyperholant.signature import Signature, geometric, hw_ge1, hw_le1, mod_p

K3, C4, P3 = complete_graph(3), cycle_graph(4), path_graph(3)


# VCSP ---------------------------------------------------------------------


def test_vcsp_examples():
    I = VcspInstance(2, [(mod_p(2), (0, 1))], 2)
    grid, k = vcsp_to_holant(I)
    assert grid.n == 1 and grid.graph.edges == ((0,),) and grid.graph.mult == (2,)
    assert holant_bruteforce(grid, 2).value == vcsp_value(I) == ONE
    assert holant_bruteforce(grid, 1).value == vcsp_value(I, 1) == ZERO
    with pytest.raises(ReductionError):
        vcsp_to_holant(VcspInstance(3, [], 0))
    with pytest.raises(ReductionError):
        vcsp_to_holant(VcspInstance(1, [(hw_le1(), (0, 0))], 1))


def test_holant_to_vcsp_examples():
    g = build_grid(K3, hw_le1())
    I = holant_to_vcsp(g, 1)
    assert I.n_variables == 3 and len(I.constraints) == 3
    assert all(len(scope) == 2 for _, scope in I.constraints)
    for k in (0, 1):
        assert vcsp_value(I, k) == holant_bruteforce(g, k).value
    single = build_grid(Hypergraph(1, [(0,)]), hw_le1())
    assert [len(scope) for _, scope in holant_to_vcsp(single, 1).constraints] == [1]


def test_vcsp_round_trip_random():
    rng = random.Random(21)

    def sig(r):
        return Signature([r.randint(-2, 2) for _ in range(3)] + [1])

    for _ in range(50):
        g = random_grid(rng, rng.randint(1, 5), rng.randint(1, 6), sig, ranks=(1, 2, 3))
        if g.graph.isolated_vertices():
            continue
        I = holant_to_vcsp(g, 0)
        back, _ = vcsp_to_holant(I)
        for k in range(4):
            want = holant_bruteforce(g, k).value
            assert vcsp_value(I, k) == want
            assert holant_bruteforce(back, k).value == want


def test_vcsp_json_round_trip():
    I = VcspInstance(3, [(mod_p(2), (0, 1)), (hw_le1(), (1, 2)), (mod_p(2), (2,))], 1)
    J = VcspInstance.from_json(I.to_json(), 1)
    assert J.to_json() == I.to_json()


# gadgets ------------------------------------------------------------------


def test_pad_examples():
    c = pad_gadget(build_grid(K3, hw_le1()), 3, 1)
    assert c.verify() == (True, S(3), S(3))
    assert pad_gadget(build_grid(K3, hw_le1()), 4, 0).scale == ONE
    c = pad_gadget(build_grid(P3, geometric(2)), 4, 2)
    assert c.scale == S(2) ** 4 and c.verify()[0]
    with pytest.raises(ReductionError):
        pad_gadget(build_grid(K3, mod_p(2)), 3, 1)


def test_pad_unnormalized_scale():
    c = pad_gadget(build_grid(C4, Signature([2, 1])), 3, 1)
    ok, lhs, rhs = c.verify()
    assert ok and lhs == rhs


def test_bridge_examples():
    B = find_bridge_gadget(3)
    assert B.graph.num_edges == 4 and B.graph.n == 7
    assert is_bridge(B.graph, 3) == (B.x, B.y)
    spec_B = Hypergraph(7, [(0, 1, 2), (2, 3, 4), (3, 5, 6), (4, 5, 6)])
    assert B.graph.canonical_form() == spec_B.canonical_form()
    c = bridge_lift(build_grid(K3, mod_p(2)), 3, 1, B)
    assert c.k_target == 4 and c.scale == ONE
    assert c.verify() == (True, ZERO, ZERO)
    c = bridge_lift(build_grid(K3, mod_p(2)), 3, 3, B)
    assert c.verify() == (True, ONE, ONE)
    c = bridge_lift(build_grid(C4, mod_p(2)), 3, 2, B)
    assert c.verify()[0]
    c = bridge_lift(build_grid(C4, Signature([1, 0, 3, 5])), 3, 4, B)
    assert c.scale == S(3) ** 20 and c.verify()[0]
    with pytest.raises(ReductionError):
        bridge_lift(build_grid(K3, hw_le1()), 3, 1, B)
    with pytest.raises(ReductionError):
        bridge_lift(build_grid(K3, Signature([1, 0, 0, 1])), 3, 1, B)


def test_bridge_small_arity():
    assert find_bridge_gadget(2).graph.num_edges == 1
    B4 = find_bridge_gadget(4)
    assert is_bridge(B4.graph, 4) is not None
    with pytest.raises(EnumerationCapError):
        find_bridge_gadget(3, search_cap=3)


@pytest.mark.parametrize("d,b,i", [(d, b, i) for d in (2, 3) for b in (1, 2, 3) for i in (2, 3)])
def test_regular_generator(d, b, i):
    H = gen_regular_connected(d, b, i)
    assert H.is_uniform(d) and H.is_regular(b) and H.is_connected() and H.is_simple()


def test_regular_generator_examples():
    C = gen_regular_connected(2, 2, 2)
    assert C.n == 8 and C.num_edges == 8 and C.is_connected()
    assert gen_regular_connected(5, 1, 4) == Hypergraph(5, [(0, 1, 2, 3, 4)])
    assert gen_regular_connected(3, 2, 2).n == 18
    assert gen_regular_connected(4, 2, 2).is_regular(2)


def test_perfect_matching_counts():
    assert count_perfect_matchings(C4) == 2
    assert count_perfect_matchings(complete_graph(4)) == 3
    assert count_perfect_matchings(Hypergraph(4, [(0, 1, 2, 3)])) == 1
    assert count_perfect_matchings(petersen_graph()) == 6
    assert count_perfect_matchings(Hypergraph(2, [(0, 1), (0, 1)])) == 2


def test_pm_graph_branches():
    c = pm_gadget_graph(C4, hw_ge1())
    assert c.k == 2 and c.verify() == (True, S(2), S(2))
    c = pm_gadget_graph(C4, Signature([0, 0, 1]))
    assert c.k == 8 and c.grid.graph.num_edges == 10 and c.verify() == (True, S(2), S(2))
    c = pm_gadget_graph(cycle_graph(5), Signature([0, 0, 1]))
    assert c.verify() == (True, ZERO, ZERO)
    with pytest.raises(ReductionError):
        pm_gadget_graph(C4, hw_le1())


def test_pm_graph_small_corpus():
    rng = random.Random(13)
    sigs = [hw_ge1(), Signature([0, 2, 1]), Signature([0, 0, 1]), Signature([0, 0, 3, 1]), Signature([0, 0, 0, 2])]
    for _ in range(12):
        n = rng.choice([2, 4, 6])
        pairs = list(combinations(range(n), 2))
        G = Hypergraph(n, rng.sample(pairs, rng.randint(1, min(6, len(pairs)))))
        for s in sigs:
            c = pm_gadget_graph(G, s)
            if c.grid.graph.num_edges > 26:
                continue
            assert c.verify()[0]


def test_pm_hyper_examples():
    c = pm_gadget_hyper(Hypergraph(3, [(0, 1, 2)]), Signature([0, 1]))
    assert c.verify() == (True, ONE, ONE)
    c = pm_gadget_hyper(Hypergraph(6, [(0, 1, 2), (3, 4, 5)]), hw_ge1())
    assert c.k == 2 and c.verify() == (True, ONE, ONE)
    c = pm_gadget_hyper(Hypergraph(3, [(0, 1, 2)]), Signature([0, 0, 1]))
    assert c.info["branch"] == "gadget" and c.verify()[0]
    c = pm_gadget_hyper(Hypergraph(4, [(0, 1, 2)]), hw_ge1())
    assert c.verify() == (True, ZERO, ZERO)


def test_pm_hyper_size_forced():
    c = pm_gadget_hyper(Hypergraph(3, [(0, 1, 2)]), Signature([1, 0, 0, 1]), mode="size-forced")
    assert c.grid.graph.num_edges == c.k == 57
    assert c.verify() == (True, ONE, ONE)
    c = pm_gadget_hyper(Hypergraph(3, [(0, 1, 2), (0, 1, 2)]), Signature([1, 0, 0, 2]), mode="size-forced")
    ok, lhs, rhs = c.verify()
    assert ok and lhs == S(2) ** c.grid.n * 2
    c = pm_gadget_hyper(Hypergraph(6, [(0, 1, 2), (3, 4, 5)]), Signature([1, 0, 0, 1]), mode="size-forced")
    assert c.verify()[0]
    with pytest.raises(ReductionError):
        pm_gadget_hyper(Hypergraph(3, [(0, 1, 2)]), Signature([1, 1]), mode="size-forced")
    with pytest.raises(ReductionError):
        pm_gadget_hyper(Hypergraph(3, [(0, 1, 2)]), Signature([1, 0, 1]), mode="size-forced")


def test_hitting_set_examples():
    G = Hypergraph(3, [(0, 1), (1, 2)])
    grid, k, keep = hitting_set_holant(G, 1)
    assert holant_bruteforce(grid, 1).value == ONE
    assert count_hitting_sets(G, 1, keep) == 1
    G = Hypergraph(4, [(2,), (0, 1, 3)])
    for k in range(1, 4):
        grid, _, keep = hitting_set_holant(G, k)
        assert holant_bruteforce(grid, k).value == count_hitting_sets(G, k, keep)
    assert dedupe_twins(Hypergraph(4, [(0, 1), (2,)])) == [0, 2, 3]


@given(hypergraphs(max_n=5, max_edges=5, max_rank=4))
def test_hitting_set_property(G):
    for k in range(G.n + 1):
        grid, _, keep = hitting_set_holant(G, k)
        assert holant_bruteforce(grid, k).value == count_hitting_sets(G, k, keep)


def test_codeword_examples():
    g, k = build_codeword_instance([[1, 1]], 2, 2)
    assert holant_bruteforce(g, k).value == ONE
    g, k = build_codeword_instance([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 2, 1)
    assert holant_bruteforce(g, k).value == ZERO
    g, k = build_codeword_instance([[1, 1, 1]], 3, 3)
    assert holant_bruteforce(g, k).value == ONE
    with pytest.raises(ReductionError):
        build_codeword_instance([[2, 1]], 3, 1)
    with pytest.raises(ReductionError):
        build_codeword_instance([[1, 1]], 4, 1)


def test_codeword_zero_column():
    A = [[1, 0, 1], [1, 0, 1]]
    for k in range(4):
        g, _ = build_codeword_instance(A, 2, k)
        assert holant_bruteforce(g, k).value == count_codewords(A, 2, k)


def test_factor_examples():
    g, k = build_factor_instance(K3, [0, 1], 1)
    assert holant_bruteforce(g, k).value == S(3)
    g, k = build_factor_instance(petersen_graph(), [0, 1], 5)
    assert holant_bruteforce(g, k).value == S(6) == S(count_factors(petersen_graph(), [0, 1], 5))
    g, k = build_factor_instance(C4, [0, 2], 4)
    assert holant_bruteforce(g, k).value == ONE
    assert holant_definition(g, 2) == S(count_factors(C4, [0, 2], 2)) == ZERO


@given(st.integers(0, 2**32))
def test_random_certificates_verify(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    pairs = list(combinations(range(n), 2))
    H = Hypergraph(n, rng.sample(pairs, rng.randint(1, len(pairs))))
    k = rng.randint(0, H.num_edges)
    s = Signature([rng.randint(1, 3), rng.randint(1, 3), rng.randint(-2, 2)])
    assert pad_gadget(build_grid(H, s), rng.choice([3, 4]), k).verify()[0]
    s = Signature([1, 0, rng.randint(1, 3), rng.randint(-2, 2)])
    assert bridge_lift(build_grid(H, s), 3, k).verify()[0]
