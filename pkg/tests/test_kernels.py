"""Both kernel backends must give identical results."""

from __future__ import annotations

import random

import pytest

from conftest import random_grid
from hyperholant import kernels
from hyperholant.evaluate import holant_bruteforce, holant_definition
from hyperholant.hombasis import brute_force_hom, count_emb_direct, count_hom
from hyperholant.hypergraph import Hypergraph, complete_graph, petersen_graph
from hyperholant.scalar import ExactScalar
from hyperholant.signature import Signature

BACKENDS = sorted(kernels.backends())


def test_compiled_backend_available():
    # the extension is part of the build; this flags a broken build rather than silently skipping
    assert "cython" in BACKENDS, "compiled kernels missing: run `pip install -e . --no-build-isolation`"


@pytest.mark.parametrize("name", BACKENDS)
def test_subset_sum_backend(name):
    rng = random.Random(17)

    def sig(r):
        if r.random() < 0.2:
            return Signature([0] + [r.randint(-2, 2) for _ in range(3)] + [1])
        return Signature([r.randint(-2, 3) or 1 for _ in range(4)])

    with kernels.use_backend(name):
        assert kernels.BACKEND == name
        for _ in range(40):
            g = random_grid(rng, rng.randint(1, 6), rng.randint(0, 8), sig, ranks=(1, 2, 3))
            for k in range(4):
                assert holant_bruteforce(g, k).value == holant_definition(g, k)
        g = random_grid(rng, 4, 5, lambda r: Signature([1, ExactScalar(0, 1), 2]), ranks=(2,))
        for k in range(4):
            assert holant_bruteforce(g, k).value == holant_definition(g, k)


@pytest.mark.parametrize("name", BACKENDS)
def test_hom_count_backend(name):
    rng = random.Random(19)
    with kernels.use_backend(name):
        for _ in range(60):
            n = rng.randint(1, 4)
            H = Hypergraph(n, [rng.sample(range(n), rng.randint(1, min(3, n))) for _ in range(rng.randint(0, 3))])
            m = rng.randint(1, 5)
            G = Hypergraph(m, [rng.sample(range(m), rng.randint(1, min(3, m))) for _ in range(rng.randint(0, 6))])
            assert count_hom(H, G) == brute_force_hom(H, G)
            assert count_emb_direct(H, G) == brute_force_hom(H, G, injective=True)


def test_backends_agree_on_larger_inputs():
    values = {}
    for name in BACKENDS:
        with kernels.use_backend(name):
            values[name] = (count_hom(complete_graph(4), complete_graph(6)),
                            count_emb_direct(Hypergraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]), petersen_graph()))
    assert len(set(values.values())) == 1
    assert values[BACKENDS[0]][0] == 360


def test_wide_targets_fall_back():
    # more than 64 target vertices exceeds the compiled bitmask width
    big = Hypergraph(70, [(i, i + 1) for i in range(69)])
    with kernels.use_backend("cython" if "cython" in BACKENDS else "python"):
        assert count_hom(complete_graph(2), big) == 138
