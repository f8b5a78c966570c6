from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hyperholant.grid import build_grid
from hyperholant.hypergraph import Hypergraph
from hyperholant.signature import Signature, geometric

settings.register_profile(
    "repo", deadline=None, max_examples=60, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repo")

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=4)
nonzero_fractions = small_fractions.filter(lambda q: q != 0)


@st.composite
def signatures(draw, max_len: int = 5, allow_zero_s0: bool = True):
    table = draw(st.lists(small_fractions, min_size=1, max_size=max_len))
    if not allow_zero_s0 and table[0] == 0:
        table[0] = Fraction(1)
    kind = draw(st.sampled_from(["zero", "geometric", "periodic"]))
    if all(x == 0 for x in table) and kind != "periodic":
        table[-1] = Fraction(1)
    if kind == "geometric":
        s = Signature(table, "geometric", ratio=draw(nonzero_fractions))
    elif kind == "periodic":
        s = Signature(table, "periodic", period=draw(st.integers(1, len(table))))
    else:
        s = Signature(table)
    if s.is_all_zero():
        s = Signature([1])
    return s


@st.composite
def hypergraphs(draw, max_n: int = 6, max_edges: int = 6, max_rank: int = 3, min_rank: int = 1):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_edges))
    edges = []
    for _ in range(m):
        size = draw(st.integers(min(min_rank, n), min(max_rank, n)))
        edges.append(draw(st.lists(st.integers(0, n - 1), min_size=size, max_size=size, unique=True)))
    return Hypergraph(n, edges)


def random_hypergraph(rng: random.Random, n: int, m: int, ranks=(2, 3), multi: bool = True) -> Hypergraph:
    edges = []
    for _ in range(m):
        r = min(rng.choice(ranks), n)
        e = rng.sample(range(n), r)
        edges.append(e)
        if multi and rng.random() < 0.15:
            edges.append(list(e))
    return Hypergraph(n, edges)


def random_fraction(rng: random.Random, lo: int = -3, hi: int = 3, den: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))
        if q or not nonzero:
            return q


def random_t1_signature(rng: random.Random) -> Signature:
    return geometric(random_fraction(rng, nonzero=True), random_fraction(rng, nonzero=True))


def random_zero_signature(rng: random.Random) -> Signature:
    """s(0) = 0 with a non-trivial table and a zero, geometric or periodic tail."""
    table = [0] + [random_fraction(rng) for _ in range(rng.randint(1, 4))]
    if all(x == 0 for x in table):
        table[-1] = 1
    kind = rng.choice(["zero", "geometric", "periodic"])
    if kind == "geometric":
        return Signature(table, "geometric", ratio=random_fraction(rng, nonzero=True))
    if kind == "periodic":
        return Signature(table, "periodic", period=rng.randint(1, len(table)))
    return Signature(table)


def random_grid(rng: random.Random, n: int, m: int, sig_factory, ranks=(2, 3), multi: bool = True):
    H = random_hypergraph(rng, n, m, ranks, multi)
    return build_grid(H, [sig_factory(rng) for _ in range(n)])
