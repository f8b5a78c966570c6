"""Compare the compiled and pure-Python kernels on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload is run once per backend; results must agree exactly.
"""

from __future__ import annotations

import argparse
import random
import time

from hyperholant import kernels
from hyperholant.evaluate import holant_bruteforce
from hyperholant.grid import build_grid
from hyperholant.hombasis import count_emb_direct, count_hom
from hyperholant.hypergraph import Hypergraph, complete_graph, complete_uniform, cycle_graph, petersen_graph
from hyperholant.signature import Signature, hw_le1, mod_p


def _random_grid(seed: int):
    rng = random.Random(seed)
    n = 9
    edges = [rng.sample(range(n), rng.randint(2, 3)) for _ in range(22)]
    sigs = [Signature([rng.randint(-3, 3) or 1 for _ in range(4)]) for _ in range(n)]
    return build_grid(Hypergraph(n, edges), sigs)


def workloads():
    pet = build_grid(petersen_graph(), hw_le1())
    k33 = build_grid(complete_uniform(7, 3), mod_p(2))
    rnd = _random_grid(7)
    return [
        ("subset_sum  Petersen hw<=1 k=5", lambda: holant_bruteforce(pet, 5).value),
        ("subset_sum  K(7,3) s_2 k=6", lambda: holant_bruteforce(k33, 6).value),
        ("subset_sum  random rank-3 k=8", lambda: holant_bruteforce(rnd, 8).value),
        ("hom_count   Hom(C7 -> K6)", lambda: count_hom(cycle_graph(7), complete_graph(6))),
        ("hom_count   Emb(C5 -> Petersen)", lambda: count_emb_direct(cycle_graph(5), petersen_graph())),
        ("hom_count   Hom(K(5,3) -> K(7,3))", lambda: count_hom(complete_uniform(5, 3), complete_uniform(7, 3))),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    names = sorted(kernels.backends())
    print(f"backends: {', '.join(names)}")
    print(f"{'workload':36s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in workloads():
        times, values = {}, {}
        for name in names:
            with kernels.use_backend(name):
                best = float("inf")
                for _ in range(args.repeat):
                    t0 = time.perf_counter()
                    values[name] = fn()
                    best = min(best, time.perf_counter() - t0)
                times[name] = best
        if len(set(map(str, values.values()))) != 1:
            raise SystemExit(f"{label}: backends disagree: {values}")
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{label:36s}" + "".join(f"{times[n]:11.4f}s" for n in names) + f"   x{speed:.1f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
