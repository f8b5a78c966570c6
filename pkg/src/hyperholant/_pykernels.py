"""Reference (pure Python) implementations of the hot kernels.

The compiled module ``_ckernels`` exposes the same two functions with the
same semantics; ``kernels`` picks one at import time.
"""

from __future__ import annotations


def subset_sum(n: int, edges: list[list[int]], k: int, tables: list[list], required: list[bool],
               lpow: list) -> tuple[object, int]:
    """Sum over k-subsets A of ``edges`` of prod_{touched v} tables[v][deg_A(v)] * lpow[cap - touched].

    ``tables[v]`` has length deg(v) + 1.  Untouched vertices contribute 1,
    so the caller arranges tables[v][0] = 1 for vertices that may stay
    untouched; vertices flagged ``required`` (tables[v][0] = 0) must be
    covered by A.  ``lpow[j]`` pads each leaf to a common denominator; its
    length bounds the number of touched vertices.  Returns (sum, nodes).
    """
    m = len(edges)
    cap = len(lpow) - 1
    deg = [0] * n
    # dead[v][d]: table is zero at every degree >= d
    dead = []
    for t in tables:
        row = [False] * (len(t) + 1)
        row[len(t)] = True
        for d in range(len(t) - 1, -1, -1):
            row[d] = row[d + 1] and not t[d]
        dead.append(row)
    n_req = sum(1 for r in required if r)
    last_edge = [-1] * n
    for i, e in enumerate(edges):
        for v in e:
            last_edge[v] = i
    for v in range(n):
        if required[v] and last_edge[v] < 0:
            return 0, 0
    closes: list[list[int]] = [[] for _ in range(m)]
    for v in range(n):
        if required[v]:
            closes[last_edge[v]].append(v)
    touched: list[int] = []
    total = 0
    nodes = 0
    covered = 0

    def rec(i: int, left: int) -> None:
        nonlocal total, nodes, covered
        nodes += 1
        if left == 0:
            if covered != n_req:
                return
            prod = lpow[cap - len(touched)]
            for v in touched:
                prod = prod * tables[v][deg[v]]
                if not prod:
                    return
            total = total + prod
            return
        if m - i < left:
            return
        e = edges[i]
        # take edge i
        ok = True
        j = 0
        for v in e:
            d = deg[v] + 1
            deg[v] = d
            j += 1
            if d == 1:
                touched.append(v)
                if required[v]:
                    covered += 1
            if dead[v][d]:
                ok = False
                break
        if ok and len(touched) <= cap:
            rec(i + 1, left - 1)
        for v in e[:j]:
            d = deg[v] - 1
            deg[v] = d
            if d == 0:
                touched.pop()
                if required[v]:
                    covered -= 1
        # skip edge i
        for v in closes[i]:
            if deg[v] == 0:
                return
        rec(i + 1, left)

    rec(0, k)
    return total, nodes


def hom_count(n_src: int, src_edges: list[list[int]], order: list[int], tgt_edges: set, tgt_subsets: set,
              cand: list[int], n_tgt: int, injective: bool) -> int:
    """Count maps h: src -> tgt with every source edge's image set a target edge.

    Vertices are assigned in ``order``.  ``tgt_edges`` and ``tgt_subsets``
    hold bitmasks of target edges and of all their subsets; ``cand[v]`` is
    the bitmask of admissible images of v.  With ``injective`` only
    injective maps are counted.
    """
    pos = [0] * n_src
    for p, v in enumerate(order):
        pos[v] = p
    # for each position: edges touching that vertex, flagged complete when it is their last vertex
    checks: list[list[tuple[list[int], bool]]] = [[] for _ in range(n_src)]
    for e in src_edges:
        if not e:
            continue
        ps = sorted(pos[v] for v in e)
        last = ps[-1]
        for p in set(ps):
            checks[p].append((e, p == last))
    img = [-1] * n_src
    count = 0

    def rec(p: int, used: int) -> None:
        nonlocal count
        if p == n_src:
            count += 1
            return
        v = order[p]
        options = cand[v]
        if injective:
            options &= ~used
        while options:
            low = options & -options
            options ^= low
            img[v] = low.bit_length() - 1
            good = True
            for e, complete in checks[p]:
                mask = 0
                for u in e:
                    if img[u] >= 0:
                        mask |= 1 << img[u]
                if complete:
                    if mask not in tgt_edges:
                        good = False
                        break
                elif mask not in tgt_subsets:
                    good = False
                    break
            if good:
                rec(p + 1, used | low)
            img[v] = -1

    rec(0, 0)
    return count
