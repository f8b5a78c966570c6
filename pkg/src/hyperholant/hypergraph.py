"""Hypergraphs with multi-hyperedges and optional vertex colourings.

Vertices are ``0..n-1``.  Each distinct hyperedge is a sorted tuple of
vertices and carries a multiplicity.  Colours, when present, are arbitrary
hashable values compared through ``repr`` for canonical ordering.
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations
from typing import Hashable, Iterable, Sequence


class HypergraphError(ValueError):
    pass


class CanonicalFormLimit(RuntimeError):
    """Canonical labelling search exceeded its configured budget."""


class Hypergraph:
    __slots__ = ("n", "edges", "mult", "colours", "_incidence", "_canon")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = (), mult: Sequence[int] | None = None,
                 colours: Sequence[Hashable] | None = None):
        if n < 0:
            raise HypergraphError("vertex count must be non-negative")
        edge_list = [tuple(e) for e in edges]
        if mult is None:
            mult = [1] * len(edge_list)
        elif len(mult) != len(edge_list):
            raise HypergraphError("mult must have one count per edge")
        counts: dict[tuple[int, ...], int] = {}
        for e, m in zip(edge_list, mult):
            if len(set(e)) != len(e):
                raise HypergraphError(f"hyperedge {list(e)} repeats a vertex; hyperedges are sets")
            for v in e:
                if not isinstance(v, int) or not 0 <= v < n:
                    raise HypergraphError(f"hyperedge {list(e)} mentions unknown vertex {v!r}")
            if int(m) < 1:
                raise HypergraphError("edge multiplicities must be positive")
            key = tuple(sorted(e))
            counts[key] = counts.get(key, 0) + int(m)
        if colours is not None:
            colours = tuple(colours)
            if len(colours) != n:
                raise HypergraphError("colouring must assign one colour per vertex")
        keys = sorted(counts, key=lambda e: (len(e), e))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(keys))
        object.__setattr__(self, "mult", tuple(counts[e] for e in keys))
        object.__setattr__(self, "colours", colours)
        object.__setattr__(self, "_incidence", None)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("Hypergraph is immutable")

    # basic structure ---------------------------------------------------
    @property
    def num_edges(self) -> int:
        """Number of hyperedges counted with multiplicity."""
        return sum(self.mult)

    def edge_list(self) -> list[tuple[int, ...]]:
        """All hyperedges with copies expanded."""
        out = []
        for e, m in zip(self.edges, self.mult):
            out.extend([e] * m)
        return out

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    def is_uniform(self, d: int | None = None) -> bool:
        sizes = {len(e) for e in self.edges}
        if d is None:
            return len(sizes) <= 1
        return sizes <= {d}

    def is_simple(self) -> bool:
        return all(m == 1 for m in self.mult)

    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For every vertex, the indices (into ``edges``) of incident distinct edges."""
        if self._incidence is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for i, e in enumerate(self.edges):
                for v in e:
                    inc[v].append(i)
            object.__setattr__(self, "_incidence", tuple(tuple(x) for x in inc))
        return self._incidence

    def degree(self, v: int) -> int:
        return sum(self.mult[i] for i in self.incidence()[v])

    def degrees(self) -> list[int]:
        return [self.degree(v) for v in range(self.n)]

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.incidence()[v]]

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            for v in e[1:]:
                a, b = find(e[0]), find(v)
                if a != b:
                    parent[a] = b
        return len({find(v) for v in range(self.n)}) == 1

    def is_regular(self, b: int | None = None) -> bool:
        degs = set(self.degrees())
        if b is None:
            return len(degs) <= 1
        return degs <= {b}

    def colour(self, v: int):
        return None if self.colours is None else self.colours[v]

    # derived hypergraphs -----------------------------------------------
    def without_isolated(self) -> "Hypergraph":
        keep = [v for v in range(self.n) if self.incidence()[v]]
        return self.induced_on_vertices(keep)

    def induced_on_vertices(self, keep: Sequence[int]) -> "Hypergraph":
        """Relabel to ``keep`` (in the given order); edges must lie inside ``keep``."""
        index = {v: i for i, v in enumerate(keep)}
        edges = []
        mult = []
        for e, m in zip(self.edges, self.mult):
            if all(v in index for v in e):
                edges.append([index[v] for v in e])
                mult.append(m)
        cols = None if self.colours is None else [self.colours[v] for v in keep]
        return Hypergraph(len(keep), edges, mult, cols)

    def edge_subhypergraph(self, edge_indices: Iterable[int]) -> "Hypergraph":
        """The sub-hypergraph induced by a set of distinct edges (no isolated vertices)."""
        chosen = [self.edges[i] for i in edge_indices]
        verts = sorted({v for e in chosen for v in e})
        index = {v: i for i, v in enumerate(verts)}
        cols = None if self.colours is None else [self.colours[v] for v in verts]
        return Hypergraph(len(verts), [[index[v] for v in e] for e in chosen], None, cols)

    def with_colours(self, colours: Sequence[Hashable] | None) -> "Hypergraph":
        return Hypergraph(self.n, self.edges, self.mult, colours)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Vertex v becomes perm[v]."""
        edges = [[perm[v] for v in e] for e in self.edges]
        cols = None
        if self.colours is not None:
            cols = [None] * self.n
            for v in range(self.n):
                cols[perm[v]] = self.colours[v]
        return Hypergraph(self.n, edges, self.mult, cols)

    def disjoint_union(self, other: "Hypergraph") -> "Hypergraph":
        off = self.n
        edges = list(self.edges) + [[v + off for v in e] for e in other.edges]
        mult = list(self.mult) + list(other.mult)
        cols = None
        if self.colours is not None or other.colours is not None:
            cols = list(self.colours or [None] * self.n) + list(other.colours or [None] * other.n)
        return Hypergraph(self.n + other.n, edges, mult, cols)

    # equality / io -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.edges, self.mult, self.colours) == (other.n, other.edges, other.mult, other.colours)

    def __hash__(self):
        return hash((self.n, self.edges, self.mult, self.colours))

    def __repr__(self):
        body = ", ".join(
            ("{" + ",".join(map(str, e)) + "}") + (f"x{m}" if m > 1 else "") for e, m in zip(self.edges, self.mult)
        )
        col = "" if self.colours is None else f", colours={list(self.colours)}"
        return f"Hypergraph(n={self.n}, [{body}]{col})"

    def to_json(self) -> dict:
        doc = {"n": self.n, "edges": [list(e) for e in self.edges], "mult": list(self.mult)}
        if self.colours is not None:
            doc["colours"] = list(self.colours)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Hypergraph":
        if not isinstance(doc, dict):
            raise HypergraphError("hypergraph document must be an object")
        if "n" not in doc or not isinstance(doc["n"], int) or isinstance(doc["n"], bool):
            raise HypergraphError("hypergraph.n: expected an integer vertex count")
        edges = doc.get("edges", [])
        if not isinstance(edges, list) or any(not isinstance(e, list) for e in edges):
            raise HypergraphError("hypergraph.edges: expected a list of vertex lists")
        mult = doc.get("mult")
        if mult is not None and (not isinstance(mult, list) or any(not isinstance(m, int) for m in mult)):
            raise HypergraphError("hypergraph.mult: expected a list of integer counts")
        return cls(doc["n"], edges, mult, doc.get("colours"))

    # canonical forms -----------------------------------------------------
    def canonical_form(self, max_leaves: int = 200_000) -> tuple:
        if self._canon is None:
            object.__setattr__(self, "_canon", canonical_form(self, max_leaves=max_leaves))
        return self._canon


# ---------------------------------------------------------------------------
# canonical labelling
# ---------------------------------------------------------------------------


def _colour_key(c) -> str:
    return "" if c is None else repr(c)


def _refine(labels: list, adj: list[list[tuple[int, int]]]) -> list[int]:
    """Colour refinement on a weighted graph; returns canonical integer cells."""
    cur = _rank(labels)
    while True:
        sig = [(cur[x], tuple(sorted((cur[y], w) for y, w in adj[x]))) for x in range(len(adj))]
        nxt = _rank(sig)
        if len(set(nxt)) == len(set(cur)):
            return nxt
        cur = nxt


def _rank(labels: list) -> list[int]:
    order = {lab: i for i, lab in enumerate(sorted(set(labels)))}
    return [order[lab] for lab in labels]


def canonical_form(H: Hypergraph, max_leaves: int = 200_000) -> tuple:
    """Isomorphism-invariant encoding; equal iff colour-preserving isomorphic.

    Interchangeable vertices (same incident edges, same colour) are merged
    into weighted classes first, so degree-1 "leaf" vertices of an edge do not
    cause factorial branching.  The remaining structure is labelled by colour
    refinement on the vertex-class/edge incidence graph with individualisation,
    taking the lexicographically least leaf encoding.
    """
    inc = H.incidence()
    # twin classes
    twins: dict[tuple, list[int]] = {}
    for v in range(H.n):
        twins.setdefault((inc[v], _colour_key(H.colour(v))), []).append(v)
    classes = list(twins.items())
    nc = len(classes)
    ne = len(H.edges)
    cls_of = {}
    for ci, (_, members) in enumerate(classes):
        for v in members:
            cls_of[v] = ci
    # node ids: classes 0..nc-1, edges nc..nc+ne-1
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nc + ne)]
    for ei, e in enumerate(H.edges):
        cnt = Counter(cls_of[v] for v in e)
        for ci, c in cnt.items():
            adj[nc + ei].append((ci, c))
            adj[ci].append((nc + ei, c))
    base = [("v", key[1], len(members)) for key, members in classes] + [("e", len(e), m) for e, m in
                                                                         zip(H.edges, H.mult)]
    leaves = [0]
    best: list = [None, None]  # encoding, leaf labelling
    first: list = [None, None]
    autos: list[list[int]] = []
    edge_of = {frozenset(ci for ci, _ in adj[nc + ei]): nc + ei for ei in range(ne)}

    def encode(cells: list[int]) -> tuple:
        order = sorted(range(nc), key=lambda ci: cells[ci])
        pos = {ci: i for i, ci in enumerate(order)}
        verts = tuple((base[ci][1], base[ci][2]) for ci in order)
        edges = tuple(sorted(
            (m, tuple(sorted((pos[ci], c) for ci, c in adj[nc + ei])))
            for ei, m in enumerate(H.mult)
        ))
        return (H.n, verts, edges)

    def automorphism(l1: list[int], l2: list[int]) -> list[int]:
        # node x of leaf 1 and node g[x] of leaf 2 share a position
        inv2 = {p: ci for ci, p in enumerate(l2[:nc])}
        g = [inv2[l1[ci]] for ci in range(nc)]
        for ei in range(ne):
            g.append(edge_of[frozenset(g[ci] for ci, _ in adj[nc + ei])])
        return g

    def leaf(cells: list[int]) -> None:
        leaves[0] += 1
        if leaves[0] > max_leaves:
            raise CanonicalFormLimit(f"canonical form search exceeded {max_leaves} leaves (n={H.n})")
        enc = encode(cells)
        if first[0] is None:
            first[0], first[1] = enc, cells
        elif enc == first[0]:
            autos.append(automorphism(first[1], cells))
        if best[0] is None or enc < best[0]:
            best[0], best[1] = enc, cells
        elif enc == best[0] and best[1] is not first[1]:
            autos.append(automorphism(best[1], cells))

    def search(labels: list, prefix: list[int]) -> None:
        cells = _refine(labels, adj)
        groups: dict[int, list[int]] = {}
        for x, c in enumerate(cells):
            groups.setdefault(c, []).append(x)
        target = None
        for c in sorted(groups):
            if len(groups[c]) > 1:
                target = groups[c]
                break
        if target is None:
            leaf(cells)
            return
        tried: list[int] = []
        for x in target:
            if tried and _in_orbit(x, tried, prefix, autos):
                continue
            tried.append(x)
            nl = [(c, 0) for c in cells]
            nl[x] = (cells[x], -1)
            search(nl, prefix + [x])

    search(base, [])
    return best[0]


def _in_orbit(x: int, tried: list[int], prefix: list[int], autos: list[list[int]]) -> bool:
    """Is x in the orbit of a tried node under automorphisms fixing the prefix?"""
    gens = [g for g in autos if all(g[p] == p for p in prefix)]
    if not gens:
        return False
    seen = set(tried)
    stack = list(tried)
    while stack:
        y = stack.pop()
        for g in gens:
            z = g[y]
            if z == x:
                return True
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return False


def are_isomorphic(A: Hypergraph, B: Hypergraph) -> bool:
    return A.canonical_form() == B.canonical_form()


def brute_force_isomorphic(A: Hypergraph, B: Hypergraph) -> bool:
    """Permutation search; reference oracle for small hypergraphs."""
    if A.n != B.n or A.num_edges != B.num_edges:
        return False
    target = Counter(dict(zip(B.edges, B.mult)))
    for perm in permutations(range(A.n)):
        if A.colours is not None or B.colours is not None:
            if any(_colour_key(A.colour(v)) != _colour_key(B.colour(perm[v])) for v in range(A.n)):
                continue
        img = Counter()
        for e, m in zip(A.edges, A.mult):
            img[tuple(sorted(perm[v] for v in e))] += m
        if img == target:
            return True
    return False


def from_canonical(code: tuple) -> Hypergraph:
    """Rebuild a representative hypergraph from a canonical encoding."""
    n, verts, edges = code
    vid = []
    colours = []
    next_v = 0
    for colour_key, count in verts:
        vid.append(list(range(next_v, next_v + count)))
        colours.extend([colour_key] * count)
        next_v += count
    isolated = n - next_v
    # edges: each (mult, ((class position, count), ...)); twin classes share all edges
    out_edges, out_mult = [], []
    for m, parts in edges:
        e = []
        for pos, c in parts:
            e.extend(vid[pos][:c])
        out_edges.append(e)
        out_mult.append(m)
    has_colour = any(ck != "" for ck, _ in verts)
    cols = colours + [""] * isolated if has_colour else None
    return Hypergraph(n, out_edges, out_mult, cols)


def canonical_key_string(code: tuple) -> str:
    """Compact stable text form of a canonical encoding (used as JSON keys)."""
    n, verts, edges = code
    vs = ";".join(f"{ck or '-'}*{c}" for ck, c in verts)
    es = ";".join(f"{m}:" + ",".join(f"{p}^{c}" for p, c in parts) for m, parts in edges)
    return f"n={n}|V={vs}|E={es}"


# ---------------------------------------------------------------------------
# small named hypergraphs
# ---------------------------------------------------------------------------


def complete_graph(n: int) -> Hypergraph:
    return Hypergraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Hypergraph:
    return Hypergraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Hypergraph:
    """Path on n vertices (n - 1 edges)."""
    return Hypergraph(n, [(i, i + 1) for i in range(n - 1)])


def single_edge(d: int) -> Hypergraph:
    return Hypergraph(d, [tuple(range(d))])


def petersen_graph() -> Hypergraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Hypergraph(10, outer + spokes + inner)


def complete_uniform(n: int, d: int) -> Hypergraph:
    from itertools import combinations

    return Hypergraph(n, list(combinations(range(n), d)))
