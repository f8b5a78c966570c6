"""Instance transformations with the exact Holant identities they satisfy.

Each gadget returns a certificate recording source, target and the scale
relating the two Holant values; ``verify`` re-checks it by brute force.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .evaluate import holant_bruteforce
from .fingerprint import EnumerationCapError
from .grid import SignatureGrid, build_grid
from .hombasis import enumerate_uniform_hypergraphs
from .hypergraph import Hypergraph
from .scalar import ONE, ZERO, ExactScalar, S
from .signature import Signature, hw_ge1, indicator, mod_p


class ReductionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass
class GadgetCertificate:
    """Holant(target, k_target) = scale * Holant(source, k) + offset."""

    kind: str
    source: SignatureGrid
    k: int
    target: SignatureGrid
    k_target: int
    scale: ExactScalar
    offset: ExactScalar = ZERO
    info: dict = field(default_factory=dict)

    def verify(self, budget: int | None = None) -> tuple[bool, ExactScalar, ExactScalar]:
        lhs = holant_bruteforce(self.target, self.k_target, budget).value
        rhs = self.scale * holant_bruteforce(self.source, self.k, budget).value + self.offset
        return lhs == rhs, lhs, rhs

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "k": self.k,
            "k'": self.k_target,
            "scale": self.scale.to_json(),
            "offset": self.offset.to_json(),
            "info": dict(self.info),
        }


@dataclass
class MatchingCertificate:
    """Holant(grid, k) = scale * #PerfMatch(graph)."""

    kind: str
    graph: Hypergraph
    grid: SignatureGrid
    k: int
    scale: ExactScalar
    info: dict = field(default_factory=dict)

    def verify(self, budget: int | None = None) -> tuple[bool, ExactScalar, ExactScalar]:
        lhs = holant_bruteforce(self.grid, self.k, budget).value
        rhs = self.scale * count_perfect_matchings(self.graph)
        return lhs == rhs, lhs, rhs

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "source": self.graph.to_json(),
            "target": self.grid.to_json(),
            "k'": self.k,
            "scale": self.scale.to_json(),
            "info": dict(self.info),
        }


def _single_signature(grid: SignatureGrid, s: Signature | None) -> Signature:
    if s is not None:
        return s
    sigs = grid.signatures()
    if len(sigs) != 1:
        raise ReductionError("gadget needs a single-signature grid (or an explicit signature)")
    return sigs[0]


# ---------------------------------------------------------------------------
# VCSP <-> Holant
# ---------------------------------------------------------------------------


@dataclass
class VcspInstance:
    """Weighted CSP over Boolean variables 0..n-1 with symmetric constraint functions."""

    n_variables: int
    constraints: list[tuple[Signature, tuple[int, ...]]]
    k: int = 0

    def __post_init__(self):
        for f, scope in self.constraints:
            if not isinstance(f, Signature):
                raise ReductionError("constraint functions must be signatures")
            for x in scope:
                if not 0 <= x < self.n_variables:
                    raise ReductionError(f"scope {scope} mentions unknown variable {x}")

    def occurrences(self) -> list[int]:
        occ = [0] * self.n_variables
        for _, scope in self.constraints:
            for x in scope:
                occ[x] += 1
        return occ

    def to_json(self) -> dict:
        sigs: list[Signature] = []
        index: dict[Signature, int] = {}
        cons = []
        for f, scope in self.constraints:
            if f not in index:
                index[f] = len(sigs)
                sigs.append(f)
            cons.append({"function": index[f], "scope": list(scope)})
        return {"n_variables": self.n_variables, "signatures": [s.to_json() for s in sigs], "constraints": cons}

    @classmethod
    def from_json(cls, doc: dict, k: int = 0) -> "VcspInstance":
        if not isinstance(doc, dict):
            raise ReductionError("vcsp payload must be an object")
        try:
            sigs = [Signature.from_json(sd) for sd in doc["signatures"]]
            cons = []
            for i, c in enumerate(doc["constraints"]):
                f = c["function"]
                if not isinstance(f, int) or not 0 <= f < len(sigs):
                    raise ReductionError(f"vcsp.constraints[{i}].function: no signature {f!r}")
                cons.append((sigs[f], tuple(c["scope"])))
            return cls(int(doc["n_variables"]), cons, k)
        except KeyError as exc:
            raise ReductionError(f"vcsp payload is missing {exc}") from exc


def vcsp_value(I: VcspInstance, k: int | None = None) -> ExactScalar:
    """Z(I): sum over assignments with exactly k ones of the product of constraint values."""
    k = I.k if k is None else k
    total = ZERO
    for ones in combinations(range(I.n_variables), k):
        chosen = set(ones)
        term = ONE
        for f, scope in I.constraints:
            term = term * f(sum(1 for x in scope if x in chosen))
            if term.is_zero():
                break
        total = total + term
    return total


def vcsp_to_holant(I: VcspInstance) -> tuple[SignatureGrid, int]:
    """Constraints become vertices, each variable x the hyperedge of constraints that read x."""
    occ = I.occurrences()
    free = [x for x, c in enumerate(occ) if c == 0]
    if free:
        raise ReductionError(
            f"variables {free} occur in no constraint; eliminate them first "
            "(they contribute a binomial factor C(#free, j) outside the grid)")
    edges: list[list[int]] = [[] for _ in range(I.n_variables)]
    for ci, (_, scope) in enumerate(I.constraints):
        if len(set(scope)) != len(scope):
            raise ReductionError(f"constraint {ci} repeats a variable in its scope {scope}; hyperedges are sets")
        for x in scope:
            edges[x].append(ci)
    H = Hypergraph(len(I.constraints), edges)
    return build_grid(H, [f for f, _ in I.constraints]), I.k


def holant_to_vcsp(grid: SignatureGrid, k: int) -> VcspInstance:
    """Each hyperedge copy becomes a variable, each vertex a constraint on its incident edges."""
    edges = grid.graph.edge_list()
    scopes: list[list[int]] = [[] for _ in range(grid.n)]
    for x, e in enumerate(edges):
        for v in e:
            scopes[v].append(x)
    return VcspInstance(len(edges), [(grid.assignment[v], tuple(scopes[v])) for v in range(grid.n)], k)


# ---------------------------------------------------------------------------
# arity lifting gadgets
# ---------------------------------------------------------------------------


def pad_gadget(grid: SignatureGrid, d: int, k: int, s: Signature | None = None) -> GadgetCertificate:
    """Add d - 2 fresh vertices (signature s) to every edge of a graph.

    Chosen edges give the fresh vertices degree 1, unchosen ones degree 0,
    so the scale is s(1)^(k(d-2)) * s(0)^((|E|-k)(d-2)), which is
    s(1)^(k(d-2)) for normalized s.
    """
    if not grid.graph.is_uniform(2):
        raise ReductionError("pad_gadget expects a graph (2-uniform grid)")
    if d < 2:
        raise ReductionError("target arity must be at least 2")
    s = _single_signature(grid, s)
    if s(1).is_zero():
        raise ReductionError("s(1) = 0: padding would kill every chosen edge; use bridge_lift")
    H = grid.graph
    pad = d - 2
    n = H.n
    edges = []
    for e in H.edge_list():
        edges.append(list(e) + list(range(n, n + pad)))
        n += pad
    G = Hypergraph(n, edges)
    target = build_grid(G, list(grid.assignment) + [s] * (n - H.n))
    m = H.num_edges
    scale = s(1) ** (k * pad) * (s(0) ** ((m - k) * pad) if m >= k else ONE)
    return GadgetCertificate("pad", grid, k, target, k, scale, info={"d": d, "fresh_per_edge": pad})


@dataclass
class BridgeGadget:
    graph: Hypergraph
    x: int
    y: int

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(), "x": self.x, "y": self.y}


def is_bridge(B: Hypergraph, d: int) -> tuple[int, int] | None:
    """(x, y) when B qualifies: d-uniform, connected, exactly x, y of degree 1 and adjacent, others degree 2."""
    if not B.is_uniform(d) or not B.edges or not B.is_connected():
        return None
    degs = B.degrees()
    ones = [v for v in range(B.n) if degs[v] == 1]
    if len(ones) != 2 or any(dg not in (1, 2) for dg in degs):
        return None
    x, y = ones
    if not any(x in e and y in e for e in B.edges):
        return None
    return x, y


def find_bridge_gadget(d: int, search_cap: int = 6) -> BridgeGadget:
    """Smallest (by edge count) d-uniform bridge, by exhaustive search over canonical hypergraphs."""
    if d < 2:
        raise ReductionError("bridge gadgets need d >= 2")
    for m in range(1, search_cap + 1):
        for B in enumerate_uniform_hypergraphs(m, d, k_cap=search_cap, r_cap=max(d, 4)):
            xy = is_bridge(B, d)
            if xy is not None:
                return BridgeGadget(B, *xy)
    raise EnumerationCapError(f"no bridge gadget with at most {search_cap} edges for d={d}; raise search_cap")


def bridge_lift(grid: SignatureGrid, d: int, k: int, gadget: BridgeGadget | None = None,
                s: Signature | None = None) -> GadgetCertificate:
    """Replace each edge {u, v} by a copy of B with x -> v and y -> u; k' = k |E(B)|.

    Requires s(1) = 0 and s(2) != 0.  Scale s(2)^(k(|V(B)|-2)) times
    s(0)^((|E|-k)(|V(B)|-2)) for the untouched copies (1 when normalized).
    """
    if not grid.graph.is_uniform(2):
        raise ReductionError("bridge_lift expects a graph (2-uniform grid)")
    s = _single_signature(grid, s)
    if not s(1).is_zero():
        raise ReductionError("s(1) != 0: use pad_gadget")
    if s(2).is_zero():
        raise ReductionError("s(1) = s(2) = 0: no bridge gadget applies (b >= 3)")
    if gadget is None:
        gadget = find_bridge_gadget(d)
    B, x, y = gadget.graph, gadget.x, gadget.y
    if is_bridge(B, d) is None:
        raise ReductionError("supplied gadget is not a bridge")
    H = grid.graph
    inner = [w for w in range(B.n) if w not in (x, y)]
    n = H.n
    edges = []
    for e in H.edge_list():
        u, v = e
        where = {x: v, y: u}
        for w in inner:
            where[w] = n
            n += 1
        edges.extend([[where[w] for w in f] for f in B.edges])
    G = Hypergraph(n, edges)
    target = build_grid(G, list(grid.assignment) + [s] * (n - H.n))
    m = H.num_edges
    fresh = B.n - 2
    scale = s(2) ** (k * fresh) * (s(0) ** ((m - k) * fresh) if m >= k else ONE)
    return GadgetCertificate("bridge", grid, k, target, k * B.num_edges, scale,
                             info={"d": d, "bridge": gadget.to_json()})


# ---------------------------------------------------------------------------
# regular connected hypergraphs
# ---------------------------------------------------------------------------


def gen_regular_connected(d: int, b: int, i: int = 2) -> Hypergraph:
    """A connected d-uniform b-regular hypergraph, growing with i.

    b = 1 gives the single edge.  Otherwise take i*d copies of the i = 2
    hypergraph for b - 1, chain consecutive copies by an edge with one
    vertex from copy j and d - 1 from copy j + 1, and group the remaining
    vertices into edges of size d.  Leftovers are taken in order of
    (position in copy, copy), so every such edge meets d distinct copies.
    """
    if d < 2 or b < 1:
        raise ReductionError("need d >= 2 and b >= 1")
    if b == 1:
        return Hypergraph(d, [tuple(range(d))])
    if i < 2:
        raise ReductionError("the inductive step needs i >= 2")
    F0 = gen_regular_connected(d, b - 1, 2)
    c = i * d
    size = F0.n
    edges = []
    for j in range(c):
        edges.extend([[j * size + v for v in e] for e in F0.edges])
    used = set()
    for j in range(c - 1):
        # x = 1 vertex from copy j, y = d - 1 vertices from copy j + 1
        left = [j * size + (d - 1)]
        right = [(j + 1) * size + p for p in range(d - 1)]
        edges.append(left + right)
        used.update(left + right)
    rest = sorted((v for v in range(c * size) if v not in used), key=lambda v: (v % size, v // size))
    for t in range(0, len(rest), d):
        edges.append(rest[t:t + d])
    return Hypergraph(c * size, edges)


# ---------------------------------------------------------------------------
# perfect matchings
# ---------------------------------------------------------------------------


def count_perfect_matchings(G: Hypergraph, budget: int = 10**7) -> int:
    """#PerfMatch(G): partitions of V(G) into hyperedges (copies are distinct)."""
    if G.n == 0:
        return 1
    if any(len(e) == 0 for e in G.edges):
        raise ReductionError("empty hyperedges have no place in a perfect matching")
    by_min: list[list[tuple[int, int]]] = [[] for _ in range(G.n)]
    for e, m in zip(G.edges, G.mult):
        mask = 0
        for v in e:
            mask |= 1 << v
        by_min[min(e)].append((mask, m))
    full = (1 << G.n) - 1
    nodes = 0

    def rec(covered: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise EnumerationCapError(f"perfect matching search exceeded {budget} nodes")
        if covered == full:
            return 1
        low = (~covered & (covered + 1)).bit_length() - 1
        total = 0
        for mask, m in by_min[low]:
            if not mask & covered:
                total += m * rec(covered | mask)
        return total

    return rec(0)


def _first_positive_support(s: Signature) -> int:
    """Smallest b >= 1 with s(b) != 0."""
    for b in range(1, s.max_degree + 2):
        if not s(b).is_zero():
            return b
    raise ReductionError("signature vanishes on every positive degree")


def _trivial_matching_certificate(G: Hypergraph, s: Signature, kind: str) -> MatchingCertificate:
    grid = build_grid(G, s)
    return MatchingCertificate(kind, G, grid, 0, ONE, info={"branch": "trivial", "reason": "size not divisible"})


def pm_gadget_graph(G: Hypergraph, s: Signature) -> MatchingCertificate:
    """Perfect matchings of a graph from a Holant value, for any s with s(0) = 0."""
    if not G.is_uniform(2):
        raise ReductionError("pm_gadget_graph expects a graph")
    if not s(0).is_zero():
        raise ReductionError("needs a signature with s(0) = 0")
    n = G.n
    if n % 2:
        return _trivial_matching_certificate(G, s, "pm_graph")
    b = _first_positive_support(s)
    if b == 1:
        return MatchingCertificate("pm_graph", G, build_grid(G, s), n // 2, s(1) ** n, info={"branch": "direct"})
    size = b - 1
    nv = n + n * size
    clique = [[n + v * size + t for t in range(size)] for v in range(n)]
    edges = [list(e) for e in G.edge_list()]
    new = []
    for v in range(n):
        new.extend([[v, w] for w in clique[v]])
        new.extend([[a, c] for a, c in combinations(clique[v], 2)])
    for v in range(0, n, 2):
        new.extend([[clique[v][t], clique[v + 1][t]] for t in range(size)])
    H = Hypergraph(nv, edges + new)
    k = n // 2 + len(new)
    return MatchingCertificate("pm_graph", G, build_grid(H, s), k, s(b) ** nv,
                               info={"branch": "gadget", "b": b, "added_edges": len(new)})


def _matching_gadget_hyper(G: Hypergraph, s: Signature, d: int, b: int, F: Hypergraph) -> tuple[Hypergraph, int]:
    n = G.n
    size = F.n
    attach = (d - 1) * (b - 1)
    if size < attach:
        raise ReductionError(f"gadget has {size} vertices, needs at least {attach}")
    base = [n + v * size for v in range(n)]
    new = []
    for v in range(n):
        new.extend([[base[v] + w for w in e] for e in F.edges])
        for t in range(b - 1):
            new.append([v] + [base[v] + t * (d - 1) + q for q in range(d - 1)])
    # raise the remaining gadget vertices to degree b, one group of d original vertices at a time
    for g in range(0, n, d):
        leftovers = sorted(((p, v) for v in range(g, g + d) for p in range(attach, size)))
        flat = [base[v] + p for p, v in leftovers]
        for t in range(0, len(flat), d):
            new.append(flat[t:t + d])
    H = Hypergraph(n + n * size, [list(e) for e in G.edge_list()] + new)
    return H, len(new)


def pm_gadget_hyper(G: Hypergraph, s: Signature, mode: str = "zero-sig", max_i: int = 64) -> MatchingCertificate:
    """Perfect matchings of a d-uniform hypergraph from a Holant value.

    ``zero-sig``: s(0) = 0.  Direct when s(1) != 0, otherwise each vertex gets
    a copy of a connected d-uniform (b-1)-regular gadget.
    ``size-forced``: s(0) != 0, s(1) = s(2) = 0, b >= 3; the gadget has more
    edges than G so that k forces every gadget edge to be chosen.
    """
    if not G.edges:
        raise ReductionError("hypergraph without edges")
    if not G.is_uniform():
        raise ReductionError("pm_gadget_hyper expects a uniform hypergraph")
    d = G.rank
    n = G.n
    if mode == "zero-sig":
        if not s(0).is_zero():
            raise ReductionError("zero-sig mode needs s(0) = 0")
    elif mode == "size-forced":
        if s(0).is_zero() or not s(1).is_zero() or not s(2).is_zero():
            raise ReductionError("size-forced mode needs s(0) != 0 and s(1) = s(2) = 0")
    else:
        raise ReductionError(f"unknown mode {mode!r}")
    if n % d:
        return _trivial_matching_certificate(G, s, f"pm_hyper/{mode}") if mode == "zero-sig" else \
            MatchingCertificate(f"pm_hyper/{mode}", G, build_grid(G, s), len(G.edge_list()) + 1, ONE,
                                info={"branch": "trivial", "reason": "size not divisible"})
    b = _first_positive_support(s)
    if mode == "size-forced" and b < 3:
        raise ReductionError("size-forced mode needs b >= 3")
    if mode == "zero-sig" and b == 1:
        return MatchingCertificate(f"pm_hyper/{mode}", G, build_grid(G, s), n // d, s(1) ** n,
                                   info={"branch": "direct"})
    attach = (d - 1) * (b - 1)
    F = None
    for i in range(2, max_i + 1):
        cand = gen_regular_connected(d, b - 1, i)
        if cand.n < attach:
            continue
        if mode == "size-forced" and cand.num_edges <= G.num_edges:
            continue
        F = cand
        break
    if F is None:
        raise ReductionError("could not generate a large enough gadget")
    H, added = _matching_gadget_hyper(G, s, d, b, F)
    k = n // d + added
    return MatchingCertificate(f"pm_hyper/{mode}", G, build_grid(H, s), k, s(b) ** H.n,
                               info={"branch": "gadget", "b": b, "gadget_vertices": F.n, "added_edges": added})


# ---------------------------------------------------------------------------
# hitting sets, codewords, factors
# ---------------------------------------------------------------------------


def dedupe_twins(G: Hypergraph) -> list[int]:
    """Vertices kept after deleting all but the lowest of each set with equal incidence."""
    seen = set()
    keep = []
    inc = G.incidence()
    for v in range(G.n):
        if inc[v] not in seen:
            seen.add(inc[v])
            keep.append(v)
    return keep


def hitting_set_holant(G: Hypergraph, k: int) -> tuple[SignatureGrid, int, list[int]]:
    """Dual grid whose Holant at k counts the k-hitting sets of G after twin removal.

    Vertices of the grid are the hyperedges of G (copies included), each with
    hw>=1; every kept vertex v of G becomes the edge of the hyperedges containing v.
    """
    keep = dedupe_twins(G)
    E = G.edge_list()
    edges = [[i for i, e in enumerate(E) if v in e] for v in keep]
    H = Hypergraph(len(E), edges)
    return build_grid(H, hw_ge1()), k, keep


def count_hitting_sets(G: Hypergraph, k: int, vertices: Sequence[int] | None = None) -> int:
    """k-subsets of ``vertices`` (default all) meeting every hyperedge."""
    pool = list(range(G.n)) if vertices is None else list(vertices)
    count = 0
    for X in combinations(pool, k):
        chosen = set(X)
        if all(chosen.intersection(e) for e in G.edges):
            count += 1
    return count


def build_codeword_instance(A: Sequence[Sequence[int]], p: int, k: int) -> tuple[SignatureGrid, int]:
    """Rows become vertices with s_p, columns the hyperedges of rows with a 1.

    Entries must be 0 or 1 (mod p): symmetric signatures cannot weight a
    variable, so other coefficients have no grid counterpart here.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ReductionError(f"{p} is not prime")
    rows = [list(r) for r in A]
    if not rows:
        raise ReductionError("matrix has no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ReductionError("ragged matrix")
    edges = []
    for j in range(width):
        col = []
        for i, r in enumerate(rows):
            x = r[j] % p
            if x not in (0, 1):
                raise ReductionError(f"entry ({i},{j}) = {r[j]}: only 0/1 coefficients are supported")
            if x:
                col.append(i)
        edges.append(col)
    H = Hypergraph(len(rows), edges)
    return build_grid(H, mod_p(p)), k


def count_codewords(A: Sequence[Sequence[int]], p: int, k: int) -> int:
    """0/1 vectors with exactly k ones in the kernel of A over Z/p."""
    width = len(A[0]) if A else 0
    count = 0
    for ones in combinations(range(width), k):
        if all(sum(r[j] for j in ones) % p == 0 for r in A):
            count += 1
    return count


def build_factor_instance(H: Hypergraph, degrees: Sequence[int], k: int,
                          cofinite_from: int | None = None) -> tuple[SignatureGrid, int]:
    """Indicator of the degree set at every vertex of H (so 0 must be allowed for untouched vertices)."""
    return build_grid(H, indicator(degrees, cofinite_from)), k


def count_factors(H: Hypergraph, degrees: Sequence[int], k: int) -> int:
    allowed = set(degrees)
    count = 0
    E = H.edge_list()
    for A in combinations(range(len(E)), k):
        deg = [0] * H.n
        for i in A:
            for v in E[i]:
                deg[v] += 1
        if all(x in allowed for x in deg):
            count += 1
    return count
