"""Homomorphism counts on hypergraphs and the expansion of Holant values in them.

A homomorphism h: F -> G maps vertices so that, for every hyperedge e of F,
the *set* {h(v) : v in e} is a hyperedge of G (it may be smaller than e).
Embeddings are injective homomorphisms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Callable, Iterable, Sequence

from . import kernels
from .fingerprint import EnumerationCapError, enumerate_set_partitions
from .grid import SignatureGrid
from .hypergraph import Hypergraph, canonical_form, canonical_key_string, _colour_key
from .scalar import ONE, ZERO, ExactScalar
from .signature import Signature, SignatureSet

ENUM_K_CAP = 4
ENUM_R_CAP = 4


class MobiusError(ValueError):
    pass


class InterpolationError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# vertex partitions, Mobius function, quotients
# ---------------------------------------------------------------------------


class VertexPartition:
    """A partition of the vertex set of ``host`` into blocks."""

    __slots__ = ("host", "blocks", "_where")

    def __init__(self, host: Hypergraph, blocks: Iterable[Iterable[int]]):
        bl = tuple(sorted(tuple(sorted(b)) for b in blocks))
        flat = sorted(v for b in bl for v in b)
        if flat != list(range(host.n)) or any(not b for b in bl):
            raise ValueError(f"{bl} is not a partition of the {host.n} vertices")
        self.host = host
        self.blocks = bl
        self._where = {v: i for i, b in enumerate(bl) for v in b}

    @classmethod
    def finest(cls, host: Hypergraph) -> "VertexPartition":
        return cls(host, [[v] for v in range(host.n)])

    @classmethod
    def coarsest(cls, host: Hypergraph) -> "VertexPartition":
        return cls(host, [list(range(host.n))] if host.n else [])

    def block_of(self, v: int) -> int:
        return self._where[v]

    def refines(self, other: "VertexPartition") -> bool:
        return all(len({other.block_of(v) for v in b}) == 1 for b in self.blocks)

    def colour_consistent(self) -> bool:
        if self.host.colours is None:
            return True
        return all(len({_colour_key(self.host.colours[v]) for v in b}) == 1 for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, VertexPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return "VertexPartition(" + "|".join(",".join(map(str, b)) for b in self.blocks) + ")"


def vertex_partitions(H: Hypergraph, colour_consistent: bool = True) -> Iterable[VertexPartition]:
    for sp in enumerate_set_partitions(H.n):
        rho = VertexPartition(H, sp.blocks)
        if not colour_consistent or rho.colour_consistent():
            yield rho


def mobius(sigma: VertexPartition, rho: VertexPartition) -> int:
    """prod over blocks of rho of (-1)^(c-1) (c-1)!, c = number of sigma-blocks inside."""
    if not sigma.refines(rho):
        raise MobiusError(f"{sigma} does not refine {rho}")
    inside = Counter(rho.block_of(b[0]) for b in sigma.blocks)
    out = 1
    for c in inside.values():
        out *= (-1) ** (c - 1) * factorial(c - 1)
    return out


def mobius_bottom(rho: VertexPartition) -> int:
    """mu(rho): the Mobius function from the finest partition."""
    out = 1
    for b in rho.blocks:
        c = len(b)
        out *= (-1) ** (c - 1) * factorial(c - 1)
    return out


def quotient(H: Hypergraph, rho: VertexPartition) -> Hypergraph:
    """Merge each block of rho into one vertex.

    A hyperedge e of H becomes the set of blocks that e meets; equal images
    are merged into one edge.  Blocks inherit the colour of their members.
    """
    if rho.host.n != H.n:
        raise ValueError("partition is over a different vertex set")
    if not rho.colour_consistent():
        raise MobiusError("partition mixes colours")
    edges = {tuple(sorted({rho.block_of(v) for v in e})) for e in H.edges}
    cols = None
    if H.colours is not None:
        cols = [H.colours[b[0]] for b in rho.blocks]
    return Hypergraph(len(rho.blocks), sorted(edges), None, cols)


# ---------------------------------------------------------------------------
# Hom / Emb / Aut / Sub
# ---------------------------------------------------------------------------


def _search_order(H: Hypergraph) -> list[int]:
    """Vertex order that keeps each new vertex attached to already placed ones."""
    if H.n == 0:
        return []
    inc = H.incidence()
    nbrs = [set() for _ in range(H.n)]
    for e in H.edges:
        for v in e:
            nbrs[v].update(e)
    degs = [len(inc[v]) for v in range(H.n)]
    order: list[int] = []
    placed = set()
    while len(order) < H.n:
        best = None
        for v in range(H.n):
            if v in placed:
                continue
            key = (len(nbrs[v] & placed), degs[v], -v)
            if best is None or key > best[0]:
                best = (key, v)
        order.append(best[1])
        placed.add(best[1])
    return order


def _target_tables(G: Hypergraph) -> tuple[set, set]:
    edge_masks = set()
    subset_masks = set()
    for e in G.edges:
        mask = 0
        for v in e:
            mask |= 1 << v
        edge_masks.add(mask)
        # proper non-empty subsets (partial images)
        verts = list(e)
        for size in range(1, len(verts) + 1):
            for sub in combinations(verts, size):
                sm = 0
                for v in sub:
                    sm |= 1 << v
                subset_masks.add(sm)
    return edge_masks, subset_masks


def _candidates(H: Hypergraph, G: Hypergraph) -> list[int]:
    full = (1 << G.n) - 1
    if H.colours is None or G.colours is None:
        return [full] * H.n
    by_colour: dict[str, int] = {}
    for u in range(G.n):
        key = _colour_key(G.colours[u])
        by_colour[key] = by_colour.get(key, 0) | (1 << u)
    return [by_colour.get(_colour_key(H.colours[v]), 0) for v in range(H.n)]


def _count(H: Hypergraph, G: Hypergraph, injective: bool) -> int:
    if any(len(e) == 0 for e in H.edges) and not any(len(e) == 0 for e in G.edges):
        return 0
    if injective and H.n > G.n:
        return 0
    edge_masks, subset_masks = _target_tables(G)
    return kernels.hom_count(H.n, [list(e) for e in H.edges], _search_order(H), edge_masks, subset_masks,
                             _candidates(H, G), G.n, injective)


def count_hom(H: Hypergraph, G: Hypergraph) -> int:
    """#Hom(H -> G); colour-preserving when both are coloured."""
    return _count(H, G, False)


def count_emb_direct(H: Hypergraph, G: Hypergraph) -> int:
    """#Emb(H -> G) by injective backtracking."""
    return _count(H, G, True)


_QUOTIENTS: dict[tuple, list[tuple[Hypergraph, int]]] = {}


def mobius_quotients(H: Hypergraph) -> list[tuple[Hypergraph, int]]:
    """[(H/rho, summed mu(rho))] over colour-consistent rho, grouped by isomorphism type."""
    key = H.canonical_form()
    if key not in _QUOTIENTS:
        coeff: dict[tuple, int] = {}
        rep: dict[tuple, Hypergraph] = {}
        for rho in vertex_partitions(H):
            Q = quotient(H, rho)
            qk = Q.canonical_form()
            rep.setdefault(qk, Q)
            coeff[qk] = coeff.get(qk, 0) + mobius_bottom(rho)
        _QUOTIENTS[key] = [(rep[qk], c) for qk, c in coeff.items() if c]
    return _QUOTIENTS[key]


def count_emb_mobius(H: Hypergraph, G: Hypergraph) -> int:
    """#Emb(H -> G) = sum over colour-consistent rho of mu(rho) #Hom(H/rho -> G)."""
    return sum(c * count_hom(Q, G) for Q, c in mobius_quotients(H))


def count_emb(H: Hypergraph, G: Hypergraph, check: bool = False) -> int | tuple[int, int]:
    """#Emb(H -> G); with ``check`` returns (direct, via Mobius inversion)."""
    direct = count_emb_direct(H, G)
    if check:
        return direct, count_emb_mobius(H, G)
    return direct


def count_aut(H: Hypergraph) -> int:
    """Colour-preserving automorphisms (edge multiplicities preserved)."""
    if H.is_simple():
        return count_emb_direct(H, H)
    # multi-edges: injective homs H -> H are the candidates, filter by multiplicity
    mult = dict(zip(H.edges, H.mult))
    count = 0
    degs = H.degrees()
    cols = [(_colour_key(H.colour(v)), degs[v]) for v in range(H.n)]
    for perm in permutations(range(H.n)):
        if any(cols[v] != cols[perm[v]] for v in range(H.n)):
            continue
        if all(mult.get(tuple(sorted(perm[v] for v in e))) == m for e, m in mult.items()):
            count += 1
    return count


def count_sub(H: Hypergraph, G: Hypergraph) -> int:
    """#Sub(H -> G) = #Emb / #Aut, which must be integral."""
    emb = count_emb_direct(H, G)
    aut = count_aut(H)
    q = Fraction(emb, aut)
    if q.denominator != 1:
        raise ArithmeticError(f"Emb/Aut = {emb}/{aut} is not integral")
    return int(q)


def brute_force_hom(H: Hypergraph, G: Hypergraph, injective: bool = False) -> int:
    """Enumerate all maps; reference oracle for tiny inputs."""
    from itertools import product

    targets = set(G.edges)
    count = 0
    cand = _candidates(H, G)
    for img in product(range(G.n), repeat=H.n):
        if injective and len(set(img)) < H.n:
            continue
        if any(not (cand[v] >> img[v]) & 1 for v in range(H.n)):
            continue
        if all(tuple(sorted({img[v] for v in e})) in targets for e in H.edges):
            count += 1
    return count


# ---------------------------------------------------------------------------
# catalogues of uniform hypergraphs
# ---------------------------------------------------------------------------


_CATALOGUE: dict[tuple[int, int], list[Hypergraph]] = {}


def enumerate_uniform_hypergraphs(k: int, r: int, colours: Sequence | None = None, k_cap: int = ENUM_K_CAP,
                                  r_cap: int = ENUM_R_CAP) -> list[Hypergraph]:
    """Simple r-uniform hypergraphs with exactly k edges and no isolated vertices, up to isomorphism.

    With a palette, every colouring of the vertices by palette entries is
    included (again up to colour-preserving isomorphism).
    """
    if k > k_cap or r > r_cap:
        raise EnumerationCapError(f"catalogue capped at k <= {k_cap}, r <= {r_cap} (asked for k={k}, r={r})")
    if k < 0 or r < 1:
        raise ValueError("need k >= 0 and r >= 1")
    base = _uncoloured_catalogue(k, r)
    if colours is None:
        return list(base)
    palette = list(colours)
    out: dict[tuple, Hypergraph] = {}
    for H in base:
        for assignment in _colourings(H.n, len(palette)):
            C = H.with_colours([palette[i] for i in assignment])
            out.setdefault(C.canonical_form(), C)
    return [out[key] for key in sorted(out, key=_canon_sort_key)]


def _colourings(n: int, q: int):
    from itertools import product

    return product(range(q), repeat=n)


def _canon_sort_key(code: tuple):
    n, verts, edges = code
    return (len(edges), n, repr(code))


def _uncoloured_catalogue(k: int, r: int) -> list[Hypergraph]:
    if (k, r) in _CATALOGUE:
        return _CATALOGUE[(k, r)]
    if k == 0:
        res = [Hypergraph(0, [])]
    else:
        prev = _uncoloured_catalogue(k - 1, r)
        found: dict[tuple, Hypergraph] = {}
        for H in prev:
            existing = set(H.edges)
            for fresh in range(r + 1):
                old = r - fresh
                if old > H.n:
                    continue
                for part in combinations(range(H.n), old):
                    e = tuple(list(part) + list(range(H.n, H.n + fresh)))
                    if e in existing:
                        continue
                    G = Hypergraph(H.n + fresh, list(H.edges) + [e])
                    found.setdefault(G.canonical_form(), G)
        res = [found[key] for key in sorted(found, key=_canon_sort_key)]
    _CATALOGUE[(k, r)] = res
    return res


def enumerate_up_to(k: int, r: int, colours: Sequence | None = None) -> list[Hypergraph]:
    """G_{<=k}(r): catalogues for 1..k edges."""
    out = []
    for ell in range(1, k + 1):
        out.extend(enumerate_uniform_hypergraphs(ell, r, colours))
    return out


# ---------------------------------------------------------------------------
# the expansion Holant(., k) = sum_F zeta(F) #Hom(F -> .)
# ---------------------------------------------------------------------------


@dataclass
class HomExpansion:
    k: int
    rank: int
    terms: list[tuple[Hypergraph, ExactScalar]]
    constant: ExactScalar = ZERO  # the k = 0 term
    notes: list[str] = field(default_factory=list)

    def coefficient(self, F: Hypergraph) -> ExactScalar:
        key = F.canonical_form()
        for P, c in self.terms:
            if P.canonical_form() == key:
                return c
        return ZERO

    def as_dict(self) -> dict[tuple, ExactScalar]:
        return {P.canonical_form(): c for P, c in self.terms}

    def evaluate(self, G: Hypergraph) -> ExactScalar:
        """constant + sum_F zeta(F) #Hom(F -> G)."""
        total = self.constant
        for P, c in self.terms:
            h = count_hom(P, G)
            if h:
                total = total + c * h
        return total

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "rank": self.rank,
            "constant": self.constant.to_json(),
            "terms": [
                {"pattern": P.to_json(), "key": canonical_key_string(P.canonical_form()), "coefficient": c.to_json()}
                for P, c in self.terms
            ],
        }


def _signature_palette(S) -> tuple[list[Signature], bool]:
    if isinstance(S, Signature):
        sigs = [S]
    else:
        sigs = list(SignatureSet(S).members) if not isinstance(S, SignatureSet) else list(S.members)
    for s in sigs:
        if s(0).is_zero():
            raise ValueError(f"signature {s.label()} has s(0) = 0; the expansion needs s(0) != 0")
        if s(0) != ONE:
            raise ValueError(f"signature {s.label()} is not normalized (s(0) = {s(0)}); normalize first")
    return sigs, len(sigs) > 1


def hom_expansion(k: int, S, r: int) -> HomExpansion:
    """Coefficients zeta_{k,S}(F) over r-uniform patterns F with at most k edges.

    For several signatures the patterns are coloured by signature index and
    the expansion applies to grids whose graph carries that colouring.
    """
    sigs, coloured = _signature_palette(S)
    if k == 0:
        return HomExpansion(0, r, [], ONE)
    palette = list(range(len(sigs))) if coloured else None
    coeff: dict[tuple, ExactScalar] = {}
    rep: dict[tuple, Hypergraph] = {}
    for H in enumerate_uniform_hypergraphs(k, r, palette):
        weight = ONE
        for v, d in enumerate(H.degrees()):
            s = sigs[H.colours[v]] if coloured else sigs[0]
            weight = weight * s(d)
            if weight.is_zero():
                break
        if weight.is_zero():
            continue
        weight = weight / count_aut(H)
        for rho in vertex_partitions(H):
            F = quotient(H, rho)
            if not F.is_uniform(r):
                continue
            key = F.canonical_form()
            rep.setdefault(key, F)
            coeff[key] = coeff.get(key, ZERO) + weight * mobius_bottom(rho)
    terms = [(rep[key], coeff[key]) for key in sorted(coeff, key=_canon_sort_key) if not coeff[key].is_zero()]
    return HomExpansion(k, r, terms, ZERO)


def zeta_coefficient(k: int, S, F: Hypergraph) -> ExactScalar:
    r = F.rank if F.edges else 0
    if not F.is_uniform():
        return ZERO
    return hom_expansion(k, S, r).coefficient(F)


def expansion_value(expansion: HomExpansion, grid: SignatureGrid) -> ExactScalar:
    """Holant(grid, k) via the expansion; un-normalized signatures are rescaled by prod s_v(0)."""
    norm, scale = grid.normalized()
    return expansion.evaluate(norm.graph) * scale


# ---------------------------------------------------------------------------
# tensor product and interpolation
# ---------------------------------------------------------------------------


def tensor_product(G: Hypergraph, H: Hypergraph) -> Hypergraph:
    """r-uniform product on V(G) x V(H): every pair of edges and bijection between them gives an edge."""
    if not (G.is_uniform() and H.is_uniform()):
        raise ValueError("tensor product needs uniform hypergraphs")
    rg = G.rank if G.edges else None
    rh = H.rank if H.edges else None
    if rg is not None and rh is not None and rg != rh:
        raise ValueError(f"tensor product of ranks {rg} and {rh}")
    edges, mult = [], []
    for e, me in zip(G.edges, G.mult):
        for f, mf in zip(H.edges, H.mult):
            for img in permutations(f):
                edges.append([u * H.n + w for u, w in zip(e, img)])
                mult.append(me * mf)
    cols = None
    if G.colours is not None and H.colours is not None:
        cols = [(G.colours[u], H.colours[w]) for u in range(G.n) for w in range(H.n)]
    return Hypergraph(G.n * H.n, edges, mult, cols)


def _eliminate(rows: list[list[Fraction]], new: list[Fraction], pivots: list[int]) -> list[Fraction] | None:
    """Reduce ``new`` against the echelon rows; return the reduced row or None if dependent."""
    vec = list(new)
    for row, p in zip(rows, pivots):
        if vec[p]:
            f = vec[p] / row[p]
            vec = [a - f * b for a, b in zip(vec, row)]
    return vec if any(vec) else None


def solve_exact(A: list[list[ExactScalar]], b: list[ExactScalar]) -> list[ExactScalar]:
    """Solve the square system A x = b over the Gaussian rationals."""
    n = len(A)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if not M[i][col].is_zero()), None)
        if piv is None:
            raise InterpolationError("singular interpolation matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for i in range(n):
            if i != col and not M[i][col].is_zero():
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def dedekind_interpolate(oracle: Callable[[Hypergraph], ExactScalar], k: int, r: int,
                         candidates: Sequence[Hypergraph] | None = None) -> HomExpansion:
    """Recover c(F) in  oracle(X) = c0 + sum_F c(F) #Hom(F -> X).

    Unknowns range over the empty pattern and G_{<=k}(r).  Test targets are
    the patterns themselves (a family closed under sub-hypergraphs), added in
    canonical order while they raise the rank of the Hom matrix.
    """
    patterns = [Hypergraph(0, [])] + list(candidates if candidates is not None else enumerate_up_to(k, r))
    n = len(patterns)
    rows: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen: list[Hypergraph] = []
    full_rows: list[list[int]] = []
    for X in patterns:
        row = [count_hom(P, X) for P in patterns]
        red = _eliminate(rows, [Fraction(x) for x in row], pivots)
        if red is None:
            continue
        rows.append(red)
        pivots.append(next(i for i, x in enumerate(red) if x))
        chosen.append(X)
        full_rows.append(row)
        if len(chosen) == n:
            break
    if len(chosen) < n:
        raise InterpolationError(f"Hom matrix has rank {len(chosen)} < {n} on the pattern family")
    values = [ExactScalar.coerce(oracle(X)) for X in chosen]
    A = [[ExactScalar(x) for x in row] for row in full_rows]
    sol = solve_exact(A, values)
    terms = [(P, c) for P, c in zip(patterns[1:], sol[1:]) if not c.is_zero()]
    return HomExpansion(k, r, terms, sol[0], notes=[f"{n} unknowns, {len(chosen)} targets"])
