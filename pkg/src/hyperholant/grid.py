"""Signature grids: a hypergraph with one signature per vertex."""

from __future__ import annotations

from typing import Mapping, Sequence

from .hypergraph import Hypergraph, HypergraphError
from .scalar import ONE, ExactScalar
from .signature import Signature, SignatureError, SignatureSet, normalize_signature


class GridError(ValueError):
    pass


class SignatureGrid:
    __slots__ = ("graph", "assignment", "rank", "uniform", "simple")

    def __init__(self, graph: Hypergraph, assignment: Sequence[Signature]):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "assignment", tuple(assignment))
        object.__setattr__(self, "rank", graph.rank)
        object.__setattr__(self, "uniform", graph.is_uniform())
        object.__setattr__(self, "simple", graph.is_simple())

    def __setattr__(self, name, value):
        raise AttributeError("SignatureGrid is immutable")

    @property
    def n(self) -> int:
        return self.graph.n

    def signature(self, v: int) -> Signature:
        return self.assignment[v]

    def signature_set(self) -> SignatureSet:
        return SignatureSet(self.assignment)

    def signatures(self) -> list[Signature]:
        """Distinct signatures in first-use order."""
        return list(SignatureSet(self.assignment).members)

    def signature_indices(self) -> list[int]:
        sigs = self.signatures()
        idx = {s: i for i, s in enumerate(sigs)}
        return [idx[s] for s in self.assignment]

    def empty_value(self) -> ExactScalar:
        """Holant at k = 0: the product of all s_v(0)."""
        out = ONE
        for s in self.assignment:
            out = out * s(0)
        return out

    def normalized(self) -> tuple["SignatureGrid", ExactScalar]:
        """Grid with every s(0) != 0 signature scaled to s(0) = 1, plus the total scale."""
        cache: dict[Signature, tuple[Signature, ExactScalar]] = {}
        out = []
        scale = ONE
        for s in self.assignment:
            if s not in cache:
                cache[s] = normalize_signature(s)
            ns, c = cache[s]
            out.append(ns)
            scale = scale * c
        return SignatureGrid(self.graph, out), scale

    def __eq__(self, other):
        if not isinstance(other, SignatureGrid):
            return NotImplemented
        return self.graph == other.graph and self.assignment == other.assignment

    def __hash__(self):
        return hash((self.graph, self.assignment))

    def __repr__(self):
        return f"SignatureGrid({self.graph!r}, {[s.label() for s in self.assignment]})"

    def to_json(self) -> dict:
        sigs = self.signatures()
        return {
            "graph": self.graph.to_json(),
            "signatures": [s.to_json() for s in sigs],
            "assignment": self.signature_indices(),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SignatureGrid":
        if not isinstance(doc, dict):
            raise GridError("grid payload must be an object")
        for key in ("graph", "signatures", "assignment"):
            if key not in doc:
                raise GridError(f"grid payload is missing '{key}'")
        graph = Hypergraph.from_json(doc["graph"])
        if not isinstance(doc["signatures"], list):
            raise GridError("grid.signatures: expected a list")
        sigs = []
        for i, sd in enumerate(doc["signatures"]):
            try:
                sigs.append(Signature.from_json(sd))
            except (SignatureError, ValueError) as exc:
                raise GridError(f"grid.signatures[{i}]: {exc}") from exc
        assignment = doc["assignment"]
        if not isinstance(assignment, list):
            raise GridError("grid.assignment: expected a list of signature indices")
        out = []
        for v, i in enumerate(assignment):
            if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < len(sigs):
                raise GridError(f"grid.assignment[{v}]: no signature with index {i!r}")
            out.append(sigs[i])
        return build_grid(graph, out)


def build_grid(H: Hypergraph, assignment: Sequence[Signature] | Mapping[int, Signature] | Signature) -> SignatureGrid:
    """Validate and assemble a signature grid.

    ``assignment`` is a per-vertex list, a vertex -> signature mapping, or a
    single signature used at every vertex.
    """
    if not isinstance(H, Hypergraph):
        raise GridError("expected a Hypergraph")
    if isinstance(assignment, Signature):
        sigs = [assignment] * H.n
    elif isinstance(assignment, Mapping):
        missing = [v for v in range(H.n) if v not in assignment]
        if missing:
            raise GridError(f"vertices without a signature: {missing}")
        sigs = [assignment[v] for v in range(H.n)]
    else:
        sigs = list(assignment)
        if len(sigs) != H.n:
            raise GridError(f"assignment has {len(sigs)} signatures for {H.n} vertices")
    for v, s in enumerate(sigs):
        if not isinstance(s, Signature):
            raise GridError(f"vertex {v}: not a signature ({s!r})")
        if s.is_all_zero():
            raise GridError(f"vertex {v}: the all-zero signature is not allowed")
    if H.colours is not None:
        by_colour: dict = {}
        for v, s in enumerate(sigs):
            c = H.colours[v]
            if by_colour.setdefault(c, s) != s:
                raise GridError(f"colour {c!r} carries two different signatures")
    return SignatureGrid(H, sigs)


def grid_from_edges(n: int, edges, assignment, mult=None) -> SignatureGrid:
    try:
        H = Hypergraph(n, edges, mult)
    except HypergraphError as exc:
        raise GridError(str(exc)) from exc
    return build_grid(H, assignment)
