"""Holant evaluation.

Holant(grid, k) sums, over all k-subsets A of the hyperedges (copies counted
separately), the product over vertices v of s_v(|A meeting v|).  Three exact
routes are provided: the defining sum, the composition formula for sets whose
non-vanishing signatures are all geometric, and its extension to vertices with
s(0) = 0.  ``holant_auto`` picks one after classifying the signatures.
"""

from __future__ import annotations

import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterator

from . import kernels
from .fingerprint import DEFAULT_BOUND, classify, geometric_ratio
from .grid import SignatureGrid, build_grid
from .hypergraph import Hypergraph
from .scalar import ONE, ZERO, ExactScalar
from .signature import Signature, one

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """Brute-force enumeration would exceed the configured budget."""


class NotT1Error(ValueError):
    """The composition formula was asked to handle a non-geometric signature."""


class NotUniformError(ValueError):
    pass


def default_budget() -> int:
    raw = os.environ.get("HOLANT_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            log.warning("ignoring malformed HOLANT_BUDGET=%r", raw)
    return DEFAULT_BUDGET


@dataclass
class HolantResult:
    value: ExactScalar
    method: str
    k: int
    work: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        doc = {"value": self.value.to_json(), "method": self.method, "k": self.k, "work": dict(self.work)}
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError(f"k must be a natural number, got {k!r}")


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------


def holant_bruteforce(grid: SignatureGrid, k: int, budget: int | None = None) -> HolantResult:
    """The defining sum, with copies of a hyperedge enumerated as distinct edges."""
    _check_k(k)
    if budget is None:
        budget = default_budget()
    H = grid.graph
    edges = H.edge_list()
    m = len(edges)
    subsets = comb(m, k)
    if subsets > budget:
        raise BudgetExceeded(f"brute force needs C({m},{k}) = {subsets} subsets, over the budget of {budget}")
    if k > m:
        return HolantResult(ZERO, "brute", k, {"subsets": 0, "nodes": 0})
    if k == 0:
        return HolantResult(grid.empty_value(), "brute", k, {"subsets": 1, "nodes": 1})
    degs = H.degrees()
    factor = ONE
    raw: list[list[ExactScalar]] = []
    required: list[bool] = []
    cache: dict[tuple[Signature, int], tuple[list[ExactScalar], bool]] = {}
    for v in range(H.n):
        s = grid.assignment[v]
        key = (s, degs[v])
        if key not in cache:
            s0 = s(0)
            if s0.is_zero():
                cache[key] = ([s(d) for d in range(degs[v] + 1)], True)
            else:
                inv = s0.inverse()
                cache[key] = ([s(d) * inv for d in range(degs[v] + 1)], False)
        row, req = cache[key]
        if not req:
            factor = factor * grid.assignment[v](0)
        raw.append(row)
        required.append(req)
    cap = min(H.n, k * H.rank)
    distinct_rows = {id(r): r for r in raw}.values()
    if all(x.is_real() for r in distinct_rows for x in r):
        L = 1
        for r in distinct_rows:
            for x in r:
                d = x.re.denominator
                L = L * d // gcd(L, d)
        int_rows = {id(r): [int(x.re * L) for x in r] for r in distinct_rows}
        tables = [int_rows[id(r)] for r in raw]
        lpow = [L**j for j in range(cap + 1)]
        total, nodes = kernels.subset_sum(H.n, [list(e) for e in edges], k, tables, required, lpow)
        value = ExactScalar(Fraction(total, L**cap)) * factor
    else:
        lpow = [ONE] * (cap + 1)
        total, nodes = kernels.subset_sum(H.n, [list(e) for e in edges], k, raw, required, lpow)
        value = (total if isinstance(total, ExactScalar) else ExactScalar(total)) * factor
    return HolantResult(value, "brute", k, {"subsets": subsets, "nodes": nodes, "backend": kernels.BACKEND})


def holant_definition(grid: SignatureGrid, k: int) -> ExactScalar:
    """Literal transcription of the defining sum; slow, used as an independent oracle."""
    edges = grid.graph.edge_list()
    total = ZERO
    for A in combinations(range(len(edges)), k):
        deg = Counter(v for i in A for v in edges[i])
        term = ONE
        for v in range(grid.n):
            term = term * grid.assignment[v](deg.get(v, 0))
            if term.is_zero():
                break
        total = total + term
    return total


# ---------------------------------------------------------------------------
# composition formula for geometric signatures
# ---------------------------------------------------------------------------


def compositions(k: int, caps: list[int]) -> Iterator[list[int]]:
    """Vectors (k_1..k_t) with sum k and 0 <= k_i <= caps[i], in lexicographic order."""
    t = len(caps)
    suffix = [0] * (t + 1)
    for i in range(t - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]
    if suffix[0] < k:
        return
    vec = [0] * t

    def rec(i: int, left: int):
        if i == t:
            if left == 0:
                yield list(vec)
            return
        lo = max(0, left - suffix[i + 1])
        for x in range(lo, min(caps[i], left) + 1):
            vec[i] = x
            yield from rec(i + 1, left - x)
        vec[i] = 0

    yield from rec(0, k)


def _alpha_classes(grid: SignatureGrid, vertices) -> tuple[dict[int, int], list[ExactScalar]]:
    """Index of the alpha-class of each vertex, and the distinct alphas a_1..a_z."""
    alphas: list[ExactScalar] = []
    index: dict[ExactScalar, int] = {}
    per_sig: dict[Signature, int] = {}
    cls = {}
    for v in vertices:
        s = grid.assignment[v]
        if s not in per_sig:
            a = geometric_ratio(s)
            if a is None:
                raise NotT1Error(f"signature {s.label()} at vertex {v} is not of the form s(0)*alpha^n")
            if a not in index:
                index[a] = len(alphas)
                alphas.append(a)
            per_sig[s] = index[a]
        cls[v] = per_sig[s]
    return cls, alphas


def _class_weight(vec: tuple[int, ...], alphas: list[ExactScalar]) -> ExactScalar:
    w = ONE
    for i, c in enumerate(vec):
        if c:
            w = w * alphas[i] ** c
    return w


def edge_classes(grid: SignatureGrid) -> tuple[dict[tuple[int, ...], int], list[ExactScalar]]:
    """|E_lambda| for every alpha-count vector lambda occurring in the grid."""
    cls, alphas = _alpha_classes(grid, range(grid.n))
    z = len(alphas)
    sizes: Counter = Counter()
    for e, m in zip(grid.graph.edges, grid.graph.mult):
        vec = [0] * z
        for v in e:
            vec[cls[v]] += 1
        sizes[tuple(vec)] += m
    return dict(sizes), alphas


def holant_fpt_t1(grid: SignatureGrid, k: int) -> HolantResult:
    """Sum over compositions {k_lambda} of k of prod C(|E_lambda|, k_lambda) prod_i a_i^(sum lambda(i) k_lambda).

    Requires a uniform grid whose signatures all satisfy s(n) = s(0) alpha^n.
    """
    _check_k(k)
    if not grid.uniform:
        raise NotUniformError("the composition formula needs a uniform grid; call uniformize() first")
    for s in grid.signatures():
        if s(0).is_zero():
            raise NotT1Error(f"signature {s.label()} has s(0) = 0; use holant_fpt_zeros")
    sizes, alphas = edge_classes(grid)
    labels = sorted(sizes)
    caps = [sizes[lab] for lab in labels]
    # terms[i][j] = C(|E_i|, j) * w_i^j, the factor of class i when j of its edges are chosen
    terms = []
    for lab, cap in zip(labels, caps):
        w = _class_weight(lab, alphas)
        row = [ONE]
        for j in range(1, min(cap, k) + 1):
            row.append(row[-1] * w * Fraction(cap - j + 1, j))
        terms.append(row)
    total, count = _composition_sum(k, caps, terms)
    value = total * _product_s0(grid, range(grid.n)) if not total.is_zero() else ZERO
    return HolantResult(value, "fpt_t1", k, {"classes": len(labels), "compositions": count})


def _composition_sum(k: int, caps: list[int], terms: list[list[ExactScalar]]) -> tuple[ExactScalar, int]:
    """Sum over compositions (k_i) of k with k_i <= caps[i] of prod_i terms[i][k_i].

    Walks the compositions depth first, carrying the partial product.
    """
    t = len(caps)
    suffix = [0] * (t + 1)
    for i in range(t - 1, -1, -1):
        suffix[i] = suffix[i + 1] + min(caps[i], k)
    count = 0
    if suffix[0] < k:
        return ZERO, 0
    # over the reals, work with integers over one common denominator L^t
    real = all(x.is_real() for row in terms for x in row)
    L = 1
    if real:
        for row in terms:
            for x in row:
                d = x.re.denominator
                L = L * d // gcd(L, d)
        rows = [[int(x.re * L) for x in row] for row in terms]
        zero, unit = 0, 1
    else:
        rows = terms
        zero, unit = ZERO, ONE

    def rec(i: int, left: int, prefix):
        nonlocal count
        if i == t:
            count += 1
            return prefix
        acc = zero
        row = rows[i]
        for x in range(max(0, left - suffix[i + 1]), min(caps[i], left) + 1):
            if row[x]:
                acc = acc + rec(i + 1, left - x, prefix * row[x])
        return acc

    total = rec(0, k, unit)
    if real:
        return ExactScalar(Fraction(total, L**t)), count
    return total, count


def _product_s0(grid: SignatureGrid, vertices) -> ExactScalar:
    counts: Counter = Counter(grid.assignment[v] for v in vertices)
    out = ONE
    for s, c in counts.items():
        out = out * s(0) ** c
    return out


def holant_t1_polynomial(grid: SignatureGrid, k: int) -> ExactScalar:
    """Coefficient of x^k in prod_e (1 + w_e x) times prod s_v(0); an independent check of the formula."""
    sizes, alphas = edge_classes(grid)
    poly = [ONE] + [ZERO] * k
    for lab, cnt in sizes.items():
        w = _class_weight(lab, alphas)
        factor = [ExactScalar(comb(cnt, j)) * w**j for j in range(min(cnt, k) + 1)]
        nxt = [ZERO] * (k + 1)
        for i, a in enumerate(poly):
            if a.is_zero():
                continue
            for j, b in enumerate(factor):
                if i + j > k:
                    break
                nxt[i + j] = nxt[i + j] + a * b
        poly = nxt
    return poly[k] * _product_s0(grid, range(grid.n))


# ---------------------------------------------------------------------------
# extension to signatures with s(0) = 0
# ---------------------------------------------------------------------------


def holant_fpt_zeros(grid: SignatureGrid, k: int) -> HolantResult:
    """Composition formula with vertices N0 = {v : s_v(0) = 0} handled explicitly.

    Edges inside N0 form G0 and are chosen directly (grouped by distinct edge,
    counting copies by binomials).  Every other edge e is classified by
    W = e & N0 together with the alpha-count vector mu of e - W; only the
    number of chosen edges per class (W, mu) matters.
    """
    _check_k(k)
    if not grid.uniform:
        raise NotUniformError("the composition formula needs a uniform grid; call uniformize() first")
    H = grid.graph
    r = H.rank
    zero_vs = [v for v in range(H.n) if grid.assignment[v](0).is_zero()]
    zero_set = set(zero_vs)
    if len(zero_vs) > k * r:
        return HolantResult(ZERO, "fpt_zeros", k, {"shortcut": "|N0| > k*r"})
    others = [v for v in range(H.n) if v not in zero_set]
    cls, alphas = _alpha_classes(grid, others)
    z = len(alphas)
    inner: list[tuple[tuple[int, ...], int]] = []  # edges of G0 with multiplicity
    classes: Counter = Counter()
    for e, m in zip(H.edges, H.mult):
        W = tuple(v for v in e if v in zero_set)
        if len(W) == len(e):
            inner.append((e, m))
            continue
        mu = [0] * z
        for v in e:
            if v not in zero_set:
                mu[cls[v]] += 1
        classes[(W, tuple(mu))] += m
    keys = sorted(classes)
    caps = [classes[key] for key in keys]
    weights = [_class_weight(key[1], alphas) for key in keys]
    base = _product_s0(grid, others)
    zpos = {v: i for i, v in enumerate(zero_vs)}
    zsig = [grid.assignment[v] for v in zero_vs]
    stats = {"inner_choices": 0, "compositions": 0, "classes": len(keys)}
    total = ZERO

    def close(deg: list[int]) -> ExactScalar:
        out = ONE
        for i, d in enumerate(deg):
            out = out * zsig[i](d)
            if out.is_zero():
                return ZERO
        return out

    def over_classes(deg: list[int], left: int, coeff: ExactScalar) -> ExactScalar:
        acc = ZERO
        for ks in compositions(left, caps):
            stats["compositions"] += 1
            d = list(deg)
            term = coeff
            for kl, key, cap, w in zip(ks, keys, caps, weights):
                if kl:
                    for v in key[0]:
                        d[zpos[v]] += kl
                    term = term * comb(cap, kl) * w**kl
            acc = acc + term * close(d)
        return acc

    def over_inner(i: int, deg: list[int], used: int, coeff: ExactScalar) -> None:
        nonlocal total
        if i == len(inner):
            stats["inner_choices"] += 1
            total = total + over_classes(deg, k - used, coeff)
            return
        e, m = inner[i]
        for c in range(0, min(m, k - used) + 1):
            d = list(deg)
            for v in e:
                d[zpos[v]] += c
            over_inner(i + 1, d, used + c, coeff * comb(m, c))

    over_inner(0, [0] * len(zero_vs), 0, ONE)
    value = total * base if not total.is_zero() else ZERO
    return HolantResult(value, "fpt_zeros", k, stats)


# ---------------------------------------------------------------------------
# uniformization and dispatch
# ---------------------------------------------------------------------------


PAD_COLOUR = "pad"


def uniformize(grid: SignatureGrid) -> SignatureGrid:
    """Pad every hyperedge to the rank with fresh vertices carrying ``one``."""
    H = grid.graph
    if not H.edges:
        return grid
    r = H.rank
    short = r - min(len(e) for e in H.edges)
    if short == 0:
        return grid
    fresh = list(range(H.n, H.n + short))
    edges = [list(e) + fresh[: r - len(e)] for e in H.edges]
    cols = None if H.colours is None else list(H.colours) + [PAD_COLOUR] * short
    G = Hypergraph(H.n + short, edges, list(H.mult), cols)
    return build_grid(G, list(grid.assignment) + [one()] * short)


def t1_route(grid: SignatureGrid) -> str | None:
    """'fpt_t1' or 'fpt_zeros' when the s(0) != 0 signatures are all geometric, else None."""
    sigs = grid.signatures()
    if any(not s(0).is_zero() and geometric_ratio(s) is None for s in sigs):
        return None
    return "fpt_zeros" if any(s(0).is_zero() for s in sigs) else "fpt_t1"


def holant_auto(grid: SignatureGrid, k: int, budget: int | None = None, bound: int = DEFAULT_BOUND,
                method: str = "auto") -> HolantResult:
    """Classify, then route to the composition formula when possible, else to brute force."""
    _check_k(k)
    if method == "brute":
        return holant_bruteforce(grid, k, budget)
    route = t1_route(grid)
    if method == "fpt" and route is None:
        raise NotT1Error("the composition formula needs every s(0) != 0 signature to be geometric")
    if route is not None:
        notes = []
        target = grid
        if not grid.uniform:
            target = uniformize(grid)
            notes.append(f"uniformized to rank {target.rank}")
        res = holant_fpt_t1(target, k) if route == "fpt_t1" else holant_fpt_zeros(target, k)
        res.notes = notes + ["T1: composition formula"]
        return res
    verdict = classify(grid.signature_set(), bound)
    res = holant_bruteforce(grid, k, budget)
    res.notes.append(f"{verdict.tag}: no tractable algorithm, evaluated by brute force")
    return res
