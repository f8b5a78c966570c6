"""Command-line interface: one JSON result object per invocation on stdout, logs on stderr.

Exit codes: 0 success, 1 usage or malformed input, 2 budget/cap guard tripped.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import reductions as red
from .evaluate import BudgetExceeded, NotT1Error, default_budget, holant_auto, holant_bruteforce
from .fingerprint import DEFAULT_BOUND, EnumerationCapError, classify
from .grid import GridError, build_grid
from .hombasis import (ENUM_K_CAP, InterpolationError, MobiusError, dedekind_interpolate, enumerate_up_to,
                       hom_expansion)
from .hypergraph import CanonicalFormLimit, HypergraphError, petersen_graph
from .io import Document, DocumentError, MatrixModP, dumps, grid_document, loads
from .scalar import ScalarError
from .signature import Signature, SignatureError, geometric, hw_ge1, hw_le1, mod_p

log = logging.getLogger("hyperholant")

EXIT_OK, EXIT_USAGE, EXIT_GUARD = 0, 1, 2
GUARD_ERRORS = (BudgetExceeded, EnumerationCapError, CanonicalFormLimit, RecursionError)
INPUT_ERRORS = (DocumentError, GridError, HypergraphError, SignatureError, ScalarError, red.ReductionError,
                NotT1Error, MobiusError, InterpolationError, ValueError, KeyError, OSError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# ---------------------------------------------------------------------------
# built-in example documents
# ---------------------------------------------------------------------------


def _examples() -> dict[str, dict]:
    from .hypergraph import Hypergraph, complete_graph, cycle_graph

    def grid(H, s, k=None):
        return grid_document(build_grid(H, s), k)

    return {
        "k3-matchings": grid(complete_graph(3), hw_le1(), 1),
        "c4-perfect-matchings": grid(cycle_graph(4), Signature([0, 0, 1]), 8),
        "petersen-matchings": grid(petersen_graph(), hw_le1(), 5),
        "geometric-path": grid(Hypergraph(3, [(0, 1), (1, 2)]), geometric(2), 2),
        "parity-hyperedge": grid(Hypergraph(4, [(0, 1, 2), (1, 2, 3), (0, 3)]), mod_p(2), 2),
        "signatures-hw-le1": Document("signatures", [hw_le1()]).to_json(),
        "signatures-gaussian": Document("signatures", [Signature([1, 0, 1, 0, 3])]).to_json(),
        "vcsp-parity": Document("vcsp", red.VcspInstance(2, [(mod_p(2), (0, 1))], 2), 2).to_json(),
        "codeword-z2": Document("matrix-mod-p", MatrixModP([[1, 1]], 2), 2).to_json(),
        "hitting-path": Document("hypergraph", Hypergraph(3, [(0, 1), (1, 2)]), 1).to_json(),
        "pm-hyper-two-edges": grid(Hypergraph(6, [(0, 1, 2), (3, 4, 5)]), hw_ge1()),
    }


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _read(path: str | None):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return loads(text)


def _single(doc) -> Document:
    if isinstance(doc, list):
        raise UsageError("this subcommand takes a single document, not an array")
    return doc


def _k(args, doc: Document) -> int:
    k = args.k if args.k is not None else doc.k
    if k is None:
        raise UsageError("no k: pass --k or put \"k\" in the document")
    return k


def _as_grid(doc: Document, k: int):
    if doc.kind == "grid":
        return doc.obj
    if doc.kind == "vcsp":
        return red.vcsp_to_holant(doc.obj)[0]
    if doc.kind == "matrix-mod-p":
        return red.build_codeword_instance(doc.obj.rows, doc.obj.p, k)[0]
    if doc.kind == "hypergraph":
        return red.hitting_set_holant(doc.obj, k)[0]
    raise UsageError(f"a {doc.kind} document has no Holant value")


def _signatures(doc: Document) -> list[Signature]:
    if doc.kind == "signatures":
        return doc.obj
    if doc.kind == "grid":
        return doc.obj.signatures()
    raise UsageError(f"expected a signatures or grid document, got {doc.kind}")


def _guards(args) -> dict:
    g = {}
    for name in ("budget", "bound", "cap"):
        if hasattr(args, name):
            val = getattr(args, name)
            if name == "budget" and val is None:
                val = default_budget()
            g[name] = val
    return g


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_eval(args) -> dict:
    docs = _read(args.document)

    def one(doc: Document) -> dict:
        k = _k(args, doc)
        grid = _as_grid(doc, k)
        res = holant_auto(grid, k, args.budget, args.bound, args.method)
        out = res.to_json()
        out["kind"] = doc.kind
        return out

    if isinstance(docs, list):
        return {"results": [one(d) for d in docs], "guards": _guards(args)}
    out = one(docs)
    out["guards"] = _guards(args)
    return out


def cmd_classify(args) -> dict:
    docs = _read(args.document)
    if isinstance(docs, list):
        return {"results": [classify(_signatures(d), args.bound).to_json() for d in docs], "guards": _guards(args)}
    out = classify(_signatures(docs), args.bound).to_json()
    out["guards"] = _guards(args)
    return out


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_expand(args) -> dict:
    doc = _single(_read(args.document))
    k = _k(args, doc)
    d = _need(args.d, "--d")
    if k > args.cap:
        raise EnumerationCapError(f"k={k} exceeds the pattern catalogue cap {args.cap}; raise --cap")
    out = hom_expansion(k, _signatures(doc), d).to_json()
    out["guards"] = _guards(args)
    return out


def cmd_interpolate(args) -> dict:
    doc = _single(_read(args.document))
    k = _k(args, doc)
    d = _need(args.d, "--d")
    if k > args.cap:
        raise EnumerationCapError(f"k={k} exceeds the pattern catalogue cap {args.cap}; raise --cap")
    sigs = _signatures(doc)
    if len(sigs) != 1:
        raise UsageError("interpolation takes a single signature")
    s = sigs[0]

    def oracle(X):
        return holant_bruteforce(build_grid(X, s), k, args.budget).value

    recovered = dedekind_interpolate(oracle, k, d, enumerate_up_to(k, d))
    out = recovered.to_json()
    out["guards"] = _guards(args)
    return out


def cmd_translate(args) -> dict:
    doc = _single(_read(args.document))
    if doc.kind == "grid":
        k = args.k if args.k is not None else (doc.k or 0)
        return Document("vcsp", red.holant_to_vcsp(doc.obj, k), k).to_json()
    if doc.kind == "vcsp":
        grid, k = red.vcsp_to_holant(doc.obj)
        return grid_document(grid, args.k if args.k is not None else doc.k)
    if doc.kind == "matrix-mod-p":
        k = _k(args, doc)
        grid, _ = red.build_codeword_instance(doc.obj.rows, doc.obj.p, k)
        return grid_document(grid, k)
    if doc.kind == "hypergraph":
        k = _k(args, doc)
        grid, _, keep = red.hitting_set_holant(doc.obj, k)
        out = grid_document(grid, k)
        out["kept_vertices"] = keep
        return out
    raise UsageError(f"nothing to translate a {doc.kind} document into")


def cmd_gadget(args) -> dict:
    doc = _single(_read(args.document))
    budget = args.budget if args.budget is not None else default_budget()
    if args.name in ("pad", "bridge"):
        if doc.kind != "grid":
            raise UsageError(f"{args.name} gadget takes a grid document")
        k = _k(args, doc)
        d = _need(args.d, "--d")
        if args.name == "pad":
            cert = red.pad_gadget(doc.obj, d, k)
        else:
            gadget = red.find_bridge_gadget(d, args.cap)
            cert = red.bridge_lift(doc.obj, d, k, gadget)
    elif args.name in ("pm-graph", "pm-hyper"):
        if doc.kind != "grid":
            raise UsageError("perfect matching gadgets take a grid document (graph plus its signature)")
        sigs = doc.obj.signatures()
        if len(sigs) != 1:
            raise UsageError("perfect matching gadgets need a single signature")
        G = doc.obj.graph
        if args.name == "pm-graph":
            cert = red.pm_gadget_graph(G, sigs[0])
        else:
            cert = red.pm_gadget_hyper(G, sigs[0], args.mode)
    elif args.name == "hitting-set":
        if doc.kind != "hypergraph":
            raise UsageError("hitting-set takes a hypergraph document")
        k = _k(args, doc)
        grid, _, keep = red.hitting_set_holant(doc.obj, k)
        out = {"kind": "hitting-set", "target": grid.to_json(), "k'": k, "kept_vertices": keep}
        if args.verify:
            lhs = holant_bruteforce(grid, k, budget).value
            direct = red.count_hitting_sets(doc.obj, k, keep)
            out["verified"] = lhs == direct
            out["value"] = lhs.to_json()
        return out
    else:
        raise UsageError(f"unknown gadget {args.name!r}")
    out = cert.to_json()
    if args.verify:
        ok, lhs, rhs = cert.verify(budget)
        out["verified"] = ok
        out["lhs"] = lhs.to_json()
        out["rhs"] = rhs.to_json()
    out["guards"] = {"budget": budget, "cap": args.cap}
    return out


def cmd_generate(args) -> dict:
    if args.what == "regular":
        H = red.gen_regular_connected(_need(args.d, "--d"), _need(args.b, "--b"), args.i)
        return Document("hypergraph", H).to_json()
    if args.what == "bridge":
        B = red.find_bridge_gadget(_need(args.d, "--d"), args.cap)
        return {"version": 1, "kind": "bridge", "payload": B.to_json()}
    if args.what == "catalogue":
        k = _need(args.k, "--k")
        if k > args.cap:
            raise EnumerationCapError(f"k={k} exceeds the pattern catalogue cap {args.cap}; raise --cap")
        pats = enumerate_up_to(k, _need(args.d, "--d"))
        return {"version": 1, "kind": "catalogue", "k": k, "payload": [P.to_json() for P in pats]}
    if args.what == "petersen":
        return Document("hypergraph", petersen_graph()).to_json()
    raise UsageError(f"unknown generator {args.what!r}")


def cmd_examples(args) -> dict:
    lib = _examples()
    if args.name is None:
        return {"examples": sorted(lib)}
    if args.name not in lib:
        raise UsageError(f"no example named {args.name!r}; known: {', '.join(sorted(lib))}")
    return lib[args.name]


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperholant", description="Exact parameterised Holant evaluation on hypergraphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, required=False):
        if required:
            sp.add_argument("document", help="instance document ('-' for stdin)")
        else:
            sp.add_argument("document", nargs="?", help="instance document (default: stdin)")
        sp.add_argument("--k", type=int, help="number of hyperedges to choose")
        sp.add_argument("--budget", type=int, default=None, help="brute-force subset budget (env HOLANT_BUDGET)")

    sp = sub.add_parser("eval", help="evaluate Holant(grid, k)")
    common(sp)
    sp.add_argument("--method", choices=("auto", "brute", "fpt"), default="auto")
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("classify", help="type of a signature set")
    sp.add_argument("document", nargs="?")
    sp.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    sp.set_defaults(func=cmd_classify)

    for name, func in (("expand", cmd_expand), ("interpolate", cmd_interpolate)):
        sp = sub.add_parser(name, help="homomorphism-basis coefficients" if name == "expand"
                            else "recover coefficients from Holant values")
        common(sp)
        sp.add_argument("--d", type=int, help="pattern arity")
        sp.add_argument("--cap", type=int, default=ENUM_K_CAP, help="largest k the pattern catalogue may reach")
        sp.set_defaults(func=func)

    sp = sub.add_parser("translate", help="grid <-> vcsp, codeword and hitting-set instances")
    common(sp)
    sp.set_defaults(func=cmd_translate)

    sp = sub.add_parser("gadget", help="apply a reduction gadget and emit its certificate")
    sp.add_argument("name", choices=("pad", "bridge", "pm-graph", "pm-hyper", "hitting-set"))
    common(sp, required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--mode", choices=("zero-sig", "size-forced"), default="zero-sig")
    sp.add_argument("--cap", type=int, default=6, help="edge cap for the bridge search")
    sp.add_argument("--verify", action="store_true", help="check the certificate by brute force")
    sp.set_defaults(func=cmd_gadget)

    sp = sub.add_parser("generate", help="constructive hypergraph generators")
    sp.add_argument("what", choices=("regular", "bridge", "catalogue", "petersen"))
    sp.add_argument("--d", type=int)
    sp.add_argument("--b", type=int)
    sp.add_argument("--i", type=int, default=2)
    sp.add_argument("--k", type=int)
    sp.add_argument("--cap", type=int, default=6)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("examples", help="list or print built-in example documents")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_examples)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"hyperholant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = args.func(args)
    except GUARD_ERRORS as exc:
        print(f"hyperholant: guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except UsageError as exc:
        print(f"hyperholant: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except INPUT_ERRORS as exc:
        print(f"hyperholant: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(dumps(result) + "\n")
    return EXIT_OK


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
