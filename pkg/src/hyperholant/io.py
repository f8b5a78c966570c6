"""Instance documents: {"version": 1, "kind": ..., "k": ..., "payload": {...}}.

Serialization uses a fixed field order so that documents diff cleanly and
parse -> serialize is the identity on canonical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .grid import GridError, SignatureGrid
from .hypergraph import Hypergraph, HypergraphError
from .reductions import ReductionError, VcspInstance
from .scalar import ScalarError
from .signature import Signature, SignatureError

VERSION = 1
KINDS = ("grid", "vcsp", "hypergraph", "matrix-mod-p", "signatures")


class DocumentError(ValueError):
    pass


@dataclass
class MatrixModP:
    rows: list[list[int]]
    p: int

    def to_json(self) -> dict:
        return {"p": self.p, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, doc: dict) -> "MatrixModP":
        if not isinstance(doc, dict):
            raise DocumentError("payload: expected an object")
        p = doc.get("p")
        if not isinstance(p, int) or isinstance(p, bool) or p < 2:
            raise DocumentError("payload.p: expected a prime modulus")
        rows = doc.get("rows")
        if not isinstance(rows, list) or not rows:
            raise DocumentError("payload.rows: expected a non-empty list of rows")
        width = None
        for i, r in enumerate(rows):
            if not isinstance(r, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in r):
                raise DocumentError(f"payload.rows[{i}]: expected a list of integers")
            if width is None:
                width = len(r)
            elif len(r) != width:
                raise DocumentError(f"payload.rows[{i}]: has {len(r)} entries, expected {width}")
        return cls([list(r) for r in rows], p)


@dataclass
class Document:
    kind: str
    obj: Any
    k: int | None = None

    def to_json(self) -> dict:
        doc: dict = {"version": VERSION, "kind": self.kind}
        if self.k is not None:
            doc["k"] = self.k
        if self.kind == "signatures":
            doc["payload"] = {"signatures": [s.to_json() for s in self.obj]}
        else:
            doc["payload"] = self.obj.to_json()
        return doc


def _parse_payload(kind: str, payload) -> Any:
    if kind == "grid":
        return SignatureGrid.from_json(payload)
    if kind == "hypergraph":
        return Hypergraph.from_json(payload)
    if kind == "vcsp":
        return VcspInstance.from_json(payload)
    if kind == "matrix-mod-p":
        return MatrixModP.from_json(payload)
    if not isinstance(payload, dict) or not isinstance(payload.get("signatures"), list):
        raise DocumentError("payload.signatures: expected a list of signatures")
    out = []
    for i, sd in enumerate(payload["signatures"]):
        try:
            out.append(Signature.from_json(sd))
        except (SignatureError, ScalarError) as exc:
            raise DocumentError(f"payload.signatures[{i}]: {exc}") from exc
    if not out:
        raise DocumentError("payload.signatures: empty")
    return out


def parse_document(doc) -> Document:
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    if doc.get("version") != VERSION:
        raise DocumentError(f"document.version: expected {VERSION}, got {doc.get('version')!r}")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"document.kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    k = doc.get("k")
    if k is not None and (not isinstance(k, int) or isinstance(k, bool) or k < 0):
        raise DocumentError("document.k: expected a natural number")
    if "payload" not in doc:
        raise DocumentError("document.payload: missing")
    try:
        obj = _parse_payload(kind, doc["payload"])
    except DocumentError:
        raise
    except (GridError, HypergraphError, SignatureError, ScalarError, ReductionError) as exc:
        raise DocumentError(f"payload ({kind}): {exc}") from exc
    if kind == "vcsp" and k is not None:
        obj.k = k
    return Document(kind, obj, k)


def loads(text: str):
    """Parse one document or a JSON array of documents."""
    try:
        data = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if isinstance(data, list):
        return [parse_document(d) for d in data]
    return parse_document(data)


def _reject_float(text: str):
    raise DocumentError(f"floating-point literal {text} in document; write exact rationals as \"p/q\" strings")


def dumps(obj) -> str:
    """Canonical single-line JSON (field order as constructed)."""
    return json.dumps(obj, separators=(", ", ": "), ensure_ascii=False)


def grid_document(grid: SignatureGrid, k: int | None = None) -> dict:
    return Document("grid", grid, k).to_json()


def parse_instance(doc) -> Document:
    """Parse a document given as a JSON string or an already decoded object."""
    if isinstance(doc, str):
        parsed = loads(doc)
        if isinstance(parsed, list):
            raise DocumentError("expected a single document")
        return parsed
    return parse_document(doc)


def serialize_result(obj) -> str:
    """Canonical text for a Document or any object with ``to_json``."""
    if isinstance(obj, Document):
        return dumps(obj.to_json())
    return dumps(obj.to_json() if hasattr(obj, "to_json") else obj)
