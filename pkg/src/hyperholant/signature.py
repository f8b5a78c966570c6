"""Symmetric signatures N -> C stored as a finite table plus a tail policy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .scalar import ONE, ZERO, ExactScalar, S


class SignatureError(ValueError):
    pass


ZERO_TAIL = "zero"
GEOMETRIC_TAIL = "geometric"
PERIODIC_TAIL = "periodic"


@dataclass(frozen=True)
class Tail:
    kind: str = ZERO_TAIL
    ratio: ExactScalar | None = None  # geometric only
    period: int | None = None  # periodic only

    def to_json(self) -> dict:
        if self.kind == GEOMETRIC_TAIL:
            return {"kind": GEOMETRIC_TAIL, "ratio": self.ratio.to_json()}
        if self.kind == PERIODIC_TAIL:
            return {"kind": PERIODIC_TAIL, "period": self.period}
        return {"kind": ZERO_TAIL}


def _canonical(table: list[ExactScalar], tail: Tail) -> tuple[tuple[ExactScalar, ...], Tail]:
    """Trim the table so that equal functions get equal representations."""
    if tail.kind == GEOMETRIC_TAIL:
        q = tail.ratio
        if q.is_zero():
            tail = Tail(ZERO_TAIL)
        elif q == ONE:
            tail = Tail(PERIODIC_TAIL, period=1)
        else:
            while len(table) > 1 and table[-1] == table[-2] * q:
                table.pop()
            if table[-1].is_zero():
                tail = Tail(ZERO_TAIL)
    if tail.kind == PERIODIC_TAIL:
        m = tail.period
        block = table[-m:]
        # smallest period of the repeating block
        for p in range(1, m + 1):
            if m % p == 0 and all(block[j] == block[j % p] for j in range(m)):
                if p < m:
                    table = table[: len(table) - m + p]
                    m = p
                break
        while len(table) > m and table[-1] == table[-1 - m]:
            table.pop()
        if all(x.is_zero() for x in table[-m:]):
            tail = Tail(ZERO_TAIL)
        else:
            tail = Tail(PERIODIC_TAIL, period=m)
    if tail.kind == ZERO_TAIL:
        while len(table) > 1 and table[-1].is_zero():
            table.pop()
    return tuple(table), tail


class Signature:
    """A symmetric function of the Hamming weight.

    ``table[n]`` gives s(n) for n <= D = len(table) - 1; beyond D the tail
    decides: zero, geometric (``table[D] * q**(n - D)``) or periodic with
    period m (the last m table entries repeat).  Representations are trimmed
    on construction, so ``==`` is equality of functions.
    """

    __slots__ = ("table", "tail", "name")

    def __init__(self, table: Iterable, tail: Tail | str | None = None, *, ratio=None, period=None,
                 name: str | None = None):
        vals = [S(x) for x in table]
        if not vals:
            raise SignatureError("signature table must be non-empty")
        if tail is None:
            tail = Tail(ZERO_TAIL)
        elif isinstance(tail, str):
            if tail == GEOMETRIC_TAIL:
                if ratio is None:
                    raise SignatureError("geometric tail needs a ratio")
                tail = Tail(GEOMETRIC_TAIL, ratio=S(ratio))
            elif tail == PERIODIC_TAIL:
                if period is None or int(period) < 1:
                    raise SignatureError("periodic tail needs a period >= 1")
                tail = Tail(PERIODIC_TAIL, period=int(period))
            elif tail == ZERO_TAIL:
                tail = Tail(ZERO_TAIL)
            else:
                raise SignatureError(f"unknown tail kind {tail!r}")
        if tail.kind == PERIODIC_TAIL and tail.period > len(vals):
            raise SignatureError(f"period {tail.period} exceeds table length {len(vals)}")
        t, tl = _canonical(vals, tail)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "tail", tl)
        object.__setattr__(self, "name", name)

    # evaluation ---------------------------------------------------------
    @property
    def max_degree(self) -> int:
        return len(self.table) - 1

    def __call__(self, n: int) -> ExactScalar:
        D = len(self.table) - 1
        if n <= D:
            if n < 0:
                raise SignatureError("signatures are defined on natural numbers")
            return self.table[n]
        kind = self.tail.kind
        if kind == ZERO_TAIL:
            return ZERO
        if kind == GEOMETRIC_TAIL:
            return self.table[D] * self.tail.ratio ** (n - D)
        m = self.tail.period
        return self.table[D - m + 1 + ((n - D - 1) % m)]

    def values(self, upto: int) -> list[ExactScalar]:
        return [self(n) for n in range(upto + 1)]

    # predicates ---------------------------------------------------------
    def is_all_zero(self) -> bool:
        return self.tail.kind == ZERO_TAIL and all(x.is_zero() for x in self.table)

    def first_nonzero(self) -> int:
        """Smallest b with s(b) != 0 (the 'b' of the gadget constructions)."""
        if self.is_all_zero():
            raise SignatureError("the all-zero signature has no non-zero entry")
        for n, x in enumerate(self.table):
            if not x.is_zero():
                return n
        # table all zero but tail non-zero is impossible after trimming
        raise SignatureError("inconsistent signature representation")

    def scaled(self, c) -> "Signature":
        c = S(c)
        tail = self.tail
        return Signature([c * x for x in self.table], tail, name=None)

    def key(self) -> tuple:
        """Hashable identity of the function (ignores the display name)."""
        t = self.tail
        tail_key = (t.kind, t.ratio.sort_key() if t.ratio is not None else None, t.period)
        return (tuple(x.sort_key() for x in self.table), tail_key)

    def __setattr__(self, name, value):
        raise AttributeError("Signature is immutable")

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.table == other.table and self.tail == other.tail

    def __hash__(self):
        return hash(self.key())

    def label(self) -> str:
        if self.name:
            return self.name
        body = ",".join(str(x) for x in self.table)
        t = self.tail
        if t.kind == ZERO_TAIL:
            return f"[{body}]"
        if t.kind == GEOMETRIC_TAIL:
            return f"[{body}]*{t.ratio}^n"
        return f"[{body}]~{t.period}"

    def __repr__(self):
        return f"Signature({self.label()})"

    def to_json(self) -> dict:
        doc = {"table": [x.to_json() for x in self.table], "tail": self.tail.to_json()}
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Signature":
        if not isinstance(doc, dict) or "table" not in doc:
            raise SignatureError("signature document needs a 'table'")
        tail = doc.get("tail", {"kind": ZERO_TAIL})
        if not isinstance(tail, dict):
            raise SignatureError("signature 'tail' must be an object")
        kind = tail.get("kind", ZERO_TAIL)
        return cls(doc["table"], kind, ratio=tail.get("ratio"), period=tail.get("period"),
                   name=doc.get("name"))


def normalize_signature(s: Signature) -> tuple[Signature, ExactScalar]:
    """Return ``(s / s(0), s(0))``, or ``(s, 1)`` unchanged when s(0) = 0."""
    if s.is_all_zero():
        raise SignatureError("the all-zero signature cannot be normalized")
    s0 = s(0)
    if s0.is_zero():
        return s, ONE
    inv = s0.inverse()
    return Signature([x * inv for x in s.table], s.tail, name=s.name), s0


# named signatures -----------------------------------------------------


def hw_le1() -> Signature:
    return Signature([1, 1], name="hw<=1")


def hw_ge1() -> Signature:
    return Signature([0, 1], PERIODIC_TAIL, period=1, name="hw>=1")


def one() -> Signature:
    return Signature([1], PERIODIC_TAIL, period=1, name="one")


def mod_p(p: int) -> Signature:
    """s_p(n) = 1 if n = 0 mod p else 0."""
    if p < 1:
        raise SignatureError("modulus must be positive")
    return Signature([1] + [0] * (p - 1), PERIODIC_TAIL, period=p, name=f"s_{p}")


def geometric(alpha, scale=1) -> Signature:
    """s(n) = scale * alpha**n."""
    return Signature([scale], GEOMETRIC_TAIL, ratio=alpha, name=None)


def indicator(values: Iterable[int], cofinite_from: int | None = None) -> Signature:
    """Indicator of a finite degree set, optionally together with all n >= cofinite_from."""
    vals = set(int(v) for v in values)
    if any(v < 0 for v in vals):
        raise SignatureError("degree sets contain natural numbers only")
    top = max(vals, default=0)
    if cofinite_from is not None:
        top = max(top, cofinite_from)
        table = [1 if (n in vals or n >= cofinite_from) else 0 for n in range(top + 1)]
        return Signature(table, PERIODIC_TAIL, period=1)
    table = [1 if n in vals else 0 for n in range(top + 1)]
    return Signature(table)


class SignatureSet:
    """Finite set of signatures in first-seen order, with the s(0) = 0 part split off."""

    def __init__(self, members: Iterable[Signature]):
        seen: dict[Signature, None] = {}
        for s in members:
            if not isinstance(s, Signature):
                raise SignatureError(f"not a signature: {s!r}")
            seen.setdefault(s, None)
        self.members: tuple[Signature, ...] = tuple(seen)

    @property
    def zero_part(self) -> tuple[Signature, ...]:
        return tuple(s for s in self.members if s(0).is_zero())

    @property
    def nonzero_part(self) -> tuple[Signature, ...]:
        return tuple(s for s in self.members if not s(0).is_zero())

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, s):
        return s in self.members

    def __repr__(self):
        return f"SignatureSet({list(self.members)})"


__all__ = [
    "Signature",
    "SignatureError",
    "SignatureSet",
    "Tail",
    "ZERO_TAIL",
    "GEOMETRIC_TAIL",
    "PERIODIC_TAIL",
    "normalize_signature",
    "hw_le1",
    "hw_ge1",
    "one",
    "mod_p",
    "geometric",
    "indicator",
]



def signature_eval(s: Signature, n: int) -> ExactScalar:
    return s(n)
