"""Set partitions, signature fingerprints and the T1 / T2 / Tinf classifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial
from typing import Iterable, Iterator

from .scalar import ONE, ZERO, ExactScalar
from .signature import Signature, SignatureSet, ZERO_TAIL, PERIODIC_TAIL

DEFAULT_BOUND = 8
PARTITION_CAP = 12


class EnumerationCapError(RuntimeError):
    """An exhaustive enumeration was asked to go past its configured cap."""


class _Undefined:
    """The fingerprint of a signature with s(0) = 0 that is not identically zero."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        raise TypeError("an undefined fingerprint has no truth value")

    def to_json(self):
        return None


UNDEFINED = _Undefined()


# ---------------------------------------------------------------------------
# set partitions
# ---------------------------------------------------------------------------


class SetPartition:
    """A partition of ``{0, ..., a-1}`` into non-empty blocks."""

    __slots__ = ("a", "blocks")

    def __init__(self, a: int, blocks: Iterable[Iterable[int]]):
        bl = tuple(sorted(tuple(sorted(b)) for b in blocks))
        seen = [x for b in bl for x in b]
        if any(len(b) == 0 for b in bl):
            raise ValueError("blocks must be non-empty")
        if sorted(seen) != list(range(a)):
            raise ValueError(f"blocks {bl} do not partition [{a}]")
        self.a = a
        self.blocks = bl

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.a == other.a and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.a, self.blocks))

    def __repr__(self):
        return "|".join("".join(str(x) for x in b) for b in self.blocks) or "{}"

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def refines(self, other: "SetPartition") -> bool:
        """True when every block of self lies inside a block of other."""
        where = {}
        for i, b in enumerate(other.blocks):
            for x in b:
                where[x] = i
        return all(len({where[x] for x in b}) == 1 for b in self.blocks)

    @classmethod
    def finest(cls, a: int) -> "SetPartition":
        return cls(a, [[i] for i in range(a)])

    @classmethod
    def coarsest(cls, a: int) -> "SetPartition":
        return cls(a, [list(range(a))] if a else [])


def _restricted_growth(a: int) -> Iterator[list[int]]:
    if a == 0:
        yield []
        return
    word = [0] * a
    peak = [0] * a  # peak[i] = max(word[:i+1])

    def rec(i: int):
        if i == a:
            yield word
            return
        for c in range(peak[i - 1] + 2):
            word[i] = c
            peak[i] = max(peak[i - 1], c)
            yield from rec(i + 1)

    yield from rec(1)


def enumerate_set_partitions(a: int, cap: int = PARTITION_CAP) -> Iterator[SetPartition]:
    """All Bell(a) partitions of [a], each once (restricted growth strings)."""
    if a < 0:
        raise ValueError("ground set size must be natural")
    if a > cap:
        raise EnumerationCapError(f"set partition enumeration capped at a={cap} (asked for a={a})")
    for word in _restricted_growth(a):
        blocks: dict[int, list[int]] = {}
        for x, c in enumerate(word):
            blocks.setdefault(c, []).append(x)
        yield SetPartition(a, blocks.values())


def bell_number(a: int) -> int:
    row = [1]
    for _ in range(a):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------


def fingerprint(a: int, s: Signature, cap: int = PARTITION_CAP):
    """chi(a, s) as the alternating sum over all partitions of [a].

    Returns ``UNDEFINED`` when s(0) = 0 and s is not identically zero.
    """
    if a < 1:
        raise ValueError("fingerprints are defined for a >= 1")
    if s.is_all_zero():
        return ZERO
    s0 = s(0)
    if s0.is_zero():
        return UNDEFINED
    inv = s0.inverse()
    t = [s(n) * inv for n in range(a + 1)]
    total = ZERO
    for sigma in enumerate_set_partitions(a, cap):
        nb = len(sigma)
        term = ExactScalar(factorial(nb - 1) * (-1) ** (nb - 1))
        for size in sigma.block_sizes():
            term = term * t[size]
        total = total + term
    return total


def fingerprints_fast(a: int, s: Signature) -> list:
    """[chi(1, s), ..., chi(a, s)] from the moment-cumulant recurrence."""
    if s.is_all_zero():
        return [ZERO] * a
    s0 = s(0)
    if s0.is_zero():
        return [UNDEFINED] * a
    inv = s0.inverse()
    t = [s(n) * inv for n in range(a + 1)]
    chi: list[ExactScalar] = [ZERO]  # chi[0] unused
    for n in range(1, a + 1):
        acc = t[n]
        for j in range(1, n):
            c = comb(n - 1, j - 1)
            if c and not chi[j].is_zero() and not t[n - j].is_zero():
                acc = acc - chi[j] * t[n - j] * c
        chi.append(acc)
    return chi[1:]


def fingerprint_fast(a: int, s: Signature):
    if a < 1:
        raise ValueError("fingerprints are defined for a >= 1")
    return fingerprints_fast(a, s)[-1]


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def geometric_ratio(s: Signature) -> ExactScalar | None:
    """alpha with s(n) = s(0) * alpha**n for every n, or None.

    Exact for every tail policy: beyond the table the tail is determined by
    at most max(1, period) further values, so checking up to D + max(1, m)
    decides the identity on all of N.
    """
    s0 = s(0)
    if s0.is_zero():
        return None
    alpha = s(1) / s0
    m = s.tail.period if s.tail.kind == PERIODIC_TAIL else 1
    top = s.max_degree + max(1, m)
    power = ONE
    for n in range(top + 1):
        if s(n) != s0 * power:
            return None
        power = power * alpha
    return alpha


def is_t1_signature(s: Signature) -> bool:
    return geometric_ratio(s) is not None


@dataclass
class SignatureType:
    tag: str  # "T1", "T2" or "Tinf"
    bound: int
    exact: bool
    witness: tuple | None = None  # (a, member index, signature, chi)
    vacuous: bool = False
    zero_part: int = 0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        doc: dict = {"type": self.tag, "bound": self.bound, "exact": self.exact}
        if self.witness is not None:
            a, idx, sig, chi = self.witness
            doc["witness"] = {"a": a, "signature": idx, "label": sig.label(), "chi": chi.to_json()}
        else:
            doc["witness"] = None
        doc["zero_part"] = self.zero_part
        if self.vacuous:
            doc["vacuous"] = True
        doc["representation"] = "finite table with zero/geometric/periodic tail"
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


def classify(S: SignatureSet | Iterable[Signature], bound: int = DEFAULT_BOUND) -> SignatureType:
    """Type of S minus its s(0) = 0 part.

    Tinf with a witness is definitive.  T1 is exact when every member passes
    the closed-form geometric test; all other verdicts are relative to
    ``bound`` (fingerprints checked for a <= bound).
    """
    if bound < 3:
        raise ValueError("classification bound must be at least 3")
    if not isinstance(S, SignatureSet):
        S = SignatureSet(S)
    members = list(S.members)
    rest = [(i, s) for i, s in enumerate(members) if not s(0).is_zero()]
    nzero = len(members) - len(rest)
    if not rest:
        return SignatureType("T1", bound, True, vacuous=True, zero_part=nzero,
                             notes=["no member with s(0) != 0; T1 by vacuity"])
    if all(is_t1_signature(s) for _, s in rest):
        return SignatureType("T1", bound, True, zero_part=nzero)
    chis = {i: fingerprints_fast(bound, s) for i, s in rest}
    for a in range(3, bound + 1):
        for i, s in rest:
            c = chis[i][a - 1]
            if not c.is_zero():
                return SignatureType("Tinf", bound, True, (a, i, s, c), zero_part=nzero)
    for i, s in rest:
        c = chis[i][1]
        if not c.is_zero():
            return SignatureType("T2", bound, False, (2, i, s, c), zero_part=nzero,
                                 notes=[f"no fingerprint with 3 <= a <= {bound} is non-zero"])
    return SignatureType("T1", bound, False, zero_part=nzero,
                         notes=[f"not geometric, yet all fingerprints with 2 <= a <= {bound} vanish"])
