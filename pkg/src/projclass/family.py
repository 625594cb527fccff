"""Index-set families describing diagonal projections.

A diagonal projection Q = p_{I_1} (+) p_{I_2} (+) ... is fully described by
its family of finite index sets I_j.  A family here is an explicit finite
prefix plus an optional symbolic tail rule; the two supported rules keep
infinite families finitely describable, so every quantity the deciders need
can be read off finite windows.

Ground identifiers are positive integers.  The empty index set is allowed and
stands for a trivial rank-one summand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import FamilyFormatError, FamilyIndexError

IndexSet = frozenset[int]


def index_set(elements: Iterable[int]) -> IndexSet:
    """Validate and freeze a collection of ground identifiers.

    Duplicates are rejected rather than silently merged so that mistakes in
    hand-written documents surface early.
    """
    items = list(elements)
    out = frozenset(items)
    if len(out) != len(items):
        raise FamilyFormatError(f"duplicate ground identifiers in {sorted(items, key=repr)!r}")
    for e in out:
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise FamilyFormatError(f"ground identifiers must be positive integers, got {e!r}")
    return out


@dataclass(frozen=True)
class Constant:
    """Tail rule: every position past the prefix carries the same set."""

    members: IndexSet

    def __post_init__(self):
        object.__setattr__(self, "members", index_set(self.members))


@dataclass(frozen=True)
class DisjointBlocks:
    """Tail rule: the i-th tail set is a fresh block of a*i + b identifiers.

    Blocks are pairwise disjoint and disjoint from every prefix set: `start`
    must lie above all prefix identifiers, and blocks walk upward from it in
    steps of `stride`.  Sizes are affine in the tail-local index, so the first
    tail position always carries a block of size a + b regardless of how long
    the prefix is.  `stride` is 1 for documents; odd reindexing doubles it.
    """

    a: int
    b: int
    start: int
    stride: int = 1

    def __post_init__(self):
        for name in ("a", "b", "start", "stride"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise FamilyFormatError(f"block parameter {name} must be an integer, got {v!r}")
        if self.a < 0 or self.b < 0 or (self.a, self.b) == (0, 0):
            raise FamilyFormatError("block sizes need a >= 0 and b >= 0, not both zero")
        if self.start < 1:
            raise FamilyFormatError("block start must be a positive identifier")
        if self.stride < 1:
            raise FamilyFormatError("block stride must be >= 1")

    def size(self, i: int) -> int:
        return self.a * i + self.b

    def block(self, i: int) -> IndexSet:
        """The i-th tail block, i >= 1 counted from the first tail position."""
        if i < 1:
            raise FamilyIndexError(f"tail blocks are 1-based, got {i}")
        before = self.a * (i - 1) * i // 2 + self.b * (i - 1)
        first = self.start + self.stride * before
        return frozenset(range(first, first + self.stride * self.size(i), self.stride))


TailRule = Constant | DisjointBlocks


@dataclass(frozen=True)
class ProjectionFamily:
    """Explicit prefix plus an optional symbolic tail; tail None means finite."""

    prefix: tuple[IndexSet, ...] = ()
    tail: TailRule | None = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(index_set(s) for s in self.prefix))
        if self.tail is not None and not isinstance(self.tail, (Constant, DisjointBlocks)):
            raise FamilyFormatError(f"unknown tail rule {self.tail!r}")
        if isinstance(self.tail, DisjointBlocks):
            top = max((max(s) for s in self.prefix if s), default=0)
            if top >= self.tail.start:
                raise FamilyFormatError(
                    f"tail blocks start at {self.tail.start} but the prefix uses identifier {top}"
                )

    @property
    def is_finite(self) -> bool:
        return self.tail is None


@dataclass(frozen=True)
class FiniteFamily:
    """An ordered finite family of index sets together with its ground union."""

    sets: tuple[IndexSet, ...]
    ground: IndexSet = field(init=False)

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        object.__setattr__(self, "ground", frozenset().union(*sets) if sets else frozenset())

    def __len__(self) -> int:
        return len(self.sets)


def eval_set(fam: ProjectionFamily, j: int) -> IndexSet:
    """The j-th index set of the family, positions counted from 1."""
    if j < 1:
        raise FamilyIndexError(f"positions are 1-based, got {j}")
    if j <= len(fam.prefix):
        return fam.prefix[j - 1]
    if fam.tail is None:
        raise FamilyIndexError("index beyond finite family")
    if isinstance(fam.tail, Constant):
        return fam.tail.members
    return fam.tail.block(j - len(fam.prefix))


def window(fam: ProjectionFamily, t: int) -> FiniteFamily:
    """The finite family of the first t positions."""
    if t < 0:
        raise FamilyIndexError(f"window length must be >= 0, got {t}")
    if fam.tail is None and t > len(fam.prefix):
        raise FamilyIndexError("index beyond finite family")
    return FiniteFamily(tuple(eval_set(fam, j) for j in range(1, t + 1)))


def expand_multiplicity(fam: FiniteFamily, n: int) -> FiniteFamily:
    """Repeat every set n times, copies adjacent: [A, B] -> [A, A, B, B] for n=2."""
    if n < 1:
        raise ValueError(f"multiplicity must be >= 1, got {n}")
    return FiniteFamily(tuple(s for s in fam.sets for _ in range(n)))


def _odd(s: IndexSet) -> IndexSet:
    return frozenset(2 * i - 1 for i in s)


def reindex_to_odd(fam: ProjectionFamily) -> ProjectionFamily:
    """Relabel every ground identifier i to 2i - 1.

    The image touches only odd identifiers, leaving the evens as an untouched
    reservoir.  Position structure is unchanged, so every matching and surplus
    quantity of every window is preserved.
    """
    tail = fam.tail
    if isinstance(tail, Constant):
        tail = Constant(_odd(tail.members))
    elif isinstance(tail, DisjointBlocks):
        tail = DisjointBlocks(tail.a, tail.b, 2 * tail.start - 1, 2 * tail.stride)
    return ProjectionFamily(tuple(_odd(s) for s in fam.prefix), tail)


def parse_family(doc: object) -> ProjectionFamily:
    """Parse the wire document {"prefix": [[...], ...], "tail": {"kind": ...}}.

    Tail kinds: "none", "constant" (with "set"), "disjoint_blocks" (with
    "a", "b", "start" and an optional internal "stride").  A missing "tail"
    means "none".
    """
    if not isinstance(doc, dict):
        raise FamilyFormatError("family document must be a JSON object")
    unknown = set(doc) - {"prefix", "tail"}
    if unknown:
        raise FamilyFormatError(f"unknown family keys: {sorted(unknown)}")
    prefix_doc = doc.get("prefix", [])
    if not isinstance(prefix_doc, list):
        raise FamilyFormatError("family prefix must be an array of arrays")
    prefix = []
    for pos, entry in enumerate(prefix_doc, 1):
        if not isinstance(entry, list):
            raise FamilyFormatError(f"prefix position {pos} must be an array of identifiers")
        prefix.append(index_set(entry))

    tail_doc = doc.get("tail", {"kind": "none"})
    if not isinstance(tail_doc, dict) or "kind" not in tail_doc:
        raise FamilyFormatError('family tail must be an object with a "kind"')
    kind = tail_doc["kind"]
    tail: TailRule | None
    if kind == "none":
        _require_keys(tail_doc, {"kind"})
        tail = None
    elif kind == "constant":
        _require_keys(tail_doc, {"kind", "set"}, needed={"set"})
        if not isinstance(tail_doc["set"], list):
            raise FamilyFormatError('constant tail "set" must be an array of identifiers')
        tail = Constant(index_set(tail_doc["set"]))
    elif kind == "disjoint_blocks":
        _require_keys(tail_doc, {"kind", "a", "b", "start", "stride"}, needed={"a", "b", "start"})
        tail = DisjointBlocks(
            tail_doc["a"], tail_doc["b"], tail_doc["start"], tail_doc.get("stride", 1)
        )
    else:
        raise FamilyFormatError(f"unknown tail kind {kind!r}")
    return ProjectionFamily(tuple(prefix), tail)


def _require_keys(doc: dict, allowed: set, needed: set = frozenset()) -> None:
    extra = set(doc) - allowed
    if extra:
        raise FamilyFormatError(f"unknown tail keys: {sorted(extra)}")
    missing = needed - set(doc)
    if missing:
        raise FamilyFormatError(f"missing tail keys: {sorted(missing)}")


def family_to_doc(fam: ProjectionFamily) -> dict:
    """Inverse of parse_family, with sets emitted as sorted arrays."""
    doc: dict = {"prefix": [sorted(s) for s in fam.prefix]}
    tail = fam.tail
    if tail is None:
        doc["tail"] = {"kind": "none"}
    elif isinstance(tail, Constant):
        doc["tail"] = {"kind": "constant", "set": sorted(tail.members)}
    else:
        doc["tail"] = {"kind": "disjoint_blocks", "a": tail.a, "b": tail.b, "start": tail.start}
        if tail.stride != 1:
            doc["tail"]["stride"] = tail.stride
    return doc
