"""Exact bipartite matching engine for transversal and surplus questions.

The single primitive is maximum bipartite matching (Hopcroft-Karp) between
family positions and ground identifiers.  Around it sit the deciders used
everywhere else:

  * sdr_exists: does the family admit a system of distinct representatives;
  * max_surplus: the maximum of n|F| - |union of F| over position subsets F,
    with a canonical witness.  The maximum is never searched subset by
    subset: by the deficiency form of Koenig's theorem it equals
    (positions) - (maximum matching) on the n-fold expanded family, and the
    unique inclusion-minimal witness is the set of positions reachable from
    unmatched ones along alternating paths;
  * decide_trivial_minorization: do m trivial rank-one summands embed under
    n copies of the family's projection, which holds exactly when some finite
    window reaches surplus m at multiplicity n.

All computations are exact; every positive answer carries a finite witness
and every matching is re-checked for maximality before being reported.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .family import FiniteFamily, ProjectionFamily, expand_multiplicity, window


class Infinite:
    """Sentinel for an unbounded surplus supremum."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = Infinite()


@dataclass
class BipartiteIncidence:
    """Positions 1..t on the left, ground identifiers on the right.

    Membership edges only, no multiplicities; adjacency is kept sorted so
    that every downstream algorithm is deterministic.
    """

    positions: tuple[int, ...]
    ground: tuple[int, ...]
    adj: dict[int, tuple[int, ...]]

    @classmethod
    def from_family(cls, fam: FiniteFamily) -> "BipartiteIncidence":
        positions = tuple(range(1, len(fam.sets) + 1))
        adj = {p: tuple(sorted(fam.sets[p - 1])) for p in positions}
        return cls(positions, tuple(sorted(fam.ground)), adj)


def max_matching(g: BipartiteIncidence) -> tuple[int, dict[int, int]]:
    """Maximum matching size plus one maximum matching, position -> element.

    Hopcroft-Karp with breadth-first phase layering.  The distance map is
    keyed by left vertices plus a None sentinel standing for "reached a free
    element".  Before returning, maximality is re-verified by checking that
    no augmenting path remains.
    """
    inf = float("inf")
    pair_pos: dict[int, int] = {}
    pair_elem: dict[int, int] = {}
    dist: dict[int | None, float] = {}

    def bfs() -> bool:
        queue: deque[int] = deque()
        for p in g.positions:
            if p not in pair_pos:
                dist[p] = 0
                queue.append(p)
            else:
                dist[p] = inf
        dist[None] = inf
        while queue:
            p = queue.popleft()
            if dist[p] < dist[None]:
                for e in g.adj[p]:
                    q = pair_elem.get(e)
                    if dist[q] == inf:
                        dist[q] = dist[p] + 1
                        if q is not None:
                            queue.append(q)
        return dist[None] != inf

    def dfs(p: int) -> bool:
        for e in g.adj[p]:
            q = pair_elem.get(e)
            if dist[q] == dist[p] + 1:
                if q is None or dfs(q):
                    pair_pos[p] = e
                    pair_elem[e] = p
                    return True
        dist[p] = inf
        return False

    while bfs():
        for p in g.positions:
            if p not in pair_pos:
                dfs(p)

    if _augmenting_path_exists(g, pair_pos, pair_elem):
        raise AssertionError("matching reported as maximum but an augmenting path remains")
    return len(pair_pos), dict(pair_pos)


def _augmenting_path_exists(g, pair_pos, pair_elem) -> bool:
    """Single alternating-path sweep; certificate that the matching is maximum."""
    frontier = deque(p for p in g.positions if p not in pair_pos)
    seen_pos = set(frontier)
    seen_elem = set()
    while frontier:
        p = frontier.popleft()
        for e in g.adj[p]:
            if e in seen_elem:
                continue
            seen_elem.add(e)
            q = pair_elem.get(e)
            if q is None:
                return True
            if q not in seen_pos:
                seen_pos.add(q)
                frontier.append(q)
    return False


def _deficiency_witness(g, pair_pos, pair_elem) -> frozenset[int]:
    """Positions reachable from unmatched ones along alternating paths.

    This set attains the maximum deficiency |F| - |N(F)| and is contained in
    every other maximiser, so it is the unique inclusion-minimal witness.
    """
    reached = {p for p in g.positions if p not in pair_pos}
    queue = deque(reached)
    seen_elem = set()
    while queue:
        p = queue.popleft()
        for e in g.adj[p]:
            if e in seen_elem:
                continue
            seen_elem.add(e)
            q = pair_elem.get(e)
            if q is not None and q not in reached:
                reached.add(q)
                queue.append(q)
    return frozenset(reached)


def sdr_exists(fam: FiniteFamily) -> bool:
    """True iff the family has a system of distinct representatives."""
    size, _ = max_matching(BipartiteIncidence.from_family(fam))
    return size == len(fam.sets)


@dataclass(frozen=True)
class SurplusReport:
    """Certificate for the maximum surplus n|F| - |union of F| over subsets F.

    witness_F lists original family positions.  The matching refers to the
    n-fold expanded family: copy c of original position p sits at expanded
    position (p-1)*n + c.
    """

    n: int
    positions: int
    max_surplus: int
    witness_F: tuple[int, ...]
    matching: tuple[tuple[int, int], ...]

    def to_doc(self) -> dict:
        return {
            "max_surplus": self.max_surplus,
            "witness_F": list(self.witness_F),
            "matching": [[p, e] for p, e in self.matching],
        }


def max_surplus(fam: FiniteFamily, n: int = 1) -> SurplusReport:
    """Maximum of n|F| - |union of F| over all position subsets, F = {} included.

    Computed through the deficiency identity on the n-fold expansion, never by
    subset enumeration.  The witness collapses the expansion back to original
    positions; copies of one position always travel together because they
    share a neighborhood.
    """
    if n < 1:
        raise ValueError(f"multiplicity must be >= 1, got {n}")
    expanded = expand_multiplicity(fam, n) if n > 1 else fam
    g = BipartiteIncidence.from_family(expanded)
    size, pair_pos = max_matching(g)
    pair_elem = {e: p for p, e in pair_pos.items()}
    reached = _deficiency_witness(g, pair_pos, pair_elem)
    witness = sorted({(p - 1) // n + 1 for p in reached})
    return SurplusReport(
        n=n,
        positions=len(fam.sets),
        max_surplus=len(expanded.sets) - size,
        witness_F=tuple(witness),
        matching=tuple(sorted(pair_pos.items())),
    )


@dataclass(frozen=True)
class MinorizationDecision:
    """Outcome and certificate of a trivial-minorization query.

    For a positive answer, `window` is the smallest window length whose
    surplus at multiplicity n reaches m and `certificate` is that window's
    surplus report.  For a negative answer the certificate carries the
    supremum witness.  `surplus_sup` is the supremum over all finite windows,
    INFINITE when unbounded.
    """

    decision: bool
    m: int
    n: int
    surplus_sup: int | Infinite
    window: int
    certificate: SurplusReport
    unbounded_reason: str | None = None

    def to_doc(self) -> dict:
        doc = {
            "decision": self.decision,
            "m": self.m,
            "n": self.n,
            "surplus_sup": "infinite" if isinstance(self.surplus_sup, Infinite) else self.surplus_sup,
            "window": self.window,
        }
        doc.update(self.certificate.to_doc())
        if self.unbounded_reason:
            doc["unbounded_reason"] = self.unbounded_reason
        return doc


def decide_trivial_minorization(
    fam: ProjectionFamily | FiniteFamily, m: int, n: int
) -> MinorizationDecision:
    """Decide whether m trivial rank-one summands embed under n copies of Q.

    Symbolic tails are handled through the closed-form surplus supremum; the
    positive certificate window is found by a scan that a shape-derived bound
    keeps finite.
    """
    # classify builds on this module; import deferred to avoid the cycle
    from .classify import surplus_sup, surplus_window_bound

    if isinstance(fam, FiniteFamily):
        fam = ProjectionFamily(fam.sets)
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    sup = surplus_sup(fam, n)
    if not isinstance(sup.value, Infinite) and sup.value < m:
        return MinorizationDecision(False, m, n, sup.value, sup.window, sup.report)
    bound = surplus_window_bound(fam, n, m)
    for t in range(bound + 1):
        rep = max_surplus(window(fam, t), n)
        if rep.max_surplus >= m:
            return MinorizationDecision(True, m, n, sup.value, t, rep, sup.reason)
    raise AssertionError("certified surplus not reached within its window bound")
