"""Fullness and stable-finiteness classification of projection families.

One quantity rules everything here: the supremum, over all finite position
subsets F, of the surplus m|F| - |union of F| at multiplicity m.

  * Bounded at every m: the thresholds N(m) = 1 + sup certify that N(m)
    trivial summands never fit under m copies while N(m) - 1 do somewhere,
    the projection generates a proper ideal, and every multiple stays finite.
  * Unbounded at some m: arbitrarily many trivial summands fit under m
    copies, the projection is full, and m copies are properly infinite.

For the supported tail rules the supremum is computed exactly.  Tail blocks
are disjoint from everything else, so a tail position i contributes
m - size(i) independently of all other choices: positions with oversized
blocks never help, and the supremum is attained inside an explicit cutoff
window handed to the matching engine.  Constant tails and undersized constant
blocks grow without bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FullFamilyError, PatternNotFoundError, UndecidableFamilyError
from .family import Constant, DisjointBlocks, ProjectionFamily, window
from .hall import (
    INFINITE,
    Infinite,
    SurplusReport,
    decide_trivial_minorization,
    max_surplus,
)

LABEL_NON_FULL = "non_full_stably_finite"
LABEL_FULL = "full_stably_properly_infinite"


@dataclass(frozen=True)
class SurplusSup:
    """Outcome of the surplus supremum search at one multiplicity.

    Finite case: `window` is a prefix length whose window attains the value
    and `report` the certificate on that window.  Unbounded case: `reason`
    states which tail shape forces growth.
    """

    n: int
    value: int | Infinite
    window: int | None
    report: SurplusReport | None
    reason: str | None


def _cutoff_window(fam: ProjectionFamily, n: int) -> int | None:
    """Window length inside which the surplus supremum is attained; None if unbounded.

    Valid because tail blocks are disjoint from all other sets: dropping a
    tail position with size(i) > n can only raise the surplus, dropping one
    with size(i) == n keeps it, so some maximiser lives among the prefix plus
    the tail positions with size(i) < n.
    """
    tail = fam.tail
    prefix_len = len(fam.prefix)
    if tail is None:
        return prefix_len
    if isinstance(tail, Constant):
        return None
    if isinstance(tail, DisjointBlocks):
        if tail.a == 0:
            return prefix_len if tail.b >= n else None
        return prefix_len + max(0, (n - 1 - tail.b) // tail.a)
    raise UndecidableFamilyError("undecidable family shape")


def _unbounded_reason(fam: ProjectionFamily, n: int) -> str:
    tail = fam.tail
    if isinstance(tail, Constant):
        return (
            f"constant tail repeats one set of size {len(tail.members)}; "
            f"each window step eventually adds {n} to the surplus"
        )
    return (
        f"tail blocks keep constant size {tail.b} < {n}; "
        f"each tail position adds {n - tail.b} to the surplus"
    )


def surplus_sup(fam: ProjectionFamily, n: int) -> SurplusSup:
    """Supremum over all finite position subsets of n|F| - |union of F|."""
    if n < 1:
        raise ValueError(f"multiplicity must be >= 1, got {n}")
    cutoff = _cutoff_window(fam, n)
    if cutoff is None:
        return SurplusSup(n, INFINITE, None, None, _unbounded_reason(fam, n))
    rep = max_surplus(window(fam, cutoff), n)
    return SurplusSup(n, rep.max_surplus, cutoff, rep, None)


def surplus_window_bound(fam: ProjectionFamily, n: int, target: int) -> int:
    """Upper bound on the smallest window whose surplus at n reaches target.

    Only meaningful when the target is reachable, i.e. the supremum is at
    least the target; the unbounded shapes get an all-tail-positions bound.
    """
    cutoff = _cutoff_window(fam, n)
    if cutoff is not None:
        return cutoff
    prefix_len = len(fam.prefix)
    tail = fam.tail
    if isinstance(tail, Constant):
        return prefix_len + (target + len(tail.members) + n - 1) // n
    gain = n - tail.b
    return prefix_len + (target + gain - 1) // gain


def max_trivial_multiplicity(fam: ProjectionFamily) -> int | Infinite:
    """Largest k with k trivial summands under one copy of Q; INFINITE if every k fits."""
    return surplus_sup(fam, 1).value


def compute_N(fam: ProjectionFamily, m: int) -> int | Infinite:
    """Least count of trivial summands that does NOT embed under m copies of Q.

    Equals 1 + (surplus supremum at multiplicity m); INFINITE exactly when
    the supremum is unbounded, in which case the family is full.
    """
    value = surplus_sup(fam, m).value
    return INFINITE if isinstance(value, Infinite) else value + 1


@dataclass(frozen=True)
class TightSet:
    """Positions F0 attaining the maximal surplus k at multiplicity 1.

    Satisfies |union over F0| + k = |F0|; empty when k = 0.
    """

    positions: tuple[int, ...]
    k: int


def find_tight_set(fam: ProjectionFamily) -> TightSet:
    """Canonical minimal witness of the maximal multiplicity-1 surplus."""
    sup = surplus_sup(fam, 1)
    if isinstance(sup.value, Infinite):
        raise FullFamilyError("family is full; no tight set")
    if sup.value == 0:
        return TightSet((), 0)
    return TightSet(sup.report.witness_F, sup.value)


def _fullness_witness_multiplicity(fam: ProjectionFamily) -> int | None:
    """Smallest multiplicity with unbounded surplus; None when the family is non-full."""
    tail = fam.tail
    if tail is None:
        return None
    if isinstance(tail, Constant):
        return 1
    if isinstance(tail, DisjointBlocks):
        return tail.b + 1 if tail.a == 0 else None
    raise UndecidableFamilyError("undecidable family shape")


def _strict_sample_start(fam: ProjectionFamily) -> int:
    """First window from which the sampled surpluses provably grow strictly.

    From this window on, every optimal subset must contain a tail position,
    so the next window's optimum strictly beats it.
    """
    prefix_len = len(fam.prefix)
    if isinstance(fam.tail, Constant):
        return max(1, prefix_len + len(fam.tail.members))
    return max(1, prefix_len)


@dataclass(frozen=True)
class Classification:
    """Dichotomy verdict plus its certificate.

    Non-full: table m -> N(m), the maximal trivial multiplicity k, and the
    tight set behind it.  Full: the least unbounded multiplicity and ten
    strictly increasing window surpluses at it.
    """

    label: str
    n_table: dict[int, int] | None = None
    k: int | None = None
    tight_set: TightSet | None = None
    witness_m: int | None = None
    surplus_samples: tuple[tuple[int, int], ...] | None = None

    def to_doc(self) -> dict:
        if self.label == LABEL_NON_FULL:
            return {
                "label": self.label,
                "N_table": {str(m): n for m, n in self.n_table.items()},
                "k": self.k,
                "F0": list(self.tight_set.positions),
            }
        return {
            "label": self.label,
            "witness_m": self.witness_m,
            "surplus_samples": [[t, s] for t, s in self.surplus_samples],
        }


def classify(fam: ProjectionFamily, m_max: int = 6) -> Classification:
    """Decide the dichotomy: non-full and stably finite, or full and properly infinite."""
    if m_max < 1:
        raise ValueError(f"m_max must be >= 1, got {m_max}")
    witness_m = _fullness_witness_multiplicity(fam)
    if witness_m is not None:
        start = _strict_sample_start(fam)
        samples = tuple(
            (t, max_surplus(window(fam, t), witness_m).max_surplus)
            for t in range(start, start + 10)
        )
        return Classification(LABEL_FULL, witness_m=witness_m, surplus_samples=samples)
    table = {}
    for m in range(1, m_max + 1):
        n = compute_N(fam, m)
        if isinstance(n, Infinite):
            raise AssertionError("non-full shape produced an unbounded threshold")
        table[m] = n
    tight = find_tight_set(fam)
    return Classification(LABEL_NON_FULL, n_table=table, k=tight.k, tight_set=tight)


@dataclass(frozen=True)
class PatternRow:
    """One multiplicity's finiteness pattern: N(m) blocked at m, admitted at l."""

    m: int
    n_threshold: int
    blocked_at_m: bool
    l: int
    l_window: int
    l_surplus: int


@dataclass(frozen=True)
class PatternReport:
    rows: tuple[PatternRow, ...]

    def to_doc(self) -> dict:
        return {
            "rows": [
                {
                    "m": r.m,
                    "N": r.n_threshold,
                    "blocked_at_m": r.blocked_at_m,
                    "l": r.l,
                    "l_window": r.l_window,
                    "l_surplus": r.l_surplus,
                }
                for r in self.rows
            ]
        }


def verify_minorization_pattern(
    fam: ProjectionFamily, m_max: int = 4, l_limit: int = 64
) -> PatternReport:
    """Exhibit, for each m <= m_max, the finite-but-not-stably-finite pattern.

    Confirms that N(m) trivial summands do not fit under m copies, then
    searches the least l > m under which they do fit.  Only meaningful for
    non-full families; such an l always exists for them because the surplus
    supremum grows without bound in the multiplicity.
    """
    rows = []
    for m in range(1, m_max + 1):
        n_threshold = compute_N(fam, m)
        if isinstance(n_threshold, Infinite):
            raise FullFamilyError("family is full")
        blocked = not decide_trivial_minorization(fam, n_threshold, m).decision
        if not blocked:
            raise AssertionError(f"threshold N({m}) = {n_threshold} is not minimal")
        for l in range(m + 1, l_limit + 1):
            dec = decide_trivial_minorization(fam, n_threshold, l)
            if dec.decision:
                rows.append(
                    PatternRow(
                        m=m,
                        n_threshold=n_threshold,
                        blocked_at_m=blocked,
                        l=l,
                        l_window=dec.window,
                        l_surplus=dec.certificate.max_surplus,
                    )
                )
                break
        else:
            raise PatternNotFoundError("pattern not found within bound")
    return PatternReport(tuple(rows))
