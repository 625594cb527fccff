"""Exact deciders for diagonal families of finite index sets.

A family assigns each position j a finite set I_j of natural numbers.  The
questions answered here are combinatorial throughout: how many pairwise
orthogonal trivial summands fit under n copies of the family, whether that
count stays bounded as n grows, and whether a distinct-representative
assignment survives composition with the shift-style endomorphism.  Every
decision returns a finite certificate that can be replayed independently.
"""

from .classify import (
    LABEL_FULL,
    LABEL_NON_FULL,
    Classification,
    PatternReport,
    PatternRow,
    SurplusSup,
    TightSet,
    classify,
    compute_N,
    find_tight_set,
    max_trivial_multiplicity,
    surplus_sup,
    surplus_window_bound,
    verify_minorization_pattern,
)
from .dynamics import (
    BAtom,
    Base,
    GammaEntry,
    GammaFamily,
    Nu,
    SimulationReport,
    Transversal,
    alpha,
    build_transversal,
    gamma_iterate,
    hall_check_gamma,
    simulate,
    verify_transversal,
)
from .errors import (
    FamilyFormatError,
    FamilyIndexError,
    FullFamilyError,
    HallViolationError,
    OracleBoundsError,
    PatternNotFoundError,
    ProjclassError,
    UndecidableFamilyError,
    WindowTooLargeError,
)
from .euler import (
    MultilinearPoly,
    chern_vector,
    euler_class,
    indicator_vector,
    sdr_count,
    tensor_line_bundles,
)
from .family import (
    Constant,
    DisjointBlocks,
    FiniteFamily,
    ProjectionFamily,
    eval_set,
    expand_multiplicity,
    family_to_doc,
    index_set,
    parse_family,
    reindex_to_odd,
    window,
)
from .hall import (
    INFINITE,
    BipartiteIncidence,
    Infinite,
    MinorizationDecision,
    SurplusReport,
    decide_trivial_minorization,
    max_matching,
    max_surplus,
    sdr_exists,
)

__version__ = "0.1.0"

__all__ = [
    "BAtom",
    "Base",
    "BipartiteIncidence",
    "Classification",
    "Constant",
    "DisjointBlocks",
    "FamilyFormatError",
    "FamilyIndexError",
    "FiniteFamily",
    "FullFamilyError",
    "GammaEntry",
    "GammaFamily",
    "HallViolationError",
    "INFINITE",
    "Infinite",
    "LABEL_FULL",
    "LABEL_NON_FULL",
    "MinorizationDecision",
    "MultilinearPoly",
    "Nu",
    "OracleBoundsError",
    "PatternNotFoundError",
    "PatternReport",
    "PatternRow",
    "ProjclassError",
    "ProjectionFamily",
    "SimulationReport",
    "SurplusReport",
    "SurplusSup",
    "TightSet",
    "Transversal",
    "UndecidableFamilyError",
    "WindowTooLargeError",
    "alpha",
    "build_transversal",
    "chern_vector",
    "classify",
    "compute_N",
    "decide_trivial_minorization",
    "euler_class",
    "eval_set",
    "expand_multiplicity",
    "family_to_doc",
    "find_tight_set",
    "gamma_iterate",
    "hall_check_gamma",
    "index_set",
    "indicator_vector",
    "max_matching",
    "max_surplus",
    "max_trivial_multiplicity",
    "parse_family",
    "reindex_to_odd",
    "sdr_count",
    "sdr_exists",
    "simulate",
    "surplus_sup",
    "surplus_window_bound",
    "tensor_line_bundles",
    "verify_minorization_pattern",
    "verify_transversal",
    "window",
]
