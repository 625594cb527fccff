"""Command line front end.

Subcommands map one-to-one onto the library deciders; every command reads a
family document (or inline JSON), runs exactly one decision, and prints one
JSON object with the certificate embedded.  Output is byte-deterministic for
a given input and seed.  Exit codes: 0 on success, 2 on input errors, 1 when
an internal guard trips or the oracles disagree.

The orbit entry cap honours the PROJCLASS_ENTRY_CAP environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Sequence

from . import dynamics
from .classify import classify, compute_N, surplus_sup
from .errors import (
    FamilyFormatError,
    FamilyIndexError,
    FullFamilyError,
    HallViolationError,
    OracleBoundsError,
    ProjclassError,
    UndecidableFamilyError,
    WindowTooLargeError,
)
from .euler import euler_class, indicator_vector, sdr_count
from .family import FiniteFamily, ProjectionFamily, parse_family
from .hall import Infinite, decide_trivial_minorization, max_surplus, sdr_exists


def _load_family(path: str) -> ProjectionFamily:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_family(json.loads(text))


def _render_text(doc: object, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(doc, dict):
        for key in doc:
            value = doc[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_flat(value)}")
    elif isinstance(doc, list):
        for value in doc:
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {_flat(value)}")
    else:
        lines.append(f"{pad}{_flat(doc)}")
    return lines


def _is_flat(value: object) -> bool:
    return isinstance(value, list) and all(
        not isinstance(v, (dict, list)) or not v for v in value
    )


def _flat(value: object) -> str:
    return json.dumps(value, sort_keys=True)


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "text":
        print("\n".join(_render_text(doc)))
    else:
        print(json.dumps(doc, sort_keys=True))


def _surplus_value_doc(value) -> object:
    return "infinite" if isinstance(value, Infinite) else value


def cmd_analyze(args) -> tuple[dict, int]:
    fam = _load_family(args.family)
    decision = decide_trivial_minorization(fam, args.m, args.n)
    return decision.to_doc(), 0


def cmd_classify(args) -> tuple[dict, int]:
    fam = _load_family(args.family)
    return classify(fam, args.m_max).to_doc(), 0


def cmd_nbound(args) -> tuple[dict, int]:
    fam = _load_family(args.family)
    n_value = compute_N(fam, args.m)
    sup = surplus_sup(fam, args.m)
    doc: dict = {"m": args.m, "N": _surplus_value_doc(n_value)}
    if sup.report is not None:
        doc["window"] = sup.window
        doc["witness_F"] = list(sup.report.witness_F)
        doc["attained_surplus"] = sup.report.max_surplus
    else:
        doc["unbounded_reason"] = sup.reason
    return doc, 0


def cmd_euler(args) -> tuple[dict, int]:
    bundles_doc = json.loads(args.bundles)
    if not isinstance(bundles_doc, list):
        raise FamilyFormatError("bundles must be a JSON array of Chern vectors")
    bundles = []
    for entry in bundles_doc:
        if isinstance(entry, list):
            bundles.append(indicator_vector(frozenset(_positive_ints(entry))))
        elif isinstance(entry, dict):
            bundles.append({int(i): c for i, c in entry.items()})
        else:
            raise FamilyFormatError(f"bundle must be an array or an object, got {entry!r}")
    poly = euler_class(bundles)
    return {"terms": poly.to_doc(), "zero": not poly}, 0


def _positive_ints(entries: list) -> list[int]:
    for e in entries:
        if not isinstance(e, int) or isinstance(e, bool) or e < 1:
            raise FamilyFormatError(f"bundle coordinates must be positive integers, got {e!r}")
    return entries


def cmd_endo_sim(args) -> tuple[dict, int]:
    fam = _load_family(args.family)
    if args.k == "auto":
        k = None
    else:
        try:
            k = int(args.k)
        except ValueError:
            raise FamilyFormatError(f'--k takes an integer or "auto", got {args.k!r}')
    cap = int(os.environ.get("PROJCLASS_ENTRY_CAP", dynamics.DEFAULT_ENTRY_CAP))
    try:
        report = dynamics.simulate(fam, args.depth, args.window, args.prefix, k, cap)
    except ValueError as exc:
        raise FamilyFormatError(str(exc))
    doc = report.to_doc()
    if args.dump_assignment:
        doc["assignment"] = report.transversal.to_doc()
    return doc, 0


def cmd_oracle_check(args) -> tuple[dict, int]:
    doc = oracle_check(args.max_sets, args.max_ground, args.random, args.seed)
    return doc, 0 if doc["disagreements"] == 0 else 1


def oracle_check(max_sets: int, max_ground: int, random_cases: int, seed: int) -> dict:
    """Cross-check all four routes to the Hall question on small families.

    Exhaustively enumerates every ordered family with 1..max_sets subsets of
    {1..max_ground} (empty sets included), then adds seeded random families
    within the same bounds.  Per family, four independently computed answers
    must agree: matching-based sdr_exists, Euler class nonvanishing, positive
    permanent, and a direct subset sweep showing no surplus.
    """
    if max_sets < 1 or max_ground < 1:
        raise OracleBoundsError("bounds must be >= 1")
    if max_sets > 7:
        raise OracleBoundsError("bounds too large for exhaustive oracle")
    total = sum((2 ** max_ground) ** s for s in range(1, max_sets + 1))
    if total > 250_000:
        raise OracleBoundsError("bounds too large for exhaustive oracle")

    subsets = [
        frozenset(i + 1 for i in range(max_ground) if mask >> i & 1)
        for mask in range(2 ** max_ground)
    ]
    exhaustive = 0
    disagreements: list[dict] = []
    import itertools

    for size in range(1, max_sets + 1):
        for combo in itertools.product(subsets, repeat=size):
            exhaustive += 1
            if not _four_way_agree(combo):
                disagreements.append({"sets": [sorted(s) for s in combo]})

    rng = random.Random(seed)
    for _ in range(random_cases):
        size = rng.randint(1, max_sets)
        combo = tuple(
            frozenset(rng.sample(range(1, max_ground + 1), rng.randint(0, max_ground)))
            for _ in range(size)
        )
        if not _four_way_agree(combo):
            disagreements.append({"sets": [sorted(s) for s in combo]})

    doc = {
        "max_sets": max_sets,
        "max_ground": max_ground,
        "seed": seed,
        "exhaustive_cases": exhaustive,
        "random_cases": random_cases,
        "disagreements": len(disagreements),
    }
    if disagreements:
        doc["counterexamples"] = disagreements[:5]
    return doc


def _four_way_agree(sets: tuple[frozenset[int], ...]) -> bool:
    fam = FiniteFamily(sets)
    by_matching = sdr_exists(fam)
    by_euler = bool(euler_class(indicator_vector(s) for s in sets))
    by_permanent = sdr_count(fam) > 0
    # direct subset sweep, sharing no code with the matching engine
    by_sweep = True
    positions = list(sets)
    for mask in range(1, 1 << len(positions)):
        chosen = [positions[i] for i in range(len(positions)) if mask >> i & 1]
        if len(chosen) > len(frozenset().union(*chosen)):
            by_sweep = False
            break
    return by_matching == by_euler == by_permanent == by_sweep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projclass",
        description="Exact deciders for diagonal projection families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    p = add("analyze", cmd_analyze, "decide m trivial summands under n copies")
    p.add_argument("--family", required=True, help="path to a family JSON document")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("classify", cmd_classify, "full vs non-full dichotomy with certificate")
    p.add_argument("--family", required=True)
    p.add_argument("--m-max", dest="m_max", type=int, default=6)

    p = add("nbound", cmd_nbound, "least trivial count that does not fit under m copies")
    p.add_argument("--family", required=True)
    p.add_argument("--m", type=int, required=True)

    p = add("euler", cmd_euler, "Euler class of a sum of line bundles")
    p.add_argument("--bundles", required=True, help="JSON array of supports or coefficient maps")

    p = add("endo-sim", cmd_endo_sim, "orbit transversal simulation")
    p.add_argument("--family", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--prefix", type=int, required=True)
    p.add_argument("--k", default="auto", help='pool size override, or "auto"')
    p.add_argument("--dump-assignment", action="store_true")

    p = add("oracle-check", cmd_oracle_check, "cross-check the oracles on small families")
    p.add_argument("--max-sets", dest="max_sets", type=int, default=3)
    p.add_argument("--max-ground", dest="max_ground", type=int, default=3)
    p.add_argument("--random", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = args.handler(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return 2
    except (WindowTooLargeError, HallViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        FamilyFormatError,
        FamilyIndexError,
        UndecidableFamilyError,
        FullFamilyError,
        OracleBoundsError,
        FileNotFoundError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProjclassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(doc, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
