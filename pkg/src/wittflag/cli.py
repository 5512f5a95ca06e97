"""Command-line front end.

    wittflag classify TYPE
    wittflag witt TYPE SUBSET
    wittflag table NAME
    wittflag involution TYPE SUBSET

SUBSET is a comma-separated list of node indices (``2,3,4``), a mask with
one character per node (``o***``, '*' = in the subset), or ``-`` for the
empty set.  Exit codes: 0 success, 2 parse error, 3 theorem violation,
4 budget exceeded (conjugacy search or character product).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Sequence

from . import characters
from .conditions import classify_condition
from .degrees import TheoremViolation, degree_subset_candidates, witt_presentation
from .rootdata import InvalidType, RootDatum, SimpleType, build_root_datum
from .tables import TABLE_NAMES, build_table, nodes_str, to_tsv
from .weyl import (
    BudgetExceeded,
    Involution,
    conjugate_involutions,
    conjugating_element,
    duality_permutation,
    longest_element,
    mask_string,
    subdiagram_type,
    subset_class,
    subsets_up_to_equivalence,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_PARSE, EXIT_THEOREM, EXIT_BUDGET = 0, 2, 3, 4


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------- parsing

def parse_type(text: str, rank_cap: int) -> RootDatum:
    try:
        stype = SimpleType.parse(text)
    except InvalidType as exc:
        raise ParseError(str(exc)) from None
    if stype.rank > rank_cap:
        raise ParseError(f"rank {stype.rank} exceeds the rank cap {rank_cap}")
    return build_root_datum(stype)


def parse_subset(datum: RootDatum, text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-", "none", "empty"):
        return ()
    if set(text) <= {"o", "*"}:
        if len(text) != datum.rank:
            raise ParseError(f"mask {text!r} has {len(text)} nodes, {datum.type} has {datum.rank}")
        return tuple(i + 1 for i, ch in enumerate(text) if ch == "*")
    try:
        nodes = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise ParseError(f"cannot parse subset {text!r}") from None
    for i in nodes:
        if not 1 <= i <= datum.rank:
            raise ParseError(f"node {i} out of range 1..{datum.rank} for {datum.type}")
    return tuple(nodes)


# ---------------------------------------------------------------- reports

def _nodes(S) -> list[int]:
    return [int(x) for x in S] if S is not None else None


def report_classify(datum: RootDatum) -> dict[str, Any]:
    classes = []
    for S in subsets_up_to_equivalence(datum):
        classes.append(
            {
                "nodes": _nodes(S),
                "mask": mask_string(datum, S),
                "components": subdiagram_type(datum, S),
                "class_size": len(subset_class(datum, S)),
            }
        )
    return {"class_count": len(classes), "classes": classes}


def report_witt(datum: RootDatum, H, budget, threads, degree_cap) -> dict[str, Any]:
    verdict = classify_condition(datum, H)
    witt = witt_presentation(datum, H, budget, threads)
    inter = verdict.orbit_intersections or {}
    out = {
        "verdict": {
            "status": verdict.status,
            "parameter_I": _nodes(verdict.parameter_I),
            "passing_I": [_nodes(I) for I in verdict.passing_I],
            "translating_word": list(verdict.translating_w.word) if verdict.translating_w is not None else None,
            "orbit_intersections": [
                {"orbit": _nodes(k), "weight": list(v)} for k, v in sorted(inter.items())
            ],
        },
        "presentation": {
            "status": witt.status,
            "degree1_count": witt.degree1_count,
            "degree3_count": witt.degree3_count,
            "generator_count": witt.generator_count,
            "parameter_I": _nodes(witt.parameter_I),
            "provenance": witt.provenance,
            "notes": list(witt.notes),
        },
    }
    if degree_cap is not None and verdict.status == "OrbitBasis":
        out["free_generation"] = {
            "degree_cap": degree_cap,
            "free": characters.verify_free_generation(datum, H, verdict.parameter_I, degree_cap),
        }
    return out


def report_involution(datum: RootDatum, H, budget, threads) -> dict[str, Any]:
    w = longest_element(datum, H)
    inv = Involution.of(w)
    w_o = longest_element(datum, datum.nodes)
    subsets = degree_subset_candidates(datum, H, budget, threads)
    evidence = []
    for I in subsets:
        target = w_o * longest_element(datum, I)
        g = conjugating_element(datum, w, target, budget, threads)
        evidence.append({"I": _nodes(I), "word": list(g.word)})
    # standard involutions w_o^J with [J] trivial (w_o^J = -1 on the span of J)
    partners = []
    for J in sorted(subset for subset in _all_subsets(datum) if len(subset) == inv.ell_minus):
        if any(a != b for a, b in duality_permutation(datum, J).items()):
            continue
        if conjugate_involutions(datum, w, longest_element(datum, J), budget, threads):
            partners.append(J)
    return {
        "ell_plus": inv.ell_plus,
        "ell_minus": inv.ell_minus,
        "degree_subsets": [_nodes(I) for I in subsets],
        "evidence": evidence,
        "standard_partners": [_nodes(J) for J in partners],
    }


def _all_subsets(datum: RootDatum):
    import itertools

    for r in range(datum.rank + 1):
        yield from itertools.combinations(datum.nodes, r)


def report_table(name: str) -> dict[str, Any]:
    header, rows = build_table(name)
    return {"header": list(header), "rows": rows}


# ---------------------------------------------------------------- text rendering

def render_text(command: str, query: dict, result: dict) -> str:
    lines: list[str] = []
    if command == "classify":
        lines.append(f"{query['type']}: {result['class_count']} classes of subsets up to Weyl equivalence")
        for c in result["classes"]:
            comp = "+".join(c["components"]) or "empty"
            lines.append(f"  {c['mask']}  {{{nodes_str(c['nodes'])}}}  {comp}  ({c['class_size']} subsets)")
    elif command == "witt":
        v, p = result["verdict"], result["presentation"]
        lines.append(f"{query['type']}  H = {{{nodes_str(query['H'])}}}  {query['mask']}")
        lines.append(f"  condition: {v['status']}" + (f"  I = {{{nodes_str(v['parameter_I'])}}}" if v["parameter_I"] is not None else ""))
        if len(v["passing_I"]) > 1:
            lines.append("  all passing I: " + "  ".join("{" + nodes_str(I) + "}" for I in v["passing_I"]))
        for item in v["orbit_intersections"]:
            lines.append(f"    W.omega[{nodes_str(item['orbit'])}] meets the fixed cone in {tuple(item['weight'])}")
        lines.append(f"  Witt ring: {p['status']}")
        if p["generator_count"] is not None:
            lines.append(
                f"    {p['generator_count']} generator{'' if p['generator_count'] == 1 else 's'}:"
                f" {p['degree1_count']} of degree 1, {p['degree3_count']} of degree 3"
            )
        if p["parameter_I"] is not None:
            lines.append(f"    degree subset I = {{{nodes_str(p['parameter_I'])}}}")
        if p["provenance"]:
            lines.append(f"    source: {p['provenance']}")
        for n in p["notes"]:
            lines.append(f"    note: {n}")
        if "free_generation" in result:
            fg = result["free_generation"]
            lines.append(f"  free generation up to degree {fg['degree_cap']}: {fg['free']}")
    elif command == "involution":
        lines.append(f"{query['type']}  H = {{{nodes_str(query['H'])}}}")
        lines.append(f"  w_o^H: l+ = {result['ell_plus']}, l- = {result['ell_minus']}")
        for e in result["evidence"]:
            lines.append(f"  conjugate to w_o w_o^I for I = {{{nodes_str(e['I'])}}} via word {e['word']}")
        if not result["evidence"]:
            lines.append("  no subset I satisfies the degree conditions")
        for J in result["standard_partners"]:
            lines.append(f"  conjugate to the standard involution of {{{nodes_str(J)}}}")
    elif command == "table":
        return to_tsv(result["header"], result["rows"]).rstrip("\n")
    return "\n".join(lines)


# ---------------------------------------------------------------- entry point

def _env_int(name: str, default: int | None) -> int | None:
    val = os.environ.get(name)
    if val is None or val == "":
        return default
    try:
        return int(val)
    except ValueError:
        raise ParseError(f"environment variable {name} must be an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--budget", type=int, help="conjugacy BFS budget (env WITTFLAG_BUDGET)")
    common.add_argument("--threads", type=int, help="worker threads (env WITTFLAG_THREADS)")
    common.add_argument("--degree-cap", type=int, help="degree cap for free-generation checks")
    common.add_argument("--rank-cap", type=int, help="largest accepted rank (env WITTFLAG_RANK_CAP, default 8)")
    common.add_argument("--product-cap", type=int, help="largest character product, in term pairs (env WITTFLAG_PRODUCT_CAP)")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    parser = argparse.ArgumentParser(prog="wittflag", description=__doc__.split("\n\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="subsets of the Dynkin diagram up to Weyl equivalence")
    p.add_argument("type")
    p = sub.add_parser("witt", parents=[common], help="conditions and Witt-ring presentation for (type, H)")
    p.add_argument("type")
    p.add_argument("subset")
    p = sub.add_parser("table", parents=[common], help="regenerate a reference table")
    p.add_argument("name", choices=TABLE_NAMES)
    p = sub.add_parser("involution", parents=[common], help="conjugacy data of the involution w_o^H")
    p.add_argument("type")
    p.add_argument("subset")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    saved_product_cap = characters.DEFAULT_PRODUCT_CAP
    try:
        budget = args.budget if args.budget is not None else _env_int("WITTFLAG_BUDGET", None)
        threads = args.threads if args.threads is not None else _env_int("WITTFLAG_THREADS", 1)
        rank_cap = args.rank_cap if args.rank_cap is not None else _env_int("WITTFLAG_RANK_CAP", 8)
        product_cap = args.product_cap if args.product_cap is not None else _env_int("WITTFLAG_PRODUCT_CAP", None)
        if product_cap is not None:
            characters.DEFAULT_PRODUCT_CAP = product_cap
        query: dict[str, Any] = {}
        if args.command == "table":
            query["name"] = args.name
            result = report_table(args.name)
        else:
            datum = parse_type(args.type, rank_cap)
            query["type"] = str(datum.type)
            if args.command == "classify":
                result = report_classify(datum)
            else:
                H = parse_subset(datum, args.subset)
                query["H"] = list(H)
                query["mask"] = mask_string(datum, H)
                if args.command == "witt":
                    result = report_witt(datum, H, budget, threads, args.degree_cap)
                else:
                    result = report_involution(datum, H, budget, threads)
    except ParseError as exc:
        print(f"wittflag: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TheoremViolation as exc:
        print(f"wittflag: theorem violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except BudgetExceeded as exc:
        print(f"wittflag: budget exceeded: {exc} (use --budget or WITTFLAG_BUDGET)", file=sys.stderr)
        return EXIT_BUDGET
    except characters.ProductTooLarge as exc:
        print(f"wittflag: budget exceeded: {exc} (use --product-cap or WITTFLAG_PRODUCT_CAP)", file=sys.stderr)
        return EXIT_BUDGET
    finally:
        characters.DEFAULT_PRODUCT_CAP = saved_product_cap
    report: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "query": query,
        "result": result,
    }
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    if args.json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write(render_text(args.command, query, result) + "\n")
        if args.timing:
            out.write(f"({report['timing']['seconds']:.3f} s)\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
