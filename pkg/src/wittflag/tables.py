"""Regeneration of the reference tables from first principles.

Every table is a list of rows of strings; ``to_tsv`` renders them in the
golden-file format (tab separated, one row per line, a header line starting
with '#').  Weights are printed as signed fundamental-weight tuples such as
``(-1,0,0,2)``; sets of weights are sorted lexicographically and joined
with ';'.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .conditions import ORBIT_BASIS, SINGLE_CELL, classify_condition, fixed_orbit_intersection
from .cone import hilbert_basis
from .degrees import EXTERIOR, KNOWN_NON_EXTERIOR, fundamental_rep_type, witt_presentation
from .rootdata import RootDatum, all_types, build_root_datum, weight_tuple_str
from .weyl import (
    Subset,
    components,
    duality,
    mask_string,
    subsets_equivalent,
    subsets_up_to_equivalence,
)

TABLE_NAMES = ("results-connected", "types", "f4-cone", "f4-orbits")

# Display order and representatives of the rows of the exceptional results table.
# Only the layout is fixed here; every mark is recomputed.
RESULTS_ROWS: dict[str, list[Subset]] = {
    "G2": [(), (1,), (2,)],
    "F4": [(), (1,), (4,), (1, 2), (3, 4), (1, 2, 3), (2, 3, 4)],
    "E6": [(), (1,), (1, 3), (1, 3, 4), (1, 3, 4, 5), (1, 3, 4, 5, 6), (2, 3, 4, 5), (1, 2, 3, 4, 5)],
    "E7": [
        (), (1,), (1, 3), (1, 3, 4), (1, 3, 4, 5), (1, 3, 4, 5, 6), (2, 4, 5, 6, 7),
        (1, 3, 4, 5, 6, 7), (2, 3, 4, 5), (2, 3, 4, 5, 6), (2, 3, 4, 5, 6, 7), (1, 2, 3, 4, 5, 6),
    ],
    "E8": [
        (), (1,), (1, 3), (1, 3, 4), (1, 3, 4, 5), (1, 3, 4, 5, 6), (1, 3, 4, 5, 6, 7),
        (1, 3, 4, 5, 6, 7, 8), (2, 3, 4, 5), (2, 3, 4, 5, 6), (2, 3, 4, 5, 6, 7),
        (2, 3, 4, 5, 6, 7, 8), (1, 2, 3, 4, 5, 6), (1, 2, 3, 4, 5, 6, 7),
    ],
}

F4_ROWS: list[Subset] = [(1, 2, 3), (2, 3, 4), (1, 3), (1, 2, 4), (1, 3, 4)]

TYPE_SYMBOL = {"Real": "*", "Quaternionic": "o", "ComplexPair": "x"}


def nodes_str(S: Iterable[int]) -> str:
    S = tuple(S)
    return ",".join(map(str, S)) if S else "-"


def weights_str(ws: Iterable[Sequence[int]]) -> str:
    return ";".join(weight_tuple_str(w) for w in sorted(tuple(w) for w in ws))


def to_tsv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = ["#" + "\t".join(header)]
    lines += ["\t".join(r) for r in rows]
    return "\n".join(lines) + "\n"


def parse_tsv(text: str) -> tuple[list[str], list[list[str]]]:
    header: list[str] = []
    rows = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            header = line[1:].split("\t")
            continue
        rows.append(line.split("\t"))
    return header, rows


# ---------------------------------------------------------------- results table

def connected_classes(datum: RootDatum) -> list[Subset]:
    """Representatives of the classes of proper subsets H that are empty or connected."""
    full = tuple(datum.nodes)
    return [S for S in subsets_up_to_equivalence(datum) if S != full and len(components(datum, S)) <= 1]


def results_mark(datum: RootDatum, H: Subset) -> str:
    verdict = classify_condition(datum, H)
    if verdict.status == SINGLE_CELL:
        return "single-cell"
    if verdict.status == ORBIT_BASIS:
        return "orbit-basis"
    witt = witt_presentation(datum, H)
    if witt.status == EXTERIOR:
        return "ext"
    if witt.status == KNOWN_NON_EXTERIOR:
        return "fails"
    return "unknown"


def results_rows(datum: RootDatum) -> list[Subset]:
    """Display rows: the fixed layout first, then any connected class it does not cover."""
    rows = list(RESULTS_ROWS.get(str(datum.type), []))
    for S in connected_classes(datum):
        if not any(subsets_equivalent(datum, S, R) for R in rows):
            rows.append(S)
    return rows


RESULTS_HEADER = ("type", "mask", "H", "mark")


def results_connected_table(types: Iterable[str] = ("G2", "F4", "E6", "E7", "E8")) -> list[list[str]]:
    out = []
    for t in types:
        d = build_root_datum(t)
        for H in results_rows(d):
            out.append([t, mask_string(d, H), nodes_str(H), results_mark(d, H)])
    return out


# ---------------------------------------------------------------- types table

TYPES_HEADER = ("type", "pattern")


def type_pattern(datum: RootDatum) -> str:
    return "".join(TYPE_SYMBOL[fundamental_rep_type(datum, a).tag] for a in datum.nodes)


def types_table(max_rank: int = 8) -> list[list[str]]:
    return [[str(t), type_pattern(build_root_datum(t))] for t in all_types(max_rank)]


# ---------------------------------------------------------------- F4 tables

F4_CONE_HEADER = ("mask", "[H]w1", "[H]w2", "[H]w3", "[H]w4", "generators", "free", "relations")


def f4_cone_table() -> list[list[str]]:
    d = build_root_datum("F4")
    out = []
    for H in F4_ROWS:
        dual = duality(d, H)
        images = [weight_tuple_str(dual(d.fundamental_weight(i))) for i in d.nodes]
        m = hilbert_basis(d, H)
        rels = ";".join(weight_tuple_str(r) for r in m.relations) or "-"
        out.append([mask_string(d, H), *images, weights_str(m.hilbert_basis), "yes" if m.is_free else "no", rels])
    return out


F4_ORBITS_HEADER = ("mask", "W.w1", "W.w2", "W.w3", "W.w4")


def f4_orbits_table() -> list[list[str]]:
    d = build_root_datum("F4")
    out = []
    for H in F4_ROWS:
        cells = [weights_str(fixed_orbit_intersection(d, H, d.fundamental_weight(i))) or "-" for i in d.nodes]
        out.append([mask_string(d, H), *cells])
    return out


def build_table(name: str) -> tuple[tuple[str, ...], list[list[str]]]:
    if name == "results-connected":
        return RESULTS_HEADER, results_connected_table()
    if name == "types":
        return TYPES_HEADER, types_table()
    if name == "f4-cone":
        return F4_CONE_HEADER, f4_cone_table()
    if name == "f4-orbits":
        return F4_ORBITS_HEADER, f4_orbits_table()
    raise KeyError(f"unknown table {name!r}; choose from {', '.join(TABLE_NAMES)}")
