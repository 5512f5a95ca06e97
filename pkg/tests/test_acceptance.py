"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line (collected in ``RESULTS`` and
printed in the pytest terminal summary, or directly when this file is run as
a script).  Runtime limits are measured with cold root-datum caches.
"""
from __future__ import annotations

import itertools
import subprocess
import sys
import time
from pathlib import Path

from wittflag import rootdata
from wittflag.characters import decompose_into_symmetric_sums, multiply, symmetric_sum
from wittflag.conditions import (
    NEITHER,
    check_single_cell,
    classify_condition,
    delta_gamma,
    fixed_orbit_intersection,
    sign_switching_roots,
)
from wittflag.cone import hilbert_basis
from wittflag.degrees import (
    COMPLEX,
    EXTERIOR,
    KNOWN_NON_EXTERIOR,
    QUATERNIONIC,
    REAL,
    find_degree_subset_I,
    type_counts,
    witt_presentation,
)
from wittflag.rootdata import build_root_datum
from wittflag.tables import F4_ROWS, build_table, parse_tsv
from wittflag.weyl import conjugate_involutions, fixed_rank, longest_element, subsets_equivalent

from conftest import ALL_TYPES, SMALL_TYPES, all_subsets

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tables"
RESULTS: dict[int, str] = {}

# Rows of the exceptional results table that the computation marks although
# the printed table leaves them unmarked (see README, "Known discrepancies").
UNMARKED_BUT_ORBIT_BASIS = {("E8", "1,3,4,5,6"), ("E8", "1,3,4,5,6,7"), ("E8", "1,3,4,5,6,7,8")}


class Criterion:
    """Collects failed sub-checks and the wall-clock time of one criterion."""

    def __init__(self, number: int, title: str, limit: float | None = None):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list[str] = []
        self.checks = 0

    def __enter__(self):
        rootdata._build.cache_clear()
        self.start = time.perf_counter()
        return self

    def check(self, ok: bool, what: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(what)

    def __exit__(self, exc_type, exc, tb):
        seconds = time.perf_counter() - self.start
        if exc is not None:
            self.failures.append(f"raised {exc_type.__name__}: {exc}")
        if self.limit is not None and seconds > self.limit:
            self.failures.append(f"took {seconds:.1f} s, limit {self.limit:g} s")
        status = "FAIL" if self.failures else "PASS"
        timing = f"{seconds:.1f} s" + (f" of {self.limit:g} s" if self.limit is not None else "")
        line = f"{status}  criterion {self.number:2d}  {self.title}  [{self.checks} checks, {timing}]"
        if self.failures:
            shown = "; ".join(self.failures[:4])
            more = f" (+{len(self.failures) - 4} more)" if len(self.failures) > 4 else ""
            line += f"  failed: {shown}{more}"
        RESULTS[self.number] = line
        print(line)
        if exc is None:
            assert not self.failures, line
        return False


def golden(name):
    return parse_tsv((GOLDEN / f"{name}.tsv").read_text())


# ---------------------------------------------------------------- 1-4: tables

def test_criterion_01_exceptional_results_table():
    with Criterion(1, "exceptional results table: every single-cell and orbit-basis mark", limit=15 * 60) as c:
        _, rows = build_table("results-connected")
        computed = {(r[0], r[2]): r for r in rows}
        _, g_rows = golden("results-connected")
        for t, mask, H, mark in g_rows:
            got = computed.get((t, H))
            c.check(got is not None and got[1] == mask, f"{t} {H} missing")
            if got is None:
                continue
            if mark in ("single-cell", "orbit-basis"):
                c.check(got[3] == mark, f"{t} {{{H}}}: {got[3]} != {mark}")
            elif (t, H) not in UNMARKED_BUT_ORBIT_BASIS:
                c.check(got[3] not in ("single-cell", "orbit-basis"), f"{t} {{{H}}}: unexpected {got[3]}")


def test_criterion_02_f4_fixed_cone_table():
    with Criterion(2, "F4 dualities, monoid generators and freeness", limit=1.0) as c:
        header, rows = build_table("f4-cone")
        g_header, g_rows = golden("f4-cone")
        c.check(list(header) == g_header, "header")
        c.check(len(rows) == 5, "five rows")
        for got, want in itertools.zip_longest(rows, g_rows):
            c.check(got == want, f"row {want}")
        m = hilbert_basis(build_root_datum("F4"), (2, 3, 4))
        tau = m.hilbert_basis
        c.check(not m.is_free and m.relations == ((1, -2, 1, 0),), "single relation")
        c.check(tuple(a + b for a, b in zip(tau[0], tau[2])) == tuple(2 * x for x in tau[1]), "2 tau = tau' + tau''")


def test_criterion_03_f4_orbit_intersections():
    with Criterion(3, "F4 orbit intersections are the 20 printed singletons", limit=5.0) as c:
        header, rows = build_table("f4-orbits")
        g_header, g_rows = golden("f4-orbits")
        c.check(list(header) == g_header and rows == g_rows, "table differs from golden file")
        d = build_root_datum("F4")
        singletons = 0
        for H in F4_ROWS:
            for i in d.nodes:
                found = fixed_orbit_intersection(d, H, d.fundamental_weight(i))
                c.check(len(found) == 1, f"H={H} omega_{i}: {found}")
                singletons += len(found) == 1
        c.check(singletons == 20, f"{singletons} singletons")


def test_criterion_04_representation_types():
    from test_degrees import SYMBOL, expected_pattern
    from wittflag.degrees import fundamental_rep_type

    with Criterion(4, "types of fundamental representations, every family at rank <= 8") as c:
        header, rows = build_table("types")
        g_header, g_rows = golden("types")
        c.check(list(header) == g_header and rows == g_rows, "table differs from golden file")
        for name in ALL_TYPES:
            d = build_root_datum(name)
            got = "".join(SYMBOL[fundamental_rep_type(d, a).tag] for a in d.nodes)
            c.check(got == expected_pattern(name), f"{name}: {got}")


# ---------------------------------------------------------------- 5: E6 identities

def test_criterion_05_e6_character_identities():
    from test_characters import E6_S3_S5

    with Criterion(5, "E6 symmetric-sum product identities", limit=60.0) as c:
        d = build_root_datum("E6")
        s = lambda i: symmetric_sum(d, d.nodes, d.fundamental_weight(i))
        got = decompose_into_symmetric_sums(d, d.nodes, multiply(s(1), s(6)))
        c.check(got == {(1, 0, 0, 0, 0, 1): 1, (0, 1, 0, 0, 0, 0): 6, (0,) * 6: 27}, f"S1 S6 = {got}")
        got = decompose_into_symmetric_sums(d, d.nodes, multiply(s(3), s(5)))
        c.check(got == E6_S3_S5, f"S3 S5 = {got}")
        c.check(sorted(got.values()) == [1, 4, 10, 10, 15, 18, 32, 60, 216], "nine coefficients")


# ---------------------------------------------------------------- 6: worked examples

def _split(w):
    return (w.degree1_count, w.degree3_count)


def _old_split(d, I):
    c = type_counts(d, I)
    return (c[QUATERNIONIC], c[COMPLEX] // 2 + c[REAL])


def test_criterion_06_worked_examples():
    with Criterion(6, "worked-example Witt presentations") as c:
        # complex projective spaces
        for n in range(1, 9):
            w = witt_presentation(build_root_datum(f"A{n}"), tuple(range(2, n + 1)))
            want = (0, 0) if n % 2 == 0 else ((1, 0) if n % 4 == 1 else (0, 1))
            c.check(w.status == EXTERIOR and _split(w) == want, f"CP^{n}: {_split(w)}")
        # spinor varieties, as B_{n-1} flag varieties
        for n in range(4, 10):
            b = build_root_datum(f"B{n - 1}")
            H = tuple(range(1, n - 1))
            top = n - 1 if n % 2 == 0 else n - 2
            c.check(find_degree_subset_I(b, H) == tuple(range(1, top + 1, 2)), f"S_{n}: degree subset")
            w = witt_presentation(b, H)
            c.check(w.status == EXTERIOR and w.generator_count == n // 2, f"S_{n}: {w.generator_count} generators")
            printed = (1, n // 2 - 1) if n % 4 in (0, 1) else (0, n // 2)
            c.check(_split(w) == printed, f"S_{n}: split {_split(w)}, printed {printed}")
        # EVII
        w = witt_presentation(build_root_datum("E7"), (1, 2, 3, 4, 5, 6))
        c.check(w.status == EXTERIOR and _split(w) == (3, 0), f"EVII: {_split(w)}")
        # E8 rows carrying the single-cell mark
        e8 = build_root_datum("E8")
        _, g_rows = golden("results-connected")
        for t, _mask, H, mark in g_rows:
            if t == "E8" and mark == "single-cell":
                Hs = () if H == "-" else tuple(int(x) for x in H.split(","))
                w = witt_presentation(e8, Hs)
                c.check(w.status == EXTERIOR and _split(w) == (0, 8 - fixed_rank(e8, Hs)), f"E8 {{{H}}}: {_split(w)}")
        # full flag varieties
        for name in ALL_TYPES:
            d = build_root_datum(name)
            w = witt_presentation(d, ())
            c.check(w.status == EXTERIOR and _split(w) == _old_split(d, d.nodes), f"{name} full flag: {_split(w)}")
        # every F4 subset
        f4 = build_root_datum("F4")
        for H in all_subsets(f4):
            w = witt_presentation(f4, H)
            c.check(w.status == EXTERIOR and _split(w) == (0, 4 - fixed_rank(f4, H)), f"F4 {H}: {_split(w)}")


# ---------------------------------------------------------------- 7: negative controls

def test_criterion_07_negative_controls():
    with Criterion(7, "negative controls: D6 > D4 witness root and EIII") as c:
        d6 = build_root_datum("D6")
        H = (3, 4, 5, 6)
        gamma = next(r for r in d6.positive_roots if r.root_coords == (0, 1, 1, 1, 1, 0))
        c.check(delta_gamma(d6, H, gamma, 5) == 1, "Delta at node 5")
        c.check(delta_gamma(d6, H, gamma, 6) == -1, "Delta at node 6")
        c.check(gamma in sign_switching_roots(d6, H), "witness switches sign")
        c.check(check_single_cell(d6, H) is None, "D6 > D4 single cell")
        e6 = build_root_datum("E6")
        c.check(classify_condition(e6, (1, 2, 3, 4, 5)).status == NEITHER, "EIII condition")
        c.check(witt_presentation(e6, (1, 2, 3, 4, 5)).status == KNOWN_NON_EXTERIOR, "EIII presentation")


# ---------------------------------------------------------------- 8: classical sweep

def classical_rows(max_rank: int = 8):
    """The connected classical cases, instantiated at every admissible rank.

    Yields (type, H, expected single-cell outcome)."""
    for n in range(2, max_rank + 1):
        for k in range(3, n):
            yield f"A{n}", tuple(range(1, k + 1)), True
    for fam in ("B", "C"):
        for n in range(2, max_rank + 1):
            for k in range(3, n - 1):
                yield f"{fam}{n}", tuple(range(1, k + 1)), True
            yield f"{fam}{n}", tuple(range(1, n)), True
            for k in range(2, n):
                yield f"{fam}{n}", tuple(range(n - k + 1, n + 1)), True
    for n in range(4, max_rank + 1):
        for k in range(3, n - 2):
            yield f"D{n}", tuple(range(1, k + 1)), True
        yield f"D{n}", tuple(range(1, n - 1)), True
        yield f"D{n}", tuple(range(1, n)), True
        yield f"D{n}", (n - 2, n - 1, n), True
        for k in range(4, n):
            yield f"D{n}", tuple(range(n - k + 1, n + 1)), k % 2 == 1


def test_criterion_08_classical_sweep():
    with Criterion(8, "classical single-cell sweep at rank <= 8, D_n > D_2k failing", limit=120.0) as c:
        failing = []
        for name, H, expected in classical_rows():
            ok = check_single_cell(build_root_datum(name), H) is not None
            c.check(ok == expected, f"{name} {H}: single cell {ok}")
            if not expected:
                failing.append((name, len(H)))
        # D_n > D_4 for n = 5..8 and D_n > D_6 for n = 7, 8
        c.check(sorted(failing) == [("D5", 4), ("D6", 4), ("D7", 4), ("D7", 6), ("D8", 4), ("D8", 6)], f"{failing}")


# ---------------------------------------------------------------- 9: oracles

def test_criterion_09_oracle_suites():
    from test_characters import _restriction_cases, _restriction_identity
    from test_cone import _saturation_case
    from test_weyl import brute_force_classes, brute_force_subset_pairs

    with Criterion(9, "brute-force oracles: equivalence, conjugacy, saturation, restriction") as c:
        for name in SMALL_TYPES:
            d = build_root_datum(name)
            subsets = list(all_subsets(d))
            pairs = brute_force_subset_pairs(d)
            for J, K in itertools.product(subsets, repeat=2):
                c.check(subsets_equivalent(d, J, K) == ((J, K) in pairs), f"(a) {name} {J} {K}")
            invs = [longest_element(d, J) for J in subsets]
            classes = brute_force_classes(d, invs)
            for a, b in itertools.product(range(len(invs)), repeat=2):
                same = invs[b].matrix in classes[a]
                c.check(conjugate_involutions(d, invs[a], invs[b]) == same, f"(b) {name} {subsets[a]} {subsets[b]}")
            for H in subsets:
                try:
                    _saturation_case(d, H)
                    c.check(True, "")
                except AssertionError as exc:
                    c.check(False, f"(c) {name} {H}: {exc}")
        cases = _restriction_cases()
        c.check(len(cases) == 50, "fifty restriction cases")
        for name, H, weight in cases:
            try:
                _restriction_identity(build_root_datum(name), H, weight)
                c.check(True, "")
            except AssertionError:
                c.check(False, f"(d) {name} {H} {weight}")


# ---------------------------------------------------------------- 10: invariants

INVARIANT_MODULES = [
    "tests/test_rootdata.py",
    "tests/test_weyl.py",
    "tests/test_cone.py",
    "tests/test_conditions.py",
    "tests/test_degrees.py",
    "tests/test_characters.py",
]


def test_criterion_10_invariant_suite():
    with Criterion(10, "module invariants under seeded property tests", limit=600.0) as c:
        proc = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", *INVARIANT_MODULES],
            cwd=ROOT,
            capture_output=True,
            text=True,
        )
        summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
        c.check(proc.returncode == 0, summary)


if __name__ == "__main__":
    cmd = [sys.executable, "-m", "pytest", __file__, "-q", "-p", "no:cacheprovider", *sys.argv[1:]]
    sys.exit(subprocess.call(cmd, cwd=ROOT))
