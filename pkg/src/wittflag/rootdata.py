"""Exact root data for the simple types A_n ... G_2 of rank at most 8.

All weights are integer tuples in the basis of fundamental weights.  Roots
additionally carry their coordinates in the basis of simple roots.  Nodes
are numbered as in Bourbaki (see ``data/dynkin.txt``); public functions take
1-based node indices, internal arrays are 0-based.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from importlib import resources
from typing import Iterable, Sequence

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

MAX_RANK = 8
_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}
# classical positive-root counts, used as a load-time check
_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class InvalidType(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RANGE:
            raise InvalidType(f"unknown family {self.family!r}")
        lo, hi = _RANK_RANGE[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise InvalidType(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", text)
        if not m:
            raise InvalidType(f"cannot parse type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class Root:
    root_coords: tuple[int, ...]
    weight_coords: Weight
    coroot_coords: tuple[int, ...]

    def pairing(self, weight: Sequence[int]) -> int:
        """<gamma^vee, weight> for a weight in fundamental-weight coordinates."""
        return sum(c * x for c, x in zip(self.coroot_coords, weight))

    @property
    def height(self) -> int:
        return sum(self.root_coords)


@dataclass(frozen=True, eq=False)
class RootDatum:
    type: SimpleType
    cartan: Matrix
    cartan_inverse: tuple[tuple[Fraction, ...], ...]
    half_lengths: tuple[Fraction, ...]  # (alpha_i, alpha_i) / 2, long roots give 1
    positive_roots: tuple[Root, ...]
    inner_product_gram: tuple[tuple[Fraction, ...], ...]
    two_rho_covector: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def simple_root(self, i: int) -> Weight:
        """alpha_i in fundamental-weight coordinates (column i of the Cartan matrix)."""
        return tuple(row[i - 1] for row in self.cartan)

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(self.simple_root(i) for i in self.nodes)

    def fundamental_weight(self, i: int) -> Weight:
        return tuple(int(k == i - 1) for k in range(self.rank))

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.nodes if j != i and self.cartan[i - 1][j - 1] != 0]

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.type == other.type

    def __hash__(self):
        return hash(self.type)

    def __repr__(self):
        return f"RootDatum({self.type})"


# ---------------------------------------------------------------- exact linear algebra

def mat_inverse(m: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a))


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


# ---------------------------------------------------------------- construction

@cache
def _cartan_table() -> dict[str, Matrix]:
    text = resources.files("wittflag.data").joinpath("cartan.txt").read_text()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, rest = line.split(None, 1)
        table[name] = tuple(tuple(int(x) for x in row.split()) for row in rest.split(";"))
    return table


def _half_lengths(cartan: Matrix) -> tuple[Fraction, ...]:
    # d_i C_ij = d_j C_ji; propagate along the connected diagram, then scale max to 1
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * Fraction(cartan[i][j], cartan[j][i])
                stack.append(j)
    top = max(d)
    return tuple(x / top for x in d)


def _positive_roots(cartan: Matrix, half: Sequence[Fraction]) -> tuple[Root, ...]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    todo = list(simple)
    while todo:
        beta = todo.pop()
        for i in range(n):
            p = sum(cartan[i][j] * beta[j] for j in range(n))
            if p == 0:
                continue
            new = list(beta)
            new[i] -= p
            new = tuple(new)
            if min(new) >= 0 and new not in found:
                found.add(new)
                todo.append(new)
    roots = []
    for rc in sorted(found):
        wc = tuple(sum(cartan[k][j] * rc[j] for j in range(n)) for k in range(n))
        half_len = sum(rc[i] * rc[j] * cartan[i][j] * half[i] for i in range(n) for j in range(n)) / 2
        cc = []
        for i in range(n):
            c = rc[i] * half[i] / half_len
            assert c.denominator == 1
            cc.append(int(c))
        roots.append(Root(rc, wc, tuple(cc)))
    return tuple(roots)


def build_root_datum(stype: SimpleType | str) -> RootDatum:
    """The root datum of a simple type; one shared instance per type."""
    if isinstance(stype, str):
        stype = SimpleType.parse(stype)
    return _build(stype)


@cache
def _build(stype: SimpleType) -> RootDatum:
    if stype.rank > MAX_RANK:
        raise InvalidType(f"rank {stype.rank} exceeds the supported maximum {MAX_RANK}")
    cartan = _cartan_table()[str(stype)]
    n = stype.rank
    inv = mat_inverse(cartan)
    half = _half_lengths(cartan)
    roots = _positive_roots(cartan, half)
    # (omega_i, omega_j) = ((C^T)^{-1} D)_ij with D = diag(half lengths)
    inv_t = transpose(inv)
    gram = tuple(tuple(inv_t[i][j] * half[j] for j in range(n)) for i in range(n))
    two_rho = tuple(sum(r.coroot_coords[i] for r in roots) for i in range(n))
    datum = RootDatum(stype, cartan, inv, half, roots, gram, two_rho)
    _validate(datum)
    return datum


def _validate(datum: RootDatum) -> None:
    n = datum.rank
    if mat_mul(datum.cartan, datum.cartan_inverse) != identity(n):
        raise AssertionError(f"{datum.type}: Cartan inverse check failed")
    expected = _ROOT_COUNT[datum.type.family](n)
    if len(datum.positive_roots) != expected:
        raise AssertionError(f"{datum.type}: {len(datum.positive_roots)} positive roots, expected {expected}")
    for i in datum.nodes:
        if pairing_covector(datum.two_rho_covector, datum.simple_root(i)) != 2:
            raise AssertionError(f"{datum.type}: <rho^vee, alpha_{i}> != 1")
    g = datum.inner_product_gram
    if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
        raise AssertionError(f"{datum.type}: inner product is not symmetric")


def all_types(max_rank: int = MAX_RANK) -> list[SimpleType]:
    out = []
    for fam, (lo, hi) in _RANK_RANGE.items():
        top = max_rank if hi is None else min(hi, max_rank)
        out.extend(SimpleType(fam, r) for r in range(lo, top + 1))
    return out


# ---------------------------------------------------------------- arithmetic

def pairing_covector(covector: Sequence[int], weight: Sequence[int]) -> int:
    return sum(c * x for c, x in zip(covector, weight))


def inner_product(datum: RootDatum, sigma: Sequence[int], tau: Sequence[int]) -> Fraction:
    g = datum.inner_product_gram
    return sum(
        (sigma[i] * tau[j] * g[i][j] for i in range(datum.rank) for j in range(datum.rank) if sigma[i] and tau[j]),
        Fraction(0),
    )


def to_root_coords(datum: RootDatum, weight: Sequence[int]) -> tuple[Fraction, ...]:
    """Express a weight as a rational combination of simple roots."""
    # weight = C x  =>  x = C^{-1} weight
    return mat_vec(datum.cartan_inverse, weight)


def is_dominant(weight: Iterable[int], nodes: Iterable[int] | None = None) -> bool:
    w = tuple(weight)
    idx = range(1, len(w) + 1) if nodes is None else nodes
    return all(w[i - 1] >= 0 for i in idx)


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Weight:
    return tuple(k * x for x in a)


def format_weight(weight: Sequence[int]) -> str:
    """Human form such as ``2w2-3w1``; terms in node order."""
    parts = []
    for i, c in enumerate(weight, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}w{i}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def weight_tuple_str(weight: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in weight) + ")"
