"""Exact arithmetic in the group ring Z[X*] with Weyl symmetry, and mod-2 Tate classes.

A character is a finitely supported map weight -> integer.  Symmetric sums
S_J(w) are orbit sums over W_J, so a W_J-invariant character is the sum of
c_w S_J(w) with c_w its coefficient at the J-dominant weight w.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .cone import fixed_cone_mask, in_fixed_cone
from .rootdata import RootDatum, Weight, is_dominant, mat_vec
from .conditions import check_orbit_basis, orbit_weight
from .weyl import Subset, _check_subset, as_subset, complement, orbit_array, reflect, sigma_orbits

DEFAULT_PRODUCT_CAP = 10**8


class NotInvariant(ValueError):
    pass


class ProductTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class CharacterElement:
    terms: Mapping[Weight, int]

    @classmethod
    def from_terms(cls, terms: Mapping[Weight, int] | Iterable[tuple[Weight, int]]) -> "CharacterElement":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Weight, int] = defaultdict(int)
        for w, c in items:
            acc[tuple(w)] += c
        return cls({w: c for w, c in acc.items() if c})

    @classmethod
    def constant(cls, rank: int, value: int = 1) -> "CharacterElement":
        return cls.from_terms({(0,) * rank: value})

    def __add__(self, other: "CharacterElement") -> "CharacterElement":
        return CharacterElement.from_terms(itertools.chain(self.terms.items(), other.terms.items()))

    def __sub__(self, other: "CharacterElement") -> "CharacterElement":
        return self + other.scale(-1)

    def scale(self, k: int) -> "CharacterElement":
        return CharacterElement.from_terms({w: k * c for w, c in self.terms.items()})

    def __mul__(self, other: "CharacterElement") -> "CharacterElement":
        return multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, CharacterElement) and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def coefficient(self, weight: Sequence[int]) -> int:
        return self.terms.get(tuple(weight), 0)

    def augmentation(self) -> int:
        """The value at the identity, i.e. the sum of the coefficients (the rank)."""
        return sum(self.terms.values())


def multiply(x: CharacterElement, y: CharacterElement, cap: int | None = None) -> CharacterElement:
    cap = DEFAULT_PRODUCT_CAP if cap is None else cap
    if len(x) * len(y) > cap:
        raise ProductTooLarge(f"product of {len(x)} x {len(y)} terms exceeds cap {cap}")
    if not x.terms or not y.terms:
        return CharacterElement({})
    xw = np.array(list(x.terms), dtype=np.int64)
    xc = np.array(list(x.terms.values()), dtype=np.int64)
    yw = np.array(list(y.terms), dtype=np.int64)
    yc = np.array(list(y.terms.values()), dtype=np.int64)
    acc: dict[Weight, int] = defaultdict(int)
    for w, c in zip(xw, xc):
        sums = yw + w
        uniq, inv = np.unique(sums, axis=0, return_inverse=True)
        coeff = np.zeros(len(uniq), dtype=np.int64)
        np.add.at(coeff, inv.ravel(), yc * c)
        for row, k in zip(uniq, coeff):
            acc[tuple(int(v) for v in row)] += int(k)
    return CharacterElement({w: c for w, c in acc.items() if c})


def symmetric_sum(datum: RootDatum, J: Iterable[int], weight: Sequence[int]) -> CharacterElement:
    """S_J(w): the sum of e^t over the W_J-orbit of the J-dominant weight w."""
    J = _check_subset(datum, J)
    if not is_dominant(weight, J):
        raise ValueError(f"weight {tuple(weight)} is not dominant for {J}")
    arr = orbit_array(datum, weight, J)
    return CharacterElement({tuple(int(v) for v in row): 1 for row in arr})


def reduced_symmetric_sum(datum: RootDatum, J: Iterable[int], weight: Sequence[int]) -> CharacterElement:
    """S_J(w) minus its rank (number of terms)."""
    s = symmetric_sum(datum, J, weight)
    return s - CharacterElement.constant(datum.rank, len(s))


def is_invariant(datum: RootDatum, J: Iterable[int], elt: CharacterElement) -> bool:
    J = as_subset(J)
    terms = elt.terms
    return all(terms.get(reflect(datum, j, w), 0) == c for w, c in terms.items() for j in J)


def decompose_into_symmetric_sums(datum: RootDatum, J: Iterable[int], elt: CharacterElement) -> dict[Weight, int]:
    """Coefficients c_w (w J-dominant) with elt = sum c_w S_J(w), sorted by weight."""
    J = _check_subset(datum, J)
    if not is_invariant(datum, J, elt):
        raise NotInvariant("element is not invariant under the Weyl group of J")
    return dict(sorted((w, c) for w, c in elt.terms.items() if is_dominant(w, J)))


def compose_symmetric_sums(datum: RootDatum, J: Iterable[int], coeffs: Mapping[Weight, int]) -> CharacterElement:
    out: dict[Weight, int] = defaultdict(int)
    for w, c in coeffs.items():
        for t in symmetric_sum(datum, J, w).terms:
            out[t] += c
    return CharacterElement.from_terms(out)


def restrict_and_decompose(datum: RootDatum, H: Iterable[int], weight: Sequence[int]) -> tuple[list[Weight], list[Weight]]:
    """(W.w meet the H-dominant chamber, its [H]-fixed part), so that S(w) = sum S_H(t) over the first list."""
    H = _check_subset(datum, H)
    if not is_dominant(weight):
        raise ValueError(f"weight {tuple(weight)} is not dominant")
    arr = orbit_array(datum, weight)
    mask = np.ones(len(arr), dtype=bool)
    for t in H:
        mask &= arr[:, t - 1] >= 0
    dom = arr[mask]
    fixed = dom[fixed_cone_mask(datum, H, dom)] if len(dom) else dom
    to_list = lambda a: [tuple(int(v) for v in row) for row in a]
    return to_list(dom), to_list(fixed)


# ---------------------------------------------------------------- dominance

def dominance_less(datum: RootDatum, J: Iterable[int], w1: Sequence[int], w2: Sequence[int]) -> bool:
    """w1 < w2 for the J-order: w1 != w2 and w2 - w1 is a non-negative combination of the simple roots of J."""
    J = _check_subset(datum, J)
    w1, w2 = tuple(w1), tuple(w2)
    if w1 == w2:
        return False
    diff = tuple(a - b for a, b in zip(w2, w1))
    x = mat_vec(datum.cartan_inverse, diff)
    return all((x[i - 1] >= 0) if i in J else (x[i - 1] == 0) for i in datum.nodes)


# ---------------------------------------------------------------- Tate classes

@dataclass(frozen=True)
class TateClass:
    """A mod-2 combination of classes [S_H(t)], t [H]-fixed and H-dominant."""

    H: Subset
    terms: frozenset[Weight]

    @classmethod
    def of(cls, datum: RootDatum, H: Iterable[int], weights: Iterable[Sequence[int]]) -> "TateClass":
        H = as_subset(H)
        acc: set[Weight] = set()
        for w in weights:
            w = tuple(w)
            if not in_fixed_cone(datum, H, w):
                raise ValueError(f"{w} is not [H]-fixed and H-dominant")
            acc ^= {w}
        return cls(H, frozenset(acc))

    @classmethod
    def one(cls, datum: RootDatum, H: Iterable[int]) -> "TateClass":
        return cls(as_subset(H), frozenset({(0,) * datum.rank}))

    def __add__(self, other: "TateClass") -> "TateClass":
        return TateClass(self.H, self.terms ^ other.terms)

    def sorted_terms(self) -> list[Weight]:
        return sorted(self.terms)


def _tate_pair(datum: RootDatum, H: Subset, t1: Weight, t2: Weight) -> frozenset[Weight]:
    key = ("tate_pair", H, min(t1, t2), max(t1, t2))
    if key not in datum._cache:
        prod = multiply(symmetric_sum(datum, H, t1), symmetric_sum(datum, H, t2))
        coeffs = decompose_into_symmetric_sums(datum, H, prod)
        datum._cache[key] = frozenset(
            w for w, c in coeffs.items() if c % 2 and in_fixed_cone(datum, H, w)
        )
    return datum._cache[key]


def tate_product(datum: RootDatum, H: Iterable[int], x: TateClass, y: TateClass) -> TateClass:
    H = as_subset(H)
    acc: set[Weight] = set()
    for t1 in x.terms:
        for t2 in y.terms:
            acc ^= _tate_pair(datum, H, t1, t2)
    return TateClass(H, frozenset(acc))


def restriction_class(datum: RootDatum, H: Iterable[int], weight: Sequence[int]) -> TateClass:
    """The class of the restriction of S(w) in the mod-2 Tate cohomology of R(L_H)."""
    H = as_subset(H)
    _, fixed = restrict_and_decompose(datum, H, weight)
    return TateClass.of(datum, H, fixed)


@dataclass(frozen=True)
class FreeGenerationReport:
    generators: tuple[Weight, ...]  # leading weights tau of the generator classes
    monomials: tuple[tuple[int, ...], ...]
    independent: bool
    collisions: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # monomial pairs sharing a leading weight
    missing_leading: tuple[tuple[int, ...], ...]  # monomials whose class lacks its leading weight

    @property
    def free(self) -> bool:
        return self.independent and not self.collisions and not self.missing_leading


def _f2_independent(vectors: list[frozenset]) -> bool:
    pivots: dict[Weight, frozenset] = {}
    for v in vectors:
        v = set(v)
        while v:
            top = max(v)
            if top not in pivots:
                pivots[top] = frozenset(v)
                break
            v ^= pivots[top]
        else:
            return False
    return True


def free_generation_report(
    datum: RootDatum, H: Iterable[int], classes: Sequence[TateClass], degree_cap: int
) -> FreeGenerationReport:
    """Check monomials of total degree <= degree_cap in the given classes.

    Each class must have a unique leading weight, its maximal term in the
    H-dominance order; the leading weight of a monomial is the corresponding
    sum of leading weights.
    """
    H = as_subset(H)
    leads = []
    for c in classes:
        if len(c.terms) != 1:
            maximal = [w for w in c.terms if not any(dominance_less(datum, H, w, v) for v in c.terms)]
            if len(maximal) != 1:
                raise ValueError("class has no unique leading weight")
            leads.append(maximal[0])
        else:
            leads.append(next(iter(c.terms)))
    k = len(classes)
    monomials = [m for total in range(degree_cap + 1) for m in _compositions(total, k)]
    values: dict[tuple[int, ...], TateClass] = {}
    one = TateClass.one(datum, H)
    for m in monomials:
        if sum(m) == 0:
            values[m] = one
            continue
        i = next(j for j, e in enumerate(m) if e)
        prev = tuple(e - (j == i) for j, e in enumerate(m))
        values[m] = tate_product(datum, H, values[prev], classes[i])
    lead_of = {}
    collisions = []
    missing = []
    for m in monomials:
        lead = tuple(sum(e * l[t] for e, l in zip(m, leads)) for t in range(datum.rank))
        if lead not in values[m].terms:
            missing.append(m)
        if lead in lead_of:
            collisions.append((lead_of[lead], m))
        else:
            lead_of[lead] = m
    independent = _f2_independent([values[m].terms for m in monomials])
    return FreeGenerationReport(tuple(leads), tuple(monomials), independent, tuple(collisions), tuple(missing))


def _compositions(total: int, parts: int) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return out


def verify_free_generation(datum: RootDatum, H: Iterable[int], I: Iterable[int], degree_cap: int = 3) -> bool:
    """Monomials in the restriction classes [S(omega_[a])], [a] outside I, are F_2-independent up to
    ``degree_cap`` and their leading weights are distinct points of the fixed monoid."""
    H, I = _check_subset(datum, H), _check_subset(datum, I)
    if check_orbit_basis(datum, H, I) is None:
        raise ValueError(f"the orbit-basis condition fails for H={H}, I={I}")
    classes = [
        restriction_class(datum, H, orbit_weight(datum, orb))
        for orb in sigma_orbits(datum, datum.nodes, complement(datum, I))
    ]
    return free_generation_report(datum, H, classes, degree_cap).free
