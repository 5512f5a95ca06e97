"""The single-cell and orbit-basis conditions for a subset H of simple roots.

single cell:  the fixed cone of [H] in the H-dominant chamber is a Weyl
              translate w(C_I^[Sigma]) of the [Sigma]-fixed part of a face
              of the dominant chamber.
orbit basis:  for a [Sigma]-stable I of the right size, each orbit
              W.omega_[a] with [a] outside I meets the fixed cone in exactly
              one weight, and these weights form a basis of its monoid.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .cone import face_fixed_basis, fixed_cone_generators, fixed_cone_mask, hilbert_basis
from .rootdata import Root, RootDatum, Weight, add, inner_product, mat_inverse
from .weyl import (
    Subset,
    WeylElement,
    _check_subset,
    as_subset,
    complement,
    components,
    duality,
    duality_permutation,
    fixed_rank,
    is_symmetric,
    orbit_array,
    sigma_orbits,
    to_dominant,
)

SINGLE_CELL = "SingleCell"
ORBIT_BASIS = "OrbitBasis"
NEITHER = "Neither"


@dataclass(frozen=True)
class ConditionVerdict:
    status: str
    parameter_I: Subset | None = None
    translating_w: WeylElement | None = None
    orbit_intersections: dict[Subset, Weight] | None = None
    passing_I: tuple[Subset, ...] = field(default=())

    @property
    def mark(self) -> str:
        return {SINGLE_CELL: "single-cell", ORBIT_BASIS: "orbit-basis", NEITHER: "neither"}[self.status]


# ---------------------------------------------------------------- sign criterion

def delta_gamma(datum: RootDatum, H: Iterable[int], gamma: Root, theta: int) -> Fraction:
    """Delta_gamma(theta) = 2 (gamma, e_theta) / (theta, theta) via the Cartan data of H.

    gamma = sum a_t alpha_t (t in H) + sum b_beta beta (beta outside H).  Each
    beta adjacent to exactly one node of H contributes through the inverse
    Cartan matrix of H; a beta with several H-neighbours falls back to the
    inner product.
    """
    H = _check_subset(datum, H)
    if theta not in H:
        raise ValueError(f"node {theta} is not in {H}")
    if len(components(datum, H)) != 1:
        raise ValueError(f"subdiagram {H} is not connected")
    perm = duality_permutation(datum, H)
    ptheta = perm[theta]
    pos = {t: k for k, t in enumerate(H)}
    c = datum.cartan
    cinv_h = mat_inverse([[c[s - 1][t - 1] for t in H] for s in H])
    a = gamma.root_coords
    value = Fraction(a[theta - 1] + a[ptheta - 1])
    len_theta = datum.half_lengths[theta - 1]
    e_theta = None
    for beta in complement(datum, H):
        b = a[beta - 1]
        if b == 0:
            continue
        nbrs = [t for t in datum.neighbours(beta) if t in pos]
        if not nbrs:
            continue
        if len(nbrs) == 1:
            v = nbrs[0]
            m = (cinv_h[pos[v]][pos[theta]] + cinv_h[pos[v]][pos[ptheta]]) * c[beta - 1][v - 1]
            value += b * m * datum.half_lengths[beta - 1] / len_theta
        else:
            if e_theta is None:
                w = datum.fundamental_weight(theta)
                e_theta = add(w, duality(datum, H)(w))
            value += b * inner_product(datum, datum.simple_root(beta), e_theta) / len_theta
    return value


def sign_switching_roots(datum: RootDatum, H: Iterable[int]) -> list[Root]:
    """Positive roots gamma for which (gamma, e) takes both signs on the fixed-cone rays."""
    gens = fixed_cone_generators(datum, H)
    out = []
    for gamma in datum.positive_roots:
        vals = [gamma.pairing(e) for e in gens]  # same sign as (gamma, e)
        if any(v > 0 for v in vals) and any(v < 0 for v in vals):
            out.append(gamma)
    return out


# ---------------------------------------------------------------- single cell

def check_single_cell(datum: RootDatum, H: Iterable[int]) -> tuple[WeylElement, Subset] | None:
    """(w, I) with fixed cone = w(C_I^[Sigma]), verified basis to basis; None if no such cell."""
    H = _check_subset(datum, H)
    key = ("single_cell", H)
    if key in datum._cache:
        return datum._cache[key]
    result = None
    if not sign_switching_roots(datum, H):
        gens = fixed_cone_generators(datum, H)
        interior = tuple(sum(col) for col in zip(*gens)) if gens else (0,) * datum.rank
        dom, u = to_dominant(datum, interior)
        w = u.inverse()
        I = tuple(i for i in datum.nodes if dom[i - 1] == 0)
        if is_symmetric(datum, I):
            image = {w(b) for b in face_fixed_basis(datum, I)}
            if image == set(hilbert_basis(datum, H).hilbert_basis):
                result = (w, I)
    datum._cache[key] = result
    return result


def verify_fixed_cell(datum: RootDatum, H: Iterable[int], w: WeylElement, I: Iterable[int]) -> bool:
    """[Sigma]I = I and [Sigma] w^-1 [H] w lies in W_I (it fixes omega_a for a outside I)."""
    H, I = _check_subset(datum, H), _check_subset(datum, I)
    if not is_symmetric(datum, I):
        return False
    x = duality(datum, datum.nodes).element * w.inverse() * duality(datum, H).element * w
    return all(x(datum.fundamental_weight(a)) == datum.fundamental_weight(a) for a in complement(datum, I))


# ---------------------------------------------------------------- orbit basis

def orbit_weight(datum: RootDatum, orb: Subset) -> Weight:
    """omega_[a]: omega_a for a self-dual node, omega_a + omega_[Sigma]a for a dual pair."""
    w = (0,) * datum.rank
    for a in orb:
        w = add(w, datum.fundamental_weight(a))
    return w


def fixed_orbit_intersection(datum: RootDatum, H: Iterable[int], weight: Iterable[int]) -> list[Weight]:
    """W.weight intersected with the [H]-fixed H-dominant cone, sorted."""
    H = as_subset(H)
    weight = tuple(weight)
    key = ("orbit_cap", H, weight)
    if key not in datum._cache:
        arr = orbit_array(datum, weight)
        hits = arr[fixed_cone_mask(datum, H, arr)]
        datum._cache[key] = [tuple(int(x) for x in row) for row in hits]
    return datum._cache[key]


def dominant_orbit_intersection(datum: RootDatum, H: Iterable[int], weight: Iterable[int]) -> list[Weight]:
    """W.weight intersected with the H-dominant chamber, sorted."""
    H = as_subset(H)
    arr = orbit_array(datum, tuple(weight))
    mask = np.ones(len(arr), dtype=bool)
    for t in H:
        mask &= arr[:, t - 1] >= 0
    return [tuple(int(x) for x in row) for row in arr[mask]]


def check_orbit_basis(datum: RootDatum, H: Iterable[int], I: Iterable[int]) -> dict[Subset, Weight] | None:
    """Map [a] -> tau_[a] when every W.omega_[a] ([a] outside I) meets the fixed cone once and
    the meeting points form a basis of its (then free) monoid; None otherwise."""
    H, I = _check_subset(datum, H), _check_subset(datum, I)
    if not is_symmetric(datum, I):
        raise ValueError(f"subset {I} is not stable under the diagram duality")
    out: dict[Subset, Weight] = {}
    for orb in sigma_orbits(datum, datum.nodes, complement(datum, I)):
        hits = fixed_orbit_intersection(datum, H, orbit_weight(datum, orb))
        if len(hits) != 1:
            return None
        out[orb] = hits[0]
    # a basis of the monoid: it must be free, with exactly these generators
    monoid = hilbert_basis(datum, H)
    if not monoid.is_free or set(out.values()) != set(monoid.hilbert_basis) or len(out) != len(monoid.hilbert_basis):
        return None
    return out


def symmetric_subsets(datum: RootDatum, orbit_count: int | None = None) -> list[Subset]:
    """[Sigma]-stable subsets, optionally with a given number of [Sigma]-orbits."""
    orbs = sigma_orbits(datum, datum.nodes)
    out = []
    counts = range(len(orbs) + 1) if orbit_count is None else [orbit_count]
    for r in counts:
        if not 0 <= r <= len(orbs):
            continue
        for pick in itertools.combinations(orbs, r):
            out.append(as_subset(x for o in pick for x in o))
    return sorted(out, key=lambda S: (len(S), S))


def classify_condition(datum: RootDatum, H: Iterable[int]) -> ConditionVerdict:
    H = _check_subset(datum, H)
    key = ("verdict", H)
    if key in datum._cache:
        return datum._cache[key]
    sc = check_single_cell(datum, H)
    if sc is not None:
        w, I = sc
        verdict = ConditionVerdict(SINGLE_CELL, I, w, check_orbit_basis(datum, H, I), (I,))
    else:
        target = fixed_rank(datum) - fixed_rank(datum, H)
        passing = []
        found: dict[Subset, dict] = {}
        for I in symmetric_subsets(datum, target):
            ob = check_orbit_basis(datum, H, I)
            if ob is not None:
                passing.append(I)
                found[I] = ob
        if passing:
            verdict = ConditionVerdict(ORBIT_BASIS, passing[0], None, found[passing[0]], tuple(passing))
        else:
            verdict = ConditionVerdict(NEITHER)
    datum._cache[key] = verdict
    return verdict
