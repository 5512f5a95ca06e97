"""The cone of [H]-fixed H-dominant weights and its lattice-point monoid.

For H a set of simple roots the fixed space of [H] = -w_o^H is spanned by
the e_theta = omega_theta + [H]omega_theta (theta in H): on the span of the
roots of H the involution permutes simple roots, on the orthogonal
complement it is -1.  A fixed weight x is therefore determined by its
coordinates x_theta (theta in H), which are constant on [H]-orbits, and the
fixed cone is simplicial with one ray per [H]-orbit.  The monoid of lattice
points is generally finer than the one generated by the rays; it is
computed exactly below.  For beta outside H one finds
omega_beta + [H]omega_beta = 0, so those contribute nothing.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .rootdata import RootDatum, Weight, add, mat_inverse, mat_vec
from .weyl import Subset, _check_subset, as_subset, duality, sigma_orbits, star


# ---------------------------------------------------------------- integer linear algebra

def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """A Z-basis of {x in Z^n : M x = 0}, by unimodular column reduction."""
    m = [list(r) for r in rows]
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    # columns of U track the operations: M U is column-reduced
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(a: int, b: int, q: int):
        # column b -= q * column a
        for r in m:
            r[b] -= q * r[a]
        for r in u:
            r[b] -= q * r[a]

    def swap(a: int, b: int):
        for r in m:
            r[a], r[b] = r[b], r[a]
        for r in u:
            r[a], r[b] = r[b], r[a]

    pivot_col = 0
    for row in range(len(m)):
        if pivot_col >= n:
            break
        while True:
            nz = [j for j in range(pivot_col, n) if m[row][j] != 0]
            if not nz:
                break
            j = min(nz, key=lambda j: abs(m[row][j]))
            swap(pivot_col, j)
            done = True
            for k in range(pivot_col + 1, n):
                if m[row][k]:
                    colop(pivot_col, k, m[row][k] // m[row][pivot_col])
                    if m[row][k]:
                        done = False
            if done:
                pivot_col += 1
                break
    return [tuple(u[i][j] for i in range(n)) for j in range(pivot_col, n)]


def matrix_rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return int(np.linalg.matrix_rank(np.array(vectors, dtype=float)))


# ---------------------------------------------------------------- the monoid

@dataclass(frozen=True)
class FixedConeMonoid:
    H: Subset
    generators: tuple[Weight, ...]
    hilbert_basis: tuple[Weight, ...]
    is_free: bool
    relations: tuple[tuple[int, ...], ...]
    dimension: int

    def contains(self, datum: RootDatum, weight: Sequence[int]) -> bool:
        return in_fixed_cone(datum, self.H, weight)


def fixed_cone_generators(datum: RootDatum, H: Iterable[int]) -> list[Weight]:
    """The rays e_theta = omega_theta + [H]omega_theta, one per [H]-orbit (smallest node first)."""
    H = _check_subset(datum, H)
    if not H:
        return []
    d = duality(datum, H)
    out = []
    for orb in sigma_orbits(datum, H):
        w = datum.fundamental_weight(orb[0])
        out.append(add(w, d(w)))
    return out


def in_fixed_cone(datum: RootDatum, H: Iterable[int], weight: Sequence[int]) -> bool:
    """[H]tau = tau and tau is H-dominant."""
    H = as_subset(H)
    w = tuple(weight)
    return all(w[t - 1] >= 0 for t in H) and duality(datum, H)(w) == w


def fixed_cone_mask(datum: RootDatum, H: Iterable[int], weights: np.ndarray) -> np.ndarray:
    """Vectorised membership test of the rows of ``weights``."""
    H = as_subset(H)
    d = np.array(duality(datum, H).element.matrix, dtype=np.int64)
    mask = np.all(weights @ d.T == weights, axis=1)
    for t in H:
        mask &= weights[:, t - 1] >= 0
    return mask


def hilbert_basis(datum: RootDatum, H: Iterable[int]) -> FixedConeMonoid:
    """Minimal generating set of the lattice points of the fixed cone."""
    H = _check_subset(datum, H)
    key = ("hilbert", H)
    if key in datum._cache:
        return datum._cache[key]
    gens = fixed_cone_generators(datum, H)
    if not H:
        monoid = FixedConeMonoid(H, (), (), True, (), 0)
        datum._cache[key] = monoid
        return monoid
    d = duality(datum, H)
    n = datum.rank
    m = [[d.element.matrix[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    lattice = integer_kernel(m, n)
    reps = [orb[0] for orb in sigma_orbits(datum, H)]
    k = len(reps)
    if len(lattice) != k:
        raise AssertionError(f"fixed lattice rank {len(lattice)} != number of [H]-orbits {k}")
    # phi: fixed lattice -> Z^k, x -> (x_theta) over orbit representatives; injective
    phi = [[b[t - 1] for b in lattice] for t in reps]  # k x k, columns = images of basis
    phi_inv = mat_inverse(phi)

    def lift(y: Sequence[int]) -> Weight | None:
        c = mat_vec(phi_inv, y)
        if any(Fraction(x).denominator != 1 for x in c):
            return None
        return tuple(int(sum(int(ci) * b[i] for ci, b in zip(c, lattice))) for i in range(n))

    # primitive ray multiples m_j: smallest m with m * unit_j in phi(lattice)
    mult = []
    for j in range(k):
        unit = [0] * k
        mm = 1
        while True:
            unit[j] = mm
            if lift(unit) is not None:
                break
            mm += 1
        mult.append(mm)
    pool = []
    for y in itertools.product(*(range(mj + 1) for mj in mult)):
        if any(y) and lift(y) is not None:
            pool.append(y)
    minimal = [
        y for y in pool
        if not any(z != y and all(a <= b for a, b in zip(z, y)) for z in pool)
    ]
    basis = sorted(lift(y) for y in minimal)
    rels = integer_kernel([[b[i] for b in basis] for i in range(n)], len(basis))
    rels = tuple(sorted(_normalise_relation(r) for r in rels))
    monoid = FixedConeMonoid(
        H=H,
        generators=tuple(gens),
        hilbert_basis=tuple(basis),
        is_free=len(basis) == k,
        relations=rels,
        dimension=k,
    )
    datum._cache[key] = monoid
    return monoid


def _normalise_relation(r: Sequence[int]) -> tuple[int, ...]:
    from math import gcd
    g = 0
    for x in r:
        g = gcd(g, x)
    r = [x // g for x in r] if g else list(r)
    first = next((x for x in r if x), 0)
    return tuple(-x for x in r) if first < 0 else tuple(r)


def express_in_basis(datum: RootDatum, monoid: FixedConeMonoid, weight: Sequence[int], bound: int = 64) -> tuple[int, ...] | None:
    """Non-negative integer coefficients writing ``weight`` in the Hilbert basis, or None."""
    basis = monoid.hilbert_basis
    target = tuple(weight)
    if not basis:
        return () if not any(target) else None
    H = monoid.H
    size = lambda w: sum(w[t - 1] for t in H)
    target_size = size(target)

    def search(i: int, rest: Weight) -> tuple[int, ...] | None:
        if i == len(basis):
            return () if not any(rest) else None
        s = size(basis[i])
        top = min(bound, size(rest) // s if s else 0)
        for c in range(top, -1, -1):
            r = tuple(x - c * y for x, y in zip(rest, basis[i]))
            if any(r[t - 1] < 0 for t in H):
                continue
            sub = search(i + 1, r)
            if sub is not None:
                return (c,) + sub
        return None

    if target_size < 0:
        return None
    return search(0, target)


# ---------------------------------------------------------------- faces of the dominant chamber

def face_fixed_basis(datum: RootDatum, I: Iterable[int]) -> list[Weight]:
    """Basis of the [Sigma]-fixed lattice points of the face where the coordinates in I vanish.

    omega_a for self-dual a outside I, omega_a + omega_[Sigma]a for dual pairs outside I.
    """
    I = _check_subset(datum, I)
    perm = star(datum)
    if {perm[i] for i in I} != set(I):
        raise ValueError(f"subset {I} is not stable under the diagram duality")
    out = []
    for a in datum.nodes:
        if a in I or perm[a] < a:
            continue
        w = datum.fundamental_weight(a)
        if perm[a] != a:
            w = add(w, datum.fundamental_weight(perm[a]))
        out.append(w)
    return out
