"""Weyl-group arithmetic on the weight lattice.

Elements are integer matrices acting on fundamental-weight coordinates.  The
matrix is the canonical form (hashable, equality is matrix equality); the
word in simple reflections is kept only as provenance.

Subsets of simple roots are handled as sorted tuples of 1-based node indices.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .rootdata import Matrix, RootDatum, Weight, identity, mat_mul, mat_vec

Subset = tuple[int, ...]

DEFAULT_CONJUGACY_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """A breadth-first enumeration outgrew its configured budget."""


def as_subset(nodes: Iterable[int]) -> Subset:
    return tuple(sorted(set(nodes)))


def _check_subset(datum: RootDatum, J: Iterable[int]) -> Subset:
    J = as_subset(J)
    for j in J:
        if not 1 <= j <= datum.rank:
            raise ValueError(f"node {j} out of range for {datum.type}")
    return J


def complement(datum: RootDatum, J: Iterable[int]) -> Subset:
    J = set(J)
    return tuple(i for i in datum.nodes if i not in J)


def mask_string(datum: RootDatum, J: Iterable[int]) -> str:
    """'*' marks nodes in J, 'o' the others (node 1 first)."""
    J = set(J)
    return "".join("*" if i in J else "o" for i in datum.nodes)


# ---------------------------------------------------------------- elements

@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    word: tuple[int, ...] | None = field(default=None, compare=False)

    def __call__(self, weight: Sequence[int]) -> Weight:
        return tuple(int(x) for x in mat_vec(self.matrix, weight))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = self.word + other.word if self.word is not None and other.word is not None else None
        return WeylElement(mat_mul(self.matrix, other.matrix), word)

    def __neg__(self) -> "WeylElement":
        return WeylElement(tuple(tuple(-x for x in row) for row in self.matrix))

    def inverse(self) -> "WeylElement":
        inv = np.rint(np.linalg.inv(np.array(self.matrix, dtype=float))).astype(int)
        out = WeylElement(_to_matrix(inv), tuple(reversed(self.word)) if self.word is not None else None)
        if mat_mul(out.matrix, self.matrix) != identity(len(self.matrix)):
            raise ArithmeticError("matrix is not unimodular")
        return out

    @property
    def trace(self) -> int:
        return sum(self.matrix[i][i] for i in range(len(self.matrix)))

    def is_identity(self) -> bool:
        return self.matrix == identity(len(self.matrix))

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)


def _to_matrix(a) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in a)


def identity_element(datum: RootDatum) -> WeylElement:
    return WeylElement(identity(datum.rank), ())


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    """s_i(w) = w - <alpha_i^vee, w> alpha_i."""
    if not 1 <= i <= datum.rank:
        raise ValueError(f"node {i} out of range for {datum.type}")
    key = ("s", i)
    if key not in datum._cache:
        n = datum.rank
        c = datum.cartan
        m = tuple(
            tuple(int(k == j) - (c[k][i - 1] if j == i - 1 else 0) for j in range(n)) for k in range(n)
        )
        datum._cache[key] = WeylElement(m, (i,))
    return datum._cache[key]


def reflect(datum: RootDatum, i: int, weight: Sequence[int]) -> Weight:
    p = weight[i - 1]
    if p == 0:
        return tuple(weight)
    return tuple(x - p * c for x, c in zip(weight, datum.simple_root(i)))


def from_word(datum: RootDatum, word: Sequence[int]) -> WeylElement:
    """The product s_{w1} s_{w2} ... (rightmost acts first)."""
    out = identity_element(datum)
    for i in word:
        out = out * simple_reflection(datum, i)
    return out


def _reflection_arrays(datum: RootDatum) -> np.ndarray:
    key = "s_arrays"
    if key not in datum._cache:
        datum._cache[key] = np.stack([simple_reflection(datum, i).array() for i in datum.nodes])
    return datum._cache[key]


# ---------------------------------------------------------------- dominance

def to_dominant(datum: RootDatum, weight: Sequence[int], nodes: Iterable[int] | None = None) -> tuple[Weight, WeylElement]:
    """Move ``weight`` into the closed dominant chamber (of W_J when ``nodes`` is given).

    Always reflects at the smallest negative coordinate; returns (dominant, u) with u(weight) = dominant.
    """
    J = tuple(datum.nodes) if nodes is None else as_subset(nodes)
    w = tuple(weight)
    word: list[int] = []
    while True:
        i = next((j for j in J if w[j - 1] < 0), None)
        if i is None:
            break
        w = reflect(datum, i, w)
        word.append(i)
    return w, from_word(datum, list(reversed(word)))


# ---------------------------------------------------------------- orbits

def orbit_array(datum: RootDatum, weight: Sequence[int], nodes: Iterable[int] | None = None) -> np.ndarray:
    """All W_J-translates of ``weight`` as rows of an int64 array, sorted lexicographically.

    Starting from the J-dominant representative, level k+1 consists of the
    images s_i(v) with v in level k and <alpha_i^vee, v> > 0.  These images
    are exactly the orbit members one step further from the dominant one,
    so levels are disjoint and only need de-duplication within themselves.
    """
    J = tuple(datum.nodes) if nodes is None else as_subset(nodes)
    dom, _ = to_dominant(datum, weight, J)
    key = ("orbit", dom, J)
    if key in datum._cache:
        return datum._cache[key]
    roots = np.array(datum.simple_roots, dtype=np.int64)
    level = np.array([dom], dtype=np.int64)
    levels = [level]
    while len(level):
        nxt = []
        for i in J:
            sel = level[level[:, i - 1] > 0]
            if len(sel):
                nxt.append(sel - sel[:, i - 1 : i] * roots[i - 1])
        if not nxt:
            break
        level = np.unique(np.concatenate(nxt), axis=0)
        levels.append(level)
    out = np.concatenate(levels)
    out = out[np.lexsort(out.T[::-1])]
    out.setflags(write=False)
    if len(out) <= 2_000_000:
        datum._cache[key] = out
    return out


def orbit(datum: RootDatum, weight: Sequence[int], nodes: Iterable[int] | None = None) -> list[Weight]:
    """The orbit W_J . weight, sorted lexicographically."""
    return [tuple(int(x) for x in row) for row in orbit_array(datum, weight, nodes)]


# ---------------------------------------------------------------- longest elements and dualities

def longest_element(datum: RootDatum, J: Iterable[int]) -> WeylElement:
    """w_o^J, found by descending sum_{j in J} omega_j to its J-antidominant image."""
    J = _check_subset(datum, J)
    key = ("w_o", J)
    if key not in datum._cache:
        v = [0] * datum.rank
        for j in J:
            v[j - 1] = 1
        v = tuple(v)
        word: list[int] = []
        while True:
            i = next((j for j in J if v[j - 1] > 0), None)
            if i is None:
                break
            v = reflect(datum, i, v)
            word.append(i)
        datum._cache[key] = from_word(datum, list(reversed(word)))
    return datum._cache[key]


@dataclass(frozen=True)
class Involution:
    element: WeylElement
    ell_plus: int
    ell_minus: int

    @classmethod
    def of(cls, element: WeylElement) -> "Involution":
        n = len(element.matrix)
        if not (element * element).is_identity():
            raise ValueError("element is not an involution")
        tr = element.trace
        return cls(element, (n + tr) // 2, (n - tr) // 2)

    def __call__(self, weight: Sequence[int]) -> Weight:
        return self.element(weight)


def duality(datum: RootDatum, J: Iterable[int]) -> Involution:
    """[J] = -w_o^J."""
    J = _check_subset(datum, J)
    key = ("dual", J)
    if key not in datum._cache:
        datum._cache[key] = Involution.of(-longest_element(datum, J))
    return datum._cache[key]


def duality_permutation(datum: RootDatum, J: Iterable[int]) -> dict[int, int]:
    """The permutation of the nodes of J induced by [J]."""
    J = _check_subset(datum, J)
    d = duality(datum, J)
    index = {datum.simple_root(j): j for j in J}
    return {j: index[d(datum.simple_root(j))] for j in J}


def sigma_orbits(datum: RootDatum, J: Iterable[int], within: Iterable[int] | None = None) -> list[Subset]:
    """[J]-orbits of nodes of ``within`` (default J); requires [J] to permute them."""
    perm = duality_permutation(datum, J)
    nodes = as_subset(J if within is None else within)
    seen, out = set(), []
    for a in nodes:
        if a in seen:
            continue
        b = perm[a]
        orb = as_subset((a, b))
        seen.update(orb)
        out.append(orb)
    return out


def star(datum: RootDatum) -> dict[int, int]:
    """[Sigma] as a permutation of all nodes (the diagram duality)."""
    return duality_permutation(datum, datum.nodes)


def is_symmetric(datum: RootDatum, I: Iterable[int]) -> bool:
    perm = star(datum)
    I = set(I)
    return {perm[i] for i in I} == I


def fixed_rank(datum: RootDatum, J: Iterable[int] | None = None) -> int:
    """|J/[J]|, the number of [J]-orbits on J (J = Sigma by default)."""
    J = datum.nodes if J is None else J
    return len(sigma_orbits(datum, J))


# ---------------------------------------------------------------- subset equivalence

def _apply_to_subset(datum: RootDatum, w: WeylElement, J: Subset) -> Subset | None:
    index = {datum.simple_root(j): j for j in datum.nodes}
    out = []
    for j in J:
        img = w(datum.simple_root(j))
        if img not in index:
            return None
        out.append(index[img])
    return as_subset(out)


def _subset_classes(datum: RootDatum) -> dict[Subset, int]:
    key = "subset_classes"
    if key in datum._cache:
        return datum._cache[key]
    label: dict[Subset, int] = {}
    all_subsets = [as_subset(c) for r in range(datum.rank + 1) for c in itertools.combinations(datum.nodes, r)]
    for start in all_subsets:
        if start in label:
            continue
        cls_id = len(set(label.values()))
        label[start] = cls_id
        todo = deque([start])
        while todo:
            J = todo.popleft()
            for a in datum.nodes:
                if a in J:
                    continue
                # w_o^{J+a} w_o^J maps J onto [J+a](J), a set of simple roots
                K = as_subset(J + (a,))
                perm = duality_permutation(datum, K)
                image = as_subset(perm[j] for j in J)
                if image not in label:
                    label[image] = cls_id
                    todo.append(image)
    datum._cache[key] = label
    return label


def subsets_equivalent(datum: RootDatum, J: Iterable[int], K: Iterable[int]) -> bool:
    """True iff w(J) = K for some w in W."""
    J, K = _check_subset(datum, J), _check_subset(datum, K)
    if len(J) != len(K):
        return False
    labels = _subset_classes(datum)
    return labels[J] == labels[K]


def subset_class(datum: RootDatum, J: Iterable[int]) -> list[Subset]:
    labels = _subset_classes(datum)
    c = labels[_check_subset(datum, J)]
    return sorted(S for S, v in labels.items() if v == c)


def subsets_up_to_equivalence(datum: RootDatum) -> list[Subset]:
    """The lexicographically smallest member of each class, classes ordered by size then representative."""
    labels = _subset_classes(datum)
    reps: dict[int, Subset] = {}
    for S, c in labels.items():
        if c not in reps or S < reps[c]:
            reps[c] = S
    return sorted(reps.values(), key=lambda S: (len(S), S))


# ---------------------------------------------------------------- involution conjugacy

def _keys(batch: np.ndarray) -> list[bytes]:
    small = batch.astype(np.int16)
    return [m.tobytes() for m in small]


def _conjugates(gens: np.ndarray, frontier: np.ndarray, threads: int) -> np.ndarray:
    def work(chunk):
        # s M s for every generator s and matrix M (s = s^{-1})
        return np.einsum("gij,bjk,gkl->gbil", gens, chunk, gens, optimize=True).reshape(-1, *chunk.shape[1:])

    if threads <= 1 or len(frontier) < 4096:
        return work(frontier)
    chunks = np.array_split(frontier, threads)
    with ThreadPoolExecutor(threads) as pool:
        return np.concatenate(list(pool.map(work, chunks)))


def conjugacy_class(
    datum: RootDatum,
    sigma: Involution | WeylElement,
    budget: int | None = None,
    threads: int | None = None,
) -> frozenset[bytes]:
    """The W-conjugacy class of an involution, as int16 matrix byte-keys.

    Breadth-first search under conjugation by simple reflections; raises
    BudgetExceeded when the class grows beyond ``budget`` elements.
    """
    el = sigma.element if isinstance(sigma, Involution) else sigma
    if not (el * el).is_identity():
        raise ValueError("element is not an involution")
    budget = DEFAULT_CONJUGACY_BUDGET if budget is None else budget
    threads = threads or int(os.environ.get("WITTFLAG_THREADS", "1"))
    key = ("class", el.matrix)
    cached = datum._cache.get(key)
    if cached is not None:
        if len(cached) > budget:
            raise BudgetExceeded(f"conjugacy class has {len(cached)} elements, budget {budget}")
        return cached
    gens = _reflection_arrays(datum)
    frontier = el.array()[None]
    seen = set(_keys(frontier))
    while len(frontier):
        cand = _conjugates(gens, frontier, threads)
        new_rows = []
        for k, m in zip(_keys(cand), cand):
            if k not in seen:
                seen.add(k)
                new_rows.append(m)
        if len(seen) > budget:
            raise BudgetExceeded(f"conjugacy class exceeds budget {budget}")
        frontier = np.array(new_rows) if new_rows else np.empty((0,) + frontier.shape[1:], dtype=np.int64)
    out = frozenset(seen)
    datum._cache[key] = out
    return out


def involution_key(element: Involution | WeylElement) -> bytes:
    el = element.element if isinstance(element, Involution) else element
    return np.array(el.matrix, dtype=np.int16).tobytes()


def conjugate_involutions(
    datum: RootDatum,
    sigma: Involution | WeylElement,
    tau: Involution | WeylElement,
    budget: int | None = None,
    threads: int | None = None,
) -> bool:
    """True iff w sigma w^-1 = tau for some w in W."""
    s = sigma if isinstance(sigma, Involution) else Involution.of(sigma)
    t = tau if isinstance(tau, Involution) else Involution.of(tau)
    if s.ell_plus != t.ell_plus:
        return False
    if s.element == t.element:
        return True
    return involution_key(t) in conjugacy_class(datum, s, budget, threads)


def conjugating_element(
    datum: RootDatum,
    sigma: WeylElement,
    tau: WeylElement,
    budget: int | None = None,
    threads: int | None = None,
) -> WeylElement | None:
    """Some w with w sigma w^-1 = tau (None if not conjugate), by a parent-tracking BFS."""
    budget = DEFAULT_CONJUGACY_BUDGET if budget is None else budget
    threads = threads or int(os.environ.get("WITTFLAG_THREADS", "1"))
    start, target = involution_key(sigma), involution_key(tau)
    parent: dict[bytes, tuple[bytes, int] | None] = {start: None}
    gens = _reflection_arrays(datum)
    frontier = sigma.array()[None]
    found = start == target
    while len(frontier) and not found:
        cand = _conjugates(gens, frontier, threads)
        nb = len(frontier)
        parent_keys = _keys(frontier)
        new_rows = []
        for idx, (k, m) in enumerate(zip(_keys(cand), cand)):
            if k in parent:
                continue
            g, b = divmod(idx, nb)
            parent[k] = (parent_keys[b], g + 1)
            new_rows.append(m)
            if k == target:
                found = True
                break
        if len(parent) > budget:
            raise BudgetExceeded(f"conjugacy search exceeds budget {budget}")
        frontier = np.array(new_rows) if new_rows else np.empty((0,) + frontier.shape[1:], dtype=np.int64)
    if not found:
        return None
    word = []
    k = target
    while parent[k] is not None:
        k, i = parent[k]
        word.append(i)
    # tau = s_last ... s_first sigma s_first ... s_last
    return from_word(datum, word)


# ---------------------------------------------------------------- brute force (small rank oracles)

def group_elements(datum: RootDatum, limit: int = 200_000) -> list[WeylElement]:
    """Every element of W by closure; only sensible for small groups."""
    start = identity_element(datum)
    seen = {start.matrix: start}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        for i in datum.nodes:
            v = simple_reflection(datum, i) * w
            if v.matrix not in seen:
                seen[v.matrix] = v
                todo.append(v)
                if len(seen) > limit:
                    raise BudgetExceeded(f"group has more than {limit} elements")
    return list(seen.values())


# ---------------------------------------------------------------- subdiagram types

def components(datum: RootDatum, J: Iterable[int]) -> list[Subset]:
    J = set(J)
    out, seen = [], set()
    for a in sorted(J):
        if a in seen:
            continue
        comp, todo = {a}, [a]
        while todo:
            x = todo.pop()
            for y in datum.neighbours(x):
                if y in J and y not in comp:
                    comp.add(y)
                    todo.append(y)
        seen |= comp
        out.append(as_subset(comp))
    return out


def component_type(datum: RootDatum, comp: Sequence[int]) -> str:
    """Cartan type name (e.g. 'D4') of a connected set of nodes."""
    comp = list(comp)
    n = len(comp)
    c = datum.cartan
    nbrs = {a: [b for b in comp if b != a and c[a - 1][b - 1] != 0] for a in comp}
    multi = [(a, b) for a in comp for b in nbrs[a] if c[a - 1][b - 1] * c[b - 1][a - 1] > 1 and a < b]
    if n == 1:
        return "A1"
    if multi:
        a, b = multi[0]
        if c[a - 1][b - 1] * c[b - 1][a - 1] == 3:
            return "G2"
        short = a if datum.half_lengths[a - 1] < datum.half_lengths[b - 1] else b
        long_ = b if short == a else a
        if n == 2:
            return "B2"
        if len(nbrs[short]) == 1:
            return f"B{n}"
        if len(nbrs[long_]) == 1:
            return f"C{n}"
        return "F4"
    branch = [a for a in comp if len(nbrs[a]) == 3]
    if not branch:
        return f"A{n}"
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [x for x in nbrs[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    return f"E{n}"


def subdiagram_type(datum: RootDatum, J: Iterable[int]) -> list[str]:
    """Component types of the subdiagram J, sorted."""
    return sorted(component_type(datum, comp) for comp in components(datum, J))
