"""Types of fundamental representations, the degree subset I, and Witt presentations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from .conditions import ORBIT_BASIS, check_single_cell, classify_condition
from .rootdata import RootDatum, pairing_covector
from .weyl import (
    Subset,
    _check_subset,
    as_subset,
    conjugacy_class,
    duality_permutation,
    fixed_rank,
    involution_key,
    is_symmetric,
    longest_element,
    sigma_orbits,
    star,
    subdiagram_type,
    subsets_equivalent,
)

REAL = "Real"
QUATERNIONIC = "Quaternionic"
COMPLEX = "ComplexPair"

EXTERIOR = "Exterior"
KNOWN_NON_EXTERIOR = "KnownNonExterior"
UNKNOWN = "Unknown"


class TheoremViolation(RuntimeError):
    """A computed quantity contradicts a statement the theory guarantees."""


@dataclass(frozen=True)
class RepType:
    tag: str
    partner: int | None = None

    def __str__(self):
        return f"{self.tag}({self.partner})" if self.tag == COMPLEX else self.tag


def fundamental_rep_type(datum: RootDatum, node: int) -> RepType:
    """Complex iff the diagram duality moves the node; otherwise quaternionic iff <2rho^vee, omega> is odd."""
    partner = star(datum)[node]
    if partner != node:
        return RepType(COMPLEX, partner)
    parity = pairing_covector(datum.two_rho_covector, datum.fundamental_weight(node)) % 2
    return RepType(QUATERNIONIC if parity else REAL)


def type_counts(datum: RootDatum, nodes: Iterable[int] | None = None) -> dict[str, int]:
    """(b_R, b_H, b_C) over the given nodes (all nodes by default)."""
    nodes = datum.nodes if nodes is None else nodes
    counts = {REAL: 0, QUATERNIONIC: 0, COMPLEX: 0}
    for a in nodes:
        counts[fundamental_rep_type(datum, a).tag] += 1
    return counts


# ---------------------------------------------------------------- degree subset

def degree_subset_candidates(
    datum: RootDatum, H: Iterable[int], budget: int | None = None, threads: int | None = None
) -> list[Subset]:
    """All I with [Sigma]I = I, [Sigma] = [I] on I, and w_o^H conjugate to w_o w_o^I."""
    H = _check_subset(datum, H)
    perm = star(datum)
    w_o = longest_element(datum, datum.nodes)
    target = longest_element(datum, H)
    target_trace = target.trace
    cls = None
    out = []
    for r in range(datum.rank + 1):
        for I in itertools.combinations(datum.nodes, r):
            if not is_symmetric(datum, I):
                continue
            pI = duality_permutation(datum, I)
            if any(pI[i] != perm[i] for i in I):
                continue
            cand = w_o * longest_element(datum, I)
            if cand.trace != target_trace:
                continue
            if cand.matrix == target.matrix:
                out.append(as_subset(I))
                continue
            if cls is None:
                cls = conjugacy_class(datum, target, budget, threads)
            if involution_key(cand) in cls:
                out.append(as_subset(I))
    return out


def find_degree_subset_I(
    datum: RootDatum,
    H: Iterable[int],
    budget: int | None = None,
    threads: int | None = None,
    require_single_cell: bool = True,
) -> Subset:
    H = _check_subset(datum, H)
    if require_single_cell and check_single_cell(datum, H) is None:
        raise ValueError(f"{datum.type} H={H}: the single-cell condition does not hold")
    cands = degree_subset_candidates(datum, H, budget, threads)
    if len(cands) != 1:
        raise TheoremViolation(f"{datum.type} H={H}: expected a unique degree subset, found {cands}")
    I = cands[0]
    expected = fixed_rank(datum) - fixed_rank(datum, H)
    if len(sigma_orbits(datum, datum.nodes, I)) != expected:
        raise TheoremViolation(f"{datum.type} H={H}: |I/[Sigma]| != {expected} for I={I}")
    return I


# ---------------------------------------------------------------- Witt presentation

@dataclass(frozen=True)
class WittPresentation:
    status: str
    degree1_count: int | None = None
    degree3_count: int | None = None
    parameter_I: Subset | None = None
    provenance: str | None = None
    notes: tuple[str, ...] = field(default=())

    @property
    def generator_count(self) -> int | None:
        if self.degree1_count is None:
            return None
        return self.degree1_count + self.degree3_count


EIII_SUBSET = (1, 2, 3, 4, 5)


def _known_failure(datum: RootDatum, H: Subset) -> WittPresentation | None:
    if str(datum.type) == "E6" and subsets_equivalent(datum, H, EIII_SUBSET):
        return WittPresentation(
            KNOWN_NON_EXTERIOR,
            provenance="KnownFailure",
            notes=("EIII: the Witt ring is concentrated in degree zero but non-trivial",),
        )
    if datum.type.family == "D" and H != tuple(datum.nodes):
        kinds = subdiagram_type(datum, H)
        if len(kinds) == 1 and kinds[0][0] == "D" and int(kinds[0][1:]) % 2 == 0:
            expected = fixed_rank(datum) - fixed_rank(datum, H)
            return WittPresentation(
                UNKNOWN,
                provenance="KnownFailure",
                notes=(
                    f"D_n containing {kinds[0]}: known to be an exterior algebra on two more generators "
                    f"than the {expected} predicted by the orbit count; degrees are not determined here",
                ),
            )
    return None


def witt_presentation(
    datum: RootDatum, H: Iterable[int], budget: int | None = None, threads: int | None = None
) -> WittPresentation:
    H = _check_subset(datum, H)
    expected = fixed_rank(datum) - fixed_rank(datum, H)
    if str(datum.type) == "F4":
        note = ()
        if classify_condition(datum, H).status != "SingleCell":
            note = ("single-cell condition fails; the F4 result still gives an exterior algebra",)
        return WittPresentation(EXTERIOR, 0, expected, None, "F4", note)
    sc = check_single_cell(datum, H)
    if sc is not None:
        I = find_degree_subset_I(datum, H, budget, threads, require_single_cell=False)
        notes = []
        if I != sc[1]:
            notes.append(f"cell parameter {sc[1]} differs from degree subset {I}")
        counts = type_counts(datum, I)
        d1 = counts[QUATERNIONIC]
        d3 = counts[COMPLEX] // 2 + counts[REAL]
        if d1 + d3 != expected:
            raise TheoremViolation(f"{datum.type} H={H}: {d1}+{d3} generators, expected {expected}")
        return WittPresentation(EXTERIOR, d1, d3, I, "Old" if not H else "MainDegrees", tuple(notes))
    known = _known_failure(datum, H)
    if known is not None:
        return known
    verdict = classify_condition(datum, H)
    if verdict.status == ORBIT_BASIS:
        return WittPresentation(
            UNKNOWN,
            parameter_I=verdict.parameter_I,
            notes=("orbit-basis condition holds; generator degrees are not determined by the theory",),
        )
    return WittPresentation(UNKNOWN, notes=("neither condition holds",))
