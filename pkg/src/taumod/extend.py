"""The fiber of restriction: all module structures over F_q[y] extending a
given module over F_q[x] along a cover x = p(y), classified up to
isomorphism.

Over a field base the candidate space K^(r'+1) is finite, so the fiber is
enumerated exactly.  Two routes are kept deliberately distinct: the staged
solver pins the leading coefficient through its norm-type power equation and
scans the rest, while the brute-force oracle tests every coefficient tuple
directly; the test suite holds them equal on every instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CapExceeded, ShapeMismatch
from .ff import ENUMERATION_CAP, FieldElement, extension_tower, solve_power_equation
from .drinfeld import (
    CoverMap,
    DrinfeldModule,
    aut_group,
    drinfeld_module,
    ensure_verified,
    iso_solver,
)
from .skew import SkewPoly, conjugate, substitute

CANDIDATE_CAP = 10**7


@dataclass(frozen=True)
class ExtensionProblem:
    base_module: DrinfeldModule
    cover: CoverMap
    target_rank: int

    def __post_init__(self):
        ensure_verified(self.base_module)
        if self.base_module.ring_tag != "A":
            raise ShapeMismatch("extension problems start from a module over F_q[x]")
        self.cover.check_tower(self.base_module.tower)
        if self.base_module.rank != self.cover.degree * self.target_rank:
            raise ShapeMismatch(
                f"rank {self.base_module.rank} is not cover degree "
                f"{self.cover.degree} times target rank {self.target_rank}"
            )

    def over_extension(self, s: int, cap: int = ENUMERATION_CAP) -> "ExtensionProblem":
        if s == 1:
            return self
        ext = extension_tower(self.base_module.tower, s, cap)
        return ExtensionProblem(self.base_module.map_tower(ext), self.cover, self.target_rank)


@dataclass(frozen=True)
class ExtensionSolution:
    delta: SkewPoly
    lifted_characteristic: FieldElement

    def as_module(self) -> DrinfeldModule:
        return drinfeld_module(self.delta.tower, "Aprime", self.delta)


def _check_cap(prob: ExtensionProblem, cap: int) -> None:
    if prob.base_module.tower.order ** (prob.target_rank + 1) > cap:
        raise CapExceeded(
            "candidate space of size "
            f"{prob.base_module.tower.order ** (prob.target_rank + 1)} exceeds cap {cap};"
            " raise the cap or shrink the extension field"
        )


def _solution(prob: ExtensionProblem, indices: tuple[int, ...]) -> ExtensionSolution:
    tower = prob.base_module.tower
    delta = SkewPoly._raw(tower, indices)
    xi_prime = delta.constant
    sol = ExtensionSolution(delta, xi_prime)
    assert delta.degree == prob.target_rank
    assert prob.cover.evaluate(xi_prime) == prob.base_module.characteristic
    return sol


def brute_oracle(
    prob: ExtensionProblem, cap: int = CANDIDATE_CAP
) -> tuple[ExtensionSolution, ...]:
    """Exhaustive scan over all coefficient tuples in K^(r'+1)."""
    _check_cap(prob, cap)
    tower = prob.base_module.tower
    rp = prob.target_rank
    target = prob.base_module.gen_image
    p_coeffs = prob.cover.coeffs
    found = []

    # depth-first in canonical coefficient order keeps the output sorted
    def scan(prefix: tuple[int, ...]):
        if len(prefix) == rp:
            for lead in range(1, tower.order):
                cand = SkewPoly._raw(tower, prefix + (lead,))
                if substitute(p_coeffs, cand) == target:
                    found.append(prefix + (lead,))
            return
        for c in range(tower.order):
            scan(prefix + (c,))

    scan(())
    return tuple(_solution(prob, idx) for idx in found)


def enumerate_extensions(
    prob: ExtensionProblem, cap: int = CANDIDATE_CAP
) -> tuple[ExtensionSolution, ...]:
    """Complete, duplicate-free, canonically ordered set of generator images
    delta' with p(delta') equal to the base generator image.

    Stage one solves the leading-coefficient equation
    lead^(1 + q^r' + ... + q^((n-1)r')) = lead(phi(x)) by a power equation;
    stage two scans the lower coefficients for each admissible lead.
    """
    _check_cap(prob, cap)
    tower = prob.base_module.tower
    rp = prob.target_rank
    n = prob.cover.degree
    target = prob.base_module.gen_image
    if target.degree != n * rp:
        return ()
    p_coeffs = prob.cover.coeffs

    norm_exp = sum(tower.q ** (w * rp) for w in range(n))
    leads = solve_power_equation(norm_exp, target.lead)
    found = []
    for low in _tuples(tower.order, rp):
        for lead in leads:
            cand = SkewPoly._raw(tower, low + (lead.index,))
            if substitute(p_coeffs, cand) == target:
                found.append(low + (lead.index,))
    found.sort()
    return tuple(_solution(prob, idx) for idx in found)


def _tuples(size: int, length: int):
    if length == 0:
        yield ()
        return
    for rest in _tuples(size, length - 1):
        for c in range(size):
            yield rest + (c,)


@dataclass(frozen=True)
class ExtensionClasses:
    partition: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    aut_order: int

    @property
    def count(self) -> int:
        return len(self.partition)


def extension_iso_classes(
    prob: ExtensionProblem, solutions: Optional[tuple[ExtensionSolution, ...]] = None
) -> ExtensionClasses:
    """Isomorphism classes of extensions, as orbits of the base automorphisms
    acting by conjugation on the solutions.

    The orbit partition is recomputed through pairwise scalar isomorphism of
    the resulting modules and the two must coincide.
    """
    if solutions is None:
        solutions = enumerate_extensions(prob)
    aut = aut_group(prob.base_module)
    index_of = {sol.delta.indices: k for k, sol in enumerate(solutions)}

    unseen = set(range(len(solutions)))
    orbits = []
    while unseen:
        seed = min(unseen)
        orbit = set()
        frontier = [seed]
        while frontier:
            k = frontier.pop()
            if k in orbit:
                continue
            orbit.add(k)
            delta = solutions[k].delta
            for eps in aut.elements:
                image = conjugate(delta, eps)
                j = index_of.get(image.indices)
                assert j is not None, "conjugation left the solution set"
                if j not in orbit:
                    frontier.append(j)
        orbits.append(tuple(sorted(orbit)))
        unseen -= orbit
    orbits.sort()

    # cross-check: orbits must agree with pairwise isomorphism of the modules
    modules = [sol.as_module() for sol in solutions]
    cls_of = {}
    for orbit_id, orbit in enumerate(orbits):
        for k in orbit:
            cls_of[k] = orbit_id
    for a in range(len(modules)):
        for b in range(a + 1, len(modules)):
            if modules[a].characteristic != modules[b].characteristic:
                # distinct lifted characteristics are never isomorphic
                same = False
            else:
                same = bool(iso_solver(modules[a], modules[b]))
            assert same == (cls_of[a] == cls_of[b]), (
                "orbit partition disagrees with pairwise isomorphism"
            )

    reps = tuple(orbit[0] for orbit in orbits)
    return ExtensionClasses(tuple(orbits), reps, aut.order)


def galois_merge_report(
    prob: ExtensionProblem, s_max: int, cap: int = ENUMERATION_CAP
) -> dict[int, tuple[int, int]]:
    """Solution and class counts over the degree-s extension towers,
    s = 1..s_max.  Solution counts never decrease; class counts are reported
    without any monotonicity claim."""
    if s_max < 1:
        raise ValueError("s_max must be positive")
    out: dict[int, tuple[int, int]] = {}
    prev_solutions = 0
    for s in range(1, s_max + 1):
        ext_prob = prob.over_extension(s, cap)
        solutions = enumerate_extensions(ext_prob)
        classes = extension_iso_classes(ext_prob, solutions)
        out[s] = (len(solutions), classes.count)
        assert len(solutions) >= prev_solutions, "solutions must persist under extension"
        prev_solutions = len(solutions)
    return out
