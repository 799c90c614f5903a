"""Drinfeld modules over A = F_q[x] (ring tag "A") and A' = F_q[y] ("Aprime").

A module is stored in standard form: the image of the ring generator is a
twisted polynomial whose degree equals the rank and whose constant term is
the characteristic.  Over a field base the isomorphisms between two modules
are exactly the nonzero scalars conjugating one generator image into the
other, so the solvers below work coefficientwise through power equations and
double-check themselves against a brute-force scan of K^x.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ShapeMismatch, TowerMismatch
from .ff import (
    ENUMERATION_CAP,
    FieldElement,
    FieldTower,
    embed,
    extension_tower,
    solve_power_equation,
)
from .polys import Poly
from .report import Clause, VerificationReport, ensure
from .skew import SkewPoly, substitute

RING_TAGS = ("A", "Aprime")


@dataclass(frozen=True)
class CoverMap:
    """A monic polynomial p(Y) over F_q describing the cover x = p(y).

    Monicity makes F_q[x] -> F_q[y] finite flat free of rank n = deg p with
    exactly one point above infinity, which is all the geometry the package
    needs.
    """

    base: FieldTower  # the F_q level (m = 1)
    coeffs: tuple[int, ...]  # F_q indices, constant term first, monic

    def __init__(self, field: FieldTower, coeffs: Sequence):
        base = field.base_field()
        idx = [base.index_of(c) if not isinstance(c, int) else c for c in coeffs]
        for c in idx:
            if not 0 <= c < base.order:
                raise ShapeMismatch("cover coefficient outside F_q")
        while idx and idx[-1] == 0:
            idx.pop()
        if len(idx) < 2:
            raise ShapeMismatch("cover polynomial must have degree >= 1")
        if idx[-1] != 1:
            raise ShapeMismatch("cover polynomial must be monic")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "coeffs", tuple(idx))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def check_tower(self, tower: FieldTower) -> None:
        if (tower.p, tower.base_modulus) != (self.base.p, self.base.base_modulus):
            raise TowerMismatch("cover is defined over a different F_q")

    def evaluate(self, xi: FieldElement) -> FieldElement:
        """p(xi) inside xi's tower; coefficients lift along F_q < K."""
        self.check_tower(xi.tower)
        tower = xi.tower
        acc = 0
        for c in reversed(self.coeffs):
            acc = tower.add_index(tower.mul_index(acc, xi.index), c)
        return FieldElement(tower, acc)

    def poly_in(self, tower: FieldTower) -> Poly:
        self.check_tower(tower)
        return Poly._raw(tower, self.coeffs)

    def is_identity(self) -> bool:
        return self.coeffs == (0, 1)


@dataclass(frozen=True)
class DrinfeldModule:
    tower: FieldTower
    ring_tag: str
    gen_image: SkewPoly
    rank: int
    characteristic: FieldElement

    def __post_init__(self):
        if self.ring_tag not in RING_TAGS:
            raise ShapeMismatch(f"unknown ring tag {self.ring_tag!r}")

    def map_tower(self, target: FieldTower) -> "DrinfeldModule":
        return DrinfeldModule(
            target,
            self.ring_tag,
            self.gen_image.map_tower(target),
            self.rank,
            embed(self.characteristic, target),
        )


def drinfeld_module(
    tower: FieldTower, ring_tag: str, gen_image, rank: Optional[int] = None
) -> DrinfeldModule:
    """Build a module in standard form, inferring rank and characteristic."""
    phi = gen_image if isinstance(gen_image, SkewPoly) else SkewPoly(tower, gen_image)
    if phi.is_zero() or phi.degree < 1:
        raise ShapeMismatch("generator image must have degree >= 1")
    r = int(phi.degree) if rank is None else rank
    return DrinfeldModule(tower, ring_tag, phi, r, phi.constant)


def verify_standard_form(M: DrinfeldModule) -> VerificationReport:
    clauses = []
    phi = M.gen_image
    deg_ok = phi.degree == M.rank and M.rank >= 1
    clauses.append(
        Clause(
            "degree equals rank",
            deg_ok,
            f"deg={phi.degree}, rank={M.rank}",
        )
    )
    lead_ok = bool(phi.indices) and phi.indices[-1] != 0
    clauses.append(Clause("unit leading coefficient", lead_ok))
    const_ok = (
        phi.constant.index == M.characteristic.index
        and M.characteristic.tower.signature == M.tower.signature
    )
    clauses.append(
        Clause(
            "constant term equals characteristic",
            const_ok,
            f"delta_0={phi.constant.index}, xi={M.characteristic.index}",
        )
    )
    towers_ok = phi.tower.signature == M.tower.signature
    clauses.append(Clause("coefficients live in the base tower", towers_ok))
    return VerificationReport("drinfeld module standard form", tuple(clauses))


def ensure_verified(M: DrinfeldModule) -> None:
    ensure(verify_standard_form(M))


def evaluate_at(M: DrinfeldModule, a: Sequence) -> SkewPoly:
    """Image of an ordinary polynomial a (coefficients in F_q) under the module.

    The result has twisted degree rank * deg(a), a nonzero leading
    coefficient, and constant term a(characteristic); all three are asserted.
    """
    ensure_verified(M)
    tower = M.tower
    cidx = []
    for c in a:
        i = c.index if isinstance(c, FieldElement) else int(c)
        if not 0 <= i < tower.q:
            i %= tower.p
        cidx.append(i)
    while cidx and cidx[-1] == 0:
        cidx.pop()
    out = substitute(cidx, M.gen_image)
    if cidx:
        adeg = len(cidx) - 1
        assert out.degree == M.rank * adeg if adeg else out.degree <= 0
        xi = M.characteristic.index
        acc = 0
        for c in reversed(cidx):
            acc = tower.add_index(tower.mul_index(acc, xi), c)
        assert out.constant.index == acc, "constant term violates a(xi)"
    else:
        assert out.is_zero()
    return out


def restrict(Mp: DrinfeldModule, cover: CoverMap) -> DrinfeldModule:
    """Restriction of coefficients along x = p(y): compose the module with the
    cover, multiplying the rank by deg p."""
    if Mp.ring_tag != "Aprime":
        raise ShapeMismatch("restriction expects a module over the covering ring")
    ensure_verified(Mp)
    cover.check_tower(Mp.tower)
    gen = substitute(cover.coeffs, Mp.gen_image)
    out = DrinfeldModule(
        Mp.tower,
        "A",
        gen,
        cover.degree * Mp.rank,
        cover.evaluate(Mp.characteristic),
    )
    ensure_verified(out)
    return out


def _iso_scan(M1: DrinfeldModule, M2: DrinfeldModule) -> list[int]:
    """Brute-force scan of K^x for eps with eps*phi1 = phi2*eps."""
    tower = M1.tower
    f = list(M1.gen_image.indices)
    g = list(M2.gen_image.indices)
    n = max(len(f), len(g))
    f += [0] * (n - len(f))
    g += [0] * (n - len(g))
    mul, frob = tower.mul_index, tower.frob_index
    found = []
    for e in range(1, tower.order):
        if all(mul(e, fi) == mul(gi, frob(e, i)) for i, (fi, gi) in enumerate(zip(f, g))):
            found.append(e)
    return found


def iso_solver(M1: DrinfeldModule, M2: DrinfeldModule) -> tuple[FieldElement, ...]:
    """All eps in K^x with eps * phi1(x) = phi2(x) * eps, canonically ordered.

    Computed by intersecting the per-coefficient power equations
    eps^(q^i - 1) = delta_{i,1}/delta_{i,2} and cross-checked against the
    brute-force scan of K^x.
    """
    _check_comparable(M1, M2)
    tower = M1.tower
    if tower.order > ENUMERATION_CAP:
        raise ShapeMismatch("field too large for the scalar isomorphism solver")
    f = list(M1.gen_image.indices)
    g = list(M2.gen_image.indices)
    n = max(len(f), len(g))
    f += [0] * (n - len(f))
    g += [0] * (n - len(g))

    solutions: Optional[set[int]] = None
    empty = False
    for i in range(1, n):
        fi, gi = f[i], g[i]
        if fi == 0 and gi == 0:
            continue
        if fi == 0 or gi == 0:
            empty = True
            break
        rhs = FieldElement(tower, tower.div_index(fi, gi))
        sols = {s.index for s in solve_power_equation(tower.q**i - 1, rhs)}
        solutions = sols if solutions is None else solutions & sols
        if not solutions:
            empty = True
            break
    if f[0] != g[0]:
        empty = True
    if empty:
        result: list[int] = []
    elif solutions is None:
        result = list(range(1, tower.order))
    else:
        result = sorted(solutions)
    assert result == _iso_scan(M1, M2), "power-equation route disagrees with scan"
    return tuple(FieldElement(tower, e) for e in result)


def _check_comparable(M1: DrinfeldModule, M2: DrinfeldModule) -> None:
    if M1.tower.signature != M2.tower.signature:
        raise ShapeMismatch("modules over different towers")
    if M1.ring_tag != M2.ring_tag:
        raise ShapeMismatch("modules over different rings")
    if M1.rank != M2.rank:
        raise ShapeMismatch("modules of different ranks")
    if M1.characteristic != M2.characteristic:
        raise ShapeMismatch("modules of different characteristics")


@dataclass(frozen=True)
class ScalarGroup:
    """A finite subgroup of K^x, with its group axioms re-checked on build."""

    tower: FieldTower
    elements: tuple[FieldElement, ...]

    def __post_init__(self):
        idx = {e.index for e in self.elements}
        assert 1 in idx, "identity missing"
        tower = self.tower
        for a in idx:
            assert tower.inv_index(a) in idx, "inverse missing"
            for b in idx:
                assert tower.mul_index(a, b) in idx, "closure fails"

    @property
    def order(self) -> int:
        return len(self.elements)


def aut_group(M: DrinfeldModule) -> ScalarGroup:
    """Automorphisms of the module: iso_solver against itself, certified as a
    group."""
    ensure_verified(M)
    return ScalarGroup(M.tower, iso_solver(M, M))


def _extend_module(M: DrinfeldModule, s: int, cap: int = ENUMERATION_CAP) -> DrinfeldModule:
    ext = extension_tower(M.tower, s, cap)
    return M.map_tower(ext) if s > 1 else M


def twist_min_degree(
    M1: DrinfeldModule, M2: DrinfeldModule, s_max: int, cap: int = ENUMERATION_CAP
) -> Optional[int]:
    """Smallest s <= s_max such that the modules become isomorphic over the
    degree-s extension; None when no such s exists."""
    _check_comparable(M1, M2)
    if s_max < 1:
        raise ValueError("s_max must be positive")
    for s in range(1, s_max + 1):
        if iso_solver(_extend_module(M1, s, cap), _extend_module(M2, s, cap)):
            return s
    return None
