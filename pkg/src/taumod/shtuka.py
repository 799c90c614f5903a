"""Single-square diagrams of bundle maps with separated pole and zero.

A right shtuka is a pair of split bundles E, E' with an inclusion-like map
j: E -> E' whose cokernel sits at the pole and a Frobenius-twisted map
tau: sigma*E -> E' whose cokernel sits at the zero; a left shtuka mirrors
the twist onto j.  Poles or zeros at infinity are carried by the splitting
types rather than a second chart: the finite-chart clauses then require the
corresponding finite cokernel to vanish and the degree bookkeeping at
infinity to account for the full length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .drinfeld import CoverMap
from .errors import ShapeMismatch
from .ff import FieldElement, FieldTower
from .polys import (
    Matrix,
    divisors_are_powers_of,
    mat_det,
    mat_entry_degrees_ok,
    mat_shape,
    smith_finite,
)
from .report import Clause, VerificationReport, ensure
from .sheaves import AbelianSheafLadder, _push_matrix, _push_splits
from .semilinear import SOLUTION_CAP, SemilinearSystem, Term
from .polys import mat_mul, mat_sigma, mat_equal

ORIENTATIONS = ("right", "left")


@dataclass(frozen=True)
class Shtuka:
    orientation: str
    tower: FieldTower
    rank: int
    dim: int
    pole: Optional[FieldElement]  # None = at infinity
    zero: Optional[FieldElement]
    split_E: tuple[int, ...]
    split_Eprime: tuple[int, ...]
    J: Matrix
    T: Matrix

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ShapeMismatch(f"unknown orientation {self.orientation!r}")

    def map_degs(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(target, source) splitting degrees of J and T as written."""
        if self.orientation == "right":
            return self.split_Eprime, self.split_E
        return self.split_E, self.split_Eprime


def _point_name(p: Optional[FieldElement]) -> str:
    return "infinity" if p is None else f"x={p.index}"


def _cokernel_clause(
    name: str,
    M: Matrix,
    dst: tuple[int, ...],
    src: tuple[int, ...],
    point: Optional[FieldElement],
    d: int,
) -> Clause:
    divisors, full = smith_finite(M)
    if not full:
        return Clause(name, False, "map is not injective")
    finite_len = sum(int(p.degree) for p in divisors)
    inf_len = sum(dst) - sum(src) - finite_len
    if point is None:
        ok = finite_len == 0 and inf_len == d
        detail = f"finite {finite_len}, infinity {inf_len}, want all {d} at infinity"
    else:
        ok = (
            inf_len == 0
            and finite_len == d
            and divisors_are_powers_of(divisors, point)
        )
        detail = (
            f"finite {finite_len}, infinity {inf_len}, want {d} at {_point_name(point)}"
        )
    return Clause(name, ok, detail)


def verify_shtuka(S: Shtuka) -> VerificationReport:
    clauses: list[Clause] = []
    shape_ok = (
        len(S.split_E) == S.rank
        and len(S.split_Eprime) == S.rank
        and mat_shape(S.J) == (S.rank, S.rank)
        and mat_shape(S.T) == (S.rank, S.rank)
        and S.dim >= 1
    )
    clauses.append(Clause("shape: rank and matrix sizes", shape_ok))
    if shape_ok:
        dst, src = S.map_degs()
        bounds_ok = mat_entry_degrees_ok(S.J, dst, src) and mat_entry_degrees_ok(
            S.T, dst, src
        )
    else:
        bounds_ok = False
    clauses.append(Clause("degree bounds respect the splitting types", bounds_ok))
    if not (shape_ok and bounds_ok):
        clauses.append(Clause("pole: j cokernel", False, "skipped"))
        clauses.append(Clause("zero: tau cokernel", False, "skipped"))
        return VerificationReport("shtuka", tuple(clauses))
    dst, src = S.map_degs()
    clauses.append(_cokernel_clause("pole: j cokernel", S.J, dst, src, S.pole, S.dim))
    clauses.append(_cokernel_clause("zero: tau cokernel", S.T, dst, src, S.zero, S.dim))
    return VerificationReport("shtuka", tuple(clauses))


def ensure_shtuka(S: Shtuka) -> None:
    ensure(verify_shtuka(S))


def from_abelian_sheaf(L: AbelianSheafLadder, i: int) -> Shtuka:
    """The level-i square of a ladder: E = F_i, E' = F_{i+1}, j = Pi_i,
    tau = tau_i.  For elliptic-type ladders the Pi cokernel sits at infinity,
    so the pole is recorded there; the zero is the characteristic."""
    here, there = L.level(i), L.level(i + 1)
    out = Shtuka(
        "right",
        L.tower,
        L.rank,
        L.dim,
        None,
        L.characteristic,
        here.splits,
        there.splits,
        here.Pi,
        here.tau,
    )
    return out


def pushforward_shtuka(S: Shtuka, cover: CoverMap) -> Shtuka:
    """Restriction of coefficients: matrices in the basis {y^t e_j}, pole and
    zero through the cover; only finiteness of the cover is used."""
    ensure_shtuka(S)
    cover.check_tower(S.tower)
    n = cover.degree
    out = Shtuka(
        S.orientation,
        S.tower,
        n * S.rank,
        S.dim,
        None if S.pole is None else cover.evaluate(S.pole),
        None if S.zero is None else cover.evaluate(S.zero),
        _push_splits(S.split_E, n),
        _push_splits(S.split_Eprime, n),
        _push_matrix(S.J, cover, S.tower),
        _push_matrix(S.T, cover, S.tower),
    )
    ensure_shtuka(out)
    return out


@dataclass(frozen=True)
class ShtukaIso:
    U: Matrix  # E_1 -> E_2
    U_prime: Matrix  # E'_1 -> E'_2


def shtuka_iso_solver(S1: Shtuka, S2: Shtuka, cap: int = SOLUTION_CAP) -> tuple[ShtukaIso, ...]:
    """All pairs (U, U') of unimodular degree-bounded matrices intertwining
    two shtukas of the same shape, found F_q-linearly."""
    if S1.tower.signature != S2.tower.signature:
        raise ShapeMismatch("shtukas over different towers")
    for attr in ("orientation", "rank", "dim"):
        if getattr(S1, attr) != getattr(S2, attr):
            raise ShapeMismatch(f"shtukas differ in {attr}")
    if S1.pole != S2.pole or S1.zero != S2.zero:
        raise ShapeMismatch("shtukas have different pole/zero data")
    if sum(S1.split_E) != sum(S2.split_E) or sum(S1.split_Eprime) != sum(S2.split_Eprime):
        return ()

    system = SemilinearSystem(S1.tower)
    system.add_block(
        "U",
        [
            [S2.split_E[j] - S1.split_E[t] for t in range(S1.rank)]
            for j in range(S1.rank)
        ],
    )
    system.add_block(
        "V",
        [
            [S2.split_Eprime[j] - S1.split_Eprime[t] for t in range(S1.rank)]
            for j in range(S1.rank)
        ],
    )
    if S1.orientation == "right":
        # V j_1 = j_2 U  and  V tau_1 = tau_2 sigma(U)
        system.add_equation(
            Term(None, "V", S1.J), Term(S2.J, "U", None, sign=-1)
        )
        system.add_equation(
            Term(None, "V", S1.T), Term(S2.T, "U", None, twist=1, sign=-1)
        )
    else:
        # sigma(U) j_1 = j_2 V  and  U tau_1 = tau_2 V
        system.add_equation(
            Term(None, "U", S1.J, twist=1), Term(S2.J, "V", None, sign=-1)
        )
        system.add_equation(
            Term(None, "U", S1.T), Term(S2.T, "V", None, sign=-1)
        )
    out = []
    for sol in system.solve(cap):
        U, V = sol["U"], sol["V"]
        du, dv = mat_det(U), mat_det(V)
        if du.is_constant() and not du.is_zero() and dv.is_constant() and not dv.is_zero():
            out.append(ShtukaIso(U, V))
    out.sort(
        key=lambda iso: (
            tuple(tuple(e.indices for e in row) for row in iso.U),
            tuple(tuple(e.indices for e in row) for row in iso.U_prime),
        )
    )
    return tuple(out)
