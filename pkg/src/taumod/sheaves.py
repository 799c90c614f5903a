"""Ladders of split vector bundles on the projective line.

A ladder holds, per level, a splitting type and two polynomial matrices: the
inclusion-like map Pi into the next level and the Frobenius-semilinear map
tau from the twisted previous level.  One period is stored; level i + period
is level i twisted by k at infinity, with the identification being the
literal identity on bases, so the period composite of the Pi's must equal
the identity matrix.

The chart at infinity is handled through splitting-type bookkeeping and
truncated power series; the affine chart through elementary divisors over
K[x].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .drinfeld import CoverMap, DrinfeldModule, ensure_verified
from .errors import CapExceeded, NonDivisibleRank, ShapeMismatch
from .ff import FieldElement, FieldTower
from .polys import (
    Matrix,
    Poly,
    divisors_are_powers_of,
    infinity_orders,
    mat_det,
    mat_entry_degrees_ok,
    mat_equal,
    mat_identity,
    mat_inverse_unimodular,
    mat_is_identity,
    mat_mul,
    mat_shape,
    mat_sigma,
    smith_finite,
)
from .report import Clause, VerificationReport, ensure
from .semilinear import SOLUTION_CAP, SemilinearSystem, Term


@dataclass(frozen=True)
class LadderLevel:
    splits: tuple[int, ...]
    Pi: Matrix
    tau: Matrix


@dataclass(frozen=True)
class AbelianSheafLadder:
    tower: FieldTower
    rank: int
    dim: int
    period: int
    twist: int
    characteristic: FieldElement
    levels: tuple[LadderLevel, ...]

    def level(self, i: int) -> LadderLevel:
        sh, idx = divmod(i, self.period)
        lvl = self.levels[idx]
        if sh == 0:
            return lvl
        return LadderLevel(
            tuple(d + sh * self.twist for d in lvl.splits), lvl.Pi, lvl.tau
        )

    def degree(self, i: int) -> int:
        return sum(self.level(i).splits)

    def shifted(self, s: int) -> "AbelianSheafLadder":
        """The same ladder read off from level s onwards."""
        if s == 0:
            return self
        return AbelianSheafLadder(
            self.tower,
            self.rank,
            self.dim,
            self.period,
            self.twist,
            self.characteristic,
            tuple(self.level(i + s) for i in range(self.period)),
        )


@dataclass(frozen=True)
class LadderIso:
    """Per-level unimodular matrices intertwining two ladders; the source is
    read at its levels shifted by `shift`."""

    maps: tuple[Matrix, ...]
    shift: int = 0


def _entry_bound_clause(L: AbelianSheafLadder) -> Clause:
    ok = True
    detail = ""
    for i in range(L.period):
        here, there = L.level(i), L.level(i + 1)
        for name, M in (("Pi", here.Pi), ("tau", here.tau)):
            if mat_shape(M) != (L.rank, L.rank):
                ok, detail = False, f"{name}_{i} is not {L.rank}x{L.rank}"
                break
            if not mat_entry_degrees_ok(M, there.splits, here.splits):
                ok, detail = False, f"{name}_{i} exceeds its splitting degree bounds"
                break
        if not ok:
            break
    return Clause("degree bounds respect the splitting types", ok, detail)


def verify_abelian_sheaf(L: AbelianSheafLadder) -> VerificationReport:
    clauses: list[Clause] = []
    shape_ok = (
        L.period >= 1
        and L.twist >= 1
        and gcd(L.twist, L.period) == 1
        and L.dim * L.period == L.twist * L.rank
        and len(L.levels) == L.period
        and all(len(lvl.splits) == L.rank for lvl in L.levels)
        and L.characteristic.tower.signature == L.tower.signature
    )
    clauses.append(
        Clause(
            "shape: rank, dimension, period and twist are consistent",
            shape_ok,
            f"d*l={L.dim * L.period}, k*r={L.twist * L.rank}",
        )
    )
    bound_clause = _entry_bound_clause(L)
    clauses.append(bound_clause)
    if not (shape_ok and bound_clause.passed):
        clauses.append(Clause("axiom 1: squares commute", False, "skipped"))
        clauses.append(Clause("axiom 2: period composite is the identity", False, "skipped"))
        clauses.append(Clause("axiom 3: Pi cokernel length", False, "skipped"))
        clauses.append(Clause("axiom 4: tau cokernel at the characteristic", False, "skipped"))
        return VerificationReport("abelian sheaf ladder", tuple(clauses))

    # axiom 1: Pi_{i+1} tau_i = tau_{i+1} sigma(Pi_i)
    ok1, detail1 = True, ""
    for i in range(L.period):
        lhs = mat_mul(L.level(i + 1).Pi, L.level(i).tau)
        rhs = mat_mul(L.level(i + 1).tau, mat_sigma(L.level(i).Pi))
        if not mat_equal(lhs, rhs):
            ok1, detail1 = False, f"square at level {i} does not commute"
            break
    clauses.append(Clause("axiom 1: squares commute", ok1, detail1))

    # axiom 2: Pi_{i+l-1} ... Pi_i is the identity matrix
    ok2, detail2 = True, ""
    for i in range(L.period):
        comp = mat_identity(L.tower, L.rank)
        for j in range(L.period):
            comp = mat_mul(L.level(i + j).Pi, comp)
        if not mat_is_identity(comp):
            ok2, detail2 = False, f"period composite from level {i} is not the identity"
            break
    clauses.append(Clause("axiom 2: period composite is the identity", ok2, detail2))

    # axioms 3 and 4: cokernel lengths on both charts
    ok3, detail3 = True, ""
    ok4, detail4 = True, ""
    for i in range(L.period):
        here, there = L.level(i), L.level(i + 1)
        max_deg = max(
            (int(e.degree) for row in here.Pi + here.tau for e in row if not e.is_zero()),
            default=0,
        )
        precision = L.dim + L.twist + max_deg + 1

        div_pi, full_pi = smith_finite(here.Pi)
        if not full_pi:
            ok3, detail3 = False, f"Pi_{i} is not injective"
        else:
            fin = sum(int(p.degree) for p in div_pi)
            inf_orders = infinity_orders(here.Pi, there.splits, here.splits, precision)
            if inf_orders is None:
                ok3, detail3 = False, f"Pi_{i}: inconclusive at precision {precision}"
            elif fin + sum(inf_orders) != L.dim:
                ok3 = False
                detail3 = (
                    f"Pi_{i}: cokernel length {fin}+{sum(inf_orders)} != d={L.dim}"
                    f" (precision {precision})"
                )

        div_tau, full_tau = smith_finite(here.tau)
        if not full_tau:
            ok4, detail4 = False, f"tau_{i} is not injective"
        else:
            fin = sum(int(p.degree) for p in div_tau)
            inf_orders = infinity_orders(here.tau, there.splits, here.splits, precision)
            if inf_orders is None:
                ok4, detail4 = False, f"tau_{i}: inconclusive at precision {precision}"
            elif sum(inf_orders) != 0:
                ok4, detail4 = False, f"tau_{i}: cokernel touches infinity"
            elif fin != L.dim:
                ok4, detail4 = False, f"tau_{i}: finite cokernel length {fin} != d={L.dim}"
            elif not divisors_are_powers_of(div_tau, L.characteristic):
                ok4 = False
                detail4 = f"tau_{i}: elementary divisors are not powers of (x - xi)"
    clauses.append(Clause("axiom 3: Pi cokernel length", ok3, detail3))
    clauses.append(Clause("axiom 4: tau cokernel at the characteristic", ok4, detail4))
    return VerificationReport("abelian sheaf ladder", tuple(clauses))


def ensure_ladder(L: AbelianSheafLadder) -> None:
    ensure(verify_abelian_sheaf(L))


# ---------------------------------------------------------------------------
# Drinfeld module -> ladder


def from_drinfeld(M: DrinfeldModule) -> AbelianSheafLadder:
    """The elliptic-type ladder of a module: the twisted polynomial ring as a
    module over K[x], with x acting by right multiplication by the generator
    image and tau by left multiplication, in the basis 1, t, ..., t^(r-1).
    """
    ensure_verified(M)
    tower = M.tower
    r = M.rank
    phi = M.gen_image
    lead_inv = phi.lead.inverse()
    zero, one = Poly.zero(tower), Poly.one(tower)

    # tau: e_j -> e_{j+1} for j < r-1; t * t^(r-1) = lead^-1 (x e_0 - sum delta_w e_w)
    tau_rows = []
    for row in range(r):
        entries = [zero] * r
        if row == 0:
            entries[r - 1] = Poly(tower, [-(lead_inv * phi.coeff(0)), lead_inv])
        else:
            entries[row - 1] = one
            extra = -(lead_inv * phi.coeff(row))
            if not extra.is_zero():
                entries[r - 1] = entries[r - 1] + Poly(tower, [extra])
        tau_rows.append(tuple(entries))
    tau = tuple(tau_rows)

    levels = []
    for i in range(r):
        splits = tuple((i + r - 1 - j) // r for j in range(r))
        levels.append(LadderLevel(splits, mat_identity(tower, r), tau))
    out = AbelianSheafLadder(tower, r, 1, r, 1, M.characteristic, tuple(levels))
    ensure_ladder(out)
    return out


# ---------------------------------------------------------------------------
# Pushforward along a cover x = p(y)


def _reduce_y(tower: FieldTower, cover: CoverMap, ycoeffs: list[Poly]) -> list[Poly]:
    """Rewrite sum_w c_w(x) y^w modulo p(y) - x into y-degree < n."""
    n = cover.degree
    p = cover.coeffs
    out = list(ycoeffs)
    while len(out) > n:
        g = out.pop()
        if g.is_zero():
            continue
        base = len(out) - n
        out[base] = out[base] + g.shift(1)
        for w in range(n):
            if p[w]:
                out[base + w] = out[base + w] - g * Poly._raw(tower, (p[w],))
    while len(out) < n:
        out.append(Poly.zero(tower))
    return out


def _push_matrix(M: Matrix, cover: CoverMap, tower: FieldTower) -> Matrix:
    """Transport a matrix over K[y] to the basis {y^t e_j} over K[x].

    The same rule serves plain and Frobenius-semilinear maps: the twist fixes
    y, so the image of y^t e_k is y^t times the image of e_k.
    """
    n = cover.degree
    rp = mat_shape(M)[0]
    R = n * rp
    rows = [[Poly.zero(tower)] * R for _ in range(R)]
    for t in range(n):
        for k in range(rp):
            col = t * rp + k
            for j in range(rp):
                entry = M[j][k]
                if entry.is_zero():
                    continue
                ycoeffs = [Poly._raw(tower, (c,)) for c in entry.indices]
                reduced = _reduce_y(tower, cover, [Poly.zero(tower)] * t + ycoeffs)
                for s in range(n):
                    if not reduced[s].is_zero():
                        rows[s * rp + j][col] = rows[s * rp + j][col] + reduced[s]
    return tuple(tuple(row) for row in rows)


def _push_splits(splits: Sequence[int], n: int) -> tuple[int, ...]:
    rp = len(splits)
    out = [0] * (n * rp)
    for t in range(n):
        for j in range(rp):
            out[t * rp + j] = (splits[j] - t) // n
    return tuple(out)


def pushforward(L: AbelianSheafLadder, cover: CoverMap) -> AbelianSheafLadder:
    """Restriction of coefficients for ladders: rank multiplies by the cover
    degree, the dimension is unchanged, the characteristic maps through the
    cover, and the matrices are rewritten in the basis {y^t e_j}."""
    ensure_ladder(L)
    cover.check_tower(L.tower)
    tower = L.tower
    n = cover.degree
    new_rank = n * L.rank
    g = gcd(L.dim, new_rank)
    new_twist, new_period = L.dim // g, new_rank // g
    levels = []
    for i in range(new_period):
        lvl = L.level(i)
        levels.append(
            LadderLevel(
                _push_splits(lvl.splits, n),
                _push_matrix(lvl.Pi, cover, tower),
                _push_matrix(lvl.tau, cover, tower),
            )
        )
    out = AbelianSheafLadder(
        tower,
        new_rank,
        L.dim,
        new_period,
        new_twist,
        cover.evaluate(L.characteristic),
        tuple(levels),
    )
    ensure_ladder(out)
    return out


# ---------------------------------------------------------------------------
# Semilinear isomorphism solver


def _iso_shift(L1: AbelianSheafLadder, L2: AbelianSheafLadder):
    diff = L2.degree(0) - L1.degree(0)
    if diff % L1.dim:
        return None
    return diff // L1.dim


def semilinear_iso_solver(
    L1: AbelianSheafLadder,
    L2: AbelianSheafLadder,
    shift="auto",
    cap: int = SOLUTION_CAP,
) -> tuple[LadderIso, ...]:
    """All ladder isomorphisms L1 -> L2, canonically ordered.

    The defining equations are F_q-linear in the unknown matrix coefficients;
    the linear solution space is enumerated and filtered for unit
    determinants.  With shift="auto" the source is re-indexed so that level
    degrees match (levelwise isomorphism permits no other alignment).
    """
    if L1.tower.signature != L2.tower.signature:
        raise ShapeMismatch("ladders over different towers")
    for attr in ("rank", "dim", "period", "twist"):
        if getattr(L1, attr) != getattr(L2, attr):
            raise ShapeMismatch(f"ladders differ in {attr}")
    if L1.characteristic != L2.characteristic:
        raise ShapeMismatch("ladders have different characteristics")
    if shift == "auto":
        s = _iso_shift(L1, L2)
        if s is None:
            return ()
    else:
        s = int(shift)
    A = L1.shifted(s)
    ell = A.period
    for i in range(ell):
        if sum(A.level(i).splits) != sum(L2.level(i).splits):
            return ()

    system = SemilinearSystem(A.tower)
    for i in range(ell):
        bounds = [
            [L2.level(i).splits[j] - A.level(i).splits[t] for t in range(A.rank)]
            for j in range(A.rank)
        ]
        system.add_block(f"U{i:03d}", bounds)
    for i in range(ell):
        nxt = (i + 1) % ell
        system.add_equation(
            Term(None, f"U{nxt:03d}", A.level(i).Pi),
            Term(L2.level(i).Pi, f"U{i:03d}", None, sign=-1),
        )
        system.add_equation(
            Term(None, f"U{nxt:03d}", A.level(i).tau),
            Term(L2.level(i).tau, f"U{i:03d}", None, twist=1, sign=-1),
        )

    out = []
    for sol in system.solve(cap):
        maps = tuple(sol[f"U{i:03d}"] for i in range(ell))
        if all(_is_unit_matrix_det(U) for U in maps):
            out.append(LadderIso(maps, s))
    out.sort(key=_iso_sort_key)
    return tuple(out)


def _is_unit_matrix_det(U: Matrix) -> bool:
    det = mat_det(U)
    return det.is_constant() and not det.is_zero()


def _iso_sort_key(iso: LadderIso):
    return tuple(
        tuple(tuple(e.indices for e in row) for row in U) for U in iso.maps
    )


# ---------------------------------------------------------------------------
# Module structures over the covering line


@dataclass(frozen=True)
class SheafModuleStructure:
    """A multiplication-by-y structure on a ladder, with its transported
    ladder on the covering line and the change-of-basis witness."""

    y_action: tuple[Matrix, ...]
    ladder: Optional[AbelianSheafLadder]
    witness: tuple[Matrix, ...]
    note: str = ""


def enumerate_sheaf_module_structures(
    L: AbelianSheafLadder, cover: CoverMap, cap: int = SOLUTION_CAP
) -> tuple[SheafModuleStructure, ...]:
    """All families Y_i of multiplication-by-y maps on the ladder with
    p(Y_i) = x, commuting with Pi and tau.

    Multiplication by y has a simple pole at infinity, so Y_i maps level i
    into its twist by one: entry bounds are splits[j] + 1 - splits[t].  The
    commutation equations are linear and solved first; the algebra relation
    p(Y) = x filters the candidates; each survivor is transported to a ladder
    on the covering line through a degree-adapted basis.
    """
    ensure_ladder(L)
    cover.check_tower(L.tower)
    n = cover.degree
    if L.rank % n:
        raise NonDivisibleRank(f"rank {L.rank} is not divisible by cover degree {n}")
    tower = L.tower
    ell = L.period

    system = SemilinearSystem(tower)
    for i in range(ell):
        splits = L.level(i).splits
        bounds = [
            [splits[j] + 1 - splits[t] for t in range(L.rank)] for j in range(L.rank)
        ]
        system.add_block(f"Y{i:03d}", bounds)
    for i in range(ell):
        nxt = (i + 1) % ell
        system.add_equation(
            Term(None, f"Y{nxt:03d}", L.level(i).Pi),
            Term(L.level(i).Pi, f"Y{i:03d}", None, sign=-1),
        )
        system.add_equation(
            Term(None, f"Y{nxt:03d}", L.level(i).tau),
            Term(L.level(i).tau, f"Y{i:03d}", None, twist=1, sign=-1),
        )

    x_id = tuple(
        tuple(Poly.x(tower) if i == j else Poly.zero(tower) for j in range(L.rank))
        for i in range(L.rank)
    )
    candidates = []
    for sol in system.solve(cap):
        Ys = tuple(sol[f"Y{i:03d}"] for i in range(ell))
        if all(mat_equal(_poly_of_matrix(cover.coeffs, Y, tower), x_id) for Y in Ys):
            candidates.append(Ys)
    candidates.sort(
        key=lambda Ys: tuple(
            tuple(tuple(e.indices for e in row) for row in Y) for Y in Ys
        )
    )

    out = []
    for Ys in candidates:
        structure = _assemble_structure(L, cover, Ys, cap)
        out.append(structure)
    return tuple(out)


def _poly_of_matrix(p_coeffs: Sequence[int], Y: Matrix, tower: FieldTower) -> Matrix:
    r = mat_shape(Y)[0]
    acc = None
    for c in reversed(p_coeffs):
        if acc is None:
            acc = tuple(
                tuple(
                    Poly._raw(tower, (c,)) if i == j else Poly.zero(tower)
                    for j in range(r)
                )
                for i in range(r)
            )
            continue
        acc = mat_mul(acc, Y)
        if c:
            cc = Poly._raw(tower, (c,))
            acc = tuple(
                tuple(acc[i][j] + cc if i == j else acc[i][j] for j in range(r))
                for i in range(r)
            )
    return acc


def _compose_with_cover(f: Poly, cover: CoverMap) -> Poly:
    """f(x) |-> f(p(y)) as a polynomial in y."""
    tower = f.tower
    p = cover.poly_in(tower)
    acc = Poly.zero(tower)
    for c in reversed(f.indices):
        acc = acc * p + Poly._raw(tower, (c,))
    return acc


def _candidate_twist_multisets(splits: Sequence[int], n: int, rp: int):
    """Multisets (m_1 >= ... >= m_rp) whose pushforward degrees match splits."""
    from collections import Counter

    target = Counter(splits)
    lo = n * min(splits)
    hi = n * max(splits) + n - 1
    out = []

    def contribution(m: int) -> Counter:
        return Counter((m - t) // n for t in range(n))

    def backtrack(prefix, remaining, max_m):
        if len(prefix) == rp:
            if not remaining:
                out.append(tuple(prefix))
            return
        for m in range(min(max_m, hi), lo - 1, -1):
            contrib = contribution(m)
            if all(remaining[v] >= c for v, c in contrib.items()):
                backtrack(prefix + [m], remaining - contrib, m)

    backtrack([], target, hi)
    return out


def _vector_space_iter(tower, bounds):
    """All K[x]-vectors within per-entry degree bounds, canonical order."""
    slots = []
    for b in bounds:
        slots.append(max(b + 1, 0))
    total = 1
    for s in slots:
        total *= tower.order**s

    def rec(i):
        if i == len(slots):
            yield []
            return
        for rest in rec(i + 1):
            for combo in _coeff_tuples(tower.order, slots[i]):
                yield [Poly._raw(tower, combo)] + rest

    return total, rec(0)


def _coeff_tuples(size, length):
    if length == 0:
        yield ()
        return
    for rest in _coeff_tuples(size, length - 1):
        for c in range(size):
            yield rest + (c,)


def _adapted_basis(tower, cover, splits, Y, rp, cap):
    """Find C'-twists m_s and vectors w_s with B = (Y^t w_s) a bundle
    isomorphism from the pushforward splitting onto the given splitting.
    Returns (m_list, B) or None."""
    n = cover.degree
    r = len(splits)
    if n == 1:
        return list(splits), mat_identity(tower, r)
    powers = [mat_identity(tower, r)]
    for _ in range(n - 1):
        powers.append(mat_mul(Y, powers[-1]))

    for m_list in _candidate_twist_multisets(splits, n, rp):
        push_degs = [0] * r
        for t in range(n):
            for s in range(rp):
                push_degs[t * rp + s] = (m_list[s] - t) // n
        bounds = []
        for s in range(rp):
            for j in range(r):
                bounds.append(splits[j] - (m_list[s] // n))
        total, vectors = _vector_space_iter(tower, bounds)
        if total > cap:
            raise CapExceeded(f"adapted-basis search space {total} exceeds cap {cap}")
        for flat in vectors:
            ws = [flat[s * r : (s + 1) * r] for s in range(rp)]
            B = _basis_matrix(tower, powers, ws, rp, n, r)
            if _is_bundle_iso(B, splits, push_degs):
                return list(m_list), B
    return None


def _basis_matrix(tower, powers, ws, rp, n, r):
    cols = []
    for t in range(n):
        for s in range(rp):
            w = ws[s]
            col = [
                _dot_row(powers[t][j], w) for j in range(r)
            ]
            cols.append(col)
    return tuple(tuple(cols[c][j] for c in range(n * rp)) for j in range(r))


def _dot_row(row, vec):
    acc = None
    for a, b in zip(row, vec):
        term = a * b
        acc = term if acc is None else acc + term
    return acc


def _is_bundle_iso(B, dst_degs, src_degs) -> bool:
    det = mat_det(B)
    if not det.is_constant() or det.is_zero():
        return False
    if sum(dst_degs) != sum(src_degs):
        return False
    if not mat_entry_degrees_ok(B, dst_degs, src_degs):
        return False
    inv = mat_inverse_unimodular(B)
    return mat_entry_degrees_ok(inv, src_degs, dst_degs)


def _to_y_matrix(M_full: Matrix, cover: CoverMap, rp: int, tower: FieldTower) -> Matrix:
    """Read an r x r transported matrix as an rp x rp matrix over K[y]: the
    (s', s) entry collects the y^t blocks of column (s, t=0)."""
    n = cover.degree
    rows = []
    for sp in range(rp):
        row = []
        for s in range(rp):
            acc = Poly.zero(tower)
            for t in range(n):
                block = M_full[t * rp + sp][s]
                if block.is_zero():
                    continue
                term = _compose_with_cover(block, cover)
                # multiply by y^t
                term = Poly._raw(tower, (0,) * t + term.indices)
                acc = acc + term
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def _assemble_structure(L, cover, Ys, cap) -> SheafModuleStructure:
    tower = L.tower
    n = cover.degree
    rp = L.rank // n
    g = gcd(L.dim, rp)
    kp, lp = L.dim // g, rp // g

    bases = []
    twist_lists = []
    for i in range(lp):
        found = _adapted_basis(tower, cover, L.level(i).splits, Ys[i % L.period], rp, cap)
        if found is None:
            return SheafModuleStructure(
                Ys, None, (), "no degree-adapted basis exists at level "
                f"{i}; the structure does not transport to the covering line"
            )
        m_list, B = found
        twist_lists.append(m_list)
        bases.append(B)
    comp = mat_identity(tower, L.rank)
    for i in range(lp):
        comp = mat_mul(L.level(i).Pi, comp)
    closing = mat_mul(comp, bases[0])
    closing_degs = [0] * L.rank
    for t in range(n):
        for s in range(rp):
            closing_degs[t * rp + s] = (twist_lists[0][s] + kp - t) // n
    if not _is_bundle_iso(closing, list(L.level(lp).splits), closing_degs):
        return SheafModuleStructure(
            Ys, None, (), "period closure is not degree-adapted; the structure"
            " does not transport to the covering line"
        )
    bases.append(closing)

    levels = []
    for i in range(lp):
        inv = mat_inverse_unimodular(bases[i + 1])
        Pp = mat_mul(inv, mat_mul(L.level(i).Pi, bases[i]))
        Tp = mat_mul(inv, mat_mul(L.level(i).tau, mat_sigma(bases[i])))
        pi_y = _to_y_matrix(Pp, cover, rp, tower)
        tau_y = _to_y_matrix(Tp, cover, rp, tower)
        levels.append(LadderLevel(tuple(twist_lists[i]), pi_y, tau_y))

    xi_prime = _characteristic_from_tau(tower, levels[0].tau, L.dim)
    if xi_prime is None:
        return SheafModuleStructure(
            Ys, None, (), "multiplication by y has no rational characteristic"
        )
    assert cover.evaluate(xi_prime) == L.characteristic
    out = AbelianSheafLadder(tower, rp, L.dim, lp, kp, xi_prime, tuple(levels))
    ensure_ladder(out)
    return SheafModuleStructure(Ys, out, tuple(bases[:lp]))


def _characteristic_from_tau(tower, tau_y: Matrix, d: int) -> Optional[FieldElement]:
    det = mat_det(tau_y)
    if det.is_zero() or det.degree != d:
        return None
    for c in range(tower.order):
        xi = FieldElement(tower, c)
        target = Poly(tower, [-xi, tower.one]) ** d
        if det.monic() == target:
            return xi
    return None
