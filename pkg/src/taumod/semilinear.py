"""Degree-bounded Frobenius-semilinear matrix equations over K[x].

Equations of the form  sum_t  L_t * sigma^(e_t)(X_{b_t}) * R_t = 0  are
F_q-linear in the unknown matrix coefficients because the coefficientwise
q-power Frobenius is F_q-linear on K.  The solver expands each unknown
coefficient in an F_q-basis of K, eliminates over F_q, and enumerates the
kernel so callers can filter (e.g. for unit determinants).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import CapExceeded, ShapeMismatch
from .ff import FieldTower
from .polys import Matrix, Poly, mat_shape

SOLUTION_CAP = 1 << 20


@dataclass(frozen=True)
class UnknownBlock:
    name: str
    rows: int
    cols: int
    bounds: tuple[tuple[int, ...], ...]  # negative bound = entry forced zero


@dataclass(frozen=True)
class Term:
    """sign * L * sigma^twist(X_block) * R; L or R may be None (identity)."""

    left: Optional[Matrix]
    block: str
    right: Optional[Matrix]
    twist: int = 0
    sign: int = 1


class SemilinearSystem:
    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.blocks: dict[str, UnknownBlock] = {}
        self.equations: list[tuple[Term, ...]] = []

    def add_block(self, name: str, bounds: Sequence[Sequence[int]]) -> UnknownBlock:
        if name in self.blocks:
            raise ShapeMismatch(f"duplicate unknown block {name!r}")
        block = UnknownBlock(
            name, len(bounds), len(bounds[0]), tuple(tuple(r) for r in bounds)
        )
        self.blocks[name] = block
        return block

    def add_equation(self, *terms: Term) -> None:
        self.equations.append(tuple(terms))

    # -- symbol layout ------------------------------------------------------

    def _symbols(self):
        """K-coefficient symbols: (block, i, j, xpower) -> column id."""
        layout = {}
        for name in sorted(self.blocks):
            b = self.blocks[name]
            for i in range(b.rows):
                for j in range(b.cols):
                    bound = b.bounds[i][j]
                    for k in range(bound + 1):
                        layout[(name, i, j, k)] = len(layout)
        return layout

    def solve(self, cap: int = SOLUTION_CAP) -> list[dict[str, Matrix]]:
        """All solutions over K, enumerated from an F_q-kernel basis in
        canonical order."""
        tower = self.tower
        q, m = tower.q, tower.m
        layout = self._symbols()
        n_symbols = len(layout)
        n_cols = n_symbols * m

        # sigma^t of the K-basis 1, g, g^2, ... as index tables; below degree m
        # the power basis monomials carry the indices q^w directly
        basis = [q**w for w in range(m)]
        twisted_basis: dict[int, list[int]] = {}

        def sigma_basis(t: int) -> list[int]:
            t %= m
            tab = twisted_basis.get(t)
            if tab is None:
                tab = [tower.frob_index(b, t) for b in basis]
                twisted_basis[t] = tab
            return tab

        rows: list[list[int]] = []

        def emit_kform(kform: dict[int, int]) -> None:
            """One K-valued linear form -> m rows over F_q."""
            new_rows = [[0] * n_cols for _ in range(m)]
            any_nonzero = False
            for col, coef in kform.items():
                if coef == 0:
                    continue
                any_nonzero = True
                # K-coordinates of coef: base-q digits of its index
                c = coef
                for mu in range(m):
                    c, digit = divmod(c, q)
                    if digit:
                        new_rows[mu][col] = digit
            if any_nonzero:
                rows.extend(new_rows)

        for eq in self.equations:
            shape = None
            for term in eq:
                b = self.blocks[term.block]
                r = mat_shape(term.left)[0] if term.left is not None else b.rows
                c = mat_shape(term.right)[1] if term.right is not None else b.cols
                if shape is None:
                    shape = (r, c)
                elif shape != (r, c):
                    raise ShapeMismatch("equation terms have inconsistent shapes")
            out_rows, out_cols = shape
            # accumulate, per output entry and x-degree, a K-linear form over
            # the F_q-symbol columns
            forms: dict[tuple[int, int, int], dict[int, int]] = {}
            for term in eq:
                b = self.blocks[term.block]
                left = term.left
                right = term.right
                for (name, i, j, k), sym in layout.items():
                    if name != term.block:
                        continue
                    for a in range(out_rows):
                        lpoly = None
                        if left is not None:
                            lpoly = left[a][i]
                            if lpoly.is_zero():
                                continue
                        elif a != i:
                            continue
                        for bcol in range(out_cols):
                            rpoly = None
                            if right is not None:
                                rpoly = right[j][bcol]
                                if rpoly.is_zero():
                                    continue
                            elif bcol != j:
                                continue
                            if lpoly is not None and rpoly is not None:
                                prod = lpoly * rpoly
                            elif lpoly is not None:
                                prod = lpoly
                            elif rpoly is not None:
                                prod = rpoly
                            else:
                                prod = Poly.one(self.tower)
                            sig_b = sigma_basis(term.twist)
                            for d, pc in enumerate(prod.indices):
                                if pc == 0:
                                    continue
                                form = forms.setdefault((a, bcol, d + k), {})
                                for w in range(m):
                                    coef = tower.mul_index(pc, sig_b[w])
                                    if term.sign < 0:
                                        coef = tower.neg_index(coef)
                                    col = sym * m + w
                                    form[col] = tower.add_index(form.get(col, 0), coef)
            for form in forms.values():
                emit_kform(form)

        kernel = _kernel_basis(tower.base_field(), rows, n_cols)
        n_free = len(kernel)
        if q**n_free > cap:
            raise CapExceeded(f"solution space of size {q ** n_free} exceeds cap {cap}")

        solutions = []
        base = tower.base_field()
        for combo in _combos(q, n_free):
            vec = [0] * n_cols
            for c, basis_vec in zip(combo, kernel):
                if c == 0:
                    continue
                for col, val in basis_vec:
                    vec[col] = base.add_index(vec[col], base.mul_index(c, val))
            solutions.append(self._assemble(layout, vec))
        return solutions

    def _assemble(self, layout, vec) -> dict[str, Matrix]:
        tower = self.tower
        q, m = tower.q, tower.m
        out: dict[str, Matrix] = {}
        for name in sorted(self.blocks):
            b = self.blocks[name]
            rows = []
            for i in range(b.rows):
                row = []
                for j in range(b.cols):
                    bound = b.bounds[i][j]
                    coeffs = []
                    for k in range(bound + 1):
                        sym = layout[(name, i, j, k)]
                        # digits occupy disjoint base-q positions of the index
                        idx = sum(vec[sym * m + w] * q**w for w in range(m))
                        coeffs.append(idx)
                    row.append(Poly._raw(tower, coeffs))
                rows.append(tuple(row))
            out[name] = tuple(rows)
        return out


def _combos(q: int, length: int):
    """All F_q-coefficient tuples, canonical order."""
    if length == 0:
        yield ()
        return
    for rest in _combos(q, length - 1):
        for c in range(q):
            yield rest + (c,)


def _kernel_basis(base: FieldTower, rows: list[list[int]], n_cols: int):
    """Reduced kernel basis of the F_q row system, as sparse vectors."""
    # row-reduce
    reduced: list[list[int]] = []
    pivot_of_row: list[int] = []
    for row in rows:
        row = list(row)
        for prow, pcol in zip(reduced, pivot_of_row):
            c = row[pcol]
            if c:
                row = [base.sub_index(a, base.mul_index(c, b)) for a, b in zip(row, prow)]
        lead = next((i for i, c in enumerate(row) if c), None)
        if lead is None:
            continue
        inv = base.inv_index(row[lead])
        row = [base.mul_index(c, inv) for c in row]
        # back-substitute into earlier rows to reach reduced echelon form
        for t, (prow, pcol) in enumerate(zip(reduced, pivot_of_row)):
            c = prow[lead]
            if c:
                reduced[t] = [
                    base.sub_index(a, base.mul_index(c, b)) for a, b in zip(prow, row)
                ]
        reduced.append(row)
        pivot_of_row.append(lead)
    pivots = set(pivot_of_row)
    free_cols = [c for c in range(n_cols) if c not in pivots]
    kernel = []
    for fc in free_cols:
        vec = [(fc, 1)]
        for prow, pcol in zip(reduced, pivot_of_row):
            c = prow[fc]
            if c:
                vec.append((pcol, base.neg_index(c)))
        kernel.append(vec)
    return kernel
