"""Commutative polynomials and polynomial matrices over a field tower.

Matrices over K[x] encode maps of split vector bundles on the projective
line: an entry from a summand twisted by a to one twisted by b is a
polynomial of degree at most b - a.  The finite-chart cokernel is measured
by elementary divisors over the principal ideal ring K[x]; the chart at
infinity is handled through truncated power series in u = 1/x.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DivisionByZero, ShapeMismatch, TowerMismatch
from .ff import FieldElement, FieldTower

Matrix = tuple  # tuple of tuples of Poly


class Poly:
    """Univariate polynomial over K, coefficients constant-term first."""

    __slots__ = ("tower", "indices")

    def __init__(self, tower: FieldTower, coeffs=()):
        idx = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.tower.signature != tower.signature:
                    raise TowerMismatch("coefficient from a different tower")
                idx.append(c.index)
            else:
                idx.append(tower.index_of(c))
        while idx and idx[-1] == 0:
            idx.pop()
        self.tower = tower
        self.indices = tuple(idx)

    @classmethod
    def _raw(cls, tower: FieldTower, indices) -> "Poly":
        out = object.__new__(cls)
        idx = list(indices)
        while idx and idx[-1] == 0:
            idx.pop()
        out.tower = tower
        out.indices = tuple(idx)
        return out

    @classmethod
    def zero(cls, tower: FieldTower) -> "Poly":
        return cls._raw(tower, ())

    @classmethod
    def one(cls, tower: FieldTower) -> "Poly":
        return cls._raw(tower, (1,))

    @classmethod
    def x(cls, tower: FieldTower) -> "Poly":
        return cls._raw(tower, (0, 1))

    @classmethod
    def const(cls, tower: FieldTower, c) -> "Poly":
        return cls._raw(tower, (tower.index_of(c),))

    @property
    def degree(self):
        return len(self.indices) - 1 if self.indices else float("-inf")

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.tower, i) for i in self.indices)

    @property
    def lead(self) -> FieldElement:
        if not self.indices:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.tower, self.indices[-1])

    def is_zero(self) -> bool:
        return not self.indices

    def is_constant(self) -> bool:
        return len(self.indices) <= 1

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.tower.signature != self.tower.signature:
                raise TowerMismatch("operands from different towers")
            return other
        if isinstance(other, FieldElement):
            return Poly(self.tower, (other,))
        if isinstance(other, int):
            return Poly._raw(self.tower, (other % self.tower.p,))
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.indices, o.indices
        if len(a) < len(b):
            a, b = b, a
        add = self.tower.add_index
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly._raw(self.tower, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.tower.neg_index
        return Poly._raw(self.tower, [neg(c) for c in self.indices])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        f, g = self.indices, o.indices
        if not f or not g:
            return Poly.zero(self.tower)
        add, mul = self.tower.add_index, self.tower.mul_index
        out = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi == 0:
                continue
            for j, gj in enumerate(g):
                if gj:
                    out[i + j] = add(out[i + j], mul(fi, gj))
        return Poly._raw(self.tower, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial powers are not defined")
        acc, base = Poly.one(self.tower), self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __divmod__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        tower = self.tower
        rem = list(self.indices)
        dg = len(o.indices) - 1
        lead_inv = tower.inv_index(o.indices[-1])
        quot = [0] * max(len(rem) - dg, 0)
        sub, mul = tower.sub_index, tower.mul_index
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            c = mul(c, lead_inv)
            quot[i - dg] = c
            for j, gj in enumerate(o.indices):
                rem[i - dg + j] = sub(rem[i - dg + j], mul(c, gj))
        return Poly._raw(tower, quot), Poly._raw(tower, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.tower.inv_index(self.indices[-1])
        mul = self.tower.mul_index
        return Poly._raw(self.tower, [mul(c, inv) for c in self.indices])

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if self.is_zero():
            return self
        return Poly._raw(self.tower, (0,) * k + self.indices)

    def sigma(self) -> "Poly":
        """Apply the q-power Frobenius to every coefficient (x is fixed)."""
        frob = self.tower.frob_index
        return Poly._raw(self.tower, [frob(c, 1) for c in self.indices])

    def evaluate(self, x: FieldElement) -> FieldElement:
        if x.tower.signature != self.tower.signature:
            raise TowerMismatch("evaluation point from a different tower")
        tower = self.tower
        acc = 0
        for c in reversed(self.indices):
            acc = tower.add_index(tower.mul_index(acc, x.index), c)
        return FieldElement(tower, acc)

    def coeff_index(self, k: int) -> int:
        return self.indices[k] if 0 <= k < len(self.indices) else 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (
                self.indices == other.indices
                and self.tower.signature == other.tower.signature
            )
        if isinstance(other, int):
            return self.indices == ((other % self.tower.p,) if other % self.tower.p else ())
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.signature, self.indices, "poly"))

    def __repr__(self):
        if not self.indices:
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.indices):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "Poly(" + " + ".join(parts) + ")"


# ---------------------------------------------------------------------------
# Matrices over K[x]


def mat_from_rows(rows) -> Matrix:
    return tuple(tuple(row) for row in rows)


def mat_identity(tower: FieldTower, r: int) -> Matrix:
    one, zero = Poly.one(tower), Poly.zero(tower)
    return tuple(tuple(one if i == j else zero for j in range(r)) for i in range(r))


def mat_zero(tower: FieldTower, rows: int, cols: int) -> Matrix:
    zero = Poly.zero(tower)
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))

def mat_shape(A: Matrix) -> tuple[int, int]:
    return len(A), len(A[0]) if A else 0


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n, k = mat_shape(A)
    k2, m = mat_shape(B)
    if k != k2:
        raise ShapeMismatch(f"matrix shapes {n}x{k} and {k2}x{m} do not compose")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                term = A[i][t] * B[t][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(A: Matrix) -> Matrix:
    return tuple(tuple(-a for a in row) for row in A)


def mat_sigma(A: Matrix) -> Matrix:
    """Entrywise coefficient Frobenius."""
    return tuple(tuple(a.sigma() for a in row) for row in A)


def mat_equal(A: Matrix, B: Matrix) -> bool:
    return mat_shape(A) == mat_shape(B) and all(
        a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb)
    )


def mat_is_identity(A: Matrix) -> bool:
    n, m = mat_shape(A)
    if n != m:
        return False
    for i in range(n):
        for j in range(n):
            e = A[i][j]
            if i == j:
                if e.indices != (1,):
                    return False
            elif not e.is_zero():
                return False
    return True


def mat_det(A: Matrix) -> Poly:
    n, m = mat_shape(A)
    if n != m:
        raise ShapeMismatch("determinant of a non-square matrix")
    tower = A[0][0].tower if n else None
    if n == 0:
        raise ShapeMismatch("determinant of an empty matrix")

    def minor_det(rows: tuple[int, ...], cols: tuple[int, ...]) -> Poly:
        if len(rows) == 1:
            return A[rows[0]][cols[0]]
        i = rows[0]
        acc = Poly.zero(tower)
        for pos, j in enumerate(cols):
            a = A[i][j]
            if a.is_zero():
                continue
            sub = minor_det(rows[1:], cols[:pos] + cols[pos + 1 :])
            term = a * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    idx = tuple(range(n))
    return minor_det(idx, idx)


def mat_adjugate(A: Matrix) -> Matrix:
    n, _ = mat_shape(A)
    tower = A[0][0].tower
    if n == 1:
        return ((Poly.one(tower),),)
    rows = []
    idx = tuple(range(n))
    for i in range(n):
        row = []
        for j in range(n):
            sub = tuple(
                tuple(A[a][b] for b in idx if b != i) for a in idx if a != j
            )
            cof = mat_det(sub)
            if (i + j) % 2:
                cof = -cof
            row.append(cof)
        rows.append(tuple(row))
    return tuple(rows)


def mat_inverse_unimodular(A: Matrix) -> Matrix:
    """Inverse of a square matrix whose determinant is a nonzero constant."""
    det = mat_det(A)
    if not det.is_constant() or det.is_zero():
        raise ShapeMismatch("matrix is not unimodular over K[x]")
    inv = det.tower.inv_index(det.indices[0])
    scale = Poly._raw(det.tower, (inv,))
    adj = mat_adjugate(A)
    return tuple(tuple(e * scale for e in row) for row in adj)


def mat_entry_degrees_ok(A: Matrix, dst_degs: Sequence[int], src_degs: Sequence[int]) -> bool:
    """Check the bundle-map bounds deg A[j][t] <= dst[j] - src[t]."""
    for j, row in enumerate(A):
        for t, e in enumerate(row):
            if e.is_zero():
                continue
            if e.degree > dst_degs[j] - src_degs[t]:
                return False
    return True


# ---------------------------------------------------------------------------
# Elementary divisors over K[x] (finite chart)


def smith_finite(A: Matrix) -> tuple[list[Poly], bool]:
    """Monic elementary divisors of a square matrix over K[x].

    Returns (divisors, full_rank).  The divisors list contains the nonzero
    invariant factors in divisibility order; full_rank is False when the
    matrix is singular (some invariant factors are zero).
    """
    n, m = mat_shape(A)
    tower = A[0][0].tower
    M = [[A[i][j] for j in range(m)] for i in range(n)]
    divisors: list[Poly] = []
    top = 0
    size = min(n, m)
    while top < size:
        # locate a nonzero entry of minimal degree in the working block
        pivot = None
        for i in range(top, n):
            for j in range(top, m):
                e = M[i][j]
                if not e.is_zero() and (pivot is None or e.degree < M[pivot[0]][pivot[1]].degree):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != top:
            M[top], M[pi] = M[pi], M[top]
        if pj != top:
            for row in M:
                row[top], row[pj] = row[pj], row[top]
        # clear row and column; restart whenever a smaller remainder appears
        dirty = False
        for i in range(top + 1, n):
            if M[i][top].is_zero():
                continue
            q, r = divmod(M[i][top], M[top][top])
            for j in range(top, m):
                M[i][j] = M[i][j] - q * M[top][j]
            if not r.is_zero():
                dirty = True
        for j in range(top + 1, m):
            if M[top][j].is_zero():
                continue
            q, r = divmod(M[top][j], M[top][top])
            for i in range(top, n):
                M[i][j] = M[i][j] - q * M[i][top]
            if not r.is_zero():
                dirty = True
        if dirty:
            continue
        # divisibility of the remaining block by the pivot
        offender = None
        for i in range(top + 1, n):
            for j in range(top + 1, m):
                if not (M[i][j] % M[top][top]).is_zero():
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(top, m):
                M[top][j] = M[top][j] + M[offender][j]
            continue
        divisors.append(M[top][top].monic())
        top += 1
    return divisors, top == size


def finite_cokernel_length(A: Matrix):
    """K-dimension of the finite-chart cokernel; None when not injective."""
    divisors, full = smith_finite(A)
    if not full:
        return None
    return sum(int(d.degree) for d in divisors)


def divisors_are_powers_of(divisors: Sequence[Poly], xi: FieldElement) -> bool:
    """True when every divisor equals (x - xi)^(its degree)."""
    tower = xi.tower
    linear = Poly(tower, [-xi, tower.one])
    for d in divisors:
        if d.is_zero():
            return False
        if d.monic() != linear ** int(max(d.degree, 0)):
            return False
    return True


# ---------------------------------------------------------------------------
# Elementary divisors at infinity (truncated power series in u = 1/x)


def series_from_entry(poly: Poly, bound: int, precision: int) -> list[int]:
    """Local form at infinity of a bundle-map entry with degree bound `bound`:
    u^bound * poly(1/u), as index coefficients of 1, u, u^2, ..."""
    assert poly.is_zero() or poly.degree <= bound, "entry exceeds its degree bound"
    out = [0] * precision
    for k in range(precision):
        pos = bound - k
        if 0 <= pos < len(poly.indices):
            out[k] = poly.indices[pos]
    return out


def _series_order(s: Sequence[int]):
    for k, c in enumerate(s):
        if c:
            return k
    return None


def _series_mul(tower, a, b, precision):
    out = [0] * precision
    add, mul = tower.add_index, tower.mul_index
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(precision - i):
            bj = b[j]
            if bj:
                out[i + j] = add(out[i + j], mul(ai, bj))
    return out


def _series_inv_unit(tower, a, precision):
    if a[0] == 0:
        raise DivisionByZero("series is not a unit")
    inv0 = tower.inv_index(a[0])
    out = [0] * precision
    out[0] = inv0
    sub, mul = tower.sub_index, tower.mul_index
    for k in range(1, precision):
        acc = 0
        for j in range(1, k + 1):
            if j < len(a) and a[j] and out[k - j]:
                acc = tower.add_index(acc, mul(a[j], out[k - j]))
        out[k] = mul(tower.neg_index(acc), inv0)
    return out


def infinity_orders(
    A: Matrix, dst_degs: Sequence[int], src_degs: Sequence[int], precision: int
):
    """Orders of the elementary divisors of the chart at infinity.

    Entries are read through the splitting-type trivializations; returns the
    sorted list of u-orders, or None when the computation is not conclusive
    at the given precision (e.g. a block vanishes mod u^precision).
    """
    n, m = mat_shape(A)
    tower = A[0][0].tower
    M = [
        [series_from_entry(A[i][j], dst_degs[i] - src_degs[j], precision) for j in range(m)]
        for i in range(n)
    ]
    orders = []
    size = min(n, m)
    add, sub, mul = tower.add_index, tower.sub_index, tower.mul_index
    for top in range(size):
        pivot, pivot_ord = None, None
        for i in range(top, n):
            for j in range(top, m):
                w = _series_order(M[i][j])
                if w is not None and (pivot_ord is None or w < pivot_ord):
                    pivot, pivot_ord = (i, j), w
        if pivot is None:
            return None
        pi, pj = pivot
        if pi != top:
            M[top], M[pi] = M[pi], M[top]
        if pj != top:
            for row in M:
                row[top], row[pj] = row[pj], row[top]
        w = pivot_ord
        unit = M[top][top][w:] + [0] * w
        unit_inv = _series_inv_unit(tower, unit, precision)
        M[top] = [_series_mul(tower, unit_inv, e, precision) for e in M[top]]
        # now M[top][top] = u^w exactly (mod u^precision)
        for i in range(top + 1, n):
            e = M[i][top]
            if _series_order(e) is None:
                continue
            q = e[w:] + [0] * w
            if _series_order(q) is None:
                continue
            qrow = [_series_mul(tower, q, f, precision) for f in M[top]]
            M[i] = [[sub(a, b) for a, b in zip(ei, qi)] for ei, qi in zip(M[i], qrow)]
        for j in range(top + 1, m):
            e = M[top][j]
            if _series_order(e) is None:
                continue
            q = e[w:] + [0] * w
            for i in range(top, n):
                prod = _series_mul(tower, q, M[i][top], precision)
                M[i][j] = [sub(a, b) for a, b in zip(M[i][j], prod)]
        orders.append(w)
    return sorted(orders)
