"""Twisted polynomials over K = F_{q^m}: the ring K{t} with t*b = b^q*t.

Under evaluation t acts as the q-power Frobenius x |-> x^q, which identifies
K{t} with the F_q-linear endomorphisms of the additive group over K.
Multiplication is schoolbook with the Frobenius applied per term; degrees at
desk scale stay small, so exactness and simplicity win over speed.
"""

from __future__ import annotations

from typing import Sequence

from .errors import (
    NonCentralCoefficient,
    TowerMismatch,
    ZeroConjugator,
)
from .ff import FieldElement, FieldTower, embed

NEG_INFINITY = float("-inf")


def _strip(idx: list[int]) -> list[int]:
    while idx and idx[-1] == 0:
        idx.pop()
    return idx


def _mul_idx(tower: FieldTower, f: Sequence[int], g: Sequence[int]) -> list[int]:
    """(a t^i)(b t^j) = a b^(q^i) t^(i+j), extended bilinearly."""
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    add, mul, frob = tower.add_index, tower.mul_index, tower.frob_index
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        for j, gj in enumerate(g):
            if gj == 0:
                continue
            out[i + j] = add(out[i + j], mul(fi, frob(gj, i)))
    return _strip(out)


class SkewPoly:
    """Element of K{t}, stored as a normalized coefficient tuple."""

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
        self.tower = tower
        self.indices = tuple(_strip(idx))

    @classmethod
    def _raw(cls, tower: FieldTower, indices: Sequence[int]) -> "SkewPoly":
        out = object.__new__(cls)
        out.tower = tower
        out.indices = tuple(_strip(list(indices)))
        return out

    @classmethod
    def zero(cls, tower: FieldTower) -> "SkewPoly":
        return cls._raw(tower, ())

    @classmethod
    def one(cls, tower: FieldTower) -> "SkewPoly":
        return cls._raw(tower, (1,))

    @classmethod
    def tau(cls, tower: FieldTower, power: int = 1) -> "SkewPoly":
        return cls._raw(tower, (0,) * power + (1,))

    @property
    def degree(self):
        """Degree in t; -inf for the zero polynomial."""
        return len(self.indices) - 1 if self.indices else NEG_INFINITY

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.tower, i) for i in self.indices)

    @property
    def lead(self) -> FieldElement:
        if not self.indices:
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.tower, self.indices[-1])

    @property
    def constant(self) -> FieldElement:
        return FieldElement(self.tower, self.indices[0] if self.indices else 0)

    def coeff(self, i: int) -> FieldElement:
        idx = self.indices[i] if 0 <= i < len(self.indices) else 0
        return FieldElement(self.tower, idx)

    def is_zero(self) -> bool:
        return not self.indices

    def _coerce(self, other) -> "SkewPoly":
        if isinstance(other, SkewPoly):
            if other.tower.signature != self.tower.signature:
                raise TowerMismatch("operands from different towers")
            return other
        if isinstance(other, FieldElement):
            return SkewPoly(self.tower, (other,))
        if isinstance(other, int):
            return SkewPoly._raw(self.tower, (other % self.tower.p,))
        raise TypeError(f"cannot combine SkewPoly with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        a, b = self.indices, o.indices
        if len(a) < len(b):
            a, b = b, a
        add = self.tower.add_index
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return SkewPoly._raw(self.tower, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.tower.neg_index
        return SkewPoly._raw(self.tower, [neg(c) for c in self.indices])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return SkewPoly._raw(self.tower, _mul_idx(self.tower, self.indices, o.indices))

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined in K{t}")
        acc = SkewPoly.one(self.tower)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return (
                self.indices == other.indices
                and self.tower.signature == other.tower.signature
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.signature, self.indices))

    def __repr__(self):
        if not self.indices:
            return "SkewPoly(0)"
        parts = []
        for i, c in enumerate(self.indices):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return "SkewPoly(" + " + ".join(parts) + ")"

    def map_tower(self, target: FieldTower) -> "SkewPoly":
        """Embed all coefficients into a larger tower."""
        return SkewPoly(
            target, [embed(FieldElement(self.tower, c), target) for c in self.indices]
        )


def skew_mul(P: SkewPoly, Q: SkewPoly) -> SkewPoly:
    """Product in K{t}; degree adds, leading coefficients twist-multiply."""
    return P * Q


def evaluate_additive(P: SkewPoly, x: FieldElement) -> FieldElement:
    """Sum of delta_i * x^(q^i); additive and F_q-linear in x.

    x may live in an extension of P's coefficient field, in which case the
    coefficients are embedded first.
    """
    if x.tower.signature != P.tower.signature:
        P = P.map_tower(x.tower)
    tower = x.tower
    acc = 0
    add, mul = tower.add_index, tower.mul_index
    xi = x.index
    for i, c in enumerate(P.indices):
        if c:
            acc = add(acc, mul(c, tower.frob_index(xi, i)))
    return FieldElement(tower, acc)


def substitute(p: Sequence, D: SkewPoly) -> SkewPoly:
    """Image of an ordinary polynomial p (coefficients in F_q) under Y |-> D.

    F_q is central in K{t}, so this is a ring homomorphism in p.  Coefficients
    may be F_q indices (ints) or field elements that are Frobenius-fixed.
    """
    tower = D.tower
    cidx = []
    for c in p:
        if isinstance(c, FieldElement):
            if c.tower.signature != tower.signature:
                raise TowerMismatch("coefficient from a different tower")
            i = c.index
        else:
            i = int(c)
            if not 0 <= i < tower.q:
                i %= tower.p
        if not tower.is_base_rational(i):
            raise NonCentralCoefficient(f"coefficient index {i} lies outside F_q")
        cidx.append(i)
    while cidx and cidx[-1] == 0:
        cidx.pop()
    # Horner from the top coefficient; all coefficients commute with D.
    acc: list[int] = []
    for c in reversed(cidx):
        acc = _mul_idx(tower, acc, D.indices)
        if c:
            if acc:
                acc[0] = tower.add_index(acc[0], c)
            else:
                acc = [c]
    return SkewPoly._raw(tower, acc)


def conjugate(D: SkewPoly, eps: FieldElement) -> SkewPoly:
    """eps^(-1) * D * eps, computed coefficientwise as delta_i * eps^(q^i - 1)."""
    if eps.tower.signature != D.tower.signature:
        raise TowerMismatch("conjugator from a different tower")
    if eps.index == 0:
        raise ZeroConjugator("conjugation by zero")
    tower = D.tower
    mul, frob, inv = tower.mul_index, tower.frob_index, tower.inv_index
    e = eps.index
    e_inv = inv(e)
    out = [mul(c, mul(e_inv, frob(e, i))) if c else 0 for i, c in enumerate(D.indices)]
    return SkewPoly._raw(tower, out)
