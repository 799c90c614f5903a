"""Exact arithmetic in F_q and its extension fields F_{q^m}.

A field is described by explicit moduli: a monic irreducible polynomial over
F_p defining F_q (q = p^e) and a monic irreducible polynomial over F_q
defining F_{q^m}.  No modulus database is bundled; every input carries its
own moduli, so results are reproducible from the input file alone.

Elements are stored as indices 0 .. q^m - 1, the little-endian packing of
their coordinate digits (constant term in the lowest digit, top coordinate
most significant).  Ascending index is the canonical enumeration order and
every enumerative operation in the package inherits it, which keeps all
reported sets byte-stable.
"""

from __future__ import annotations

from math import gcd
from typing import Iterator, Sequence

from .errors import (
    CapExceeded,
    DivisionByZero,
    InvalidModulus,
    NoEmbedding,
    TowerMismatch,
    ZeroArgument,
)

ENUMERATION_CAP = 1 << 20
MAX_MODULUS_DEGREE = 12
# Full multiplication/addition tables are built below this field size; all
# desk-scale computations stay well under it.
_TABLE_CAP = 512


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class _PrimeArith:
    """Index arithmetic for F_p."""

    __slots__ = ("size",)

    def __init__(self, p: int):
        self.size = p

    def add(self, a, b):
        return (a + b) % self.size

    def sub(self, a, b):
        return (a - b) % self.size

    def neg(self, a):
        return (-a) % self.size

    def mul(self, a, b):
        return (a * b) % self.size

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, self.size - 2, self.size)

    def pow(self, a, k):
        return pow(a, k, self.size)


# ---------------------------------------------------------------------------
# Polynomials over an index arithmetic, as little-endian coefficient lists.
# Used for modulus validation and quotient-field construction only; the rest
# of the package works through FieldTower's tables.


def _pstrip(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _pmul(ar, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    add, mul = ar.add, ar.mul
    for i, fi in enumerate(f):
        if fi == 0:
            continue
        for j, gj in enumerate(g):
            out[i + j] = add(out[i + j], mul(fi, gj))
    return _pstrip(out)


def _pdivmod(ar, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    lead_inv = ar.inv(g[-1])
    quot = [0] * max(len(f) - dg, 0)
    sub, mul = ar.sub, ar.mul
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i]
        if c == 0:
            continue
        c = mul(c, lead_inv)
        quot[i - dg] = c
        for j, gj in enumerate(g):
            f[i - dg + j] = sub(f[i - dg + j], mul(c, gj))
    return _pstrip(quot), _pstrip(f)


def _peval(ar, f, x):
    acc = 0
    for c in reversed(f):
        acc = ar.add(ar.mul(acc, x), c)
    return acc


def _poly_irreducible(ar, f) -> bool:
    """Exhaustive factor search; desk scale only (degree <= 12)."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    for x in range(ar.size):
        if _peval(ar, f, x) == 0:
            return False
    # No linear factors; trial-divide by monic polynomials of degree 2..d//2.
    for fd in range(2, d // 2 + 1):
        for idx in range(ar.size**fd):
            cand, k = [], idx
            for _ in range(fd):
                k, r = divmod(k, ar.size)
                cand.append(r)
            cand.append(1)
            if not _pdivmod(ar, f, cand)[1]:
                return False
    return True


class _QuotientArith:
    """Index arithmetic for base[z]/(modulus) with modulus monic of degree >= 1."""

    __slots__ = ("base", "modulus", "deg", "size")

    def __init__(self, base, modulus: Sequence[int]):
        self.base = base
        self.modulus = tuple(modulus)
        self.deg = len(modulus) - 1
        self.size = base.size**self.deg

    def digits(self, a: int) -> list[int]:
        s = self.base.size
        out = []
        for _ in range(self.deg):
            a, r = divmod(a, s)
            out.append(r)
        return out

    def pack(self, ds: Sequence[int]) -> int:
        s = self.base.size
        acc = 0
        for d in reversed(ds):
            acc = acc * s + d
        return acc

    def add(self, a, b):
        return self.pack(
            [self.base.add(x, y) for x, y in zip(self.digits(a), self.digits(b))]
        )

    def sub(self, a, b):
        return self.pack(
            [self.base.sub(x, y) for x, y in zip(self.digits(a), self.digits(b))]
        )

    def neg(self, a):
        return self.pack([self.base.neg(x) for x in self.digits(a)])

    def mul(self, a, b):
        prod = _pmul(self.base, self.digits(a), self.digits(b))
        _, rem = _pdivmod(self.base, prod, list(self.modulus))
        rem += [0] * (self.deg - len(rem))
        return self.pack(rem)

    def pow(self, a, k):
        acc, base = 1, a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.size - 2)


def _normalize_base_modulus(p: int, coeffs: Sequence[int]) -> tuple[int, ...]:
    cs = [int(c) % p for c in coeffs]
    _pstrip(cs)
    if len(cs) < 2:
        raise InvalidModulus("base modulus must have degree >= 1")
    if cs[-1] != 1:
        raise InvalidModulus("base modulus must be monic")
    return tuple(cs)


class FieldTower:
    """F_p < F_q < F_{q^m}, with exact index arithmetic and Frobenius.

    Immutable after construction; instances with equal moduli are
    interchangeable (equality and hashing go through the signature).
    """

    def __init__(self, p: int, base_modulus: Sequence[int], ext_modulus=None):
        if not _is_prime(p):
            raise InvalidModulus(f"characteristic {p} is not prime")
        self.p = p
        self.base_modulus = _normalize_base_modulus(p, base_modulus)
        self.e = len(self.base_modulus) - 1
        if self.e > MAX_MODULUS_DEGREE:
            raise CapExceeded(f"base modulus degree {self.e} exceeds desk cap")
        prime = _PrimeArith(p)
        if self.e > 1 and not _poly_irreducible(prime, list(self.base_modulus)):
            raise InvalidModulus("base modulus is reducible over F_p")
        self.q = p**self.e
        self.base_arith = prime if self.e == 1 else _QuotientArith(prime, self.base_modulus)

        if ext_modulus is None:
            ext_modulus = (0, 1)
        ext = [self._coerce_base_coeff(c) for c in ext_modulus]
        _pstrip(ext)
        if len(ext) < 2:
            raise InvalidModulus("extension modulus must have degree >= 1")
        if ext[-1] != 1:
            raise InvalidModulus("extension modulus must be monic")
        self.ext_modulus = tuple(ext)
        self.m = len(ext) - 1
        if self.m > MAX_MODULUS_DEGREE:
            raise CapExceeded(f"extension modulus degree {self.m} exceeds desk cap")
        if self.m > 1 and not _poly_irreducible(self.base_arith, ext):
            raise InvalidModulus("extension modulus is reducible over F_q")
        self.order = self.q**self.m
        self.arith = (
            self.base_arith if self.m == 1 else _QuotientArith(self.base_arith, self.ext_modulus)
        )
        self.signature = (p, self.base_modulus, self.ext_modulus)

        self._build_tables()
        self._embeddings: dict[tuple, list[int]] = {}
        self._frob_pow_tables: dict[int, list[int]] = {}

    def _coerce_base_coeff(self, c) -> int:
        """Accept an F_q index or a little-endian list of F_p digits."""
        if isinstance(c, int):
            if not 0 <= c < self.q:
                c = c % self.p  # bare integers reduce into the prime field
            return c
        digits = [int(x) % self.p for x in c]
        if len(digits) > self.e:
            raise InvalidModulus("coefficient has more digits than [F_q : F_p]")
        digits += [0] * (self.e - len(digits))
        acc = 0
        for d in reversed(digits):
            acc = acc * self.p + d
        return acc

    def _build_tables(self) -> None:
        n = self.order
        ar = self.arith
        if n <= _TABLE_CAP:
            rng = range(n)
            self._mul_tab = [[ar.mul(a, b) for b in rng] for a in rng]
            self._add_tab = [[ar.add(a, b) for b in rng] for a in rng]
            self._neg_tab = [ar.neg(a) for a in rng]
            self._inv_tab = [0] + [ar.inv(a) for a in range(1, n)]
            self._frob_tab = [ar.pow(a, self.q) for a in rng]
        else:
            self._mul_tab = self._add_tab = None
            self._neg_tab = self._inv_tab = self._frob_tab = None

    # -- index-level operations -------------------------------------------

    def add_index(self, a: int, b: int) -> int:
        t = self._add_tab
        return t[a][b] if t is not None else self.arith.add(a, b)

    def sub_index(self, a: int, b: int) -> int:
        t = self._add_tab
        if t is not None:
            return t[a][self._neg_tab[b]]
        return self.arith.sub(a, b)

    def neg_index(self, a: int) -> int:
        t = self._neg_tab
        return t[a] if t is not None else self.arith.neg(a)

    def mul_index(self, a: int, b: int) -> int:
        t = self._mul_tab
        return t[a][b] if t is not None else self.arith.mul(a, b)

    def inv_index(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        t = self._inv_tab
        return t[a] if t is not None else self.arith.inv(a)

    def div_index(self, a: int, b: int) -> int:
        return self.mul_index(a, self.inv_index(b))

    def pow_index(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv_index(a), -k
        acc, base = 1, a
        mul = self.mul_index
        while k:
            if k & 1:
                acc = mul(acc, base)
            base = mul(base, base)
            k >>= 1
        return acc

    def frob_index(self, a: int, k: int = 1) -> int:
        """a^(q^k); the q-power Frobenius iterated k times."""
        k %= self.m
        t = self._frob_tab
        if t is not None:
            for _ in range(k):
                a = t[a]
            return a
        return self.arith.pow(a, self.q**k)

    def frob_pow_table(self, k: int) -> list[int]:
        """Table of a |-> a^(q^k) over the whole field (small fields only)."""
        k %= self.m
        tab = self._frob_pow_tables.get(k)
        if tab is None:
            if self.order > ENUMERATION_CAP:
                raise CapExceeded("field too large for a Frobenius table")
            tab = [self.frob_index(a, k) for a in range(self.order)]
            self._frob_pow_tables[k] = tab
        return tab

    def is_base_rational(self, a: int) -> bool:
        """True when the element lies in F_q (the coordinate axis of 1)."""
        return a < self.q

    # -- element construction ----------------------------------------------

    def element(self, spec) -> "FieldElement":
        return FieldElement(self, self.index_of(spec))

    def index_of(self, spec) -> int:
        if isinstance(spec, FieldElement):
            if spec.tower.signature != self.signature:
                raise TowerMismatch("element belongs to a different tower")
            return spec.index
        if isinstance(spec, int):
            if 0 <= spec < self.order:
                return spec
            return spec % self.p
        # nested coordinates: m entries, each an F_q spec
        coords = list(spec)
        if len(coords) > self.m:
            raise InvalidModulus("too many coordinates for this tower")
        coords += [0] * (self.m - len(coords))
        acc = 0
        for c in reversed(coords):
            acc = acc * self.q + self._coerce_base_coeff(c)
        return acc

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """Residue class of the top extension variable (of z when m = 1)."""
        if self.m > 1:
            return FieldElement(self, self.q)
        if self.e > 1:
            return FieldElement(self, self.p)
        return FieldElement(self, 1)

    def coords_of(self, a: int) -> tuple[tuple[int, ...], ...]:
        out = []
        for _ in range(self.m):
            a, c = divmod(a, self.q)
            digits = []
            for _ in range(self.e):
                c, d = divmod(c, self.p)
                digits.append(d)
            out.append(tuple(digits))
        return tuple(out)

    def elements(self) -> Iterator["FieldElement"]:
        for i in range(self.order):
            yield FieldElement(self, i)

    def base_field(self) -> "FieldTower":
        """The F_q level as a tower of its own (self when m = 1)."""
        if self.m == 1:
            return self
        cached = getattr(self, "_base_field", None)
        if cached is None:
            cached = FieldTower(self.p, self.base_modulus)
            self._base_field = cached
        return cached

    def __eq__(self, other):
        return isinstance(other, FieldTower) and other.signature == self.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return f"FieldTower(p={self.p}, q={self.q}, order={self.order})"


class FieldElement:
    """An element of F_{q^m}, identified by its canonical index."""

    __slots__ = ("tower", "index")

    def __init__(self, tower: FieldTower, index: int):
        self.tower = tower
        self.index = index

    @property
    def coords(self) -> tuple[tuple[int, ...], ...]:
        return self.tower.coords_of(self.index)

    def is_zero(self) -> bool:
        return self.index == 0

    def _other_index(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.tower.signature != self.tower.signature:
                raise TowerMismatch("operands from different towers")
            return other.index
        if isinstance(other, int):
            return other % self.tower.p
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.tower, self.tower.add_index(self.index, self._other_index(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.tower, self.tower.sub_index(self.index, self._other_index(other)))

    def __rsub__(self, other):
        return FieldElement(self.tower, self.tower.sub_index(self._other_index(other), self.index))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg_index(self.index))

    def __mul__(self, other):
        return FieldElement(self.tower, self.tower.mul_index(self.index, self._other_index(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other_index(other)
        if b == 0:
            raise DivisionByZero("division by zero")
        return FieldElement(self.tower, self.tower.div_index(self.index, b))

    def __rtruediv__(self, other):
        if self.index == 0:
            raise DivisionByZero("division by zero")
        return FieldElement(self.tower, self.tower.div_index(self._other_index(other), self.index))

    def __pow__(self, k: int):
        if k < 0 and self.index == 0:
            raise DivisionByZero("inverse of zero")
        return FieldElement(self.tower, self.tower.pow_index(self.index, k))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.tower, self.tower.inv_index(self.index))

    def frobenius(self, e: int = 1) -> "FieldElement":
        return FieldElement(self.tower, self.tower.frob_index(self.index, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return (
                self.index == other.index
                and self.tower.signature == other.tower.signature
            )
        if isinstance(other, int):
            return self.index == other % self.tower.p if other else self.index == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.signature, self.index))

    def __lt__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.tower.signature != self.tower.signature:
            raise TowerMismatch("cannot order elements of different towers")
        return self.index < other.index

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"F{self.tower.order}({self.index})"


# ---------------------------------------------------------------------------
# Operation surface


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Exact field arithmetic; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def frobenius(a: FieldElement, e: int = 1) -> FieldElement:
    """a^(q^e); additive and F_q-linear in a."""
    if e < 0:
        raise ValueError("Frobenius exponent must be nonnegative")
    return a.frobenius(e)


def enumerate_field(tower: FieldTower, cap: int = ENUMERATION_CAP) -> tuple[FieldElement, ...]:
    """All elements exactly once, in canonical (ascending index) order."""
    if tower.order > cap:
        raise CapExceeded(f"field of size {tower.order} exceeds enumeration cap {cap}")
    return tuple(tower.elements())


def embed(a: FieldElement, super_tower: FieldTower) -> FieldElement:
    """Ring embedding into a larger tower over the same F_q.

    The image of the source generator is the smallest root (in canonical
    order) of the source extension modulus in the target, so embeddings are
    deterministic.  F_q is fixed pointwise.
    """
    src = a.tower
    if src.signature == super_tower.signature:
        return FieldElement(super_tower, a.index)
    key = src.signature
    emb = super_tower._embeddings.get(key)
    if emb is None:
        emb = _build_embedding(src, super_tower)
        super_tower._embeddings[key] = emb
    return FieldElement(super_tower, emb[a.index])


def _build_embedding(src: FieldTower, dst: FieldTower) -> list[int]:
    if (src.p, src.base_modulus) != (dst.p, dst.base_modulus):
        raise NoEmbedding("towers have different base fields F_q")
    if dst.m % src.m != 0:
        raise NoEmbedding(f"no embedding: {src.m} does not divide {dst.m}")
    if dst.order > ENUMERATION_CAP:
        raise CapExceeded("target field too large for embedding root search")
    if src.m == 1:
        return list(range(src.order))
    # F_q coefficients of the source modulus keep their indices in dst.
    mod = [c for c in src.ext_modulus]
    root = None
    for x in range(dst.order):
        acc = 0
        for c in reversed(mod):
            acc = dst.add_index(dst.mul_index(acc, x), c)
        if acc == 0:
            root = x
            break
    if root is None:
        raise NoEmbedding("source modulus has no root in the target field")
    table = []
    for idx in range(src.order):
        digits, k = [], idx
        for _ in range(src.m):
            k, r = divmod(k, src.q)
            digits.append(r)
        acc = 0
        for c in reversed(digits):
            acc = dst.add_index(dst.mul_index(acc, root), c)
        table.append(acc)
    return table


def solve_power_equation(
    N: int, c: FieldElement, cap: int = ENUMERATION_CAP
) -> tuple[FieldElement, ...]:
    """The complete set of eps in K^x with eps^N = c, in canonical order.

    Runs the gcd solvability test and the exhaustive scan and insists that
    they agree; the returned set has size 0 or gcd(N, Q-1).
    """
    if N < 1:
        raise ValueError("exponent must be a positive integer")
    if c.index == 0:
        raise ZeroArgument("power equation with zero right-hand side")
    tower = c.tower
    if tower.order > cap:
        raise CapExceeded(f"field of size {tower.order} exceeds enumeration cap {cap}")
    g = gcd(N, tower.order - 1)
    solvable = tower.pow_index(c.index, (tower.order - 1) // g) == 1
    found = [
        FieldElement(tower, x)
        for x in range(1, tower.order)
        if tower.pow_index(x, N) == c.index
    ]
    assert (len(found) > 0) == solvable, "solvability test disagrees with scan"
    assert len(found) in (0, g), "solution count violates the gcd law"
    return tuple(found)


def smallest_irreducible(tower: FieldTower, degree: int) -> tuple[int, ...]:
    """Smallest (canonical coefficient order) monic irreducible of the given
    degree over the tower's F_q, as a tuple of F_q indices."""
    if degree < 1:
        raise ValueError("degree must be positive")
    if degree > MAX_MODULUS_DEGREE:
        raise CapExceeded(f"degree {degree} exceeds desk cap")
    ar = tower.base_arith
    for idx in range(ar.size**degree):
        coeffs, k = [], idx
        for _ in range(degree):
            k, r = divmod(k, ar.size)
            coeffs.append(r)
        coeffs.append(1)
        if _poly_irreducible(ar, coeffs):
            return tuple(coeffs)
    raise InvalidModulus("no irreducible polynomial found")  # pragma: no cover


_extension_cache: dict[tuple, FieldTower] = {}


def extension_tower(tower: FieldTower, s: int, cap: int = ENUMERATION_CAP) -> FieldTower:
    """The degree-s extension of the tower, as a fresh tower over the same F_q
    with the smallest irreducible modulus of degree m*s."""
    if s < 1:
        raise ValueError("extension degree must be positive")
    if s == 1:
        return tower
    if tower.order**s > cap:
        raise CapExceeded(f"extension field of size {tower.order ** s} exceeds cap {cap}")
    key = (tower.signature, s)
    ext = _extension_cache.get(key)
    if ext is None:
        modulus = smallest_irreducible(tower, tower.m * s)
        ext = FieldTower(tower.p, tower.base_modulus, modulus)
        _extension_cache[key] = ext
    return ext
