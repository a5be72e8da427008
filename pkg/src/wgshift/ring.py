"""Finite commutative rings with unity: residue rings Z_m and Galois fields GF(p^k).

Elements are plain integers in ``[0, cardinality)``.  Index 0 is the additive
zero and index 1 the multiplicative unity.  For GF(p^k) an element index packs
the coefficient vector of its polynomial representative little-endian in base
p, so ``a_0 + a_1 x + ... + a_{k-1} x^{k-1}`` has index ``sum a_i p^i``.

All operation tables are built once at construction; afterwards every
operation is a table lookup and the ring object is immutable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

import numpy as np

MAX_CARDINALITY = 4096

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


class RingError(ValueError):
    """Invalid ring specification or operand."""


class ReduciblePolynomial(RingError):
    """The polynomial handed to a GF(p^k) construction factors over Z_p."""

    def __init__(self, poly: Sequence[int], factors: list[tuple[int, ...]], p: int):
        self.poly = tuple(poly)
        self.factors = factors
        self.p = p
        super().__init__(f"reducible: {format_factorization(factors)}")


class NotAUnit(ArithmeticError):
    """Raised when an inverse is requested for a non-invertible element."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# -- polynomials over Z_p, coefficient lists little-endian ------------------

def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(num: Sequence[int], den: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Long division over Z_p.  ``den`` must have an invertible leading coefficient."""
    num = _trim([c % p for c in num])
    den = _trim([c % p for c in den])
    if den == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(den[-1], -1, p)
    rem = list(num)
    dq = len(rem) - len(den)
    if dq < 0:
        return [0], rem
    quot = [0] * (dq + 1)
    for shift in range(dq, -1, -1):
        coef = rem[shift + len(den) - 1] * lead_inv % p
        quot[shift] = coef
        if coef:
            for i, dc in enumerate(den):
                rem[shift + i] = (rem[shift + i] - coef * dc) % p
    return _trim(quot), _trim(rem[: len(den) - 1] or [0])


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    # length-lex by the lower coefficients read as a base-p number
    for low in product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def factor_poly(poly: Sequence[int], p: int) -> list[tuple[int, ...]]:
    """Factor a monic polynomial into monic irreducibles by trial division.

    Factors are returned in non-decreasing degree order, repeated according to
    multiplicity.  An irreducible input is returned as a single factor.
    """
    rest = _trim([c % p for c in poly])
    factors: list[tuple[int, ...]] = []
    deg = 1
    while 2 * deg <= len(rest) - 1:
        progressed = False
        for cand in _monic_polys(deg, p):
            q, r = poly_divmod(rest, cand, p)
            if r == [0]:
                factors.append(cand)
                rest = q
                progressed = True
                break
        if not progressed:
            deg += 1
    if len(rest) > 1:
        factors.append(tuple(rest))
    return factors


def format_poly(c: Sequence[int]) -> str:
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if a == 0:
            continue
        if i == 0:
            terms.append(str(a))
            continue
        mono = "x" if i == 1 else f"x{str(i).translate(_SUPERSCRIPTS)}"
        terms.append(mono if a == 1 else f"{a}{mono}")
    return "+".join(terms) or "0"


def format_factorization(factors: list[tuple[int, ...]]) -> str:
    parts = []
    seen: dict[tuple[int, ...], int] = {}
    for f in factors:
        seen[f] = seen.get(f, 0) + 1
    for f, mult in seen.items():
        body = f"({format_poly(f)})"
        parts.append(body if mult == 1 else body + str(mult).translate(_SUPERSCRIPTS))
    return "".join(parts)


def first_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible polynomial of degree k over Z_p (length-lex order)."""
    if not is_prime(p):
        raise RingError(f"characteristic {p} is not prime")
    for cand in _monic_polys(k, p):
        if len(factor_poly(cand, p)) == 1:
            return cand
    raise RingError(f"no irreducible polynomial of degree {k} over Z_{p}")  # pragma: no cover


# -- specification ----------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """Serializable description of a ring: ``zmod`` with modulus, or ``gf``."""

    kind: str
    m: int | None = None
    p: int | None = None
    k: int | None = None
    irreducible: tuple[int, ...] | None = None

    @classmethod
    def zmod(cls, m: int) -> RingSpec:
        return cls("zmod", m=m)

    @classmethod
    def gf(cls, p: int, k: int, irreducible: Sequence[int] | None = None) -> RingSpec:
        if irreducible is None:
            irreducible = first_irreducible(p, k)
        return cls("gf", p=p, k=k, irreducible=tuple(irreducible))

    def cardinality(self) -> int:
        if self.kind == "zmod":
            return int(self.m)
        return int(self.p) ** int(self.k)

    def is_field(self) -> bool:
        if self.kind == "gf":
            return True
        return is_prime(int(self.m))

    def to_dict(self) -> dict:
        if self.kind == "zmod":
            return {"kind": "zmod", "m": self.m}
        return {"kind": "gf", "p": self.p, "k": self.k, "irreducible": list(self.irreducible)}

    @classmethod
    def from_dict(cls, doc: dict) -> RingSpec:
        kind = doc.get("kind")
        if kind == "zmod":
            return cls.zmod(_as_int(doc, "m"))
        if kind == "gf":
            irr = doc.get("irreducible")
            if irr is not None and not (isinstance(irr, list) and all(isinstance(c, int) for c in irr)):
                raise RingError("irreducible: expected a list of integer coefficients")
            return cls.gf(_as_int(doc, "p"), _as_int(doc, "k"), irr)
        raise RingError(f"kind: expected 'zmod' or 'gf', got {kind!r}")

    def __str__(self) -> str:
        if self.kind == "zmod":
            return f"Z_{self.m}"
        return f"GF({self.p}^{self.k})[{format_poly(self.irreducible)}]"


def _as_int(doc: dict, key: str) -> int:
    val = doc.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise RingError(f"{key}: expected an integer, got {val!r}")
    return val


# -- the ring itself --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Ring:
    """Table-driven finite commutative ring with unity.  Build with :func:`make_ring`."""

    spec: RingSpec
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)  # -1 marks non-units

    @property
    def cardinality(self) -> int:
        return self.add_table.shape[0]

    def elements(self) -> range:
        return range(self.cardinality)

    def check(self, a: int) -> int:
        if not 0 <= a < self.cardinality:
            raise RingError(f"element {a} outside [0, {self.cardinality}) for {self.spec}")
        return int(a)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[self.check(a), self.check(b)])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[self.check(a), self.check(b)])

    def neg(self, a: int) -> int:
        return int(self.neg_table[self.check(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def op(self, kind: str, a: int, b: int | None = None) -> int:
        if kind == "neg":
            return self.neg(a)
        if b is None:
            raise RingError(f"{kind} needs two operands")
        if kind == "add":
            return self.add(a, b)
        if kind == "mul":
            return self.mul(a, b)
        raise RingError(f"unknown ring operation {kind!r}")

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, self.check(a)
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    def is_unit(self, a: int) -> bool:
        return bool(self.inv_table[self.check(a)] >= 0)

    def inv(self, a: int) -> int:
        y = int(self.inv_table[self.check(a)])
        if y < 0:
            raise NotAUnit(f"{self.format(a)} is not a unit of {self.spec}")
        return y

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(int(a) for a in np.flatnonzero(self.inv_table >= 0))

    def unit_count(self) -> int:
        return len(self.units)

    def is_field(self) -> bool:
        return self.unit_count() == self.cardinality - 1

    def format(self, a: int) -> str:
        if self.spec.kind == "zmod":
            return str(a)
        p, k = self.spec.p, self.spec.k
        coeffs = [(a // p**i) % p for i in range(k)]
        return format_poly(coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"Ring({self.spec})"


def _finish(spec: RingSpec, add: np.ndarray, mul: np.ndarray) -> Ring:
    q = add.shape[0]
    neg = np.argmax(add == 0, axis=1)
    ones = mul == 1
    has_inv = ones.any(axis=1)
    inv = np.where(has_inv, np.argmax(ones, axis=1), -1)
    dt = np.int16 if q <= 2**15 else np.int32
    tables = [np.ascontiguousarray(t, dtype=dt) for t in (add, mul, neg, inv)]
    for t in tables:
        t.setflags(write=False)
    return Ring(spec, *tables)


def _zmod_tables(m: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.arange(m, dtype=np.int64)
    return (a[:, None] + a[None, :]) % m, (a[:, None] * a[None, :]) % m


def _gf_tables(p: int, k: int, poly: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    q = p**k
    idx = np.arange(q, dtype=np.int64)
    digits = [(idx // p**i) % p for i in range(k)]

    add = np.zeros((q, q), dtype=np.int32)
    for i, d in enumerate(digits):
        add += (((d[:, None] + d[None, :]) % p) * p**i).astype(np.int32)

    def times_x(c: list[int]) -> list[int]:
        top = c[-1]
        shifted = [0] + c[:-1]
        # x^k = -(poly_0 + ... + poly_{k-1} x^{k-1})
        return [(s - top * poly[i]) % p for i, s in enumerate(shifted)]

    def mul_single(a: int, b: int) -> int:
        ca = [(a // p**i) % p for i in range(k)]
        cb = [(b // p**i) % p for i in range(k)]
        acc = [0] * k
        cur = cb
        for i in range(k):
            if ca[i]:
                acc = [(s + ca[i] * c) % p for s, c in zip(acc, cur)]
            cur = times_x(cur)
        return sum(c * p**i for i, c in enumerate(acc))

    # the multiplicative group of a field is cyclic: tabulate via a generator
    gen = None
    for g in range(2, q) if q > 2 else [1]:
        order, cur = 1, g
        while cur != 1:
            cur = mul_single(cur, g)
            order += 1
        if order == q - 1:
            gen = g
            break
    exp = np.zeros(q - 1, dtype=np.int64)
    cur = 1
    for e in range(q - 1):
        exp[e] = cur
        cur = mul_single(cur, gen)
    log = np.zeros(q, dtype=np.int64)
    log[exp] = np.arange(q - 1)
    mul = exp[(log[:, None] + log[None, :]) % (q - 1)]
    mul[0, :] = 0
    mul[:, 0] = 0
    return add, mul


def make_ring(spec: RingSpec) -> Ring:
    """Validate ``spec`` and build the ring tables."""
    if spec.kind == "zmod":
        m = spec.m
        if m is None or m < 2:
            raise RingError(f"modulus must be >= 2, got {m}")
        if m > MAX_CARDINALITY:
            raise RingError(f"cardinality {m} exceeds {MAX_CARDINALITY}")
        return _finish(spec, *_zmod_tables(m))
    if spec.kind != "gf":
        raise RingError(f"unknown ring kind {spec.kind!r}")
    p, k, poly = spec.p, spec.k, spec.irreducible
    if p is None or not is_prime(p):
        raise RingError(f"characteristic {p} is not prime")
    if k is None or k < 1:
        raise RingError(f"extension degree must be >= 1, got {k}")
    if p**k > MAX_CARDINALITY:
        raise RingError(f"cardinality {p}^{k} exceeds {MAX_CARDINALITY}")
    if poly is None or len(poly) != k + 1:
        raise RingError(f"irreducible polynomial must have degree {k} ({k + 1} coefficients)")
    if any(not 0 <= c < p for c in poly):
        raise RingError(f"coefficients must lie in [0, {p})")
    if poly[-1] != 1:
        raise RingError(f"polynomial {format_poly(poly)} is not monic")
    factors = factor_poly(poly, p)
    if len(factors) > 1:
        raise ReduciblePolynomial(poly, factors, p)
    return _finish(spec, *_gf_tables(p, k, tuple(poly)))


_CACHE: dict[RingSpec, Ring] = {}


def ring_for(spec: RingSpec) -> Ring:
    """Memoized :func:`make_ring`; rings are immutable so sharing is safe."""
    ring = _CACHE.get(spec)
    if ring is None:
        ring = _CACHE[spec] = make_ring(spec)
    return ring
