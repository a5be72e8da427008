"""Points of R^Gamma with finite descriptions and the action of the weighted shift.

A configuration is a coordinate oracle: ``x.value(a)`` returns the ring
element at index ``a``.  The n-th iterate is evaluated through the closed form

    sigma^n(x)_a = w_a w_{phi(a)} ... w_{phi^{n-1}(a)} * x_{phi^n(a)}

so witnesses with infinite support are handled exactly, without truncation.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Iterator, Mapping, Union

from .system import System, is_quasi_periodic, phi_apply, preimages


# -- index sets for triangular indicators -----------------------------------

@dataclass(frozen=True)
class FiniteSet:
    values: frozenset[int]

    def __init__(self, values: Iterable[int] = ()):
        object.__setattr__(self, "values", frozenset(values))

    def __contains__(self, m: int) -> bool:
        return m in self.values

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.values))

    @property
    def infinite(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"kind": "finite", "values": sorted(self.values)}


@dataclass(frozen=True)
class Branch:
    """Prefix codes of the eventually periodic bit sequence ``prefix + period*``.

    The member for the length-n prefix ``b1..bn`` (n >= 1) is the integer
    whose binary expansion is ``1 b1 .. bn``.  Distinct sequences give sets
    whose intersection has exactly as many elements as their common prefix is
    long, so any family of branches is almost disjoint.
    """

    prefix: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("branch period must be nonempty")
        if any(b not in (0, 1) for b in self.prefix + self.period):
            raise ValueError("branch bits must be 0 or 1")

    def bit(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def __contains__(self, m: int) -> bool:
        if m < 2:
            return False
        bits = bin(m)[3:]
        return all(int(c) == self.bit(i) for i, c in enumerate(bits))

    def __iter__(self) -> Iterator[int]:
        code, i = 1, 0
        while True:
            code = 2 * code + self.bit(i)
            i += 1
            yield code

    @property
    def infinite(self) -> bool:
        return True

    def _horizon(self, other: Branch) -> int:
        p1, p2 = len(self.period), len(other.period)
        return max(len(self.prefix), len(other.prefix)) + p1 * p2 // gcd(p1, p2)

    def common_prefix(self, other: Branch) -> int | None:
        """Length of the longest common prefix; None when the sequences coincide."""
        for i in range(self._horizon(other)):
            if self.bit(i) != other.bit(i):
                return i
        return None

    def same_sequence(self, other: Branch) -> bool:
        return self.common_prefix(other) is None

    def to_dict(self) -> dict:
        return {"kind": "branch", "prefix": list(self.prefix), "period": list(self.period)}


SetDescriptor = Union[FiniteSet, Branch]


def set_from_dict(doc: Mapping) -> SetDescriptor:
    kind = doc.get("kind")
    if kind == "branch":
        return Branch(tuple(doc.get("prefix", ())), tuple(doc["period"]))
    if kind == "finite":
        return FiniteSet(doc["values"])
    raise ValueError(f"set.kind: expected 'branch' or 'finite', got {kind!r}")


def difference(e: SetDescriptor, f: SetDescriptor) -> Iterator[int]:
    """Elements of ``e`` not in ``f``, ascending."""
    return (m for m in e if m not in f)


def infinite_difference(e: SetDescriptor, f: SetDescriptor) -> bool:
    """Whether ``e \\ f`` is infinite."""
    if not e.infinite:
        return False
    if not f.infinite:
        return True
    return not e.same_sequence(f)


def triangular_root(t: int) -> int | None:
    """``p`` with ``p(p+1)/2 == t``, or None."""
    s = isqrt(8 * t + 1)
    if s * s != 8 * t + 1:
        return None
    return (s - 1) // 2


# -- configurations ---------------------------------------------------------

class Configuration:
    """Base for coordinate oracles; subclasses implement :meth:`value`."""

    def value(self, a: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteSupport(Configuration):
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        cleaned = {}
        for a, v in self.entries:
            if a in cleaned:
                raise ValueError(f"duplicate index {a} in finite support")
            cleaned[a] = v
        object.__setattr__(self, "entries", tuple(sorted((a, v) for a, v in cleaned.items() if v != 0)))

    @classmethod
    def of(cls, mapping: Mapping[int, int] | None = None) -> FiniteSupport:
        return cls(tuple((mapping or {}).items()))

    @property
    def support(self) -> list[int]:
        return [a for a, _ in self.entries]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def value(self, a: int) -> int:
        for b, v in self.entries:
            if b == a:
                return v
        return 0

    def to_dict(self) -> dict:
        return {"support": [list(e) for e in self.entries]}


@dataclass(frozen=True)
class TriangularIndicator(Configuration):
    """1 at ``phi^{p(p+1)/2}(nu)`` for ``p`` in the index set, 0 elsewhere."""

    system: System
    nu: int
    index_set: SetDescriptor

    def __post_init__(self) -> None:
        if is_quasi_periodic(self.system, self.nu):
            raise ValueError(f"triangular indicator needs a non-quasi-periodic base point; {self.nu} is quasi-periodic")

    def value(self, a: int) -> int:
        t = self.system.orbit(self.nu).first_time(a)
        if t is None:
            return 0
        p = triangular_root(t)
        return 1 if p is not None and p in self.index_set else 0

    def to_dict(self) -> dict:
        return {"nu": self.nu, "set": self.index_set.to_dict()}


@dataclass(frozen=True)
class OrbitBumped(Configuration):
    """``base + 1`` on ``{phi^m(theta) : m >= start}``, ``base`` elsewhere."""

    system: System
    base: Configuration
    theta: int
    start: int

    def on_tail(self, a: int) -> bool:
        return self.system.orbit(self.theta).first_time(a, self.start) is not None

    def value(self, a: int) -> int:
        v = self.base.value(a)
        return self.system.ring.add(v, 1) if self.on_tail(a) else v

    def to_dict(self) -> dict:
        return {"bumped": {"base": config_to_dict(self.base), "theta": self.theta, "start": self.start}}


@dataclass(frozen=True)
class ClassData:
    """One phi-class touched by a periodic-point construction.

    ``case`` is ``"a"`` (finite cycle), ``"b"`` (one-sided orbit from a root)
    or ``"c"`` (bi-infinite orbit); ``base`` holds the values on
    ``anchor, phi(anchor), ..., phi^{n-1}(anchor)``.
    """

    case: str
    anchor: int
    base: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.base)

    def to_dict(self) -> dict:
        return {"case": self.case, "anchor": self.anchor, "base": list(self.base)}


@dataclass(frozen=True)
class OrbitPeriodicWitness(Configuration):
    """Periodic point assembled class by class; zero off the listed classes.

    Along a one-sided or bi-infinite class the values are propagated by

        y_{phi^{j+n}(anchor)} = (w_{phi^j(anchor)} ... w_{phi^{j+n-1}(anchor)})^{-1} y_{phi^j(anchor)}

    which unwinds to a single weight product per coordinate.
    """

    system: System
    classes: tuple[ClassData, ...]

    def offset(self, c: ClassData, a: int) -> int | None:
        """Signed time ``t`` with ``phi^t(anchor) == a`` inside class ``c``."""
        sys = self.system
        t = sys.orbit(c.anchor).first_time(a)
        if t is not None or c.case != "c":
            return t
        s = sys.orbit(a).first_time(c.anchor)
        return None if s is None else -s

    def value(self, a: int) -> int:
        sys = self.system
        ring = sys.ring
        for c in self.classes:
            t = self.offset(c, a)
            if t is None:
                continue
            i = t % c.n
            if c.case == "a":
                return c.base[i]
            if t >= 0:
                wp = sys.orbit(phi_apply(sys, c.anchor, i)).weight_product(ring, t - i)
                return ring.mul(ring.inv(wp), c.base[i])
            return ring.mul(sys.orbit(a).weight_product(ring, i - t), c.base[i])
        return 0

    def to_dict(self) -> dict:
        return {"periodic": {"classes": [c.to_dict() for c in self.classes]}}


@dataclass(frozen=True)
class Cylinder:
    """Finite intersection of sub-basic sets ``{x : x_a = r}``."""

    constraints: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        cons = tuple((int(a), int(r)) for a, r in self.constraints)
        idx = [a for a, _ in cons]
        if len(set(idx)) != len(idx):
            raise ValueError("cylinder constraints must use distinct indices")
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def of(cls, mapping: Mapping[int, int] | None = None) -> Cylinder:
        return cls(tuple((mapping or {}).items()))

    @property
    def indices(self) -> list[int]:
        return [a for a, _ in self.constraints]

    def as_dict(self) -> dict[int, int]:
        return dict(self.constraints)

    def contains(self, x: Configuration) -> bool:
        return all(x.value(a) == r for a, r in self.constraints)

    def to_dict(self) -> dict:
        return {"constraints": [list(c) for c in self.constraints]}


def config_to_dict(x: Configuration) -> dict:
    return x.to_dict()


def config_from_dict(sys: System, doc: Mapping) -> Configuration:
    """Parse a configuration literal (see the README for the accepted shapes)."""
    if "support" in doc:
        entries = doc["support"]
        for e in entries:
            if len(e) != 2:
                raise ValueError(f"support entry {e!r} must be [index, element]")
            sys.check(e[0])
            sys.ring.check(e[1])
        return FiniteSupport(tuple((int(a), int(v)) for a, v in entries))
    if "nu" in doc:
        return TriangularIndicator(sys, sys.check(doc["nu"]), set_from_dict(doc["set"]))
    if "bumped" in doc:
        b = doc["bumped"]
        return OrbitBumped(sys, config_from_dict(sys, b["base"]), sys.check(b["theta"]), int(b["start"]))
    if "periodic" in doc:
        classes = tuple(ClassData(c["case"], c["anchor"], tuple(c["base"])) for c in doc["periodic"]["classes"])
        return OrbitPeriodicWitness(sys, classes)
    raise ValueError("configuration literal needs one of: support, nu, bumped, periodic")


def cylinder_from_dict(sys: System, doc: Mapping) -> Cylinder:
    cons = doc.get("constraints", [])
    for c in cons:
        sys.check(c[0])
        sys.ring.check(c[1])
    return Cylinder(tuple((c[0], c[1]) for c in cons))


# -- the shift --------------------------------------------------------------

def config_eval(x: Configuration, a: int) -> int:
    return x.value(a)


def weight_product(sys: System, a: int, n: int) -> int:
    """``w_a w_{phi(a)} ... w_{phi^{n-1}(a)}``; the empty product is 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sys.orbit(a).weight_product(sys.ring, n)


def iterate_coord(sys: System, x: Configuration, n: int, a: int) -> int:
    """Coordinate ``a`` of ``sigma^n(x)`` by the closed form."""
    if n == 0:
        return x.value(a)
    wp = weight_product(sys, a, n)
    if wp == 0:
        return 0
    return sys.ring.mul(wp, x.value(phi_apply(sys, a, n)))


def apply_shift(sys: System, x: FiniteSupport) -> FiniteSupport:
    """One application of the shift to a finitely supported configuration."""
    ring = sys.ring
    out: dict[int, int] = {}
    for b, v in x.entries:
        for a in preimages(sys, b):
            out[a] = ring.mul(sys.weight(a), v)
    return FiniteSupport.of(out)


def agree_at(sys: System, x: Configuration, y: Configuration, n: int, indices: Iterable[int]) -> bool:
    """Whether ``(sigma^n x, sigma^n y)`` agree on every index in the finite set."""
    return all(iterate_coord(sys, x, n, a) == iterate_coord(sys, y, n, a) for a in indices)


def scan_times(sys: System, x: Configuration, y: Configuration, indices: Iterable[int],
               horizon: int) -> tuple[list[int], list[int]]:
    """Split ``1..horizon`` into times where the iterates agree on ``indices`` and where they do not."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    indices = list(indices)
    agree, disagree = [], []
    for t in range(1, horizon + 1):
        (agree if agree_at(sys, x, y, t, indices) else disagree).append(t)
    return agree, disagree
