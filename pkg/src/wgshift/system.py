"""Index sets with a self-map and a weight vector: the data of a weighted shift.

Three models keep every orbit question decidable:

* :class:`Finite`: ``Gamma = {0..n-1}`` with ``phi`` given as an array;
* :class:`CofiniteShift`: ``Gamma = N``; ``phi`` tabulated below ``prefix``
  and a translation ``a -> a + d`` (``d >= 0``) above it;
* :class:`IntegerShift`: ``Gamma = Z``; ``phi`` tabulated on a window
  ``[lo, hi)`` and ``a -> a + d`` (``d != 0``) outside it.

Outside the tables the dynamics is a translation with constant weight, so a
forward orbit is a finite list of *segments* (single tabulated points or
arithmetic runs), optionally closed into a cycle.  :class:`Orbit` stores that
list and answers position, membership and weight-product queries exactly,
including at astronomically large times.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, NamedTuple, Sequence, Union

from .ring import Ring, RingError, RingSpec, ring_for


class SchemaError(ValueError):
    """Schema or consistency violation; ``path`` names the offending field."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


# -- index models -----------------------------------------------------------

@dataclass(frozen=True)
class Finite:
    size: int
    phi: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi", tuple(self.phi))
        if self.size < 2:
            raise SchemaError("index.size", "size >= 2 required")
        if len(self.phi) != self.size:
            raise SchemaError("index.phi", f"length {len(self.phi)} != size {self.size}")
        for i, v in enumerate(self.phi):
            if not 0 <= v < self.size:
                raise SchemaError(f"index.phi[{i}]", f"{v} outside [0, {self.size})")


@dataclass(frozen=True)
class CofiniteShift:
    prefix: int
    phi_table: tuple[int, ...]
    tail_offset: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi_table", tuple(self.phi_table))
        if self.prefix < 0:
            raise SchemaError("index.prefix", "prefix must be >= 0")
        if len(self.phi_table) != self.prefix:
            raise SchemaError("index.phi_table", f"length {len(self.phi_table)} != prefix {self.prefix}")
        if self.tail_offset < 0:
            raise SchemaError("index.tail_offset", "tail_offset must be >= 0 on N")
        for i, v in enumerate(self.phi_table):
            if v < 0:
                raise SchemaError(f"index.phi_table[{i}]", f"{v} is not a natural number")


@dataclass(frozen=True)
class IntegerShift:
    window: tuple[int, int]
    phi_table: tuple[int, ...]
    tail_offset: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "window", tuple(self.window))
        object.__setattr__(self, "phi_table", tuple(self.phi_table))
        lo, hi = self.window
        if hi < lo:
            raise SchemaError("index.window", f"empty-or-reversed window [{lo}, {hi})")
        if len(self.phi_table) != hi - lo:
            raise SchemaError("index.phi_table", f"length {len(self.phi_table)} != window size {hi - lo}")
        if self.tail_offset == 0:
            raise SchemaError("index.tail_offset", "tail_offset must be nonzero on Z")


IndexModel = Union[Finite, CofiniteShift, IntegerShift]


# -- weight models ----------------------------------------------------------

@dataclass(frozen=True)
class FiniteWeights:
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))


@dataclass(frozen=True)
class CofiniteWeights:
    weight_table: tuple[int, ...]
    weight_tail: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight_table", tuple(self.weight_table))


@dataclass(frozen=True)
class IntegerWeights:
    weight_table: tuple[int, ...]
    weight_tail_neg: int
    weight_tail_pos: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "weight_table", tuple(self.weight_table))


WeightModel = Union[FiniteWeights, CofiniteWeights, IntegerWeights]

_PAIRING = {Finite: FiniteWeights, CofiniteShift: CofiniteWeights, IntegerShift: IntegerWeights}


# -- orbit classes and profiles ---------------------------------------------

@dataclass(frozen=True)
class Periodic:
    period: int
    preperiod: int = 0


@dataclass(frozen=True)
class QuasiPeriodic:
    preperiod: int
    period: int


@dataclass(frozen=True)
class NonQuasiPeriodic:
    escape_step: int


OrbitClass = Union[Periodic, QuasiPeriodic, NonQuasiPeriodic]


@dataclass(frozen=True)
class AllUnits:
    pass


@dataclass(frozen=True)
class HitsZero:
    first: int


@dataclass(frozen=True)
class NonzeroNonUnit:
    first: int


WeightProfile = Union[AllUnits, HitsZero, NonzeroNonUnit]


# -- orbits -----------------------------------------------------------------

@dataclass(frozen=True)
class Orbit:
    """Forward orbit of a point as segments ``(time, point, length, step, weight)``.

    A single tabulated point has ``length == 1`` and ``step == 0``.  A run
    visits ``point + i*step`` for ``0 <= i < length``, all with weight
    ``weight``; the last run of an escaping orbit has ``length is None``.
    Cyclic orbits stop at ``end = cycle_start + period`` where the first
    repeated tabulated point is met again.
    """

    times: tuple[int, ...]
    points: tuple[int, ...]
    lengths: tuple[int | None, ...]
    steps: tuple[int, ...]
    weights: tuple[int, ...]
    cycle_start: int | None
    period: int | None

    @property
    def cyclic(self) -> bool:
        return self.period is not None

    @property
    def end(self) -> int | None:
        return None if self.period is None else self.cycle_start + self.period

    def _reduce(self, t: int) -> int:
        end = self.end
        if end is not None and t >= end:
            return self.cycle_start + (t - self.cycle_start) % self.period
        return t

    def point_at(self, t: int) -> int:
        if t < 0:
            raise ValueError("negative time")
        t = self._reduce(t)
        k = bisect.bisect_right(self.times, t) - 1
        return self.points[k] + (t - self.times[k]) * self.steps[k]

    def _occurrences(self, p: int) -> Iterator[int]:
        for t0, a, length, step in zip(self.times, self.points, self.lengths, self.steps):
            if step == 0:
                if a == p:
                    yield t0
                continue
            diff = p - a
            if diff % step:
                continue
            i = diff // step
            if i >= 0 and (length is None or i < length):
                yield t0 + i

    def first_time(self, p: int, min_t: int = 0) -> int | None:
        """Least ``t >= min_t`` with ``point_at(t) == p``, or None."""
        best = None
        for t in self._occurrences(p):
            if t < min_t:
                if self.period is None or t < self.cycle_start:
                    continue
                t += -(-(min_t - t) // self.period) * self.period
            if best is None or t < best:
                best = t
        return best

    def contains(self, p: int) -> bool:
        return self.first_time(p) is not None

    def preperiod(self) -> int:
        # smallest t with point(t) == point(t + period); monotone in t
        lo, hi = 0, self.cycle_start
        while lo < hi:
            mid = (lo + hi) // 2
            if self.point_at(mid) == self.point_at(mid + self.period):
                hi = mid
            else:
                lo = mid + 1
        return lo

    def _product(self, ring: Ring, a: int, b: int) -> int:
        acc = 1
        for k, (t0, length, w) in enumerate(zip(self.times, self.lengths, self.weights)):
            seg_end = None if length is None else t0 + length
            lo = max(a, t0)
            hi = b if seg_end is None else min(b, seg_end)
            if hi > lo:
                acc = ring.mul(acc, ring.pow(w, hi - lo))
                if acc == 0:
                    return 0
        return acc

    def weight_product(self, ring: Ring, n: int) -> int:
        """Product of the weights at times ``0..n-1``; 1 for ``n == 0``."""
        end = self.end
        if end is None or n <= end:
            return self._product(ring, 0, n)
        cs, per = self.cycle_start, self.period
        q, r = divmod(n - cs, per)
        head = self._product(ring, 0, cs)
        cyc = self._product(ring, cs, end)
        tail = self._product(ring, cs, cs + r)
        return ring.mul(ring.mul(head, ring.pow(cyc, q)), tail)

    def special_points(self) -> list[int]:
        return [a for a, s in zip(self.points, self.steps) if s == 0]


# -- systems ----------------------------------------------------------------

@dataclass(frozen=True)
class System:
    """A weighted generalized shift: ring, index model and weight model."""

    ring_spec: RingSpec
    index: IndexModel
    weights: WeightModel
    _orbits: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        expected = _PAIRING[type(self.index)]
        if not isinstance(self.weights, expected):
            raise SchemaError("weights", f"{type(self.weights).__name__} does not match {type(self.index).__name__}")
        ring = self.ring  # validates the ring spec
        idx, w = self.index, self.weights
        if isinstance(idx, Finite):
            if len(w.values) != idx.size:
                raise SchemaError("weights", f"length {len(w.values)} != size {idx.size}")
            entries = [(f"weights.values[{i}]", v) for i, v in enumerate(w.values)]
        elif isinstance(idx, CofiniteShift):
            entries = [(f"weights.weight_table[{i}]", v) for i, v in enumerate(w.weight_table)]
            entries.append(("weights.weight_tail", w.weight_tail))
        else:
            lo, hi = idx.window
            if len(w.weight_table) != hi - lo:
                raise SchemaError("weights.weight_table", f"length {len(w.weight_table)} != window size {hi - lo}")
            entries = [(f"weights.weight_table[{i}]", v) for i, v in enumerate(w.weight_table)]
            entries += [("weights.weight_tail_neg", w.weight_tail_neg), ("weights.weight_tail_pos", w.weight_tail_pos)]
        for path, v in entries:
            if not isinstance(v, int) or not 0 <= v < ring.cardinality:
                raise SchemaError(path, f"{v!r} is not an element of {self.ring_spec}")

    @cached_property
    def ring(self) -> Ring:
        return ring_for(self.ring_spec)

    @property
    def kind(self) -> str:
        return {Finite: "finite", CofiniteShift: "cofinite_shift", IntegerShift: "integer_shift"}[type(self.index)]

    @property
    def is_finite(self) -> bool:
        return isinstance(self.index, Finite)

    @property
    def tail_offset(self) -> int:
        return 0 if self.is_finite else self.index.tail_offset

    # -- pointwise ----------------------------------------------------------

    def contains(self, a: int) -> bool:
        if isinstance(self.index, Finite):
            return 0 <= a < self.index.size
        if isinstance(self.index, CofiniteShift):
            return a >= 0
        return True

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not self.contains(a):
            raise SchemaError("index", f"{a!r} is not a point of Gamma")
        return a

    def phi(self, a: int) -> int:
        idx = self.index
        if isinstance(idx, Finite):
            return idx.phi[self.check(a)]
        if isinstance(idx, CofiniteShift):
            self.check(a)
            return idx.phi_table[a] if a < idx.prefix else a + idx.tail_offset
        lo, hi = idx.window
        return idx.phi_table[a - lo] if lo <= a < hi else a + idx.tail_offset

    def weight(self, a: int) -> int:
        w = self.weights
        if isinstance(w, FiniteWeights):
            return w.values[self.check(a)]
        if isinstance(w, CofiniteWeights):
            self.check(a)
            return w.weight_table[a] if a < len(w.weight_table) else w.weight_tail
        lo, hi = self.index.window
        if a < lo:
            return w.weight_tail_neg
        if a >= hi:
            return w.weight_tail_pos
        return w.weight_table[a - lo]

    @property
    def table_bound(self) -> int:
        """CofiniteShift: first index beyond both the phi and the weight table."""
        return max(self.index.prefix, len(self.weights.weight_table))

    def _special(self, a: int) -> bool:
        idx = self.index
        if isinstance(idx, Finite):
            return True
        if isinstance(idx, CofiniteShift):
            return a < self.table_bound or idx.tail_offset == 0
        lo, hi = idx.window
        return lo <= a < hi

    def _run(self, a: int) -> tuple[int | None, int]:
        """Length and weight of the translation run starting at a non-special point."""
        idx, w = self.index, self.weights
        d = idx.tail_offset
        if isinstance(idx, CofiniteShift):
            return None, w.weight_tail
        lo, hi = idx.window
        if d > 0:
            if a < lo:
                return -(-(lo - a) // d), w.weight_tail_neg
            return None, w.weight_tail_pos
        if a >= hi:
            return -(-(a - hi + 1) // -d), w.weight_tail_pos
        return None, w.weight_tail_neg

    def orbit(self, a: int) -> Orbit:
        """The (cached) segment description of the forward orbit of ``a``."""
        cached = self._orbits.get(a)
        if cached is not None:
            return cached
        self.check(a)
        times, points, lengths, steps, weights = [], [], [], [], []
        seen: dict[int, int] = {}
        t, cur = 0, a
        cycle_start = period = None
        while True:
            if self._special(cur):
                if cur in seen:
                    cycle_start, period = seen[cur], t - seen[cur]
                    break
                seen[cur] = t
                times.append(t); points.append(cur); lengths.append(1); steps.append(0)
                weights.append(self.weight(cur))
                cur = self.phi(cur)
                t += 1
                continue
            length, wt = self._run(cur)
            d = self.tail_offset
            times.append(t); points.append(cur); lengths.append(length); steps.append(d)
            weights.append(wt)
            if length is None:
                break
            t += length
            cur += length * d
        orb = Orbit(tuple(times), tuple(points), tuple(lengths), tuple(steps), tuple(weights), cycle_start, period)
        if len(self._orbits) < 1 << 16:
            self._orbits[a] = orb
        return orb

    # -- enumeration helpers --------------------------------------------------

    def table_indices(self) -> list[int]:
        idx = self.index
        if isinstance(idx, Finite):
            return list(range(idx.size))
        if isinstance(idx, CofiniteShift):
            return list(range(self.table_bound))
        return list(range(*idx.window))

    def tail_representatives(self) -> list[int]:
        """One point per homogeneous tail regime not already covered by the tables.

        CofiniteShift: the first index past every table.  IntegerShift: the
        first escaping index, plus an approach point that jumps over the
        window straight into the escape region when such points exist.
        """
        idx = self.index
        if isinstance(idx, Finite):
            return []
        if isinstance(idx, CofiniteShift):
            return [self.table_bound]
        lo, hi = idx.window
        d = idx.tail_offset
        if d > 0:
            reps = [hi]
            if hi < lo + d:
                reps.append(hi - d)
        else:
            reps = [lo - 1]
            if lo - 1 > hi - 1 + d:
                reps.append(lo - 1 - d)
        return reps

    def candidates(self) -> list[int]:
        """Points over which existential questions about Gamma are decided."""
        return self.table_indices() + self.tail_representatives()

    def weight_entries(self) -> list[tuple[int, int]]:
        """``(index, weight)`` for tabulated weights then one index per tail weight."""
        w = self.weights
        if isinstance(w, FiniteWeights):
            return list(enumerate(w.values))
        if isinstance(w, CofiniteWeights):
            return list(enumerate(w.weight_table)) + [(self.table_bound, w.weight_tail)]
        lo, hi = self.index.window
        return [(lo + i, v) for i, v in enumerate(w.weight_table)] + [
            (lo - 1, w.weight_tail_neg),
            (hi, w.weight_tail_pos),
        ]

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        idx, w = self.index, self.weights
        if isinstance(idx, Finite):
            index = {"kind": "finite", "size": idx.size, "phi": list(idx.phi)}
            weights = {"kind": "finite", "values": list(w.values)}
        elif isinstance(idx, CofiniteShift):
            index = {"kind": "cofinite_shift", "prefix": idx.prefix, "phi_table": list(idx.phi_table),
                     "tail_offset": idx.tail_offset}
            weights = {"kind": "cofinite_shift", "weight_table": list(w.weight_table), "weight_tail": w.weight_tail}
        else:
            index = {"kind": "integer_shift", "window": list(idx.window), "phi_table": list(idx.phi_table),
                     "tail_offset": idx.tail_offset}
            weights = {"kind": "integer_shift", "weight_table": list(w.weight_table),
                       "weight_tail_neg": w.weight_tail_neg, "weight_tail_pos": w.weight_tail_pos}
        return {"ring": self.ring_spec.to_dict(), "index": index, "weights": weights}


# -- convenience constructors -------------------------------------------------

def finite_system(ring: RingSpec, phi: Sequence[int], weights: Sequence[int]) -> System:
    return System(ring, Finite(len(phi), tuple(phi)), FiniteWeights(tuple(weights)))


def cofinite_system(ring: RingSpec, phi_table: Sequence[int], tail_offset: int,
                    weight_table: Sequence[int], weight_tail: int) -> System:
    return System(ring, CofiniteShift(len(phi_table), tuple(phi_table), tail_offset),
                  CofiniteWeights(tuple(weight_table), weight_tail))


def integer_system(ring: RingSpec, window: tuple[int, int], phi_table: Sequence[int], tail_offset: int,
                   weight_table: Sequence[int], weight_tail_neg: int, weight_tail_pos: int) -> System:
    return System(ring, IntegerShift(tuple(window), tuple(phi_table), tail_offset),
                  IntegerWeights(tuple(weight_table), weight_tail_neg, weight_tail_pos))


def full_shift(ring: RingSpec, weight: int = 1) -> System:
    """One-sided shift on N with constant weight."""
    return cofinite_system(ring, (), 1, (), weight)


# -- operations -------------------------------------------------------------

def phi_apply(sys: System, a: int, n: int) -> int:
    """``phi^n(a)``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sys.orbit(a).point_at(n)


def classify_orbit(sys: System, a: int) -> OrbitClass:
    orb = sys.orbit(a)
    if not orb.cyclic:
        return NonQuasiPeriodic(orb.times[-1])
    pre = orb.preperiod()
    if pre == 0:
        return Periodic(orb.period)
    return QuasiPeriodic(pre, orb.period)


def is_quasi_periodic(sys: System, a: int) -> bool:
    return sys.orbit(a).cyclic


def orbit_weight_profile(sys: System, a: int) -> WeightProfile:
    ring = sys.ring
    orb = sys.orbit(a)
    first_zero = first_nonunit = None
    for t0, w in zip(orb.times, orb.weights):
        if w == 0:
            if first_zero is None:
                first_zero = t0
        elif not ring.is_unit(w) and first_nonunit is None:
            first_nonunit = t0
    if first_zero is not None:
        return HitsZero(first_zero)
    if first_nonunit is not None:
        return NonzeroNonUnit(first_nonunit)
    return AllUnits()


def is_injective(sys: System) -> tuple[bool, tuple[int, int] | None]:
    """Injectivity of phi, with the least colliding pair when it fails."""
    idx = sys.index
    if isinstance(idx, Finite):
        first: dict[int, int] = {}
        for a, v in enumerate(idx.phi):
            if v in first:
                return False, (first[v], a)
            first[v] = a
        return True, None
    d = idx.tail_offset
    if isinstance(idx, CofiniteShift):
        base = 0
        in_tail = lambda b: b >= idx.prefix  # noqa: E731
    else:
        base = idx.window[0]
        lo, hi = idx.window
        in_tail = lambda b: not lo <= b < hi  # noqa: E731
    first = {}
    clashes = []
    for i, v in enumerate(idx.phi_table):
        a = base + i
        if v in first:
            clashes.append((first[v], a))
        else:
            first[v] = a
        if in_tail(v - d) and (not isinstance(idx, CofiniteShift) or v - d >= 0):
            clashes.append(tuple(sorted((a, v - d))))
    if clashes:
        return False, min(clashes)
    return True, None


def periodic_points_exist(sys: System) -> tuple[bool, int | None]:
    for a in sys.candidates():
        if isinstance(classify_orbit(sys, a), Periodic):
            return True, a
    return False, None


def preimages(sys: System, b: int) -> list[int]:
    idx = sys.index
    if isinstance(idx, Finite):
        return [a for a, v in enumerate(idx.phi) if v == b]
    d = idx.tail_offset
    if isinstance(idx, CofiniteShift):
        out = [a for a, v in enumerate(idx.phi_table) if v == b]
        if b - d >= idx.prefix:
            out.append(b - d)
        return out
    lo, hi = idx.window
    out = [lo + i for i, v in enumerate(idx.phi_table) if v == b]
    if not lo <= b - d < hi:
        out.append(b - d)
    return sorted(out)


def phi_inverse(sys: System, b: int) -> int | None:
    """The unique preimage of ``b`` under an injective phi (None if ``b`` is not an image)."""
    pre = preimages(sys, b)
    if len(pre) > 1:
        raise ValueError(f"phi is not injective at {b}: preimages {pre}")
    return pre[0] if pre else None


def in_approach_region(sys: System, a: int) -> bool:
    """IntegerShift points whose backward translation chain never ends."""
    if not isinstance(sys.index, IntegerShift):
        return False
    lo, hi = sys.index.window
    return a < lo if sys.tail_offset > 0 else a >= hi


def _translation_backsteps(sys: System, a: int) -> int:
    """How many times ``a`` can be pulled back by pure tail translation (-1: forever)."""
    idx = sys.index
    if isinstance(idx, Finite) or idx.tail_offset == 0:
        return 0
    d = idx.tail_offset
    if isinstance(idx, CofiniteShift):
        return max(0, (a - idx.prefix) // d)
    lo, hi = idx.window
    if in_approach_region(sys, a):
        return -1
    if d > 0:
        return (a - hi) // d if a >= hi else 0
    return (lo - 1 - a) // -d if a < lo else 0


def backward_root(sys: System, b: int) -> tuple[int, int] | None:
    """For injective phi: ``(root, m)`` with ``phi^m(root) == b`` and root not an image.

    Returns None when the backward chain is infinite (bi-infinite class).  Must
    not be called on periodic points.
    """
    cur, m = b, 0
    seen = {b}
    while True:
        k = _translation_backsteps(sys, cur)
        if k < 0:
            return None
        if k:
            cur, m = cur - k * sys.tail_offset, m + k
        if in_approach_region(sys, cur):
            return None
        pre = phi_inverse(sys, cur)
        if pre is None:
            return cur, m
        if pre in seen:
            raise ValueError(f"{b} is periodic; it has no backward root")
        seen.add(pre)
        cur, m = pre, m + 1


def phi_back(sys: System, a: int, n: int) -> int:
    """``phi^{-n}(a)`` for injective phi; raises if the backward chain stops early."""
    cur, left = a, n
    while left:
        k = _translation_backsteps(sys, cur)
        if k < 0 or k >= left:
            return cur - left * sys.tail_offset
        if k:
            cur, left = cur - k * sys.tail_offset, left - k
            continue
        pre = phi_inverse(sys, cur)
        if pre is None:
            raise ValueError(f"{cur} has no preimage")
        cur, left = pre, left - 1
    return cur


class Link(NamedTuple):
    status: str  # "found" | "disjoint" | "bound_exhausted"
    m: int | None = None
    n: int | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


def _cycle_key(orb: Orbit) -> int:
    cyc = [p for t, p, s in zip(orb.times, orb.points, orb.steps) if s == 0 and t >= orb.cycle_start]
    return min(cyc)


def orbits_meet(sys: System, a: int, b: int) -> bool:
    """Exact decision of ``a ~ b``: some forward iterates coincide."""
    oa, ob = sys.orbit(a), sys.orbit(b)
    if oa.cyclic != ob.cyclic:
        return False
    if oa.cyclic:
        return _cycle_key(oa) == _cycle_key(ob)
    d = sys.tail_offset
    return (oa.points[-1] - ob.points[-1]) % abs(d) == 0


def find_link(sys: System, nu: int, a: int, bound: int) -> Link:
    """Lexicographically least ``(m, n)`` with ``m, n in [1, bound]`` and ``phi^m(nu) == phi^n(a)``."""
    if not orbits_meet(sys, nu, a):
        return Link("disjoint")
    onu, oa = sys.orbit(nu), sys.orbit(a)
    for m in range(1, bound + 1):
        n = oa.first_time(onu.point_at(m), 1)
        if n is not None and n <= bound:
            return Link("found", m, n)
    return Link("bound_exhausted")


# -- parsing --------------------------------------------------------------------

def _field(doc: Any, path: str, key: str) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if key not in doc:
        raise SchemaError(f"{path}.{key}" if path else key, "missing field")
    return doc[key]


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    return value


def _ints(value: Any, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected an array of integers")
    return tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(value))


def system_from_dict(doc: Any) -> System:
    """Build a :class:`System` from its JSON document, reporting the offending path on failure."""
    ring_doc = _field(doc, "", "ring")
    try:
        ring = RingSpec.from_dict(ring_doc)
        ring_for(ring)
    except (KeyError, TypeError) as exc:
        raise SchemaError("ring", f"malformed ring spec ({exc})") from None
    except RingError as exc:
        raise SchemaError("ring", str(exc)) from None
    idx = _field(doc, "", "index")
    w = _field(doc, "", "weights")
    kind = _field(idx, "index", "kind")
    wkind = _field(w, "weights", "kind")
    if wkind != kind:
        raise SchemaError("weights.kind", f"{wkind!r} does not match index kind {kind!r}")
    if kind == "finite":
        index: IndexModel = Finite(_int(_field(idx, "index", "size"), "index.size"),
                                   _ints(_field(idx, "index", "phi"), "index.phi"))
        weights: WeightModel = FiniteWeights(_ints(_field(w, "weights", "values"), "weights.values"))
    elif kind == "cofinite_shift":
        index = CofiniteShift(_int(_field(idx, "index", "prefix"), "index.prefix"),
                              _ints(_field(idx, "index", "phi_table"), "index.phi_table"),
                              _int(_field(idx, "index", "tail_offset"), "index.tail_offset"))
        weights = CofiniteWeights(_ints(_field(w, "weights", "weight_table"), "weights.weight_table"),
                                  _int(_field(w, "weights", "weight_tail"), "weights.weight_tail"))
    elif kind == "integer_shift":
        window = _ints(_field(idx, "index", "window"), "index.window")
        if len(window) != 2:
            raise SchemaError("index.window", "expected [lo, hi]")
        index = IntegerShift(window, _ints(_field(idx, "index", "phi_table"), "index.phi_table"),
                             _int(_field(idx, "index", "tail_offset"), "index.tail_offset"))
        weights = IntegerWeights(_ints(_field(w, "weights", "weight_table"), "weights.weight_table"),
                                 _int(_field(w, "weights", "weight_tail_neg"), "weights.weight_tail_neg"),
                                 _int(_field(w, "weights", "weight_tail_pos"), "weights.weight_tail_pos"))
    else:
        raise SchemaError("index.kind", f"unknown kind {kind!r}")
    return System(ring, index, weights)
