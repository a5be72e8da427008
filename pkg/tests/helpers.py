"""Shared system builders and random generators for the test suite."""
from __future__ import annotations

import random

from wgshift.dynamics import FiniteSupport
from wgshift.ring import RingSpec, ring_for
from wgshift.system import System, cofinite_system, finite_system, full_shift, integer_system

Z2, Z3, Z4, Z5, Z6 = (RingSpec.zmod(m) for m in (2, 3, 4, 5, 6))
GF4 = RingSpec.gf(2, 2)
GF9 = RingSpec.gf(3, 2)
RINGS = [Z2, Z3, Z4, Z5, Z6, GF4, GF9]


def z4_collapse() -> System:
    """psi(n) = n + 1 on N with every weight equal to 2 in Z_4."""
    return full_shift(Z4, 2)


def gf4_translation(weight: int = 2, offset: int = 1) -> System:
    return integer_system(GF4, (0, 0), (), offset, (), weight, weight)


def units(spec: RingSpec) -> list[int]:
    return list(ring_for(spec).units)


def random_finite(rng: random.Random, spec: RingSpec, size: int | None = None) -> System:
    n = size or rng.randint(2, 5)
    q = ring_for(spec).cardinality
    return finite_system(spec, [rng.randrange(n) for _ in range(n)], [rng.randrange(q) for _ in range(n)])


def random_cofinite(rng: random.Random, spec: RingSpec, unit_weights: bool = False) -> System:
    b = rng.randint(0, 4)
    q = ring_for(spec).cardinality
    pick = (lambda: rng.choice(units(spec))) if unit_weights else (lambda: rng.randrange(q))
    bw = rng.randint(0, 5)
    return cofinite_system(spec, [rng.randrange(b + 4) for _ in range(b)], rng.randint(0, 3),
                           [pick() for _ in range(bw)], pick())


def random_integer(rng: random.Random, spec: RingSpec, unit_weights: bool = False) -> System:
    lo = rng.randint(-3, 0)
    hi = lo + rng.randint(0, 5)
    d = rng.choice([-2, -1, 1, 2])
    q = ring_for(spec).cardinality
    pick = (lambda: rng.choice(units(spec))) if unit_weights else (lambda: rng.randrange(q))
    return integer_system(spec, (lo, hi), [rng.randint(lo - 3, hi + 3) for _ in range(hi - lo)], d,
                          [pick() for _ in range(hi - lo)], pick(), pick())


def random_system(rng: random.Random, spec: RingSpec | None = None) -> System:
    spec = spec or rng.choice(RINGS)
    return rng.choice([random_finite, random_cofinite, random_integer])(rng, spec)


def index_window(sys: System, lo: int = -12, hi: int = 20) -> list[int]:
    return [a for a in range(lo, hi) if sys.contains(a)]


def random_support(rng: random.Random, sys: System, k: int = 4) -> FiniteSupport:
    pool = index_window(sys)
    q = sys.ring.cardinality
    return FiniteSupport.of({rng.choice(pool): rng.randrange(q) for _ in range(k)})
