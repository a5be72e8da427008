"""Brute-force ground truth for finite index sets.

A configuration on ``{0..n-1}`` over a ring with ``q`` elements is packed into
one integer (coordinate ``i`` is base-``q`` digit ``i``); the shift becomes a
successor table on ``q**n`` states and every property is read off that table.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .classify import NO, classify_onto_dpp, classify_sensitive
from .dynamics import FiniteSupport, apply_shift
from .ring import RingSpec, ring_for
from .system import System, finite_system

MAX_STATES = 2**20
MAX_PAIR_STATES = 4096
DEFAULT_BUDGET = 50_000


class SpaceTooLarge(ValueError):
    pass


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class StateSpace:
    system: System
    q: int
    n: int
    table: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def encode(self, x: FiniteSupport | list[int] | tuple[int, ...]) -> int:
        digits = [x.value(i) for i in range(self.n)] if isinstance(x, FiniteSupport) else list(x)
        if len(digits) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(digits)}")
        return sum(int(d) * self.q**i for i, d in enumerate(digits))

    def decode(self, state: int) -> list[int]:
        return [(state // self.q**i) % self.q for i in range(self.n)]

    def to_config(self, state: int) -> FiniteSupport:
        return FiniteSupport.of(dict(enumerate(self.decode(state))))


def state_space(sys: System, samples: int = 100, seed: int = 0, backend: str | None = None) -> StateSpace:
    """Successor table of the shift, spot-checked against :func:`apply_shift`."""
    if not sys.is_finite:
        raise ValueError("brute force needs a finite index set")
    ring = sys.ring
    q, n = ring.cardinality, sys.index.size
    if q**n > MAX_STATES:
        raise SpaceTooLarge(f"{q}^{n} states exceed the guard {MAX_STATES}")
    table = _kernels.sigma_table(sys.index.phi, sys.weights.values, ring.mul_table, q, backend)
    space = StateSpace(sys, q, n, table)
    rng = random.Random(seed)
    picks = range(space.size) if samples >= space.size else (rng.randrange(space.size) for _ in range(samples))
    for s in picks:
        expect = space.encode(apply_shift(sys, space.to_config(s)))
        if int(table[s]) != expect:
            raise AssertionError(f"successor table disagrees with apply_shift at state {s}")
    return space


def _space(sys_or_space: System | StateSpace, **kw) -> StateSpace:
    return sys_or_space if isinstance(sys_or_space, StateSpace) else state_space(sys_or_space, **kw)


@dataclass(frozen=True)
class BFProperties:
    onto: bool
    per_dense: bool
    transitive: bool
    per_set: frozenset[int]

    def to_dict(self) -> dict:
        return {"onto": self.onto, "per_dense": self.per_dense, "transitive": self.transitive,
                "per_set": sorted(self.per_set)}


def bf_properties(sys: System | StateSpace, backend: str | None = None) -> BFProperties:
    space = _space(sys, backend=backend)
    table = space.table
    onto = np.unique(table).shape[0] == space.size
    mask = _kernels.cycle_mask(table, backend)
    per_set = frozenset(np.flatnonzero(mask).tolist())
    # singletons are open: transitive iff every state reaches every state, which already
    # follows once the forward orbit of state 0 covers the space (then sigma is one cycle)
    transitive = _kernels.covers_all(table, 0, backend)
    return BFProperties(onto, len(per_set) == space.size, transitive, per_set)


def bf_prox_asym(sys: System | StateSpace, x: int, y: int) -> tuple[bool, bool]:
    """Proximality and asymptoticity of two packed states by direct iteration."""
    space = _space(sys)
    table = space.table
    for s in (x, y):
        if not 0 <= s < space.size:
            raise ValueError(f"state {s} outside [0, {space.size})")
    if x == y:
        return True, True
    prox = False
    a, b = x, y
    for _ in range(space.size):
        a, b = int(table[a]), int(table[b])
        if a == b:
            prox = True
            break
    # asymptotic: after #states steps both iterates sit on their cycles, so
    # equality there holds forever and inequality recurs forever
    a, b = x, y
    for _ in range(space.size):
        a, b = int(table[a]), int(table[b])
    return prox, a == b


def prox_asym_matrices(sys: System | StateSpace, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    space = _space(sys, backend=backend)
    if space.size > MAX_PAIR_STATES:
        raise SpaceTooLarge(f"pair relations limited to {MAX_PAIR_STATES} states, got {space.size}")
    return _kernels.prox_matrix(space.table, backend), _kernels.asym_matrix(space.table, backend)


@dataclass
class SweepReport:
    ring: RingSpec
    n: int
    systems: int = 0
    onto_count: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def summary(self) -> str:
        return f"{self.systems} systems, {self.onto_count} onto, {len(self.violations)} violations"

    def to_dict(self) -> dict:
        return {"ring": self.ring.to_dict(), "n": self.n, "systems": self.systems,
                "onto_count": self.onto_count, "violations": self.violations, "summary": self.summary}


def sweep_equivalence(n: int, ring: RingSpec, budget: int = DEFAULT_BUDGET, samples: int = 100,
                      backend: str | None = None) -> SweepReport:
    """Check the finite-index characterizations on every system of size ``n`` over ``ring``.

    For each ``(phi, w)``: brute-force surjectivity, the injective-and-units
    criterion and brute-force density of periodic points must coincide;
    brute-force transitivity must fail; the sensitivity classifier must say
    no; and proximality must equal asymptoticity on all state pairs.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    q = ring_for(ring).cardinality
    total = n**n * q**n
    if total > budget:
        raise BudgetExceeded(f"{total} systems exceed budget {budget}")
    if q**n > MAX_PAIR_STATES:
        raise SpaceTooLarge(f"{q}^{n} states exceed the pairwise limit {MAX_PAIR_STATES}")
    report = SweepReport(ring, n)
    for phi in itertools.product(range(n), repeat=n):
        for w in itertools.product(range(q), repeat=n):
            sys = finite_system(ring, phi, w)
            space = state_space(sys, samples=samples, seed=report.systems, backend=backend)
            props = bf_properties(space, backend)
            criterion = classify_onto_dpp(sys)[0].status == "yes"
            prox, asym = prox_asym_matrices(space, backend)
            problems = []
            if not props.onto == criterion == props.per_dense:
                problems.append(f"onto={props.onto} criterion={criterion} per_dense={props.per_dense}")
            if props.transitive:
                problems.append("transitive")
            if classify_sensitive(sys).status != NO:
                problems.append("sensitive verdict is not no")
            if not np.array_equal(prox, asym):
                problems.append("proximal != asymptotic")
            report.systems += 1
            report.onto_count += props.onto
            if problems:
                report.violations.append({"phi": list(phi), "weights": list(w), "problems": problems})
    return report
