"""Constructive witnesses: scrambled pairs, periodic points, separations, transits, preimages.

Each constructor returns objects whose defining contract can be re-checked
with :func:`~wgshift.dynamics.iterate_coord`; the ``verify_*`` helpers do
exactly that and return a list of failed checks (empty on success).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count as _count, product
from math import prod
from typing import Iterable

from .classify import classify_onto_dpp, classify_transitive_devaney
from .dynamics import (
    Branch,
    ClassData,
    Configuration,
    Cylinder,
    FiniteSupport,
    OrbitBumped,
    OrbitPeriodicWitness,
    SetDescriptor,
    TriangularIndicator,
    agree_at,
    apply_shift,
    difference,
    infinite_difference,
    iterate_coord,
    weight_product,
)
from .system import (
    AllUnits,
    Periodic,
    System,
    backward_root,
    classify_orbit,
    find_link,
    is_quasi_periodic,
    orbit_weight_profile,
    orbits_meet,
    phi_apply,
    phi_back,
)


class WitnessError(ValueError):
    pass


class BadWitnessPoint(WitnessError):
    """The base point is quasi-periodic or its orbit meets a non-unit weight."""


class NotApplicable(WitnessError):
    """The system does not satisfy the hypothesis the construction needs."""


class LinkNotFound(WitnessError):
    """A forward-orbit link exists in principle but lies beyond the search bound."""


def _require_unit_escape(sys: System, a: int) -> None:
    if is_quasi_periodic(sys, a):
        raise BadWitnessPoint(f"{a} is quasi-periodic")
    prof = orbit_weight_profile(sys, a)
    if not isinstance(prof, AllUnits):
        raise BadWitnessPoint(f"orbit of {a} has weight profile {prof}")


# -- almost disjoint families -------------------------------------------------

def _primitive(block: tuple[int, ...]) -> bool:
    n = len(block)
    return not any(n % d == 0 and block == block[:d] * (n // d) for d in range(1, n))


def branch_family(count: int) -> list[Branch]:
    """``count`` purely periodic branches, period blocks in length-lex order."""
    if count < 2:
        raise ValueError("count must be >= 2")
    out: list[Branch] = []
    for length in _count(1):
        for block in product((0, 1), repeat=length):
            if _primitive(block):
                out.append(Branch((), block))
                if len(out) == count:
                    return out
    raise AssertionError("unreachable")  # pragma: no cover


# -- scrambled pairs ------------------------------------------------------------

@dataclass(frozen=True)
class ScrambledPair:
    x: TriangularIndicator
    y: TriangularIndicator
    E: SetDescriptor
    F: SetDescriptor
    nu: int

    @property
    def system(self) -> System:
        return self.x.system

    def to_dict(self) -> dict:
        return {"nu": self.nu, "E": self.E.to_dict(), "F": self.F.to_dict()}


def scrambled_pair(sys: System, nu: int, e: SetDescriptor, f: SetDescriptor) -> ScrambledPair:
    _require_unit_escape(sys, nu)
    if not (infinite_difference(e, f) or infinite_difference(f, e)):
        raise ValueError("E and F must have infinite symmetric difference")
    return ScrambledPair(TriangularIndicator(sys, nu, e), TriangularIndicator(sys, nu, f), e, f, nu)


def nonasym_times(pair: ScrambledPair, bound: int | None = None, limit: int | None = None) -> list[int]:
    """Times ``r(r+1)/2`` for ``r`` in ``E \\ F`` (``r <= bound``, at most ``limit`` of them).

    At each returned time the iterates differ at ``nu``.
    """
    if bound is None and limit is None:
        raise ValueError("give a bound, a limit, or both")
    out = []
    for r in difference(pair.E, pair.F):
        if bound is not None and r > bound:
            break
        out.append(r * (r + 1) // 2)
        if limit is not None and len(out) >= limit:
            break
    return out


def prox_schedule(pair: ScrambledPair, indices: Iterable[int], count: int, link_bound: int = 4096) -> list[int]:
    """``count`` times at which the pair agrees on every index in the finite set.

    Indices outside the class of ``nu`` never see either configuration and
    are dropped; for the rest the links ``phi^m(nu) = phi^n(a)`` place the
    schedule strictly between consecutive triangular numbers.
    """
    sys, nu = pair.system, pair.nu
    links = []
    for a in indices:
        link = find_link(sys, nu, a, link_bound)
        if link.status == "disjoint":
            continue
        if not link.found:
            raise LinkNotFound(f"no link between {nu} and {a} within {link_bound} steps")
        links.append(link)
    if not links:
        return list(range(1, count + 1))
    r = max(l.n for l in links)
    n0 = r + max(l.m for l in links)
    return [n * (n + 1) // 2 + r for n in range(n0, n0 + count)]


# -- periodic points -------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicWitness:
    y: OrbitPeriodicWitness
    period: int
    closure: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"A": list(self.closure), "classes": [c.to_dict() for c in self.y.classes], "T": self.period}


def periodic_point(sys: System, target: Cylinder) -> PeriodicWitness:
    """A periodic configuration inside the cylinder, with an explicit period.

    Requires phi injective and all weights invertible.  Free coordinates are 0.
    """
    if classify_onto_dpp(sys)[1].status != "yes":
        raise NotApplicable("periodic-point construction needs injective phi and unit weights")
    values = target.as_dict()
    pending = list(target.indices)
    classes: list[ClassData] = []
    closure: list[int] = []
    while pending:
        beta = pending[0]
        cls = classify_orbit(sys, beta)
        if isinstance(cls, Periodic):
            pts = [phi_apply(sys, beta, i) for i in range(cls.period)]
            data = ClassData("a", beta, tuple(values.get(p, 0) for p in pts))
        else:
            mates = [a for a in pending if orbits_meet(sys, beta, a)]
            root = backward_root(sys, beta)
            if root is not None:
                anchor = root[0]
                orb = sys.orbit(anchor)
                top = max(orb.first_time(a) for a in mates)
                pts = [phi_apply(sys, anchor, i) for i in range(top + 1)]
                data = ClassData("b", anchor, tuple(values.get(p, 0) for p in pts))
            else:
                # bi-infinite class: offsets of the constrained points relative to beta
                offs = {}
                ob = sys.orbit(beta)
                for a in mates:
                    t = ob.first_time(a)
                    offs[a] = t if t is not None else -sys.orbit(a).first_time(beta)
                lo_t, hi_t = min(offs.values()), max(offs.values())
                anchor = phi_apply(sys, beta, lo_t) if lo_t >= 0 else phi_back(sys, beta, -lo_t)
                pts = [phi_apply(sys, anchor, i) for i in range(hi_t - lo_t + 1)]
                data = ClassData("c", anchor, tuple(values.get(p, 0) for p in pts))
        classes.append(data)
        closure.extend(pts)
        members = set(pts)
        pending = [a for a in pending if a not in members]
    k = sys.ring.unit_count()
    # every element of a class contributes its class size to the product
    period = k * prod(c.n ** c.n for c in classes)
    return PeriodicWitness(OrbitPeriodicWitness(sys, tuple(classes)), period, tuple(sorted(closure)))


def verify_periodic(sys: System, wit: PeriodicWitness, target: Cylinder, window: Iterable[int]) -> list[str]:
    fails = []
    if not target.contains(wit.y):
        fails.append("cylinder constraint violated")
    for a in window:
        if iterate_coord(sys, wit.y, wit.period, a) != wit.y.value(a):
            fails.append(f"sigma^T(y) != y at {a}")
    return fails


# -- sensitivity separations ------------------------------------------------------

def separation_witness(sys: System, x: Configuration, pinned: Iterable[int], theta: int) -> tuple[OrbitBumped, int]:
    """``z`` equal to ``x`` on ``pinned`` whose iterates differ from those of ``x`` at ``theta`` from time ``N`` on."""
    _require_unit_escape(sys, theta)
    orb = sys.orbit(theta)
    hits = [t for t in (orb.first_time(a) for a in pinned) if t is not None]
    start = max(hits) + 1 if hits else 0
    return OrbitBumped(sys, x, theta, start), start


def verify_separation(sys: System, x: Configuration, z: Configuration, start: int, pinned: Iterable[int],
                      theta: int, span: int = 25) -> list[str]:
    fails = [f"z differs from x at pinned index {a}" for a in pinned if z.value(a) != x.value(a)]
    for m in range(start, start + span + 1):
        if agree_at(sys, x, z, m, [theta]):
            fails.append(f"no disagreement at time {m}")
    return fails


# -- transitivity ------------------------------------------------------------------

def transit_witness(sys: System, u: Cylinder, v: Cylinder) -> tuple[int, FiniteSupport]:
    """``(p, x)`` with ``x`` in ``u`` and ``sigma^p(x)`` in ``v``."""
    if classify_transitive_devaney(sys)[0].status != "yes":
        raise NotApplicable("transit construction needs injective, aperiodic phi with unit weights")
    ring = sys.ring
    u_idx = u.indices
    p = 1
    for beta in v.indices:
        orb = sys.orbit(beta)
        last = max((t for t in (orb.first_time(a, 1) for a in u_idx) if t is not None), default=0)
        p = max(p, last + 1)
    x = u.as_dict()
    for beta, val in v.constraints:
        target = phi_apply(sys, beta, p)
        x[target] = ring.mul(ring.inv(weight_product(sys, beta, p)), val)
    return p, FiniteSupport.of(x)


def verify_transit(sys: System, u: Cylinder, v: Cylinder, p: int, x: Configuration) -> list[str]:
    fails = []
    if not u.contains(x):
        fails.append("x not in U")
    for beta, val in v.constraints:
        if iterate_coord(sys, x, p, beta) != val:
            fails.append(f"sigma^p(x) misses V at {beta}")
    return fails


# -- preimages -------------------------------------------------------------------------

def preimage(sys: System, x: FiniteSupport) -> FiniteSupport:
    """``z`` with ``sigma(z) == x``: ``z_{phi(b)} = w_b^{-1} x_b`` and 0 off the image of phi."""
    if classify_onto_dpp(sys)[0].status != "yes":
        raise NotApplicable("preimage construction needs injective phi and unit weights")
    ring = sys.ring
    return FiniteSupport.of({sys.phi(b): ring.mul(ring.inv(sys.weight(b)), v) for b, v in x.entries})


def verify_preimage(sys: System, x: FiniteSupport, z: FiniteSupport) -> list[str]:
    got = apply_shift(sys, z)
    return [] if got == x else [f"sigma(z) = {got.to_dict()} != {x.to_dict()}"]
