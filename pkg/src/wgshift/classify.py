"""Theorem-level deciders for chaos properties of a weighted generalized shift.

Every decider returns a :class:`Verdict` whose ``status`` is ``yes``, ``no``
or ``unknown_by_paper``.  The last one only appears over rings that are not
fields: there an escaping orbit can carry weights that are nonzero but not
invertible, and neither the stability nor the separation argument applies.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from .system import (
    AllUnits,
    HitsZero,
    NonQuasiPeriodic,
    NonzeroNonUnit,
    System,
    classify_orbit,
    is_injective,
    is_quasi_periodic,
    orbit_weight_profile,
    periodic_points_exist,
)

YES, NO, UNKNOWN = "yes", "no", "unknown_by_paper"

# justification tags
UNIT_ORBIT = "lemma:unit-weight-escaping-orbit"
STABLE_SET = "lemma:finite-stability-set"
PROX_ASYM = "lemma:prox-equals-asym"
SCRAMBLED = "lemma:triangular-scrambled-family"
RING_GAP = "gap:nonunit-escaping-orbit"
ONTO = "theorem:onto-iff-injective-unit-weights"
DPP = "theorem:dense-periodic-iff-injective-unit-weights"
TRANSITIVE = "lemma:transitive-iff-aperiodic-injective-unit-weights"
DEVANEY = "theorem:devaney-iff-transitive"


class HypothesisViolated(ValueError):
    """The stability certificate was requested where its hypothesis fails."""


@dataclass(frozen=True)
class Verdict:
    status: str
    justification: str
    witness: Any = None

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness, "justification": self.justification}


@dataclass(frozen=True)
class ChaosReport:
    sensitive: Verdict
    strongly_sensitive: Verdict
    li_yorke: Verdict
    onto: Verdict
    dense_periodic: Verdict
    transitive: Verdict
    devaney: Verdict
    field_ring: bool = field(default=False, compare=False)

    def to_dict(self) -> dict:
        return {name: getattr(self, name).to_dict() for name in
                ("sensitive", "strongly_sensitive", "li_yorke", "onto", "dense_periodic", "transitive", "devaney")}

    def coherence_errors(self) -> list[str]:
        errs = []
        if self.transitive.status == YES and self.devaney.status != YES:
            errs.append("transitive without devaney")
        if self.transitive.status == YES and (self.sensitive.status != YES or self.dense_periodic.status != YES):
            errs.append("transitive without sensitivity or dense periodic points")
        if self.onto.status != self.dense_periodic.status:
            errs.append("onto and dense_periodic disagree")
        if self.field_ring and not (self.sensitive.status == self.li_yorke.status == self.strongly_sensitive.status):
            errs.append("field ring with diverging sensitivity / Li-Yorke verdicts")
        if self.field_ring and UNKNOWN in (self.sensitive.status, self.li_yorke.status):
            errs.append("field ring left undecided")
        return errs


def _orbit_scan(sys: System) -> tuple[int | None, int | None]:
    """First unit-weight escaping point, and first escaping point with a non-unit nonzero weight."""
    witness = gap = None
    for a in sys.candidates():
        if is_quasi_periodic(sys, a):
            continue
        prof = orbit_weight_profile(sys, a)
        if isinstance(prof, AllUnits):
            witness = a
            break
        if isinstance(prof, NonzeroNonUnit) and gap is None:
            gap = a
    return witness, gap


def classify_sensitive(sys: System) -> Verdict:
    witness, gap = _orbit_scan(sys)
    if witness is not None:
        return Verdict(YES, UNIT_ORBIT, {"theta": witness})
    if gap is None:
        return Verdict(NO, STABLE_SET)
    return Verdict(UNKNOWN, RING_GAP, {"theta": gap, "profile": asdict(orbit_weight_profile(sys, gap))})


def classify_strongly_sensitive(sys: System) -> Verdict:
    # the separation witness keeps disagreeing forever, so both notions share one verdict
    return classify_sensitive(sys)


def classify_li_yorke(sys: System) -> Verdict:
    witness, gap = _orbit_scan(sys)
    if witness is not None:
        return Verdict(YES, SCRAMBLED, {"nu": witness})
    if gap is None:
        return Verdict(NO, PROX_ASYM)
    return Verdict(UNKNOWN, RING_GAP, {"theta": gap, "profile": asdict(orbit_weight_profile(sys, gap))})


def _nonunit_weight(sys: System) -> int | None:
    ring = sys.ring
    for a, w in sys.weight_entries():
        if not ring.is_unit(w):
            return a
    return None


def classify_onto_dpp(sys: System) -> tuple[Verdict, Verdict]:
    injective, pair = is_injective(sys)
    if not injective:
        cert = {"collision": list(pair)}
        return Verdict(NO, ONTO, cert), Verdict(NO, DPP, cert)
    bad = _nonunit_weight(sys)
    if bad is not None:
        cert = {"nonunit_weight_at": bad}
        return Verdict(NO, ONTO, cert), Verdict(NO, DPP, cert)
    return Verdict(YES, ONTO), Verdict(YES, DPP)


def classify_transitive_devaney(sys: System) -> tuple[Verdict, Verdict]:
    injective, pair = is_injective(sys)
    if not injective:
        cert = {"collision": list(pair)}
    else:
        has_periodic, point = periodic_points_exist(sys)
        if has_periodic:
            cert = {"periodic_point": point}
        else:
            bad = _nonunit_weight(sys)
            cert = None if bad is None else {"nonunit_weight_at": bad}
    if cert is not None:
        return Verdict(NO, TRANSITIVE, cert), Verdict(NO, DEVANEY, cert)
    # injective and aperiodic: every point escapes, so the unit weights give a sensitivity witness
    assert classify_sensitive(sys).status == YES
    assert classify_onto_dpp(sys)[1].status == YES
    return Verdict(YES, TRANSITIVE), Verdict(YES, DEVANEY)


def classify_all(sys: System) -> ChaosReport:
    sens = classify_sensitive(sys)
    onto, dpp = classify_onto_dpp(sys)
    trans, dev = classify_transitive_devaney(sys)
    report = ChaosReport(
        sensitive=sens,
        strongly_sensitive=classify_strongly_sensitive(sys),
        li_yorke=classify_li_yorke(sys),
        onto=onto,
        dense_periodic=dpp,
        transitive=trans,
        devaney=dev,
        field_ring=sys.ring.is_field(),
    )
    errs = report.coherence_errors()
    if errs:
        raise AssertionError(f"incoherent report: {errs}")
    return report


def stability_certificate(sys: System, indices) -> set[int]:
    """Finite set of coordinates that pins the iterates on ``indices`` forever.

    Quasi-periodic points contribute their whole forward orbit; escaping points
    whose orbit meets a zero weight contribute the orbit up to that weight.
    """
    lam: set[int] = set()
    for a in indices:
        orb = sys.orbit(a)
        if orb.cyclic:
            stop = orb.end
        else:
            prof = orbit_weight_profile(sys, a)
            if not isinstance(prof, HitsZero):
                raise HypothesisViolated(
                    f"{a} escapes with profile {type(prof).__name__}; no finite stability set exists")
            stop = prof.first + 1
        lam.update(_orbit_points(orb, stop))
    return lam


def _orbit_points(orb, stop: int) -> list[int]:
    out = []
    for t0, a, length, step in zip(orb.times, orb.points, orb.lengths, orb.steps):
        if t0 >= stop:
            break
        count = 1 if step == 0 else (stop - t0 if length is None else min(length, stop - t0))
        out.extend(a + i * step for i in range(count))
    return out


def is_escaping(sys: System, a: int) -> bool:
    return isinstance(classify_orbit(sys, a), NonQuasiPeriodic)
