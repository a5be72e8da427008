"""Acceptance criteria.  Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""
from __future__ import annotations

import itertools
import math
import random
import time
from pathlib import Path

import pytest

from helpers import GF4, Z2, Z3, Z4, index_window, random_support, random_system, units, z4_collapse
from wgshift import oracle
from wgshift.classify import UNKNOWN, YES, classify_li_yorke, classify_sensitive, classify_transitive_devaney
from wgshift.cli import main
from wgshift.dynamics import Cylinder, FiniteSupport, agree_at, apply_shift, config_eval, iterate_coord, weight_product
from wgshift.ring import ring_for
from wgshift.system import cofinite_system, finite_system, full_shift, integer_system, orbits_meet
from wgshift.witness import (
    branch_family,
    nonasym_times,
    periodic_point,
    preimage,
    prox_schedule,
    scrambled_pair,
    separation_witness,
    transit_witness,
    verify_periodic,
)

SWEEP_RINGS = [Z2, Z3, Z4, GF4]
SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


@pytest.fixture(scope="module")
def sweeps():
    oracle.sweep_equivalence(2, Z2)  # warm the compiled kernels outside the timed region
    start = time.perf_counter()
    reports = [oracle.sweep_equivalence(n, r) for r in SWEEP_RINGS for n in (2, 3)]
    return reports, time.perf_counter() - start


@pytest.mark.criterion(1, "exhaustive onto / criterion / dense-periodic equivalence, under 30 s")
def test_exhaustive_equivalence(sweeps):
    reports, elapsed = sweeps
    for rep in reports:
        q = ring_for(rep.ring).cardinality
        assert rep.systems == rep.n**rep.n * q**rep.n
        # permutations times unit weight vectors
        assert rep.onto_count == math.factorial(rep.n) * ring_for(rep.ring).unit_count() ** rep.n
        onto_problems = [v for v in rep.violations if any(p.startswith("onto=") for p in v["problems"])]
        assert onto_problems == []
    assert elapsed < 30, f"sweep took {elapsed:.1f}s"


@pytest.mark.criterion(2, "finite index sets: never transitive, never sensitive, prox = asym")
def test_finite_negative_results(sweeps):
    reports, _ = sweeps
    assert sum(r.systems for r in reports) == (16 + 36 + 64 + 64) + (216 + 729 + 1728 + 1728)
    for rep in reports:
        assert rep.violations == [], rep.violations[:3]


@pytest.mark.criterion(3, "Z_4 collapse: unknown verdicts, two-step products vanish, simulated rows die")
def test_z4_collapse(capsys):
    sys = z4_collapse()
    assert classify_sensitive(sys).status == UNKNOWN
    assert classify_li_yorke(sys).status == UNKNOWN
    assert all(weight_product(sys, a, 2) == 0 for a in range(65))
    path = str(SYSTEMS / "z4_collapse.json")
    code = main(["simulate", path, "--config", '{"support": [[0, 1], [1, 3], [2, 2], [6, 1]]}',
                 "--steps", "5", "--window", "8"])
    assert code == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0] == "n,c0,c1,c2,c3,c4,c5,c6,c7"
    body = [list(map(int, r.split(","))) for r in rows[1:]]
    assert [r[0] for r in body] == [0, 1, 2, 3, 4, 5]
    assert any(body[1][1:])
    assert all(v == 0 for r in body[2:] for v in r[1:])


def _scrambled_suite(sys, nu):
    m_full = sorted({sys.phi(nu), nu, sys.phi(sys.phi(nu))})
    subsets = [list(c) for k in range(1, len(m_full) + 1) for c in itertools.combinations(m_full, k)]
    branches = branch_family(10)
    pairs = 0
    for e, f in itertools.combinations(branches, 2):
        pair = scrambled_pair(sys, nu, e, f)
        far = nonasym_times(pair, limit=10)
        assert len(far) == 10
        for t in far:
            assert iterate_coord(sys, pair.x, t, nu) != iterate_coord(sys, pair.y, t, nu)
        for m in subsets:
            near = prox_schedule(pair, m, 10)
            assert len(near) == 10
            for t in near:
                assert agree_at(sys, pair.x, pair.y, t, m)
        pairs += 1
    return pairs


@pytest.mark.criterion(4, "scrambled pairs on Z_2 full shift and GF(4) cofinite shift, under 10 s")
def test_scrambled_pairs():
    start = time.perf_counter()
    z2 = full_shift(Z2)
    gf4 = cofinite_system(GF4, [2, 0, 4], 1, [2, 3, 2], 2)
    assert classify_li_yorke(gf4).status == YES
    assert _scrambled_suite(z2, 0) == 45
    assert _scrambled_suite(gf4, 1) == 45
    assert time.perf_counter() - start < 10


def _table_iterate(space, state, steps):
    for _ in range(steps):
        state = int(space.table[state])
    return state


@pytest.mark.criterion(5, "periodic points: 100 finite systems by table iteration plus a bi-infinite class")
def test_periodic_points():
    rng = random.Random(5)
    for trial in range(100):
        spec = [Z3, Z4, GF4][trial % 3]
        n = rng.randint(2, 5)
        perm = list(range(n))
        rng.shuffle(perm)
        sys = finite_system(spec, perm, [rng.choice(units(spec)) for _ in range(n)])
        q = ring_for(spec).cardinality
        cyl = Cylinder.of({a: rng.randrange(q) for a in rng.sample(range(n), rng.randint(1, n))})
        wit = periodic_point(sys, cyl)
        assert cyl.contains(wit.y)
        # expected period from class sizes of the constrained closure, computed independently
        closure = set(wit.closure)
        n_theta = {a: sum(1 for b in closure if orbits_meet(sys, a, b)) for a in closure}
        assert wit.period == ring_for(spec).unit_count() * math.prod(n_theta.values())
        space = oracle.state_space(sys)
        y_state = space.encode([wit.y.value(a) for a in range(n)])
        assert _table_iterate(space, y_state, wit.period) == y_state

    sys = integer_system(GF4, (0, 0), (), 1, (), 2, 3)
    cyl = Cylinder.of({-2: 1, 0: 3, 3: 2})
    wit = periodic_point(sys, cyl)
    assert {c.case for c in wit.y.classes} == {"c"}
    window = range(-50, 51)
    assert verify_periodic(sys, wit, cyl, window) == []
    for a in window:
        assert iterate_coord(sys, wit.y, wit.period, a) == wit.y.value(a)


@pytest.mark.criterion(6, "separation witnesses on 20 cofinite shifts with unit escaping orbits")
def test_separation():
    rng = random.Random(6)
    done = 0
    while done < 20:
        spec = rng.choice([Z3, Z4, GF4, Z2])
        b = rng.randint(0, 4)
        q = ring_for(spec).cardinality
        sys = cofinite_system(spec, [rng.randrange(b + 4) for _ in range(b)], rng.randint(1, 3),
                              [rng.randrange(q) for _ in range(rng.randint(0, 5))], rng.choice(units(spec)))
        verdict = classify_sensitive(sys)
        if verdict.status != YES:
            continue
        theta = verdict.witness["theta"]
        x = random_support(rng, sys)
        pinned = rng.sample(index_window(sys, 0, 15), rng.randint(0, 5))
        z, start = separation_witness(sys, x, pinned, theta)
        assert all(z.value(a) == x.value(a) for a in pinned)
        for m in range(start, start + 26):
            assert iterate_coord(sys, x, m, theta) != iterate_coord(sys, z, m, theta)
        done += 1


def _devaney_positive(rng):
    while True:
        spec = rng.choice([Z2, Z3, Z4, GF4])
        u = units(spec)
        if rng.random() < 0.5:
            b = rng.randint(0, 3)
            sys = cofinite_system(spec, [rng.randrange(b + 4) for _ in range(b)], rng.randint(1, 2),
                                  [rng.choice(u) for _ in range(b)], rng.choice(u))
        else:
            lo = rng.randint(-2, 0)
            hi = lo + rng.randint(0, 3)
            d = rng.choice([-1, 1])
            table = [a + d for a in range(lo, hi)]
            if table and rng.random() < 0.5:
                i, j = rng.sample(range(len(table)), 2) if len(table) > 1 else (0, 0)
                table[i], table[j] = table[j], table[i]
            sys = integer_system(spec, (lo, hi), table, d, [rng.choice(u) for _ in table], rng.choice(u),
                                 rng.choice(u))
        if classify_transitive_devaney(sys)[1].status == YES:
            return sys


def _shift_power(sys, x, p):
    for _ in range(p):
        x = apply_shift(sys, x)
    return x


@pytest.mark.criterion(7, "transit and preimage witnesses on 20 Devaney-positive systems")
def test_transit_and_preimage():
    rng = random.Random(7)
    for _ in range(20):
        sys = _devaney_positive(rng)
        q = sys.ring.cardinality
        pool = index_window(sys, -6, 10)
        u = Cylinder.of({a: rng.randrange(q) for a in rng.sample(pool, rng.randint(0, 3))})
        v = Cylinder.of({a: rng.randrange(q) for a in rng.sample(pool, rng.randint(0, 3))})
        p, x = transit_witness(sys, u, v)
        assert p >= 1
        assert u.contains(x)
        image = _shift_power(sys, x, p)
        assert all(config_eval(image, b) == val for b, val in v.constraints)

        target = random_support(rng, sys)
        z = preimage(sys, target)
        assert apply_shift(sys, z) == target


@pytest.mark.criterion(8, "closed-form iterates equal repeated one-step shifts on 1000 random tuples")
def test_closed_form_equivalence():
    rng = random.Random(8)
    for _ in range(1000):
        sys = random_system(rng)
        x = random_support(rng, sys)
        n = rng.randint(0, 20)
        a = rng.choice(index_window(sys))
        assert iterate_coord(sys, x, n, a) == config_eval(_shift_power(sys, x, n), a)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
