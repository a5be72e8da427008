import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import GF4, Z2, Z3, Z4, Z5, full_shift, random_finite
from wgshift import _kernels, oracle
from wgshift.system import finite_system

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])


def test_properties_examples():
    collapse = oracle.bf_properties(finite_system(Z2, [0, 0], [1, 1]))
    assert collapse.onto is False and collapse.per_dense is False and collapse.transitive is False
    assert collapse.per_set == {0b00, 0b11}
    swap = oracle.bf_properties(finite_system(Z2, [1, 0], [1, 1]))
    assert swap.onto and swap.per_dense and not swap.transitive


def test_prox_asym_examples():
    swap = finite_system(Z2, [1, 0], [1, 1])
    # state = x0 + 2*x1
    assert oracle.bf_prox_asym(swap, 2, 2) == (True, True)
    assert oracle.bf_prox_asym(swap, 2, 1) == (False, False)
    assert oracle.bf_prox_asym(finite_system(Z2, [0, 0], [1, 1]), 2, 0) == (True, True)
    with pytest.raises(ValueError):
        oracle.bf_prox_asym(swap, 0, 4)


def test_sweep_examples():
    rep = oracle.sweep_equivalence(2, Z2)
    assert rep.summary == "16 systems, 2 onto, 0 violations"
    assert oracle.sweep_equivalence(2, Z4).onto_count == 8
    rep = oracle.sweep_equivalence(3, Z3)
    assert (rep.systems, rep.violations) == (729, [])
    assert rep.to_dict()["ring"] == {"kind": "zmod", "m": 3}


def test_guards():
    with pytest.raises(oracle.BudgetExceeded):
        oracle.sweep_equivalence(3, Z3, budget=100)
    with pytest.raises(oracle.SpaceTooLarge):
        oracle.state_space(finite_system(Z2, [0] * 21, [1] * 21))
    with pytest.raises(oracle.SpaceTooLarge):
        oracle.prox_asym_matrices(finite_system(Z2, list(range(13)), [1] * 13))
    with pytest.raises(ValueError):
        oracle.state_space(full_shift(Z2))


def test_self_check_catches_a_corrupted_table(monkeypatch):
    real = _kernels.sigma_table

    def corrupt(*args, **kw):
        t = real(*args, **kw)
        t[1] = (t[1] + 1) % t.shape[0]
        return t

    monkeypatch.setattr(_kernels, "sigma_table", corrupt)
    with pytest.raises(AssertionError, match="disagrees"):
        oracle.state_space(finite_system(Z3, [1, 0], [1, 2]), samples=10_000)


def test_encoding_round_trip():
    space = oracle.state_space(finite_system(GF4, [1, 2, 0], [1, 2, 3]))
    for s in range(space.size):
        assert space.encode(space.decode(s)) == s
        assert space.encode(space.to_config(s)) == s
    with pytest.raises(ValueError):
        space.encode([1, 2])


# -- kernels against plain python --------------------------------------------------

def naive_cycles(table):
    on = set()
    for s in range(len(table)):
        cur = s
        for _ in range(len(table)):
            cur = table[cur]
        c = cur
        while True:
            on.add(c)
            c = table[c]
            if c == cur:
                break
    return on


def naive_meets(table, x, y):
    for _ in range(len(table)):
        x, y = table[x], table[y]
        if x == y:
            return True
    return False


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_kernels_match_python(backend, seed):
    rng = random.Random(seed)
    sys = random_finite(rng, rng.choice([Z2, Z3, Z4, GF4, Z5]), rng.randint(2, 4))
    ring = sys.ring
    table = _kernels.sigma_table(sys.index.phi, sys.weights.values, ring.mul_table, ring.cardinality, backend)
    q, n = ring.cardinality, sys.index.size
    for s in range(q**n):
        digits = [(s // q**i) % q for i in range(n)]
        succ = [ring.mul(sys.weight(i), digits[sys.phi(i)]) for i in range(n)]
        assert table[s] == sum(d * q**i for i, d in enumerate(succ))
    t = table.tolist()
    assert set(np.flatnonzero(_kernels.cycle_mask(table, backend)).tolist()) == naive_cycles(t)
    assert _kernels.covers_all(table, 0, backend) is False
    prox = _kernels.prox_matrix(table, backend)
    asym = _kernels.asym_matrix(table, backend)
    for x in range(min(len(t), 20)):
        for y in range(min(len(t), 20)):
            assert prox[x, y] == (x == y or naive_meets(t, x, y))
    assert np.array_equal(prox, asym)


@pytest.mark.parametrize("backend", BACKENDS)
def test_covers_all_on_single_cycle(backend):
    rng = np.random.default_rng(0)
    perm = rng.permutation(50)
    cyc = np.empty(50, dtype=np.int64)
    cyc[perm] = np.roll(perm, -1)
    assert _kernels.covers_all(cyc, 0, backend)
    cyc2 = cyc.copy()
    a, b = perm[0], perm[25]
    cyc2[a], cyc2[b] = cyc[b], cyc[a]  # splits the cycle in two
    assert not _kernels.covers_all(cyc2, 0, backend)
    assert not _kernels.covers_all(np.zeros(5, dtype=np.int64), 0, backend)


def test_backends_agree_on_sweep():
    if len(BACKENDS) < 2:
        pytest.skip("numba not installed")
    a = oracle.sweep_equivalence(3, GF4, backend="numpy").to_dict()
    b = oracle.sweep_equivalence(3, GF4, backend="numba").to_dict()
    assert a == b


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        _kernels.cycle_mask(np.zeros(2, dtype=np.int64), "fortran")


@pytest.mark.parametrize("flag, expected", [("1", "False"), ("", str(_kernels.HAS_NUMBA))])
def test_env_flag_selects_backend(flag, expected):
    import os
    import subprocess
    import sys

    env = {**os.environ, "WGSHIFT_DISABLE_NUMBA": flag}
    out = subprocess.run([sys.executable, "-c", "from wgshift import _kernels; print(_kernels.USE_NUMBA)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
