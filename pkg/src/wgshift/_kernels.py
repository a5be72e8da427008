"""State-space kernels for the brute-force oracle.

Each kernel exists twice: a numba ``@njit`` loop and a vectorized numpy
version.  Set ``WGSHIFT_DISABLE_NUMBA=1`` to force the numpy path; it is also
used automatically when numba cannot be imported.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAS_NUMBA = numba is not None
USE_NUMBA = HAS_NUMBA and os.environ.get("WGSHIFT_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")


def _backend(backend: str | None) -> str:
    if backend is None:
        return "numba" if USE_NUMBA else "numpy"
    if backend == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    return backend


# -- numpy ------------------------------------------------------------------

def _sigma_table_np(phi: np.ndarray, w: np.ndarray, mul: np.ndarray, q: int) -> np.ndarray:
    n = phi.shape[0]
    place = q ** np.arange(n, dtype=np.int64)
    states = np.arange(q**n, dtype=np.int64)
    digits = (states[:, None] // place[None, :]) % q
    new = mul[w[None, :], digits[:, phi]].astype(np.int64)
    return new @ place


def _cycle_mask_np(table: np.ndarray) -> np.ndarray:
    # the image of sigma^m with m >= #states is exactly the set of cyclic states
    f = table.copy()
    reach = 1
    while reach < table.shape[0]:
        f = f[f]
        reach *= 2
    mask = np.zeros(table.shape[0], dtype=np.bool_)
    mask[f] = True
    return mask


def _covers_all_np(table: np.ndarray, start: int) -> bool:
    s = table.shape[0]
    if np.bincount(table, minlength=s).max() != 1:
        return False
    cur, steps = int(table[start]), 1
    while cur != start:
        cur = int(table[cur])
        steps += 1
    return steps == s


def _prox_np(table: np.ndarray) -> np.ndarray:
    cur = table.copy()
    prox = cur[:, None] == cur[None, :]
    for _ in range(table.shape[0] - 1):
        cur = table[cur]
        prox |= cur[:, None] == cur[None, :]
    return prox


def _asym_np(table: np.ndarray) -> np.ndarray:
    f = table.copy()
    reach = 1
    while reach < table.shape[0]:
        f = f[f]
        reach *= 2
    return f[:, None] == f[None, :]


# -- numba --------------------------------------------------------------------

if HAS_NUMBA:

    @numba.njit(cache=True)
    def _sigma_table_nb(phi, w, mul, q):
        n = phi.shape[0]
        s = q**n
        out = np.empty(s, dtype=np.int64)
        digits = np.empty(n, dtype=np.int64)
        for state in range(s):
            rest = state
            for i in range(n):
                digits[i] = rest % q
                rest //= q
            acc = 0
            place = 1
            for i in range(n):
                acc += mul[w[i], digits[phi[i]]] * place
                place *= q
            out[state] = acc
        return out

    @numba.njit(cache=True)
    def _cycle_mask_nb(table):
        s = table.shape[0]
        color = np.zeros(s, dtype=np.int64)  # 0 unseen, >0 walk id
        mask = np.zeros(s, dtype=np.bool_)
        for start in range(s):
            if color[start]:
                continue
            walk = start + 1
            cur = start
            while color[cur] == 0:
                color[cur] = walk
                cur = table[cur]
            if color[cur] == walk:
                c = cur
                while True:
                    mask[c] = True
                    c = table[c]
                    if c == cur:
                        break
        return mask

    @numba.njit(cache=True)
    def _covers_all_nb(table, start):
        s = table.shape[0]
        seen = np.zeros(s, dtype=np.bool_)
        cur = table[start]
        count = 0
        while not seen[cur]:
            seen[cur] = True
            count += 1
            cur = table[cur]
        return count == s

    @numba.njit(cache=True)
    def _prox_nb(table):
        # walk the pair graph (x, y) -> (sigma x, sigma y), memoizing outcomes;
        # a walk that re-enters its own path is a cycle of unequal pairs
        s = table.shape[0]
        state = np.zeros((s, s), dtype=np.int8)  # 0 unknown, 1 meets, 2 never, 3 on current walk
        for x in range(s):
            state[x, x] = 1
        path_a = np.empty(s * s, dtype=np.int64)
        path_b = np.empty(s * s, dtype=np.int64)
        for x in range(s):
            for y in range(s):
                if state[x, y]:
                    continue
                depth = 0
                a = x
                b = y
                while state[a, b] == 0:
                    state[a, b] = 3
                    path_a[depth] = a
                    path_b[depth] = b
                    depth += 1
                    a = table[a]
                    b = table[b]
                outcome = 2 if state[a, b] == 3 else state[a, b]
                for i in range(depth):
                    state[path_a[i], path_b[i]] = outcome
        # the walk from (x, y) starts at time 0; proximality needs a meeting at n >= 1
        prox = np.zeros((s, s), dtype=np.bool_)
        for x in range(s):
            for y in range(s):
                prox[x, y] = state[table[x], table[y]] == 1
        return prox

    @numba.njit(cache=True)
    def _asym_nb(table):
        s = table.shape[0]
        lim = np.empty(s, dtype=np.int64)
        for x in range(s):
            a = x
            for _ in range(s):
                a = table[a]
            lim[x] = a
        out = np.empty((s, s), dtype=np.bool_)
        for x in range(s):
            for y in range(s):
                out[x, y] = lim[x] == lim[y]
        return out


# -- dispatch -------------------------------------------------------------------

def sigma_table(phi, w, mul, q: int, backend: str | None = None) -> np.ndarray:
    """Successor of every packed state (little-endian base q, coordinate i at digit i)."""
    phi = np.ascontiguousarray(phi, dtype=np.int64)
    w = np.ascontiguousarray(w, dtype=np.int64)
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    if _backend(backend) == "numba":
        return _sigma_table_nb(phi, w, mul, q)
    return _sigma_table_np(phi, w, mul, q)


def cycle_mask(table: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Boolean mask of states lying on a cycle of the functional graph."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if _backend(backend) == "numba":
        return _cycle_mask_nb(table)
    return _cycle_mask_np(table)


def covers_all(table: np.ndarray, start: int = 0, backend: str | None = None) -> bool:
    """Whether ``{sigma^n(start) : n >= 1}`` is the whole state space."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if _backend(backend) == "numba":
        return bool(_covers_all_nb(table, start))
    return _covers_all_np(table, start)


def prox_matrix(table: np.ndarray, backend: str | None = None) -> np.ndarray:
    """``[x, y]``: some ``n >= 1`` has ``sigma^n x == sigma^n y``."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if _backend(backend) == "numba":
        return _prox_nb(table)
    return _prox_np(table)


def asym_matrix(table: np.ndarray, backend: str | None = None) -> np.ndarray:
    """``[x, y]``: the iterates coincide from some time on (compared after #states steps)."""
    table = np.ascontiguousarray(table, dtype=np.int64)
    if _backend(backend) == "numba":
        return _asym_nb(table)
    return _asym_np(table)
