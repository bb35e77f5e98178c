"""Dense world-enumeration kernels used by the semantic oracle.

Worlds are the integers ``0 .. 2**n - 1``; atom ``k`` is true in world ``w``
iff bit ``k`` of ``w`` is set.  Degrees never enter these loops directly:
the caller maps every exact degree to its rank in a sorted table, so the
kernels only ever compare and take min/max over small integers.

Set ``POSSLOGIC_NUMBA=0`` to force the pure-numpy path.  When numba is not
importable the numpy path is used regardless.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False


def _flag_enabled(value: str) -> bool:
    return value.strip().lower() not in ("0", "false", "no", "off", "")


USE_NUMBA = HAVE_NUMBA and _flag_enabled(os.environ.get("POSSLOGIC_NUMBA", "1"))


def _njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


# -- numba loops -------------------------------------------------------------

@_njit
def clause_truth_loops(pos_masks, neg_masks, n_atoms):
    m = pos_masks.shape[0]
    n_worlds = 1 << n_atoms
    out = np.zeros((m, n_worlds), dtype=np.bool_)
    for j in range(m):
        pos = pos_masks[j]
        neg = neg_masks[j]
        for w in range(n_worlds):
            out[j, w] = (w & pos) != 0 or (~w & neg) != 0
    return out


@_njit
def necessity_bounds_loops(truth, cost_rank, top_rank):
    m, n_worlds = truth.shape
    out = np.full(n_worlds, top_rank, dtype=np.int64)
    for j in range(m):
        c = cost_rank[j]
        for w in range(n_worlds):
            if not truth[j, w] and c < out[w]:
                out[w] = c
    return out


@_njit
def row_maxima_loops(truth, bound):
    m, n_worlds = truth.shape
    out = np.full(m, -1, dtype=np.int64)
    for j in range(m):
        best = -1
        for w in range(n_worlds):
            if truth[j, w] and bound[w] > best:
                best = bound[w]
        out[j] = best
    return out


# -- numpy fallbacks ---------------------------------------------------------

def clause_truth_numpy(pos_masks, neg_masks, n_atoms):
    worlds = np.arange(1 << n_atoms, dtype=np.int64)[None, :]
    pos = np.asarray(pos_masks, dtype=np.int64)[:, None]
    neg = np.asarray(neg_masks, dtype=np.int64)[:, None]
    return ((worlds & pos) != 0) | ((~worlds & neg) != 0)


def necessity_bounds_numpy(truth, cost_rank, top_rank):
    n_worlds = truth.shape[1]
    if truth.shape[0] == 0:
        return np.full(n_worlds, top_rank, dtype=np.int64)
    costs = np.asarray(cost_rank, dtype=np.int64)[:, None]
    return np.where(truth, np.int64(top_rank), costs).min(axis=0)


def row_maxima_numpy(truth, bound):
    if truth.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    return np.where(truth, np.asarray(bound, dtype=np.int64)[None, :], -1).max(axis=1)


if USE_NUMBA:
    clause_truth = clause_truth_loops
    necessity_bounds = necessity_bounds_loops
    row_maxima = row_maxima_loops
else:
    clause_truth = clause_truth_numpy
    necessity_bounds = necessity_bounds_numpy
    row_maxima = row_maxima_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
