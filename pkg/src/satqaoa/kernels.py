"""Hot loops over 2**n amplitudes / bit masks.

Every kernel exists twice: ``*_numba`` (compiled loops) and ``*_numpy``
(vectorised). ``BACKEND`` names the pair the rest of the package dispatches to;
:func:`get_backend` returns either pair explicitly.

Index convention: bit ``k`` of a basis index is qubit/node ``k`` (bit 0 least
significant). The MWIS enumeration kernels are encoding-agnostic: they receive
conflict masks already expressed in whatever encoding the caller enumerates.
"""
from types import SimpleNamespace

import numpy as np

from ._accel import HAVE_NUMBA, USE_NUMBA, njit

_CHUNK = 1 << 20


# ---------------------------------------------------------------- numpy path


def energy_table_numpy(n, constant, lin_idx, lin_coef, quad_i, quad_j, quad_coef):
    dim = 1 << n
    idx = np.arange(dim, dtype=np.int64)
    table = np.full(dim, constant, dtype=np.float64)
    for k, c in zip(lin_idx, lin_coef):
        z = 1.0 - 2.0 * ((idx >> k) & 1)
        table += c * z
    for i, j, c in zip(quad_i, quad_j, quad_coef):
        z = 1.0 - 2.0 * (((idx >> i) ^ (idx >> j)) & 1)
        table += c * z
    return table


def phase_numpy(amp, table, gamma):
    amp *= np.exp(-1j * gamma * table)


def mixer_numpy(amp, n, beta):
    c = np.cos(beta)
    ms = -1j * np.sin(beta)
    dim = amp.shape[0]
    for k in range(n):
        view = amp.reshape(dim >> (k + 1), 2, 1 << k)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        new0 = c * a0 + ms * a1
        view[:, 1, :] = ms * a0 + c * a1
        view[:, 0, :] = new0


def expectation_numpy(amp, table):
    probs = amp.real * amp.real + amp.imag * amp.imag
    return float(np.dot(probs, table))


def _mask_scores_numpy(start, stop, n, weights, conflicts):
    m = np.arange(start, stop, dtype=np.int64)
    w = np.zeros(m.shape[0], dtype=np.float64)
    ok = np.ones(m.shape[0], dtype=bool)
    for k in range(n):
        on = ((m >> k) & 1).astype(bool)
        ok &= ~(on & ((m & conflicts[k]) != 0))
        w += np.where(on, weights[k], 0.0)
    return m, w, ok


def mwis_enumerate_numpy(n, weights, conflicts, tol):
    """Return (first mask, max weight) over all independent masks of ``n`` bits.

    ``conflicts[k]`` holds the neighbour bits of bit ``k``. The winner is the
    smallest mask whose weight is within ``tol`` of the maximum.
    """
    dim = 1 << n
    best = -np.inf
    for start in range(0, dim, _CHUNK):
        _, w, ok = _mask_scores_numpy(start, min(dim, start + _CHUNK), n, weights, conflicts)
        if ok.any():
            best = max(best, float(w[ok].max()))
    for start in range(0, dim, _CHUNK):
        m, w, ok = _mask_scores_numpy(start, min(dim, start + _CHUNK), n, weights, conflicts)
        hit = np.flatnonzero(ok & (w >= best - tol))
        if hit.size:
            return int(m[hit[0]]), best
    raise AssertionError("empty mask is always independent")


# ---------------------------------------------------------------- numba path


@njit
def energy_table_numba(n, constant, lin_idx, lin_coef, quad_i, quad_j, quad_coef):
    dim = 1 << n
    table = np.empty(dim, dtype=np.float64)
    for idx in range(dim):
        e = constant
        for t in range(lin_idx.shape[0]):
            e += lin_coef[t] * (1.0 - 2.0 * ((idx >> lin_idx[t]) & 1))
        for t in range(quad_i.shape[0]):
            e += quad_coef[t] * (1.0 - 2.0 * (((idx >> quad_i[t]) ^ (idx >> quad_j[t])) & 1))
        table[idx] = e
    return table


@njit
def phase_numba(amp, table, gamma):
    for idx in range(amp.shape[0]):
        amp[idx] *= np.exp(-1j * gamma * table[idx])


@njit
def mixer_numba(amp, n, beta):
    c = np.cos(beta)
    ms = -1j * np.sin(beta)
    dim = amp.shape[0]
    for k in range(n):
        stride = 1 << k
        for base in range(0, dim, 2 * stride):
            for off in range(stride):
                i0 = base + off
                i1 = i0 + stride
                a0 = amp[i0]
                a1 = amp[i1]
                amp[i0] = c * a0 + ms * a1
                amp[i1] = ms * a0 + c * a1


@njit
def expectation_numba(amp, table):
    acc = 0.0
    for idx in range(amp.shape[0]):
        a = amp[idx]
        acc += (a.real * a.real + a.imag * a.imag) * table[idx]
    return acc


@njit
def _mask_score_numba(m, n, weights, conflicts):
    w = 0.0
    for k in range(n):
        if (m >> k) & 1:
            if m & conflicts[k]:
                return -1.0, False
            w += weights[k]
    return w, True


@njit
def _mwis_enumerate_numba(n, weights, conflicts, tol):
    dim = 1 << n
    best = -np.inf
    for m in range(dim):
        w, ok = _mask_score_numba(m, n, weights, conflicts)
        if ok and w > best:
            best = w
    for m in range(dim):
        w, ok = _mask_score_numba(m, n, weights, conflicts)
        if ok and w >= best - tol:
            return m, best
    return -1, best


def mwis_enumerate_numba(n, weights, conflicts, tol):
    m, best = _mwis_enumerate_numba(n, weights, conflicts, tol)
    return int(m), float(best)


# ---------------------------------------------------------------- dispatch

_NUMPY = SimpleNamespace(
    name="numpy",
    energy_table=energy_table_numpy,
    phase=phase_numpy,
    mixer=mixer_numpy,
    expectation=expectation_numpy,
    mwis_enumerate=mwis_enumerate_numpy,
)
_NUMBA = SimpleNamespace(
    name="numba",
    energy_table=energy_table_numba,
    phase=phase_numba,
    mixer=mixer_numba,
    expectation=expectation_numba,
    mwis_enumerate=mwis_enumerate_numba,
)

AVAILABLE = ("numpy", "numba") if HAVE_NUMBA else ("numpy",)


def get_backend(name=None):
    """Kernel namespace for ``name`` ("numpy" / "numba"); default is the active one."""
    if name is None:
        return ACTIVE
    if name == "numpy":
        return _NUMPY
    if name == "numba":
        if not HAVE_NUMBA:
            raise ImportError("numba is not installed")
        return _NUMBA
    raise ValueError(f"unknown backend {name!r}")


ACTIVE = _NUMBA if USE_NUMBA else _NUMPY
BACKEND = ACTIVE.name
