"""Independent reference computations used only by the tests.

None of these touch the package's kernels or energy tables: Hamiltonians are
rebuilt as dense matrices from the raw gate matrices and evolved with
``scipy.linalg.expm``.
"""
import itertools
import math

import numpy as np
from scipy.linalg import expm
from scipy.stats import qmc

from satqaoa import gates


def dense_diagonal(h):
    """Dense matrix of a DiagonalHamiltonian built from Z/I Kronecker products."""
    dim = 1 << h.n
    out = h.constant * np.eye(dim, dtype=complex)
    for k, c in h.linear.items():
        out += c * gates.on_qubit(gates.Z, k, h.n)
    for (i, j), c in h.quadratic.items():
        out += c * gates.on_qubit(gates.Z, i, h.n) @ gates.on_qubit(gates.Z, j, h.n)
    return out


def dense_mixer(n):
    return sum(gates.on_qubit(gates.X, k, n) for k in range(n))


def dense_plus_state(n):
    psi = np.ones(1, dtype=complex)
    for _ in range(n):
        psi = np.kron(psi, gates.H @ gates.KET0)
    return psi


def dense_evolve(h, gammas, betas):
    hp = dense_diagonal(h)
    hm = dense_mixer(h.n)
    psi = dense_plus_state(h.n)
    for g, b in zip(gammas, betas):
        psi = expm(-1j * g * hp) @ psi
        psi = expm(-1j * b * hm) @ psi
    return psi


def dense_expectation(h, gammas, betas):
    psi = dense_evolve(h, gammas, betas)
    return float(np.real(np.conj(psi) @ dense_diagonal(h) @ psi))


def polynomial_energy(h, bits):
    """Term-by-term evaluation with explicit eigenvalue lookups."""
    eig = {0: 1.0, 1: -1.0}
    total = h.constant
    for k, c in h.linear.items():
        total += c * eig[bits[k]]
    for (i, j), c in h.quadratic.items():
        total += c * eig[bits[i]] * eig[bits[j]]
    return total


def all_bitstrings(n):
    return [tuple(b) for b in itertools.product((0, 1), repeat=n)]


def brute_mwis_weight(weights, edges):
    best = 0.0
    for bits in all_bitstrings(len(weights)):
        if any(bits[i] and bits[j] for i, j in edges):
            continue
        best = max(best, sum(w for w, b in zip(weights, bits) if b))
    return best


def monte_carlo_overlap(a, b, samples=10**7, seed=0, chunk=1 << 20):
    """Intersection area by sampling uniformly over the overlap of bounding boxes.

    Points come from a scrambled Sobol sequence (randomised quasi-Monte
    Carlo); ``samples`` is rounded up to a power of two.
    """
    x0 = max(a.center_x - a.radius, b.center_x - b.radius)
    x1 = min(a.center_x + a.radius, b.center_x + b.radius)
    y0 = max(a.center_y - a.radius, b.center_y - b.radius)
    y1 = min(a.center_y + a.radius, b.center_y + b.radius)
    if x1 <= x0 or y1 <= y0:
        return 0.0
    total = 1 << math.ceil(math.log2(samples))
    sob = qmc.Sobol(d=2, scramble=True, seed=seed)
    hits = 0
    for _ in range(total // chunk if total >= chunk else 1):
        pts = sob.random(min(chunk, total))
        x = x0 + (x1 - x0) * pts[:, 0]
        y = y0 + (y1 - y0) * pts[:, 1]
        inside = ((x - a.center_x) ** 2 + (y - a.center_y) ** 2 <= a.radius**2) & (
            (x - b.center_x) ** 2 + (y - b.center_y) ** 2 <= b.radius**2
        )
        hits += int(inside.sum())
    return (x1 - x0) * (y1 - y0) * hits / total


def grid_scan_single_qubit(weight=1.0, points=200):
    """Min of <H_P> for one node at depth 1 over a points x points (gamma, beta) grid."""
    hp = 0.5 * weight * gates.Z
    plus = gates.H @ gates.KET0
    best = math.inf
    for g in np.linspace(0, 2 * math.pi, points, endpoint=False):
        phased = expm(-1j * g * hp) @ plus
        for b in np.linspace(0, math.pi, points, endpoint=False):
            psi = expm(-1j * b * gates.X) @ phased
            best = min(best, float(np.real(np.conj(psi) @ hp @ psi)))
    return best


def random_graph(rng, n, density):
    edges = [(i, j) for i in range(n) for j in range(i) if rng.random() < density]
    return edges
