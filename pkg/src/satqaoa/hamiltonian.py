"""Diagonal Pauli-Z Hamiltonians for the MWIS program.

A :class:`DiagonalHamiltonian` stores ``constant + sum_k c_k Z_k +
sum_{i>j} c_ij Z_i Z_j``. On a basis state ``y`` each ``Z_k`` evaluates to
``z_k = 1 - 2 y_k``.

The problem Hamiltonian is ``H_O + rho * H_C`` with

* ``H_O = sum_k (w_k / 2) Z_k`` -- minimising it maximises the selected weight;
* ``H_C = -sum_{edges} (w_i + w_j)/4 (Z_i + Z_j - Z_i Z_j)`` -- the AND
  expansion of every conflicting pair with its identity term dropped.

Both drop their identity parts, so only energy differences are meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from . import kernels
from .errors import ConfigurationError, ContractError, SizeLimitError
from .mwis import MwisInstance

TABLE_MAX_QUBITS = 24
DEFAULT_RHO = 2.0


@dataclass(frozen=True)
class PenaltyRate:
    rho: float = DEFAULT_RHO

    def __post_init__(self):
        if not self.rho >= 1.0:
            raise ConfigurationError(f"penalty rate must be >= 1, got {self.rho}")


def as_penalty(rho) -> PenaltyRate:
    return rho if isinstance(rho, PenaltyRate) else PenaltyRate(float(rho))


@dataclass
class DiagonalHamiltonian:
    n: int
    constant: float = 0.0
    linear: dict[int, float] = field(default_factory=dict)
    quadratic: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self):
        for k in self.linear:
            if not 0 <= k < self.n:
                raise ContractError(f"linear term on qubit {k} outside 0..{self.n - 1}")
        quad = {}
        for (i, j), c in self.quadratic.items():
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ContractError(f"invalid quadratic key {(i, j)}")
            key = (max(i, j), min(i, j))
            quad[key] = quad.get(key, 0.0) + c
        self.quadratic = quad

    def add_linear(self, k: int, c: float) -> None:
        self.linear[k] = self.linear.get(k, 0.0) + c

    def add_quadratic(self, i: int, j: int, c: float) -> None:
        key = (max(i, j), min(i, j))
        self.quadratic[key] = self.quadratic.get(key, 0.0) + c

    def scaled(self, factor: float) -> "DiagonalHamiltonian":
        return DiagonalHamiltonian(
            self.n,
            self.constant * factor,
            {k: c * factor for k, c in self.linear.items()},
            {k: c * factor for k, c in self.quadratic.items()},
        )

    def __add__(self, other: "DiagonalHamiltonian") -> "DiagonalHamiltonian":
        if other.n != self.n:
            raise ContractError(f"cannot add Hamiltonians on {self.n} and {other.n} qubits")
        out = DiagonalHamiltonian(self.n, self.constant + other.constant, dict(self.linear), dict(self.quadratic))
        for k, c in other.linear.items():
            out.add_linear(k, c)
        for (i, j), c in other.quadratic.items():
            out.add_quadratic(i, j, c)
        return out

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "constant": self.constant,
            "linear": [[k, c] for k, c in sorted(self.linear.items())],
            "quadratic": [[i, j, c] for (i, j), c in sorted(self.quadratic.items())],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DiagonalHamiltonian":
        return cls(
            int(d["n"]),
            float(d["constant"]),
            {int(k): float(c) for k, c in d["linear"]},
            {(int(i), int(j)): float(c) for i, j, c in d["quadratic"]},
        )


@dataclass(frozen=True)
class MixerHamiltonian:
    """Transverse field ``sum_k X_k`` with unit coefficients."""

    n: int

    @property
    def terms(self) -> list[tuple[int, float]]:
        return [(k, 1.0) for k in range(self.n)]


def boolean_identity_hamiltonian() -> DiagonalHamiltonian:
    """``(I - Z)/2``: eigenvalue equals the bit value."""
    return DiagonalHamiltonian(1, 0.5, {0: -0.5})


def boolean_and_hamiltonian() -> DiagonalHamiltonian:
    """``(I - Z_1 - Z_2 + Z_1 Z_2)/4``: eigenvalue equals ``y1 AND y2``."""
    return DiagonalHamiltonian(2, 0.25, {0: -0.25, 1: -0.25}, {(1, 0): 0.25})


def build_objective(inst: MwisInstance) -> DiagonalHamiltonian:
    return DiagonalHamiltonian(inst.n, 0.0, {k: 0.5 * w for k, w in enumerate(inst.weights)})


def build_constraint(inst: MwisInstance) -> DiagonalHamiltonian:
    h = DiagonalHamiltonian(inst.n)
    w = inst.weights
    for i, j in inst.edges:
        q = 0.25 * (w[i] + w[j])
        h.add_linear(i, -q)
        h.add_linear(j, -q)
        h.add_quadratic(i, j, q)
    return h


def build_problem(inst: MwisInstance, rho=DEFAULT_RHO) -> DiagonalHamiltonian:
    rate = as_penalty(rho)
    return build_objective(inst) + build_constraint(inst).scaled(rate.rho)


def build_mixer(inst: MwisInstance) -> MixerHamiltonian:
    return MixerHamiltonian(inst.n)


def energy(h: DiagonalHamiltonian, y) -> float:
    """Eigenvalue of ``h`` on basis state ``y`` (a 0/1 sequence or bit string)."""
    bits = [int(c) for c in y] if isinstance(y, str) else list(getattr(y, "bits", y))
    if len(bits) != h.n:
        raise ContractError(f"bitstring has {len(bits)} bits, Hamiltonian has {h.n} qubits")
    z = [1 - 2 * b for b in bits]
    e = h.constant
    for k, c in h.linear.items():
        e += c * z[k]
    for (i, j), c in h.quadratic.items():
        e += c * z[i] * z[j]
    return float(e)


def _term_arrays(h: DiagonalHamiltonian):
    lin = sorted(h.linear.items())
    quad = sorted(h.quadratic.items())
    return (
        np.array([k for k, _ in lin], dtype=np.int64),
        np.array([c for _, c in lin], dtype=np.float64),
        np.array([i for (i, _), _ in quad], dtype=np.int64),
        np.array([j for (_, j), _ in quad], dtype=np.int64),
        np.array([c for _, c in quad], dtype=np.float64),
    )


def energy_table(h: DiagonalHamiltonian, backend: str | None = None) -> np.ndarray:
    """All ``2**n`` eigenvalues; entry ``idx`` is the energy of the state whose bit k is qubit k."""
    if h.n > TABLE_MAX_QUBITS:
        raise SizeLimitError(f"energy tables are limited to {TABLE_MAX_QUBITS} qubits, got {h.n}")
    return kernels.get_backend(backend).energy_table(h.n, float(h.constant), *_term_arrays(h))


def problem_table(inst: MwisInstance, rho=DEFAULT_RHO, backend: str | None = None) -> np.ndarray:
    return energy_table(build_problem(inst, rho), backend)

