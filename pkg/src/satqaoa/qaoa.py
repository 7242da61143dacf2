"""State-vector QAOA for the MWIS problem Hamiltonian.

The simulated state is ``prod_l exp(-i beta_l H_M) exp(-i gamma_l H_P) |+>^n``
(phase layer first inside each block). ``H_P`` is diagonal, so its layer is a
pointwise phase from the precomputed energy table; the mixer is ``RX(2 beta)``
on every qubit.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConfigurationError, ContractError, NumericalError, SizeLimitError
from .hamiltonian import DEFAULT_RHO, as_penalty, problem_table
from .mwis import MwisInstance, Selection, SolveReport, is_independent, total_weight

MAX_QUBITS = 24
DEFAULT_SHOTS = 4096
DEFAULT_DEPTH = 2
PROBABILITY_DUMP_MAX = 12


@dataclass
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n,):
            raise ContractError(f"{self.n} qubits need {1 << self.n} amplitudes, got {self.amplitudes.shape}")

    def copy(self) -> "StateVector":
        return StateVector(self.n, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real * a.real + a.imag * a.imag

    def probability_dump(self) -> dict[str, float]:
        """Bit string (bit 0 first) -> probability; only for small registers."""
        if self.n > PROBABILITY_DUMP_MAX:
            raise SizeLimitError(f"probability dumps are limited to {PROBABILITY_DUMP_MAX} qubits")
        probs = self.probabilities()
        return {str(Selection.from_index(i, self.n)): float(probs[i]) for i in range(1 << self.n)}


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas) or not self.gammas:
            raise ContractError("need p >= 1 gammas and the same number of betas")

    @property
    def p(self) -> int:
        return len(self.gammas)

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)

    @classmethod
    def from_vector(cls, theta) -> "QaoaParams":
        theta = np.asarray(theta, dtype=np.float64)
        p = theta.shape[0] // 2
        return cls(tuple(theta[:p]), tuple(theta[p:]))


@dataclass
class OptimizerConfig:
    """Settings for the multistart coordinate-descent angle search.

    The search runs in scaled coordinates ``(gamma * sigma, beta)`` where
    ``sigma`` is the standard deviation of the energy table, so the step
    sizes, ``fd_epsilon`` and the seeding box are independent of the weight
    scale. ``grid_points`` is the per-axis resolution of the seeding grid used
    at depth 1; deeper circuits seed uniformly at random in the same box
    (scaled gamma in [0, pi), beta in [0, pi/2)).
    """

    p: int = DEFAULT_DEPTH
    restarts: int = 8
    grid_points: int = 12
    max_iters: int = 200
    step_init: float = 0.25
    step_min: float = 1e-5
    fd_epsilon: float = 1e-4
    seed: int = 0

    def __post_init__(self):
        for name in ("p", "restarts", "grid_points", "max_iters"):
            if int(getattr(self, name)) < 1:
                raise ConfigurationError(f"{name} must be >= 1, got {getattr(self, name)}")
        if not 0 < self.step_min < self.step_init:
            raise ConfigurationError("need 0 < step_min < step_init")
        if not self.fd_epsilon > 0:
            raise ConfigurationError("fd_epsilon must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "OptimizerConfig":
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigurationError(f"unknown optimizer settings {sorted(unknown)}")
        return cls(**d)


@dataclass
class SampleSet:
    shots: int
    counts: dict[str, int] = field(default_factory=dict)

    def most_frequent(self) -> str:
        return min(self.counts, key=lambda s: (-self.counts[s], s))


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise SizeLimitError(f"state vectors support 1..{MAX_QUBITS} qubits, got {n}")


def init_uniform_state(n: int) -> StateVector:
    """``H^{(x)n} |0...0>``: every amplitude equals ``2**(-n/2)``."""
    _check_size(n)
    dim = 1 << n
    return StateVector(n, np.full(dim, 1.0 / math.sqrt(dim), dtype=np.complex128))


def _check_table(state: StateVector, table: np.ndarray) -> np.ndarray:
    table = np.ascontiguousarray(table, dtype=np.float64)
    if table.shape != state.amplitudes.shape:
        raise ContractError(f"energy table has {table.shape[0]} entries, state has {state.amplitudes.shape[0]}")
    return table


def apply_phase_layer(state: StateVector, table, gamma: float) -> StateVector:
    table = _check_table(state, table)
    out = state.copy()
    kernels.ACTIVE.phase(out.amplitudes, table, float(gamma))
    return out


def apply_mixer_layer(state: StateVector, beta: float) -> StateVector:
    out = state.copy()
    kernels.ACTIVE.mixer(out.amplitudes, out.n, float(beta))
    return out


def expectation(state: StateVector, table) -> float:
    table = _check_table(state, table)
    return float(kernels.ACTIVE.expectation(state.amplitudes, table))


class _Simulator:
    """Reusable buffers for repeated evolutions of one instance."""

    def __init__(self, n: int, table: np.ndarray, backend=None):
        _check_size(n)
        self.n = n
        self.table = np.ascontiguousarray(table, dtype=np.float64)
        self.k = kernels.get_backend(backend)
        self.start = init_uniform_state(n).amplitudes
        self.buf = np.empty_like(self.start)
        self.evaluations = 0
        spread = float(self.table.std())
        self.gamma_scale = spread if spread > 0 else 1.0

    def run(self, gammas, betas) -> np.ndarray:
        buf = self.buf
        buf[:] = self.start
        for g, b in zip(gammas, betas):
            self.k.phase(buf, self.table, float(g))
            self.k.mixer(buf, self.n, float(b))
        return buf

    def value(self, theta: np.ndarray) -> float:
        p = theta.shape[0] // 2
        self.run(theta[:p], theta[p:])
        self.evaluations += 1
        val = float(self.k.expectation(self.buf, self.table))
        if not math.isfinite(val):
            raise NumericalError(f"non-finite expectation at angles {theta.tolist()}")
        return val


def evolve(inst: MwisInstance, rho=DEFAULT_RHO, params: QaoaParams | None = None, table=None) -> StateVector:
    """Prepare ``|gamma, beta>`` for ``inst``; pass ``table`` to skip rebuilding it."""
    _check_size(inst.n)
    if params is None:
        raise ContractError("evolve needs QaoaParams")
    if table is None:
        table = problem_table(inst, rho)
    sim = _Simulator(inst.n, table)
    return StateVector(inst.n, sim.run(params.gammas, params.betas).copy())


def sample(state: StateVector, shots: int, seed: int) -> SampleSet:
    """Draw ``shots`` basis states i.i.d. from ``|amplitude|**2`` (PCG64 seeded by ``seed``)."""
    if shots < 1:
        raise ConfigurationError(f"shots must be >= 1, got {shots}")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.choice(probs.shape[0], size=shots, p=probs)
    tally = np.bincount(draws, minlength=probs.shape[0])
    counts = {
        str(Selection.from_index(int(i), state.n)): int(tally[i]) for i in np.flatnonzero(tally)
    }
    return SampleSet(shots, dict(sorted(counts.items())))


def _scaled_value(sim: _Simulator, theta: np.ndarray) -> float:
    p = theta.shape[0] // 2
    physical = theta.copy()
    physical[:p] /= sim.gamma_scale
    return sim.value(physical)


def _seed_points(sim: _Simulator, cfg: OptimizerConfig) -> list[np.ndarray]:
    p = cfg.p
    if p == 1:
        g = cfg.grid_points
        scored = []
        for i in range(g):
            for j in range(g):
                theta = np.array([math.pi * i / g, 0.5 * math.pi * j / g])
                scored.append((_scaled_value(sim, theta), i, j, theta))
        scored.sort(key=lambda t: t[:3])
        return [t[3] for t in scored[: cfg.restarts]]
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    return [
        np.concatenate([rng.uniform(0.0, math.pi, p), rng.uniform(0.0, 0.5 * math.pi, p)])
        for _ in range(cfg.restarts)
    ]


def _descend(sim: _Simulator, theta: np.ndarray, cfg: OptimizerConfig):
    """Coordinate descent in scaled coordinates driven by central-difference slopes.

    Each sweep visits every angle, estimates its slope, and backtracks the
    move from the current step down to ``step_min`` until the value drops.
    A sweep without any accepted move halves the step.
    """
    theta = theta.copy()
    f0 = _scaled_value(sim, theta)
    step = cfg.step_init
    eps = cfg.fd_epsilon
    values = []
    it = 0
    while step >= cfg.step_min and it < cfg.max_iters:
        it += 1
        improved = False
        for c in range(theta.shape[0]):
            probe = theta.copy()
            probe[c] = theta[c] + eps
            up = _scaled_value(sim, probe)
            probe[c] = theta[c] - eps
            down = _scaled_value(sim, probe)
            slope = (up - down) / (2.0 * eps)
            if slope == 0.0:
                continue
            t = step
            while t >= cfg.step_min:
                probe[c] = theta[c] - t * math.copysign(1.0, slope)
                val = _scaled_value(sim, probe)
                if val < f0:
                    theta[c] = probe[c]
                    f0 = val
                    improved = True
                    break
                t *= 0.5
        if not improved:
            step *= 0.5
        values.append(f0)
    return theta, f0, values


def optimize(inst: MwisInstance, rho=DEFAULT_RHO, cfg: OptimizerConfig | None = None, table=None):
    """Minimise ``<H_P>`` over the ``2p`` angles.

    Returns ``(best QaoaParams, trace)`` where ``trace`` lists
    ``(iteration, best expectation so far)`` over all restarts in order.
    """
    cfg = cfg or OptimizerConfig()
    _check_size(inst.n)
    if table is None:
        table = problem_table(inst, rho)
    sim = _Simulator(inst.n, table)
    best_theta, best_val = None, math.inf
    trace = []
    it = 0
    for start in _seed_points(sim, cfg):
        theta, val, values = _descend(sim, start, cfg)
        for v in values:
            it += 1
            trace.append((it, min(best_val, v)))
        if val < best_val:
            best_theta, best_val = theta, val
    best_theta = best_theta.copy()
    best_theta[: cfg.p] /= sim.gamma_scale
    return QaoaParams.from_vector(best_theta), trace


def _repair(inst: MwisInstance, bits: list[int]) -> list[int]:
    """Drop the lighter endpoint of each violated edge (heavier index on ties)."""
    bits = list(bits)
    w = inst.weights
    for i, j in inst.edges:
        if bits[i] and bits[j]:
            drop = j if w[j] < w[i] else i
            bits[drop] = 0
    return bits


def extract_solution(
    inst: MwisInstance,
    rho=DEFAULT_RHO,
    params: QaoaParams | None = None,
    shots: int = DEFAULT_SHOTS,
    seed: int = 0,
    table=None,
) -> SolveReport:
    """Sample the optimised state and read out a feasible schedule.

    The heaviest independent sample wins (lexicographic order on ties). If no
    sample is independent, the most frequent one is repaired.
    """
    t0 = time.perf_counter()
    if params is None:
        raise ContractError("extract_solution needs QaoaParams")
    if table is None:
        table = problem_table(inst, rho)
    state = evolve(inst, rho, params, table=table)
    samples = sample(state, shots, seed)
    feasible = {s: c for s, c in samples.counts.items() if is_independent(inst, Selection.from_string(s))}
    frac = sum(feasible.values()) / shots
    repaired = not feasible
    if feasible:
        best = min(feasible, key=lambda s: (-total_weight(inst, Selection.from_string(s)), s))
        bits = list(Selection.from_string(best).bits)
    else:
        bits = _repair(inst, list(Selection.from_string(samples.most_frequent()).bits))
    sel = Selection(tuple(bits))
    return SolveReport(
        best=sel,
        weight=total_weight(inst, sel),
        feasible=is_independent(inst, sel),
        method="qaoa",
        elapsed=time.perf_counter() - t0,
        metadata={
            "expectation": expectation(state, table),
            "shots": shots,
            "feasible_fraction": frac,
            "repaired": repaired,
            "rho": as_penalty(rho).rho,
            "p": params.p,
            "gammas": list(params.gammas),
            "betas": list(params.betas),
        },
    )


@dataclass
class QaoaRun:
    report: SolveReport
    params: QaoaParams
    trace: list
    state: StateVector


def solve_qaoa(
    inst: MwisInstance,
    rho=DEFAULT_RHO,
    cfg: OptimizerConfig | None = None,
    shots: int = DEFAULT_SHOTS,
    seed: int = 0,
) -> QaoaRun:
    """Optimise angles, then extract a schedule; elapsed time covers both."""
    t0 = time.perf_counter()
    table = problem_table(inst, rho)
    params, trace = optimize(inst, rho, cfg, table=table)
    report = extract_solution(inst, rho, params, shots, seed, table=table)
    report.elapsed = time.perf_counter() - t0
    report.metadata["optimizer_iterations"] = len(trace)
    state = evolve(inst, rho, params, table=table)
    return QaoaRun(report, params, trace, state)
