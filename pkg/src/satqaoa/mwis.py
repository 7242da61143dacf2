"""Maximum-weight independent set: feasibility, objective, classical solvers."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from . import kernels
from .constellation import ConflictGraph
from .errors import ContractError, SizeLimitError

EXACT_MAX_NODES = 24


@dataclass(frozen=True)
class MwisInstance:
    graph: ConflictGraph

    @classmethod
    def from_edges(cls, weights: Sequence[float], edges: Sequence[tuple[int, int]] = ()) -> "MwisInstance":
        return cls(ConflictGraph(len(weights), tuple(weights), tuple(edges)))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def weights(self) -> tuple[float, ...]:
        return self.graph.weights

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self.graph.edges

    @property
    def total(self) -> float:
        return float(sum(self.graph.weights))


@dataclass(frozen=True)
class Selection:
    """Indicator bits; ``bits[k] == 1`` means node ``k`` is scheduled.

    The string form lists bit 0 first, so ``"100"`` selects node 0 only.
    """

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ContractError(f"selection bits must be 0/1, got {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    @classmethod
    def from_string(cls, s: str) -> "Selection":
        return cls(tuple(int(c) for c in s))

    @classmethod
    def from_index(cls, index: int, n: int) -> "Selection":
        """Basis-state index to bits (bit k of the index is node k)."""
        return cls(tuple((index >> k) & 1 for k in range(n)))

    def to_index(self) -> int:
        return sum(b << k for k, b in enumerate(self.bits))

    @property
    def chosen(self) -> list[int]:
        return [k for k, b in enumerate(self.bits) if b]


@dataclass
class SolveReport:
    best: Selection
    weight: float
    feasible: bool
    method: str
    elapsed: float = 0.0
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_timing: bool = True) -> dict:
        return {
            "method": self.method,
            "bits": str(self.best),
            "weight": self.weight,
            "feasible": self.feasible,
            "elapsed_s": self.elapsed if include_timing else None,
            "metadata": self.metadata,
        }


def _bits(inst: MwisInstance, sel) -> tuple[int, ...]:
    bits = sel.bits if isinstance(sel, Selection) else Selection(tuple(sel)).bits
    if len(bits) != inst.n:
        raise ContractError(f"selection has {len(bits)} bits, instance has {inst.n} nodes")
    return bits


def is_independent(inst: MwisInstance, sel) -> bool:
    """True iff no edge has both endpoints selected.

    Pairs without an edge cannot violate I_i + I_j + E_ij <= 2, so checking
    the edge list is equivalent to checking every pair.
    """
    bits = _bits(inst, sel)
    return not any(bits[i] and bits[j] for i, j in inst.edges)


def total_weight(inst: MwisInstance, sel) -> float:
    bits = _bits(inst, sel)
    acc = 0.0
    for w, b in zip(inst.weights, bits):
        if b:
            acc += w
    return acc


def violation_count_weighted(inst: MwisInstance, sel) -> float:
    """Sum of ``w_i + w_j`` over edges whose endpoints are both selected."""
    bits = _bits(inst, sel)
    w = inst.weights
    return float(sum(w[i] + w[j] for i, j in inst.edges if bits[i] and bits[j]))


def _report(inst: MwisInstance, bits, method: str, t0: float, **metadata) -> SolveReport:
    sel = Selection(tuple(bits))
    return SolveReport(
        best=sel,
        weight=total_weight(inst, sel),
        feasible=is_independent(inst, sel),
        method=method,
        elapsed=time.perf_counter() - t0,
        metadata=metadata,
    )


def solve_exact(inst: MwisInstance, backend: str | None = None) -> SolveReport:
    """Enumerate all ``2**n`` selections and return a maximum-weight independent one.

    Ties (weights within ``1e-12 * max(1, W)``) go to the lexicographically
    smallest bit string with node 0 as the most significant character.
    """
    n = inst.n
    if n > EXACT_MAX_NODES:
        raise SizeLimitError(f"exact solver is limited to {EXACT_MAX_NODES} nodes, got {n}")
    t0 = time.perf_counter()
    # enumerate in lexicographic order: node k lives at mask bit n-1-k
    weights = np.array(inst.weights[::-1], dtype=np.float64)
    conflicts = np.zeros(n, dtype=np.int64)
    for i, j in inst.edges:
        bi, bj = n - 1 - i, n - 1 - j
        conflicts[bi] |= 1 << bj
        conflicts[bj] |= 1 << bi
    tol = 1e-12 * max(1.0, inst.total)
    mask, _ = kernels.get_backend(backend).mwis_enumerate(n, weights, conflicts, tol)
    bits = [(mask >> (n - 1 - k)) & 1 for k in range(n)]
    return _report(inst, bits, "exact", t0, enumerated=1 << n)


def solve_greedy(inst: MwisInstance) -> SolveReport:
    """Pick the remaining node with the largest ``w / (residual degree + 1)``.

    The chosen node and its neighbours leave the graph; repeat until empty.
    Ties go to the smaller index.
    """
    t0 = time.perf_counter()
    adj = inst.graph.neighbors()
    remaining = set(range(inst.n))
    bits = [0] * inst.n
    order = []
    while remaining:
        best = max(
            sorted(remaining),
            key=lambda k: (inst.weights[k] / (len(adj[k] & remaining) + 1), -k),
        )
        bits[best] = 1
        order.append(best)
        remaining -= adj[best] | {best}
    return _report(inst, bits, "greedy", t0, pick_order=order)
