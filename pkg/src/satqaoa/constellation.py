"""Satellite footprints and the overlap conflict graph.

Footprints are planar discs (kilometres). Two footprints conflict when the
area they share, divided by the area of the smaller disc, is strictly greater
than the policy threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class Footprint:
    id: int
    center_x: float
    center_y: float
    radius: float
    weight: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigurationError(f"footprint {self.id}: radius must be > 0, got {self.radius}")
        if not self.weight > 0:
            raise ConfigurationError(f"footprint {self.id}: weight must be > 0, got {self.weight}")

    @property
    def area(self) -> float:
        return math.pi * self.radius * self.radius

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "x": self.center_x,
            "y": self.center_y,
            "radius": self.radius,
            "weight": self.weight,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Footprint":
        try:
            return cls(int(d["id"]), float(d["x"]), float(d["y"]), float(d["radius"]), float(d["weight"]))
        except KeyError as exc:
            raise ConfigurationError(f"footprint record missing field {exc}") from None


@dataclass(frozen=True)
class OverlapPolicy:
    threshold: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigurationError(f"threshold must lie in [0, 1], got {self.threshold}")


@dataclass(frozen=True)
class ConflictGraph:
    """Node weights plus undirected edges stored once as ``(i, j)`` with ``i > j``."""

    n: int
    weights: tuple[float, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ConfigurationError("a conflict graph needs at least one node")
        if len(self.weights) != self.n:
            raise ConfigurationError(f"expected {self.n} weights, got {len(self.weights)}")
        if any(not w > 0 for w in self.weights):
            raise ConfigurationError("node weights must be positive")
        canon = set()
        for i, j in self.edges:
            if i == j:
                raise ConfigurationError(f"self-loop on node {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ConfigurationError(f"edge ({i}, {j}) references a missing node")
            canon.add((max(i, j), min(i, j)))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2.0 * len(self.edges) / (self.n * (self.n - 1))

    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def to_dict(self) -> dict:
        return {"n": self.n, "weights": list(self.weights), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, d: dict) -> "ConflictGraph":
        return cls(int(d["n"]), tuple(d["weights"]), tuple(tuple(e) for e in d["edges"]))


def overlap_area(a: Footprint, b: Footprint) -> float:
    """Exact intersection area of two discs (two circular segments)."""
    # canonical argument order makes the result bit-for-bit symmetric
    if (a.radius, a.center_x, a.center_y) > (b.radius, b.center_x, b.center_y):
        a, b = b, a
    r1, r2 = a.radius, b.radius
    d = math.hypot(b.center_x - a.center_x, b.center_y - a.center_y)
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r2 - r1):
        return math.pi * min(r1, r2) ** 2
    c1 = max(-1.0, min(1.0, (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)))
    c2 = max(-1.0, min(1.0, (d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)))
    kite = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)
    area = r1 * r1 * math.acos(c1) + r2 * r2 * math.acos(c2) - 0.5 * math.sqrt(max(kite, 0.0))
    return min(max(area, 0.0), math.pi * min(r1, r2) ** 2)


def overlap_fraction(a: Footprint, b: Footprint) -> float:
    return overlap_area(a, b) / min(a.area, b.area)


def _check_ids(footprints: Sequence[Footprint]) -> list[Footprint]:
    if not footprints:
        raise ConfigurationError("at least one footprint is required")
    ordered = sorted(footprints, key=lambda f: f.id)
    ids = [f.id for f in ordered]
    if len(set(ids)) != len(ids):
        raise ConfigurationError(f"duplicate footprint ids in {ids}")
    if ids != list(range(len(ids))):
        raise ConfigurationError("footprint ids must be contiguous from 0")
    return ordered


def build_conflict_graph(footprints: Iterable[Footprint], policy: OverlapPolicy) -> ConflictGraph:
    fps = _check_ids(list(footprints))
    edges = [
        (b.id, a.id)
        for a, b in combinations(fps, 2)
        if overlap_fraction(a, b) > policy.threshold
    ]
    return ConflictGraph(len(fps), tuple(f.weight for f in fps), tuple(edges))


def random_constellation(
    seed: int,
    n: int,
    region: float = 10.0,
    radius_range: tuple[float, float] = (1.0, 2.0),
    weight_range: tuple[float, float] = (1.0, 5.0),
) -> list[Footprint]:
    """Draw ``n`` footprints with NumPy's PCG64 bit generator seeded by ``seed``.

    Draw order is fixed: all x centres, all y centres, all radii, then all
    weights, each from ``Generator.uniform`` over ``[lo, hi)``. Centres lie in
    ``[0, region)``.
    """
    if n < 1:
        raise ConfigurationError(f"n must be >= 1, got {n}")
    if not region > 0:
        raise ConfigurationError(f"region must be positive, got {region}")
    for label, (lo, hi) in (("radius_range", radius_range), ("weight_range", weight_range)):
        if not (lo > 0 and hi >= lo):
            raise ConfigurationError(f"{label} must satisfy 0 < min <= max, got {(lo, hi)}")
    rng = np.random.Generator(np.random.PCG64(seed))
    xs = rng.uniform(0.0, region, n)
    ys = rng.uniform(0.0, region, n)
    rs = rng.uniform(radius_range[0], radius_range[1], n)
    ws = rng.uniform(weight_range[0], weight_range[1], n)
    return [Footprint(k, float(xs[k]), float(ys[k]), float(rs[k]), float(ws[k])) for k in range(n)]


def instance_to_dict(footprints: Sequence[Footprint], policy: OverlapPolicy) -> dict:
    return {
        "footprints": [f.to_dict() for f in sorted(footprints, key=lambda f: f.id)],
        "threshold": policy.threshold,
    }


def instance_from_dict(d: dict) -> tuple[list[Footprint], OverlapPolicy]:
    if "footprints" not in d:
        raise ConfigurationError("instance file has no 'footprints' list")
    fps = [Footprint.from_dict(rec) for rec in d["footprints"]]
    _check_ids(fps)
    return fps, OverlapPolicy(float(d.get("threshold", 0.0)))
