"""Coupling networks and the discrete curvature operator.

A scalar position lives on each site of an undirected graph.  The discrete
curvature at site i is the sum of differences to its neighbours,

    kappa_i = sum_{j ~ i} (u_j - u_i) = -(L u)_i,

with L = D - A the combinatorial graph Laplacian.  On a chain of n sites
this is the familiar second-difference stencil u[i-1] - 2*u[i] + u[i+1]
with one-sided differences at the two ends.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Network",
    "State",
    "build_path_graph",
    "build_from_pairs",
    "curvature",
    "laplacian_matrix",
    "laplacian_spectral_radius",
]


@dataclass(frozen=True)
class Network:
    """Immutable undirected coupling graph.

    ``pairs`` holds each edge once as (i, j) with i < j, sorted.  ``neighbors``
    and ``degrees`` are derived and stored as tuples so the whole object is
    hashable and safe to share across threads.
    """

    site_count: int
    pairs: tuple[tuple[int, int], ...]
    neighbors: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.site_count < 1:
            raise ValueError("network needs at least one site")
        for i, j in self.pairs:
            if not (0 <= i < self.site_count and 0 <= j < self.site_count):
                raise ValueError(f"pair ({i}, {j}) references a site outside [0, {self.site_count})")
            if i == j:
                raise ValueError(f"self-loop at site {i} is not allowed")
        if len(set(self.pairs)) != len(self.pairs):
            raise ValueError("duplicate pairs are not allowed")


@dataclass(frozen=True)
class State:
    """Scalar position per site at one instant."""

    positions: np.ndarray
    time: float = 0.0

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=float)
        if pos.ndim != 1:
            raise ValueError("positions must be a 1-D vector")
        if not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        if not (np.isfinite(self.time) and self.time >= 0.0):
            raise ValueError("time must be finite and non-negative")
        object.__setattr__(self, "positions", pos)


def _finish(site_count: int, pairs: list[tuple[int, int]]) -> Network:
    nbrs: list[list[int]] = [[] for _ in range(site_count)]
    for i, j in pairs:
        nbrs[i].append(j)
        nbrs[j].append(i)
    neighbors = tuple(tuple(sorted(ns)) for ns in nbrs)
    degrees = tuple(len(ns) for ns in neighbors)
    return Network(
        site_count=site_count,
        pairs=tuple(sorted(pairs)),
        neighbors=neighbors,
        degrees=degrees,
    )


def build_path_graph(n: int) -> Network:
    """Chain of n sites coupled as (0,1), (1,2), ..., (n-2, n-1)."""
    if n < 2:
        raise ValueError("a path graph needs at least 2 sites")
    return _finish(n, [(i, i + 1) for i in range(n - 1)])


def build_from_pairs(n: int, pairs) -> Network:
    """Network on n sites with an explicit list of (i, j) couplings.

    Pairs are unordered; (i, j) and (j, i) denote the same edge.  Out-of-range
    indices, self-loops and duplicates are rejected.
    """
    if n < 1:
        raise ValueError("network needs at least one site")
    canon: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for raw in pairs:
        i, j = int(raw[0]), int(raw[1])
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"pair ({i}, {j}) references a site outside [0, {n})")
        if i == j:
            raise ValueError(f"self-loop at site {i} is not allowed")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"duplicate pair ({key[0]}, {key[1]})")
        seen.add(key)
        canon.append(key)
    return _finish(n, canon)


def curvature(net: Network, state) -> np.ndarray:
    """Discrete curvature kappa = -(L u), acting on the last axis.

    ``state`` may be a State, a vector of length site_count, or an array of
    shape (..., site_count); the operator is applied to every row.  Each
    component is accumulated as -deg_i * u_i plus the neighbour values in
    ascending site order, which on a chain reproduces the second-difference
    stencil bit for bit.
    """
    u = state.positions if isinstance(state, State) else np.asarray(state, dtype=float)
    if u.shape[-1] != net.site_count:
        raise ValueError(
            f"state has {u.shape[-1]} sites, network has {net.site_count}"
        )
    out = np.empty_like(u)
    for i, nbrs in enumerate(net.neighbors):
        acc = u[..., i] * (-float(net.degrees[i]))
        for j in nbrs:
            acc = acc + u[..., j]
        out[..., i] = acc
    return out


def laplacian_matrix(net: Network) -> np.ndarray:
    """Dense combinatorial Laplacian L = D - A."""
    lap = np.zeros((net.site_count, net.site_count))
    for i, j in net.pairs:
        lap[i, j] -= 1.0
        lap[j, i] -= 1.0
        lap[i, i] += 1.0
        lap[j, j] += 1.0
    return lap


@functools.lru_cache(maxsize=64)
def laplacian_spectral_radius(net: Network) -> float:
    """Largest Laplacian eigenvalue, cached per network."""
    if net.site_count == 1:
        return 0.0
    return float(np.linalg.eigvalsh(laplacian_matrix(net))[-1])
