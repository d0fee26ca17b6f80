"""Classical verifier f and the exhaustive baseline.

``evaluate`` is the ground truth every quantum result is checked against:
it builds the network instance selected by the input bits, runs the
hard-coded protocol (header forwarding or shortest-path routing) and returns
the property checker's verdict.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from typing import Optional

from .errors import ConfigError, ResourceLimitError
from .netmodel import (
    AvoidsWaypoint,
    ControlPlaneNetwork,
    DataPlaneNetwork,
    Disconnected,
    ExceedsHops,
    Network,
    Property,
    ReachWithin,
    count_zeros,
    validate_property,
)

BRUTE_FORCE_LIMIT = 24


class Termination(enum.Enum):
    REACHED_DESTINATION = "reached_destination"
    STUCK = "stuck"
    HOP_BUDGET_EXHAUSTED = "hop_budget_exhausted"


@dataclass(frozen=True)
class PathTrace:
    hops: tuple[str, ...]
    headers: tuple[int, ...]  # headers[i] is the header on arrival at hops[i]
    terminated: Termination


def forward_step(net: DataPlaneNetwork, at: str, h: int) -> Optional[tuple[str, int]]:
    """Apply the first rule at ``at`` matching ``h``; None when the packet is stuck."""
    net.index(at)
    for rule in net.rules:
        if rule.router == at and rule.match.matches(h):
            return rule.next_hop, rule.apply_rewrite(h)
    return None


def simulate_dataplane(
    net: DataPlaneNetwork, src: str, h: int, k: int, dst: Optional[str] = None
) -> PathTrace:
    """Walk at most ``k`` hops from ``src``, stopping early when stuck or at ``dst``."""
    if k < 1:
        raise ValueError("hop budget must be at least 1")
    at, hops, headers = src, [src], [h]
    for _ in range(k):
        if at == dst:
            return PathTrace(tuple(hops), tuple(headers), Termination.REACHED_DESTINATION)
        step = forward_step(net, at, h)
        if step is None:
            return PathTrace(tuple(hops), tuple(headers), Termination.STUCK)
        at, h = step
        hops.append(at)
        headers.append(h)
    end = Termination.REACHED_DESTINATION if at == dst else Termination.HOP_BUDGET_EXHAUSTED
    return PathTrace(tuple(hops), tuple(headers), end)


@dataclass(frozen=True)
class RoutingTable:
    """Next hop per (router, destination); None marks an unreachable pair."""

    next_hops: dict
    distances: dict

    def next_hop(self, at: str, dst: str) -> Optional[str]:
        return self.next_hops[at, dst]

    def path(self, src: str, dst: str) -> Optional[list[str]]:
        if self.distances.get((src, dst)) is None:
            return None
        path = [src]
        while path[-1] != dst:
            path.append(self.next_hops[path[-1], dst])
        return path


def operational_edges(net: ControlPlaneNetwork, fail: int):
    if not 0 <= fail < (1 << net.n):
        raise ConfigError(f"failure instance {fail} does not fit in {net.n} bits")
    return [e for e in net.edges if (fail >> e.id) & 1]


def igp_routes(net: ControlPlaneNetwork, fail: int) -> RoutingTable:
    """Shortest-path routing over the links left up by ``fail``.

    Among neighbours on a shortest path the one with the lowest router
    encoding is chosen, so every destination gets a loop-free tree.
    """
    adj: dict[str, list[tuple[str, int]]] = {r: [] for r in net.routers}
    for e in operational_edges(net, fail):
        adj[e.a].append((e.b, e.weight))
        adj[e.b].append((e.a, e.weight))

    next_hops, distances = {}, {}
    for dst in net.routers:
        dist = {dst: 0}
        heap = [(0, net.index(dst), dst)]
        while heap:
            d, _, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in adj[u]:
                if d + w < dist.get(v, float("inf")):
                    dist[v] = d + w
                    heapq.heappush(heap, (d + w, net.index(v), v))
        for u in net.routers:
            distances[u, dst] = dist.get(u)
            if u == dst:
                next_hops[u, dst] = u
            elif u not in dist:
                next_hops[u, dst] = None
            else:
                best = min(
                    (net.index(v), v) for v, w in adj[u] if v in dist and w + dist[v] == dist[u]
                )
                next_hops[u, dst] = best[1]
    return RoutingTable(next_hops, distances)


def instance_width(net: Network) -> int:
    return net.n


def _over_cutoff(net: ControlPlaneNetwork, prop, x: int) -> bool:
    return prop.max_failures is not None and count_zeros(x, net.n) > prop.max_failures


def evaluate(net: Network, prop: Property, x: int) -> int:
    """The verifier f: 1 iff instance ``x`` is marked by ``prop`` on ``net``."""
    if not 0 <= x < (1 << net.n):
        raise ConfigError(f"instance {x} does not fit in {net.n} bits")
    validate_property(net, prop)

    if isinstance(prop, ReachWithin):
        trace = simulate_dataplane(net, prop.src, x, prop.k, prop.dst)
        return int(trace.terminated is Termination.REACHED_DESTINATION)
    if isinstance(prop, ExceedsHops):
        trace = simulate_dataplane(net, prop.src, x, prop.k, prop.dst)
        return int(trace.terminated is Termination.HOP_BUDGET_EXHAUSTED)

    if _over_cutoff(net, prop, x):
        return 0
    table = igp_routes(net, x)
    if isinstance(prop, Disconnected):
        return int(table.next_hop(prop.src, prop.dst) is None)
    if isinstance(prop, AvoidsWaypoint):
        path = table.path(prop.src, prop.dst)
        return int(path is not None and prop.waypoint not in path)
    raise ConfigError(f"unsupported property {prop!r}")


def brute_force(net: Network, prop: Property, limit: int = BRUTE_FORCE_LIMIT) -> list[int]:
    """All marked instances in ascending order, by exhaustive evaluation."""
    if net.n > limit:
        raise ResourceLimitError(f"{net.n} input bits exceed the brute-force limit of {limit}")
    validate_property(net, prop)
    return [x for x in range(1 << net.n) if evaluate(net, prop, x)]
