import random

import networkx as nx
import pytest

from qnwv.classical import (
    Termination,
    brute_force,
    evaluate,
    forward_step,
    igp_routes,
    simulate_dataplane,
)
from qnwv.errors import ConfigError, ResourceLimitError
from qnwv.netmodel import (
    AvoidsWaypoint,
    ControlPlaneNetwork,
    DataPlaneNetwork,
    Disconnected,
    Edge,
    ExceedsHops,
    ForwardingRule,
    parse_bits,
)

from conftest import random_controlplane, random_dataplane


def bits(*strings):
    return [parse_bits(s) for s in strings]


def test_forward_step_toy(toy):
    net, _ = toy
    assert forward_step(net, "A", 0b00) == ("B", 0b00)
    assert forward_step(net, "A", 0b01) is None
    assert forward_step(net, "C", 0b00) is None


def test_zero_rule_network_is_always_stuck():
    net = DataPlaneNetwork(2, ("A", "B"), (), "A")
    assert all(forward_step(net, r, h) is None for r in "AB" for h in range(4))


def test_first_match_wins():
    net = DataPlaneNetwork(
        1, ("A", "B", "C"), (ForwardingRule("A", "*", "B", "."), ForwardingRule("A", "*", "C", ".")), "A"
    )
    assert forward_step(net, "A", 0) == ("B", 0)


def test_simulate_toy(toy):
    net, _ = toy
    t = simulate_dataplane(net, "A", 0b00, 2, "C")
    assert t.hops == ("A", "B", "C") and t.terminated is Termination.REACHED_DESTINATION
    t = simulate_dataplane(net, "A", 0b01, 2, "C")
    assert t.hops == ("A",) and t.terminated is Termination.STUCK


def test_self_loop_exhausts_budget():
    net = DataPlaneNetwork(1, ("A",), (ForwardingRule("A", "*", "A", "."),), "A")
    t = simulate_dataplane(net, "A", 0, 1)
    assert t.hops == ("A", "A") and t.terminated is Termination.HOP_BUDGET_EXHAUSTED


def test_rewrites_followed_in_trace():
    net = DataPlaneNetwork(
        2, ("A", "B"), (ForwardingRule("A", "*0", "B", ".1"), ForwardingRule("B", "*1", "A", "1.")), "A"
    )
    t = simulate_dataplane(net, "A", 0b00, 3)
    assert t.hops == ("A", "B", "A")
    assert t.headers == (0b00, 0b01, 0b11)
    assert t.terminated is Termination.STUCK


def test_trace_length_bound():
    rng = random.Random(3)
    for _ in range(200):
        net, prop = random_dataplane(rng, max_k=4)
        for h in range(1 << net.n):
            t = simulate_dataplane(net, prop.src, h, prop.k, prop.dst)
            assert len(t.hops) <= prop.k + 1
            assert len(t.headers) == len(t.hops)
            if evaluate(net, prop, h):
                assert t.hops[-1] == prop.dst


def test_igp_routes_triangle(triangle):
    net, _ = triangle
    assert igp_routes(net, 0b111).next_hop("A", "C") == "C"
    assert igp_routes(net, 0b011).next_hop("A", "C") == "B"
    assert igp_routes(net, 0b000).next_hop("A", "C") is None


def test_igp_tie_breaks_on_lowest_encoding():
    # A-B-D and A-C-D are equal cost; B has the lower encoding
    net = ControlPlaneNetwork(
        ("A", "B", "C", "D"),
        (Edge(0, "A", "C"), Edge(1, "C", "D"), Edge(2, "A", "B"), Edge(3, "B", "D")),
    )
    assert igp_routes(net, 0b1111).path("A", "D") == ["A", "B", "D"]


def _nx_graph(net, fail):
    g = nx.Graph()
    g.add_nodes_from(net.routers)
    g.add_weighted_edges_from((e.a, e.b, e.weight) for e in net.edges if (fail >> e.id) & 1)
    return g


def test_igp_against_networkx():
    rng = random.Random(11)
    for _ in range(60):
        net, _ = random_controlplane(rng, max_routers=6, max_edges=8)
        for fail in range(1 << net.n):
            table = igp_routes(net, fail)
            g = _nx_graph(net, fail)
            dist = dict(nx.all_pairs_dijkstra_path_length(g))
            for u in net.routers:
                for v in net.routers:
                    assert table.distances[u, v] == dist[u].get(v)
                    path = table.path(u, v)
                    if path is None:
                        assert v not in dist[u]
                        continue
                    cost = sum(g[a][b]["weight"] for a, b in zip(path, path[1:]))
                    assert cost == dist[u][v]
                    assert len(set(path)) == len(path)


def test_evaluate_examples(toy, triangle):
    net, prop = toy
    assert evaluate(net, prop, 0b10) == 1
    tnet, _ = triangle
    assert evaluate(tnet, Disconnected("A", "C", 3), 0b011) == 0
    assert evaluate(tnet, Disconnected("A", "C", 1), 0b000) == 0
    with pytest.raises(ConfigError):
        evaluate(tnet, Disconnected("A", "C", 3), 0b1000)


def test_brute_force_examples(toy, triangle):
    assert brute_force(*toy) == bits("00", "10")
    tnet, _ = triangle
    assert brute_force(tnet, Disconnected("A", "C", 3)) == bits("000", "001", "010")
    assert brute_force(tnet, Disconnected("A", "A", 10)) == []


def test_brute_force_limit(triangle):
    with pytest.raises(ResourceLimitError):
        brute_force(*triangle, limit=2)


def test_loop_detection():
    # B bounces 1*0 headers back to A forever
    from qnwv import data

    net, prop = data.loop_dataplane()
    assert isinstance(prop, ExceedsHops)
    assert brute_force(net, prop) == bits("100", "110")
    t = simulate_dataplane(net, "A", 0b100, 4, "C")
    assert t.hops == ("A", "B", "A", "B", "A")


def test_waypoint_property():
    from qnwv import data

    net, prop = data.waypoint()
    assert isinstance(prop, AvoidsWaypoint)
    sols = brute_force(net, prop)
    for x in range(1 << net.n):
        path = igp_routes(net, x).path("C", "D")
        failures = net.n - bin(x).count("1")
        expected = failures <= 2 and path is not None and "E" not in path
        assert (x in sols) == expected


def _naive_disconnected(net, prop, x):
    if prop.max_failures is not None and net.n - bin(x).count("1") > prop.max_failures:
        return 0
    return int(not nx.has_path(_nx_graph(net, x), prop.src, prop.dst))


def test_brute_force_matches_naive_reevaluation():
    rng = random.Random(5)
    for _ in range(40):
        net, prop = random_controlplane(rng, max_routers=5, max_edges=7)
        expected = [x for x in range(1 << net.n) if _naive_disconnected(net, prop, x)]
        assert brute_force(net, prop) == expected


def _naive_reach(net, prop, h):
    # free-running walk: reached iff dst appears among the first k+1 positions
    at = prop.src
    for _ in range(prop.k + 1):
        if at == prop.dst:
            return 1
        rule = next((r for r in net.rules if r.router == at and r.match.matches(h)), None)
        if rule is None:
            return 0
        at, h = rule.next_hop, rule.apply_rewrite(h)
    return 0


def test_dataplane_brute_force_matches_naive():
    rng = random.Random(9)
    for _ in range(200):
        net, prop = random_dataplane(rng, max_bits=4, max_routers=4, max_rules=6, max_k=4)
        assert brute_force(net, prop) == [h for h in range(1 << net.n) if _naive_reach(net, prop, h)]


def test_disconnection_is_monotone():
    rng = random.Random(21)
    routers = tuple(f"v{i}" for i in range(6))
    pairs = [(a, b) for i, a in enumerate(routers) for b in routers[i + 1 :]]
    rng.shuffle(pairs)
    net = ControlPlaneNetwork(routers, tuple(Edge(i, a, b, rng.randint(1, 4)) for i, (a, b) in enumerate(pairs[:10])))
    prop = Disconnected("v0", "v5")
    marked = set(brute_force(net, prop))
    for x in marked:
        for i in range(net.n):
            assert x & ~(1 << i) in marked


def test_evaluate_is_deterministic(triangle):
    net, prop = triangle
    assert [evaluate(net, prop, x) for x in range(8)] == [evaluate(net, prop, x) for x in range(8)]
