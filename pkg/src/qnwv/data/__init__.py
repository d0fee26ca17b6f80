"""Shipped example networks and properties.

The toy data-plane network forwards headers whose bit 0 is clear from A to
B and on to C, so reaching C from A within two hops holds exactly for
headers 00 and 10. The triangle has edges e0=(A,B), e1=(B,C), e2=(A,C).
"""
from importlib import resources

from ..netmodel import parse_network, parse_property


def path(name: str):
    return resources.files(__name__) / name


def read(name: str) -> str:
    return path(name).read_text()


def load(network: str, prop: str):
    """Parse a shipped ``(network, property)`` pair by file name."""
    net = parse_network(read(network))
    return net, parse_property(read(prop), net)


def toy_dataplane():
    return load("toy_dataplane.json", "toy_reach.json")


def triangle():
    return load("triangle.json", "triangle_disconnected.json")


def loop_dataplane():
    return load("loop_dataplane.json", "loop_exceeds.json")


def waypoint():
    return load("waypoint.json", "waypoint_avoids.json")


EXAMPLES = {
    "toy_dataplane": toy_dataplane,
    "triangle": triangle,
    "loop_dataplane": loop_dataplane,
    "waypoint": waypoint,
}
