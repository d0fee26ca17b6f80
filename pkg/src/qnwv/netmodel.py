"""Networks, properties and instance encodings.

Instances are plain Python ints. Bit ``i`` of an instance is header bit ``i``
(data plane) or the status of edge ``e_i`` (control plane), and is printed at
position ``i`` from the right, so the string ``"x2x1x0"`` lists edge ``e2``
first. Wildcard patterns and rewrite strings use the same right-to-left
convention.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import ConfigError

KEEP, SET0, SET1 = ".", "0", "1"


def format_bits(x: int, width: int) -> str:
    """Render instance ``x`` as a ``width``-character string, bit 0 rightmost."""
    if width <= 0:
        return ""
    return format(x, f"0{width}b")


def parse_bits(s: str) -> int:
    if not s or any(c not in "01" for c in s):
        raise ConfigError(f"not a bit string: {s!r}")
    return int(s, 2)


def count_zeros(x: int, width: int) -> int:
    return width - bin(x & ((1 << width) - 1)).count("1")


# ---------------------------------------------------------------------------
# Data plane
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WildcardPattern:
    symbols: str

    def __post_init__(self):
        if any(c not in "01*" for c in self.symbols):
            raise ConfigError(f"wildcard pattern {self.symbols!r} has symbols outside {{0,1,*}}")

    @property
    def width(self) -> int:
        return len(self.symbols)

    def literal(self, i: int) -> str:
        """Symbol constraining header bit ``i``."""
        return self.symbols[self.width - 1 - i]

    def cares(self) -> dict[int, int]:
        """Map of constrained bit index -> required value."""
        return {i: int(self.literal(i)) for i in range(self.width) if self.literal(i) != "*"}

    def matches(self, header: int) -> bool:
        return all(((header >> i) & 1) == v for i, v in self.cares().items())


def wildcard_match(pattern: Union[WildcardPattern, str], header: Union[int, str]) -> bool:
    """True iff every non-``*`` symbol of ``pattern`` equals the header bit.

    ``header`` may be a bit string (its length must equal the pattern width)
    or an int below ``2**width``.
    """
    if isinstance(pattern, str):
        pattern = WildcardPattern(pattern)
    if isinstance(header, str):
        if len(header) != pattern.width:
            raise ConfigError(f"header {header!r} and pattern {pattern.symbols!r} differ in width")
        header = parse_bits(header)
    elif not 0 <= header < (1 << pattern.width):
        raise ConfigError(f"header {header} does not fit in {pattern.width} bits")
    return pattern.matches(header)


@dataclass(frozen=True)
class ForwardingRule:
    router: str
    match: WildcardPattern
    next_hop: str
    rewrite: str

    def __post_init__(self):
        if isinstance(self.match, str):
            object.__setattr__(self, "match", WildcardPattern(self.match))
        if any(c not in (KEEP, SET0, SET1) for c in self.rewrite):
            raise ConfigError(f"rewrite {self.rewrite!r} has symbols outside {{.,0,1}}")
        if len(self.rewrite) != self.match.width:
            raise ConfigError(
                f"rule at {self.router}: rewrite {self.rewrite!r} and match "
                f"{self.match.symbols!r} differ in width"
            )

    def rewrite_action(self, i: int) -> str:
        return self.rewrite[len(self.rewrite) - 1 - i]

    def apply_rewrite(self, header: int) -> int:
        for i in range(len(self.rewrite)):
            a = self.rewrite_action(i)
            if a == SET0:
                header &= ~(1 << i)
            elif a == SET1:
                header |= 1 << i
        return header


def _check_routers(routers: Iterable[str]) -> tuple[str, ...]:
    routers = tuple(routers)
    if not routers:
        raise ConfigError("network has no routers")
    if len(set(routers)) != len(routers):
        raise ConfigError("duplicate router names")
    return routers


@dataclass(frozen=True)
class DataPlaneNetwork:
    """Routers with ordered wildcard forwarding rules over ``header_width``-bit headers.

    Routers are encoded densely as ``0..R-1`` in declaration order. Rules are
    kept in declaration order; at each router the first matching rule wins.
    """

    header_width: int
    routers: tuple[str, ...]
    rules: tuple[ForwardingRule, ...]
    source: str
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "routers", _check_routers(self.routers))
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "_index", {r: i for i, r in enumerate(self.routers)})
        if self.header_width < 1:
            raise ConfigError("header_width must be positive")
        if self.source not in self._index:
            raise ConfigError(f"unknown source router {self.source!r}")
        for rule in self.rules:
            for r in (rule.router, rule.next_hop):
                if r not in self._index:
                    raise ConfigError(f"rule references unknown router {r!r}")
            if rule.match.width != self.header_width:
                raise ConfigError(
                    f"pattern {rule.match.symbols!r} has width {rule.match.width}, "
                    f"expected {self.header_width}"
                )

    @property
    def n(self) -> int:
        return self.header_width

    @property
    def location_bits(self) -> int:
        return max(1, math.ceil(math.log2(len(self.routers))))

    def index(self, router: str) -> int:
        try:
            return self._index[router]
        except KeyError:
            raise ConfigError(f"unknown router {router!r}") from None

    def rules_at(self, router: str) -> list[ForwardingRule]:
        return [r for r in self.rules if r.router == router]


# ---------------------------------------------------------------------------
# Control plane
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    id: int
    a: str
    b: str
    weight: int = 1


@dataclass(frozen=True)
class ControlPlaneNetwork:
    """Undirected weighted graph whose edge ``e_i`` is governed by instance bit ``i``.

    A set bit means the link is operational, a clear bit means it failed.
    """

    routers: tuple[str, ...]
    edges: tuple[Edge, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "routers", _check_routers(self.routers))
        object.__setattr__(self, "_index", {r: i for i, r in enumerate(self.routers)})
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate edge index")
        if sorted(ids) != list(range(len(ids))):
            raise ConfigError(f"edge indices must be exactly 0..{len(ids) - 1}")
        seen = set()
        for e in self.edges:
            for r in (e.a, e.b):
                if r not in self._index:
                    raise ConfigError(f"edge e{e.id} references unknown router {r!r}")
            if e.a == e.b:
                raise ConfigError(f"edge e{e.id} is a self-loop")
            if not isinstance(e.weight, int) or e.weight <= 0:
                raise ConfigError(f"edge e{e.id} weight must be a positive integer")
            key = frozenset((e.a, e.b))
            if key in seen:
                raise ConfigError(f"parallel edge between {e.a} and {e.b}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))

    @property
    def n(self) -> int:
        return len(self.edges)

    def index(self, router: str) -> int:
        try:
            return self._index[router]
        except KeyError:
            raise ConfigError(f"unknown router {router!r}") from None


Network = Union[DataPlaneNetwork, ControlPlaneNetwork]


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReachWithin:
    """Marked when the packet reaches ``dst`` from ``src`` within ``k`` hops."""

    src: str
    dst: str
    k: int
    kind = "reach_within"
    plane = "dataplane"


@dataclass(frozen=True)
class ExceedsHops:
    """Marked when the packet is still travelling after ``k`` hops.

    Arriving at ``dst`` (when given) or getting stuck ends the walk unmarked.
    """

    src: str
    k: int
    dst: str | None = None
    kind = "exceeds_hops"
    plane = "dataplane"


@dataclass(frozen=True)
class AvoidsWaypoint:
    """Marked when the routed path from ``src`` reaches ``dst`` without visiting ``waypoint``."""

    src: str
    dst: str
    waypoint: str
    max_failures: int | None = None
    kind = "avoids_waypoint"
    plane = "controlplane"


@dataclass(frozen=True)
class Disconnected:
    """Marked when ``dst`` is unreachable from ``src``."""

    src: str
    dst: str
    max_failures: int | None = None
    kind = "disconnected"
    plane = "controlplane"


Property = Union[ReachWithin, ExceedsHops, AvoidsWaypoint, Disconnected]

_KINDS = {cls.kind: cls for cls in (ReachWithin, ExceedsHops, AvoidsWaypoint, Disconnected)}
_KINDS.update({cls.__name__: cls for cls in (ReachWithin, ExceedsHops, AvoidsWaypoint, Disconnected)})


def validate_property(net: Network, prop: Property) -> None:
    """Raise ConfigError unless ``prop`` is meaningful on ``net``."""
    want = "dataplane" if isinstance(net, DataPlaneNetwork) else "controlplane"
    if prop.plane != want:
        raise ConfigError(f"{prop.kind} is a {prop.plane} property, network is {want}")
    for name in ("src", "dst", "waypoint"):
        r = getattr(prop, name, None)
        if r is not None:
            net.index(r)
    if hasattr(prop, "k") and (not isinstance(prop.k, int) or prop.k < 1):
        raise ConfigError("hop bound k must be a positive integer")
    mf = getattr(prop, "max_failures", None)
    if mf is not None and (not isinstance(mf, int) or mf < 0):
        raise ConfigError("max_failures must be a nonnegative integer")
    if isinstance(prop, AvoidsWaypoint) and prop.waypoint in (prop.src, prop.dst):
        raise ConfigError("waypoint must differ from src and dst")


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("document must be a JSON object")
    return doc


def _require(doc: dict, key: str, typ):
    if key not in doc:
        raise ConfigError(f"missing key {key!r}")
    val = doc[key]
    if typ is int and isinstance(val, bool) or not isinstance(val, typ):
        raise ConfigError(f"key {key!r} has wrong type")
    return val


def parse_dataplane(text: str) -> DataPlaneNetwork:
    doc = _load(text)
    width = _require(doc, "header_width", int)
    routers = _require(doc, "routers", list)
    source = _require(doc, "source", str)
    rules = []
    for i, r in enumerate(doc.get("rules", [])):
        if not isinstance(r, dict):
            raise ConfigError(f"rule {i} is not an object")
        match = _require(r, "match", str)
        rules.append(
            ForwardingRule(
                router=_require(r, "router", str),
                match=WildcardPattern(match),
                next_hop=_require(r, "next_hop", str),
                rewrite=r.get("rewrite", KEEP * len(match)),
            )
        )
    return DataPlaneNetwork(header_width=width, routers=tuple(routers), rules=tuple(rules), source=source)


def parse_controlplane(text: str) -> ControlPlaneNetwork:
    doc = _load(text)
    routers = _require(doc, "routers", list)
    edges = []
    for i, e in enumerate(_require(doc, "edges", list)):
        if not isinstance(e, dict):
            raise ConfigError(f"edge {i} is not an object")
        edges.append(
            Edge(
                id=_require(e, "id", int),
                a=_require(e, "a", str),
                b=_require(e, "b", str),
                weight=e.get("weight", 1),
            )
        )
    return ControlPlaneNetwork(routers=tuple(routers), edges=tuple(edges))


def parse_network(text: str) -> Network:
    """Parse either schema, telling them apart by the presence of ``header_width``."""
    doc = _load(text)
    return parse_dataplane(text) if "header_width" in doc else parse_controlplane(text)


def parse_property(text: str, net: Network | None = None) -> Property:
    """Parse a property document; ``src`` defaults to the data-plane source when omitted."""
    doc = _load(text)
    kind = _require(doc, "kind", str)
    cls = _KINDS.get(kind)
    if cls is None:
        raise ConfigError(f"unknown property kind {kind!r}")
    params = {k: v for k, v in doc.items() if k != "kind"}
    if "src" not in params and isinstance(net, DataPlaneNetwork):
        params["src"] = net.source
    try:
        prop = cls(**params)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {kind}: {exc}") from None
    if net is not None:
        validate_property(net, prop)
    return prop


def dump_dataplane(net: DataPlaneNetwork) -> str:
    return json.dumps(
        {
            "header_width": net.header_width,
            "routers": list(net.routers),
            "source": net.source,
            "rules": [
                {"router": r.router, "match": r.match.symbols, "next_hop": r.next_hop, "rewrite": r.rewrite}
                for r in net.rules
            ],
        },
        indent=2,
    )


def dump_controlplane(net: ControlPlaneNetwork) -> str:
    return json.dumps(
        {
            "routers": list(net.routers),
            "edges": [{"id": e.id, "a": e.a, "b": e.b, "weight": e.weight} for e in net.edges],
        },
        indent=2,
    )


def dump_network(net: Network) -> str:
    return dump_dataplane(net) if isinstance(net, DataPlaneNetwork) else dump_controlplane(net)


def property_to_dict(prop: Property) -> dict:
    d = {"kind": prop.kind}
    d.update({k: v for k, v in prop.__dict__.items() if v is not None})
    return d


def dump_property(prop: Property) -> str:
    return json.dumps(property_to_dict(prop), indent=2)
