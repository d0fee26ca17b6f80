"""Phase oracles for the verifier f.

Two backends produce the same action ``|x>|0..0> -> (-1)^f(x) |x>|0..0>``:

* ``diagonal`` sweeps f classically once and stores the sign per input.
* ``gate`` compiles the network and property into X/Z-family gates with
  ancilla registers, marks with a single (multi-)controlled Z and then runs
  the compute section backwards so every ancilla returns to ``|0>``.

The input register is always qubits ``0..n-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

import numpy as np

from .circuit import CX, MAX_QUBITS, Circuit, Gate, MCX, MCZ, Reset, StateVector, X, Z, run
from .classical import BRUTE_FORCE_LIMIT, brute_force
from .errors import ConfigError, ResourceLimitError
from .netmodel import (
    SET0,
    SET1,
    ControlPlaneNetwork,
    DataPlaneNetwork,
    Disconnected,
    ExceedsHops,
    Network,
    Property,
    ReachWithin,
    validate_property,
)

DIAGONAL, GATE = "diagonal", "gate"


@dataclass(frozen=True)
class CompiledOracle:
    backend: str
    n: int
    width: int
    phases: Optional[np.ndarray] = None
    circuit: Optional[Circuit] = None
    excluded: frozenset = field(default_factory=frozenset)

    @property
    def input_register(self) -> list[int]:
        return list(range(self.n))

    @property
    def ancilla_register(self) -> list[int]:
        return list(range(self.n, self.width))

    def apply(self, s: StateVector) -> StateVector:
        """Apply the oracle to ``s`` in place."""
        if self.backend == DIAGONAL:
            s.amplitudes.reshape(-1, 1 << self.n)[:] *= self.phases
            return s
        if s.width != self.width:
            raise ConfigError(f"oracle acts on {self.width} qubits, state has {s.width}")
        return run(self.circuit, s, inplace=True)

    def phase_of(self, x: int) -> int:
        """Sign the oracle puts on basis input ``x`` (ancillas starting in ``|0>``)."""
        if self.backend == DIAGONAL:
            return int(self.phases[x])
        s = run(self.circuit, StateVector.basis(self.width, x), inplace=True)
        amp = s.amplitudes[x]
        if abs(abs(amp) - 1) > 1e-9:
            raise RuntimeError(f"gate oracle does not act as a phase on input {x}")
        return 1 if amp.real > 0 else -1

    def phase_table(self) -> np.ndarray:
        if self.backend == DIAGONAL:
            return self.phases.copy()
        return np.array([self.phase_of(x) for x in range(1 << self.n)])

    def marked(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.phase_table() < 0)]


def _check_exclusions(n: int, seen: Iterable[int]) -> frozenset:
    seen = frozenset(int(x) for x in seen)
    if any(not 0 <= x < (1 << n) for x in seen):
        raise ConfigError(f"excluded instance does not fit in {n} bits")
    return seen


def diagonal_oracle(n: int, marked: Iterable[int]) -> CompiledOracle:
    """Diagonal oracle flipping the sign of exactly ``marked``."""
    phases = np.ones(1 << n)
    marked = list(marked)
    if marked:
        phases[marked] = -1
    return CompiledOracle(DIAGONAL, n, n, phases=phases)


def compile_diagonal(
    net: Network, prop: Property, exclusions: Iterable[int] = (), limit: int = BRUTE_FORCE_LIMIT
) -> CompiledOracle:
    if net.n > limit:
        raise ResourceLimitError(f"{net.n} input bits exceed the diagonal-oracle limit of {limit}")
    seen = _check_exclusions(net.n, exclusions)
    oracle = diagonal_oracle(net.n, (x for x in brute_force(net, prop, limit) if x not in seen))
    return replace(oracle, excluded=seen)


def add_exclusion(o: CompiledOracle, seen: Iterable[int]) -> CompiledOracle:
    """Return an oracle that no longer marks any instance in ``seen``."""
    seen = _check_exclusions(o.n, seen)
    if o.backend == DIAGONAL:
        phases = o.phases.copy()
        if seen:
            phases[sorted(seen)] = 1
        return replace(o, phases=phases, excluded=o.excluded | seen)

    circuit = Circuit(o.width, list(o.circuit.gates))
    inputs = o.input_register
    for x in sorted(seen - o.excluded):
        # only a currently marked input needs its sign flipped back
        if o.phase_of(x) > 0:
            continue
        zeros = [inputs[i] for i in range(o.n) if not (x >> i) & 1]
        circuit.extend(X(q) for q in zeros)
        circuit.append(MCZ(inputs[:-1], inputs[-1]))
        circuit.extend(X(q) for q in zeros)
    return replace(o, circuit=circuit, excluded=o.excluded | seen)


class _Builder:
    """Gate list plus qubit allocator for the gate-level compilers."""

    def __init__(self, n: int):
        self.width = n
        self.gates: list[Gate] = []

    def new(self) -> int:
        self.width += 1
        return self.width - 1

    def mcx(self, pos, neg, target, out=None):
        out = self.gates if out is None else out
        out.extend(X(q) for q in neg)
        out.append(MCX(list(pos) + list(neg), target))
        out.extend(X(q) for q in neg)

    def mcz(self, pos, neg, out=None):
        out = self.gates if out is None else out
        qubits = list(pos) + list(neg)
        out.extend(X(q) for q in neg)
        out.append(MCZ(qubits[:-1], qubits[-1]))
        out.extend(X(q) for q in neg)

    def finish(self, n: int, compute: list[Gate], mark: list[Gate]) -> CompiledOracle:
        if self.width > MAX_QUBITS:
            raise ResourceLimitError(
                f"gate-level oracle needs {self.width} qubits, simulator ceiling is {MAX_QUBITS}"
            )
        c = Circuit(self.width, compute + mark)
        c.extend(Circuit(self.width, compute).inverse().gates)
        return CompiledOracle(GATE, n, self.width, circuit=c)


def _bits(value: int, width: int) -> list[int]:
    return [(value >> j) & 1 for j in range(width)]


def compile_gate_dataplane(
    net: DataPlaneNetwork, prop: ReachWithin | ExceedsHops, midcircuit_reset: bool = True
) -> CompiledOracle:
    """Gate-level oracle for hop-bounded reachability or hop-budget overrun.

    Each hop allocates a fresh location register (and fresh qubits for any
    header bit some rule rewrites) and fills it from the previous one under
    one first-match flag per rule. The destination is absorbing, so the
    final location equals ``dst`` exactly when the walk reached it within
    ``k`` hops. A stuck packet stays stuck, so the walk is still travelling
    after ``k`` hops iff some rule fired on hop ``k`` and it did not land on
    ``dst``. With ``midcircuit_reset`` the rule flags are uncomputed and
    reset after every hop and the same flag qubits serve all hops.
    """
    if not isinstance(net, DataPlaneNetwork) or not isinstance(prop, (ReachWithin, ExceedsHops)):
        raise ConfigError("gate-level data-plane oracle supports ReachWithin and ExceedsHops only")
    validate_property(net, prop)
    exceeds = isinstance(prop, ExceedsHops)
    n, b = net.n, net.location_bits
    B = _Builder(n)
    compute = B.gates

    hdr = list(range(n))
    loc = [B.new() for _ in range(b)]
    for j, bit in enumerate(_bits(net.index(prop.src), b)):
        if bit:
            compute.append(X(loc[j]))

    rules = [r for r in net.rules if r.router != prop.dst]
    rewritten = sorted({i for r in rules for i in range(n) if r.rewrite_action(i) != "."})
    shared = [B.new() for _ in rules] if midcircuit_reset else None

    moved = B.new() if exceeds else None
    for hop in range(prop.k):
        flags = shared if midcircuit_reset else [B.new() for _ in rules]
        flag_gates: list[Gate] = []
        earlier: dict[str, list[int]] = {}
        for rule, f in zip(rules, flags):
            enc = _bits(net.index(rule.router), b)
            pos = [loc[j] for j in range(b) if enc[j]]
            neg = [loc[j] for j in range(b) if not enc[j]]
            for i, v in rule.match.cares().items():
                (pos if v else neg).append(hdr[i])
            neg += earlier.setdefault(rule.router, [])
            B.mcx(pos, neg, f, out=flag_gates)
            earlier[rule.router].append(f)

        new_loc = [B.new() for _ in range(b)]
        new_hdr = list(hdr)
        for i in rewritten:
            new_hdr[i] = B.new()
        update: list[Gate] = []
        for j in range(b):
            B.mcx([loc[j]], [], new_loc[j], out=update)
        for i in rewritten:
            B.mcx([hdr[i]], [], new_hdr[i], out=update)
        for rule, f in zip(rules, flags):
            delta = net.index(rule.router) ^ net.index(rule.next_hop)
            for j in range(b):
                if (delta >> j) & 1:
                    B.mcx([f], [], new_loc[j], out=update)
            for i in rewritten:
                action = rule.rewrite_action(i)
                if action == SET0:
                    B.mcx([f, hdr[i]], [], new_hdr[i], out=update)
                elif action == SET1:
                    B.mcx([f], [hdr[i]], new_hdr[i], out=update)

        compute.extend(flag_gates + update)
        if exceeds and hop == prop.k - 1:
            # at most one flag is set, so parity is OR
            compute.extend(CX(f, moved) for f in flags)
        if midcircuit_reset:
            compute.extend(Circuit(B.width, list(flag_gates)).inverse().gates)
            compute.extend(Reset(f) for f in flags)
        loc, hdr = new_loc, new_hdr

    mark: list[Gate] = []
    if prop.dst is None:
        B.mcz([moved], [], out=mark)
        return B.finish(n, compute, mark)
    enc = _bits(net.index(prop.dst), b)
    pos, neg = [loc[j] for j in range(b) if enc[j]], [loc[j] for j in range(b) if not enc[j]]
    if not exceeds:
        B.mcz(pos, neg, out=mark)
        return B.finish(n, compute, mark)
    at_dst = B.new()
    B.mcx(pos, neg, at_dst, out=compute)
    B.mcz([moved], [at_dst], out=mark)
    return B.finish(n, compute, mark)


def compile_gate_controlplane(
    net: ControlPlaneNetwork, prop: Disconnected, midcircuit_reset: bool = True
) -> CompiledOracle:
    """Gate-level oracle for ``dst`` being cut off from ``src``.

    Reachability is a monotone circuit over the edge bits, grown one
    frontier round at a time (``R - 1`` rounds cover every simple path).
    Reached-flags that are classically constant or equal to a single
    existing qubit are not given new qubits. The failure cutoff counts
    clear input bits into a binary counter; the mark fires once per allowed
    counter value.
    """
    if not isinstance(net, ControlPlaneNetwork) or not isinstance(prop, Disconnected):
        raise ConfigError("gate-level control-plane oracle supports Disconnected only")
    validate_property(net, prop)
    n, routers = net.n, net.routers
    B = _Builder(n)
    compute = B.gates

    # reached[v] is 0, 1 (classical constants) or ("q", qubit)
    reached: dict = {v: int(v == prop.src) for v in routers}
    pool: list[int] = []

    def term_qubit() -> int:
        if midcircuit_reset and pool:
            return pool.pop()
        return B.new()

    rounds = len(routers) - 1
    for d in range(1, rounds + 1):
        todo = [prop.dst] if d == rounds else routers
        new = dict(reached)
        for v in todo:
            cur = reached[v]
            if cur == 1:
                continue
            literals = [cur[1]] if cur != 0 else []
            pairs = []
            for e in net.edges:
                if v not in (e.a, e.b):
                    continue
                ru = reached[e.b if e.a == v else e.a]
                if ru == 1:
                    literals.append(e.id)
                elif ru != 0:
                    pairs.append((ru[1], e.id))
            literals = list(dict.fromkeys(literals))
            if not literals and not pairs:
                continue
            if len(literals) == 1 and not pairs:
                new[v] = ("q", literals[0])
                continue
            out = B.new()
            if not literals and len(pairs) == 1:
                B.mcx(list(pairs[0]), [], out)
                new[v] = ("q", out)
                continue
            terms, term_gates = [], []
            for u, e in pairs:
                t = term_qubit()
                B.mcx([u, e], [], t, out=term_gates)
                terms.append(t)
            compute.extend(term_gates)
            # OR via De Morgan: out = NOT AND(NOT literal)
            B.mcx([], literals + terms, out)
            compute.append(X(out))
            new[v] = ("q", out)
            if midcircuit_reset:
                compute.extend(Circuit(B.width, term_gates).inverse().gates)
                compute.extend(Reset(t) for t in terms)
                pool.extend(terms)
        reached = new

    # one literal set per allowed failure count; the sets are disjoint, so a
    # phase flip per set flips exactly their union
    allowed = [([], [])]
    if prop.max_failures is not None and prop.max_failures < n:
        w = n.bit_length()
        counter = [B.new() for _ in range(w)]
        for q in range(n):
            for j in reversed(range(w)):
                B.mcx(counter[:j], [q], counter[j])
        allowed = []
        for v in range(prop.max_failures + 1):
            bits = _bits(v, w)
            allowed.append(([counter[j] for j in range(w) if bits[j]], [counter[j] for j in range(w) if not bits[j]]))

    target = reached[prop.dst]
    mark: list[Gate] = []
    if target == 1:
        pass
    elif target == 0 and allowed == [([], [])]:
        mark = [X(0), Z(0), X(0), Z(0)]  # (XZ)^2 = -I: every input is marked
    else:
        extra = [] if target == 0 else [target[1]]
        for pos, neg in allowed:
            B.mcz(pos, neg + extra, out=mark)
    return B.finish(n, compute, mark)


def compile_oracle(
    net: Network,
    prop: Property,
    backend: str = DIAGONAL,
    exclusions: Iterable[int] = (),
    midcircuit_reset: bool = True,
) -> CompiledOracle:
    if backend == DIAGONAL:
        return compile_diagonal(net, prop, exclusions)
    if backend != GATE:
        raise ConfigError(f"unknown oracle backend {backend!r}")
    if isinstance(net, DataPlaneNetwork):
        o = compile_gate_dataplane(net, prop, midcircuit_reset)
    else:
        o = compile_gate_controlplane(net, prop, midcircuit_reset)
    exclusions = list(exclusions)
    return add_exclusion(o, exclusions) if exclusions else o
