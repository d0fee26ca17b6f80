import random

import pytest

from qnwv import data
from qnwv.netmodel import (
    ControlPlaneNetwork,
    DataPlaneNetwork,
    Disconnected,
    Edge,
    ForwardingRule,
    ReachWithin,
)

ACCEPTANCE_LINES = []


@pytest.fixture
def toy():
    return data.toy_dataplane()


@pytest.fixture
def triangle():
    return data.triangle()


@pytest.fixture
def report():
    """Record one acceptance line: report(number, text, ok)."""

    def _record(number, text, ok):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {text}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)


def random_dataplane(rng: random.Random, max_bits=3, max_routers=3, max_rules=4, max_k=2, max_rewritten=None):
    n = rng.randint(1, max_bits)
    routers = [f"r{i}" for i in range(rng.randint(2, max_routers))]
    # rewritten positions cost a qubit per hop in the gate oracle
    writable = set(range(n)) if max_rewritten is None else set(rng.sample(range(n), min(n, max_rewritten)))
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        match = "".join(rng.choice("01**") for _ in range(n))
        rewrite = "".join(rng.choice("....01") if n - 1 - j in writable else "." for j in range(n))
        rules.append(ForwardingRule(rng.choice(routers), match, rng.choice(routers), rewrite))
    net = DataPlaneNetwork(n, tuple(routers), tuple(rules), routers[0])
    src, dst = rng.choice(routers), rng.choice(routers)
    return net, ReachWithin(src, dst, rng.randint(1, max_k))


def random_controlplane(rng: random.Random, max_routers=4, max_edges=5):
    R = rng.randint(2, max_routers)
    routers = [f"v{i}" for i in range(R)]
    pairs = [(a, b) for i, a in enumerate(routers) for b in routers[i + 1 :]]
    rng.shuffle(pairs)
    chosen = pairs[: rng.randint(1, min(max_edges, len(pairs)))]
    edges = tuple(Edge(i, a, b, rng.randint(1, 3)) for i, (a, b) in enumerate(chosen))
    net = ControlPlaneNetwork(tuple(routers), edges)
    src, dst = rng.sample(routers, 2)
    mf = rng.choice([None, 0, 1, 2, len(edges)])
    return net, Disconnected(src, dst, mf)


def basis_action(circuit, n):
    """Exact action of an X/Z-family circuit on every |x>|0..0>, x < 2^n.

    Returns (sign per input, output basis index per input, reset-ok per input).
    Independent of the state-vector kernels: it tracks bits, not amplitudes.
    """
    import numpy as np

    state = np.arange(1 << n, dtype=np.int64)
    sign = np.ones(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for g in circuit.gates:
        cmask = sum(1 << c for c in g.controls)
        active = (state & cmask) == cmask
        bit = (state >> g.target) & 1
        if g.kind in ("X", "CX", "MCX"):
            state = np.where(active, state ^ (1 << g.target), state)
        elif g.kind in ("Z", "CZ", "MCZ"):
            sign = np.where(active & (bit == 1), -sign, sign)
        elif g.kind == "RESET":
            ok &= bit == 0
        else:
            raise ValueError(f"{g.kind} is not a basis-preserving gate")
    return sign, state, ok
