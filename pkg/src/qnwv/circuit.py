"""Gate-list circuits and a dense state-vector simulator.

Qubit ``q`` is bit ``q`` of the amplitude index (little-endian), so a
measured bit string prints qubit 0 rightmost. Sampling uses numpy's PCG64
generator (``numpy.random.default_rng``), which is reproducible across
platforms for a given seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ConfigError, ResourceLimitError

MAX_QUBITS = 26
RESET_TOLERANCE = 1e-12

# kind -> takes an angle
_KINDS = {
    "X": False,
    "H": False,
    "Z": False,
    "RY": True,
    "CX": False,
    "CZ": False,
    "MCX": False,
    "MCZ": False,
    "RESET": False,
}


@dataclass(frozen=True)
class Gate:
    kind: str
    target: int
    controls: tuple[int, ...] = ()
    angle: Optional[float] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "controls", tuple(sorted(set(self.controls))))
        if self.target in self.controls:
            raise ConfigError(f"{self.kind}: target {self.target} is also a control")
        if _KINDS[self.kind] != (self.angle is not None):
            raise ConfigError(f"{self.kind}: angle given where none expected or vice versa")
        if self.kind in ("CX", "CZ") and len(self.controls) != 1:
            raise ConfigError(f"{self.kind} takes exactly one control")
        if self.kind in ("X", "H", "Z", "RY", "RESET") and self.controls:
            raise ConfigError(f"{self.kind} takes no controls; use MCX/MCZ")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def inverse(self) -> "Gate":
        if self.kind == "RY":
            return Gate("RY", self.target, angle=-self.angle)
        # RESET is only ever placed on qubits already returned to |0>, where it acts as identity.
        return self

    def dump(self) -> str:
        parts = [self.kind, str(self.target)]
        if self.controls:
            parts.append("c=" + ",".join(map(str, self.controls)))
        if self.angle is not None:
            parts.append("angle=" + repr(float(self.angle)))
        return " ".join(parts)


def X(q):
    return Gate("X", q)


def H(q):
    return Gate("H", q)


def Z(q):
    return Gate("Z", q)


def RY(q, theta):
    return Gate("RY", q, angle=float(theta))


def CX(c, t):
    return Gate("CX", t, (c,))


def CZ(c, t):
    return Gate("CZ", t, (c,))


def MCX(controls, t):
    controls = tuple(controls)
    return Gate("MCX", t, controls) if controls else Gate("X", t)


def MCZ(controls, t):
    controls = tuple(controls)
    return Gate("MCZ", t, controls) if controls else Gate("Z", t)


def Reset(q):
    return Gate("RESET", q)


def parse_gate(line: str) -> Gate:
    parts = line.split()
    if len(parts) < 2:
        raise ConfigError(f"bad gate line {line!r}")
    kind, target, controls, angle = parts[0], int(parts[1]), (), None
    for p in parts[2:]:
        if p.startswith("c="):
            controls = tuple(int(c) for c in p[2:].split(","))
        elif p.startswith("angle="):
            angle = float(p[6:])
        else:
            raise ConfigError(f"bad gate field {p!r}")
    return Gate(kind, target, controls, angle)


@dataclass
class Circuit:
    width: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate):
        if any(not 0 <= q < self.width for q in g.qubits):
            raise ConfigError(f"{g.dump()!r} addresses a qubit outside width {self.width}")

    def append(self, g: Gate) -> "Circuit":
        self._check(g)
        self.gates.append(g)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def inverse(self) -> "Circuit":
        return Circuit(self.width, [g.inverse() for g in reversed(self.gates)])

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)

    def dump(self) -> str:
        return "\n".join([f"# width {self.width}"] + [g.dump() for g in self.gates]) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Circuit":
        width, gates = None, []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                if line[1:].split()[:1] == ["width"]:
                    width = int(line.split()[2])
                continue
            gates.append(parse_gate(line))
        if width is None:
            width = 1 + max((max(g.qubits) for g in gates), default=0)
        return cls(width, gates)


class StateVector:
    """Dense amplitude vector of ``2**width`` complex numbers."""

    def __init__(self, amplitudes: np.ndarray, width: Optional[int] = None):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        if width is None:
            width = int(amplitudes.size).bit_length() - 1
        if amplitudes.shape != (1 << width,):
            raise ConfigError(f"expected {1 << width} amplitudes, got shape {amplitudes.shape}")
        self.amplitudes = amplitudes
        self.width = width

    @classmethod
    def zero(cls, width: int) -> "StateVector":
        return cls.basis(width, 0)

    @classmethod
    def basis(cls, width: int, index: int) -> "StateVector":
        if width > MAX_QUBITS:
            raise ResourceLimitError(f"{width} qubits exceed the simulator ceiling of {MAX_QUBITS}")
        if width < 1:
            raise ConfigError("state needs at least one qubit")
        a = np.zeros(1 << width, dtype=np.complex128)
        a[index] = 1.0
        return cls(a, width)

    def copy(self) -> "StateVector":
        return StateVector(self.amplitudes.copy(), self.width)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def tensor(self) -> np.ndarray:
        """View with one axis per qubit; axis ``width-1-q`` is qubit ``q``."""
        return self.amplitudes.reshape((2,) * self.width)

    def __repr__(self):
        return f"StateVector(width={self.width})"


def _slices(width: int, g: Gate):
    idx = [slice(None)] * width
    for c in g.controls:
        idx[width - 1 - c] = 1
    t = width - 1 - g.target
    i0, i1 = list(idx), list(idx)
    i0[t], i1[t] = 0, 1
    return tuple(i0), tuple(i1)


def apply_gate(s: StateVector, g: Gate) -> StateVector:
    """Apply ``g`` to ``s`` in place and return ``s``.

    Controlled gates act only on the slice where every control is 1; the
    simulator never builds a full matrix.
    """
    if any(not 0 <= q < s.width for q in g.qubits):
        raise ConfigError(f"{g.dump()!r} addresses a qubit outside width {s.width}")
    psi = s.tensor()
    i0, i1 = _slices(s.width, g)
    kind = g.kind
    if kind in ("X", "CX", "MCX"):
        a0 = psi[i0].copy()
        psi[i0] = psi[i1]
        psi[i1] = a0
    elif kind in ("Z", "CZ", "MCZ"):
        psi[i1] *= -1
    elif kind == "H":
        a0, a1 = psi[i0].copy(), psi[i1].copy()
        r = 1 / math.sqrt(2)
        psi[i0] = (a0 + a1) * r
        psi[i1] = (a0 - a1) * r
    elif kind == "RY":
        c, sn = math.cos(g.angle / 2), math.sin(g.angle / 2)
        a0, a1 = psi[i0].copy(), psi[i1].copy()
        psi[i0] = c * a0 - sn * a1
        psi[i1] = sn * a0 + c * a1
    elif kind == "RESET":
        p0 = float(np.vdot(psi[i0], psi[i0]).real)
        if p0 < RESET_TOLERANCE:
            raise ValueError(f"reset of qubit {g.target}: probability of |0> is {p0:.3g}")
        psi[i1] = 0
        s.amplitudes /= math.sqrt(p0)
    return s


def run(c: Circuit, s0: StateVector, inplace: bool = False) -> StateVector:
    if c.width != s0.width:
        raise ConfigError(f"circuit width {c.width} != state width {s0.width}")
    s = s0 if inplace else s0.copy()
    for g in c.gates:
        apply_gate(s, g)
    return s


def marginal(s: StateVector, register: Optional[Sequence[int]] = None) -> np.ndarray:
    """Probability vector over ``register``; entry ``j`` has register[i] as bit i of j."""
    probs = np.abs(s.amplitudes) ** 2
    if register is None:
        return probs
    register = list(register)
    if any(not 0 <= q < s.width for q in register) or len(set(register)) != len(register):
        raise ConfigError(f"invalid register {register}")
    t = probs.reshape((2,) * s.width)
    axes = [s.width - 1 - q for q in register]
    rest = tuple(a for a in range(s.width) if a not in axes)
    t = t.sum(axis=rest)
    # remaining axes are in ascending axis order; permute so register[-1] is the leading axis
    kept = sorted(axes)
    order = [kept.index(a) for a in reversed(axes)]
    return np.transpose(t, order).reshape(-1)


def probabilities(s: StateVector, register: Optional[Sequence[int]] = None) -> dict[str, float]:
    """Exact marginal probabilities over ``register`` keyed by bit string."""
    p = marginal(s, register)
    m = s.width if register is None else len(register)
    return {format(j, f"0{m}b"): float(v) for j, v in enumerate(p)}


def measure_all(
    s: StateVector, shots: int, seed: int, register: Optional[Sequence[int]] = None
) -> dict[str, int]:
    """Sample ``shots`` i.i.d. outcomes; histogram keyed by bit string, zero bins omitted."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    p = marginal(s, register)
    p = p / p.sum()
    m = s.width if register is None else len(register)
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, p)
    return {format(j, f"0{m}b"): int(c) for j, c in enumerate(counts) if c}
