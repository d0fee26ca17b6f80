"""Closed-form qubit counts for the data-plane and control-plane circuits.

These evaluate the published architecture's formulas; they do not inspect
the circuits compiled by :mod:`qnwv.oracle`, which use their own ancilla
layout. Every logarithm is a base-2 ceiling.

Control-plane symbols map as routers -> ``R``, edges -> ``n``, diameter ->
``D``, iterates -> ``G``.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import ConfigError


def clog2(x: int) -> int:
    """Exact ceil(log2 x) for positive integers."""
    if x < 1:
        raise ConfigError(f"log of non-positive value {x}")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class DataPlaneParams:
    n: int  # total number of headers (not header bits)
    R: int
    r: int
    ell: int
    P: int
    k: int
    G: int

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")

    @classmethod
    def sweep_convention(cls, n: int, R: int, r: int, G: int = 5, k: Optional[int] = None):
        """Parameters with ``ell = P = R*r`` and ``k = R`` unless given."""
        return cls(n=n, R=R, r=r, ell=R * r, P=R * r, k=R if k is None else k, G=G)


@dataclass(frozen=True)
class ControlPlaneParams:
    R: int
    n: int
    D: int
    G: int

    def __post_init__(self):
        for name, v in self.__dict__.items():
            if not isinstance(v, int) or v < 1:
                raise ConfigError(f"{name} must be a positive integer, got {v!r}")

    @classmethod
    def sweep_convention(cls, R: int, n: int):
        """Parameters with ``D = R - 1`` and ``G = R``."""
        return cls(R=R, n=n, D=max(1, R - 1), G=R)


def dataplane_qubits(p: DataPlaneParams, midcircuit_reset: bool = False) -> int:
    head = (1 + p.ell) * clog2(p.n)
    if midcircuit_reset:
        ports = (1 + p.P) * clog2(p.P)
    else:
        ports = (p.P + p.k + p.G * (2 * p.k - 1)) * clog2(p.P)
    return head + ports + 2 * max(p.ell, p.P) + p.P + p.ell


def controlplane_qubits(p: ControlPlaneParams, midcircuit_reset: bool = False) -> int:
    if midcircuit_reset:
        return clog2(p.R) + p.n + p.R
    return clog2(p.R) + p.n * (p.R - 1) * p.D + p.G


SWEEPS = {
    "dataplane": ("headers", "routers"),
    "controlplane": ("edges", "routers"),
}


def sweep(kind: str, variable: str, values: Iterable[int], midcircuit_reset: bool = False, **fixed):
    """Rows ``(x, qubits, variant)`` for one swept variable.

    Data plane: ``headers`` sweeps the header exponent (``n = 2**x``) with
    ``routers``/``rules`` fixed; ``routers`` sweeps R with ``rules`` and
    ``headers`` (count) fixed. Control plane: ``edges`` or ``routers``.
    """
    if kind not in SWEEPS or variable not in SWEEPS[kind]:
        raise ConfigError(f"cannot sweep {variable!r} for {kind!r}")
    values = list(values)
    if not values:
        raise ConfigError("empty sweep range")
    variant = "reset" if midcircuit_reset else "no_reset"
    rows = []
    for x in values:
        if kind == "dataplane":
            R = x if variable == "routers" else fixed.get("routers", 10)
            n = 2**x if variable == "headers" else fixed.get("headers", 2**16)
            p = DataPlaneParams.sweep_convention(n, R, fixed.get("rules", 5), G=fixed.get("iterates", 5))
            q = dataplane_qubits(p, midcircuit_reset)
        else:
            R = x if variable == "routers" else fixed.get("routers", 10)
            n = x if variable == "edges" else fixed.get("edges", 20)
            q = controlplane_qubits(ControlPlaneParams.sweep_convention(R, n), midcircuit_reset)
        rows.append((x, q, variant))
    return rows


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "qubits", "variant"])
    w.writerows(rows)
    return buf.getvalue()
