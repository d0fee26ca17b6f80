import math

import numpy as np
import pytest

from qnwv.circuit import (
    CX,
    CZ,
    MCX,
    MCZ,
    RY,
    Circuit,
    Gate,
    H,
    Reset,
    StateVector,
    X,
    Z,
    apply_gate,
    measure_all,
    probabilities,
    run,
)
from qnwv.errors import ConfigError, ResourceLimitError

SQ = 1 / math.sqrt(2)


def random_unitary_gate(rng, m):
    kind = rng.choice(["X", "H", "Z", "RY", "CX", "CZ", "MCX", "MCZ"])
    qs = rng.permutation(m)
    t = int(qs[0])
    if kind in ("X", "H", "Z"):
        return Gate(kind, t)
    if kind == "RY":
        return RY(t, rng.uniform(-np.pi, np.pi))
    if m < 2:
        return H(t)
    if kind in ("CX", "CZ"):
        return Gate(kind, t, (int(qs[1]),))
    ncontrols = rng.integers(1, m)
    return Gate(kind, t, tuple(int(q) for q in qs[1 : 1 + ncontrols]))


def random_state(rng, m):
    a = rng.normal(size=1 << m) + 1j * rng.normal(size=1 << m)
    return StateVector(a / np.linalg.norm(a), m)


def dense_matrix(g: Gate, m: int) -> np.ndarray:
    """Independent reference: build the full 2^m x 2^m matrix column by column."""
    base = {
        "X": np.array([[0, 1], [1, 0]]),
        "CX": np.array([[0, 1], [1, 0]]),
        "MCX": np.array([[0, 1], [1, 0]]),
        "Z": np.diag([1, -1]),
        "CZ": np.diag([1, -1]),
        "MCZ": np.diag([1, -1]),
        "H": np.array([[1, 1], [1, -1]]) * SQ,
    }
    if g.kind == "RY":
        c, s = math.cos(g.angle / 2), math.sin(g.angle / 2)
        u = np.array([[c, -s], [s, c]])
    else:
        u = base[g.kind]
    N = 1 << m
    M = np.zeros((N, N), dtype=complex)
    for col in range(N):
        if all((col >> c) & 1 for c in g.controls):
            b = (col >> g.target) & 1
            for out in (0, 1):
                row = (col & ~(1 << g.target)) | (out << g.target)
                M[row, col] += u[out, b]
        else:
            M[col, col] = 1
    return M


def test_h_on_zero():
    s = apply_gate(StateVector.zero(1), H(0))
    assert np.allclose(s.amplitudes, [SQ, SQ], atol=1e-15)


def test_mcz_flips_all_ones():
    s = StateVector.basis(3, 0b111)
    apply_gate(s, MCZ([0, 1], 2))
    assert s.amplitudes[0b111] == -1


@pytest.mark.parametrize("p", [0.1, 0.25, 0.5, 0.9])
def test_ry_amplitude(p):
    theta = 2 * math.acos(math.sqrt(p))
    s = apply_gate(StateVector.zero(1), RY(0, theta))
    ref = np.array([[math.cos(theta / 2), -math.sin(theta / 2)], [math.sin(theta / 2), math.cos(theta / 2)]]) @ [1, 0]
    assert np.allclose(s.amplitudes, ref, atol=1e-15)
    assert abs(s.amplitudes[0] - math.sqrt(p)) < 1e-12


def test_little_endian():
    s = apply_gate(StateVector.zero(3), X(0))
    assert s.amplitudes[1] == 1
    s = apply_gate(StateVector.zero(3), X(2))
    assert s.amplitudes[4] == 1


def test_kernels_match_dense_matrices():
    rng = np.random.default_rng(0)
    for m in (1, 2, 3, 4):
        for _ in range(40):
            g = random_unitary_gate(rng, m)
            s = random_state(rng, m)
            expected = dense_matrix(g, m) @ s.amplitudes
            assert np.allclose(apply_gate(s.copy(), g).amplitudes, expected, atol=1e-13), g


def test_run_identity_and_involution():
    s0 = StateVector.zero(2)
    assert np.array_equal(run(Circuit(2), s0).amplitudes, s0.amplitudes)
    s = run(Circuit(2, [H(0), H(0)]), s0)
    assert np.allclose(s.amplitudes, [1, 0, 0, 0], atol=1e-12)


def test_hadamard_wall():
    for m in range(1, 9):
        s = run(Circuit(m, [H(q) for q in range(m)]), StateVector.zero(m))
        assert np.allclose(s.amplitudes, 2 ** (-m / 2), atol=1e-12)


def test_run_leaves_input_untouched():
    s0 = StateVector.zero(1)
    run(Circuit(1, [X(0)]), s0)
    assert s0.amplitudes[0] == 1


def test_norm_preserved_random_circuits():
    rng = np.random.default_rng(1)
    for m in (1, 3, 6, 9, 12):
        c = Circuit(m, [random_unitary_gate(rng, m) for _ in range(200)])
        s = run(c, random_state(rng, m))
        assert abs(s.norm() - 1) <= 1e-12


@pytest.mark.parametrize("gate", [X(1), H(0), Z(2), CX(0, 2), CZ(1, 0), MCX([0, 1], 3), MCZ([0, 2, 3], 1)])
def test_involutions(gate):
    rng = np.random.default_rng(2)
    s = random_state(rng, 4)
    twice = apply_gate(apply_gate(s.copy(), gate), gate)
    assert np.max(np.abs(twice.amplitudes - s.amplitudes)) <= 1e-12


def test_ry_inverse():
    rng = np.random.default_rng(3)
    s = random_state(rng, 3)
    c = Circuit(3, [RY(1, 0.731), RY(1, -0.731)])
    assert np.max(np.abs(run(c, s).amplitudes - s.amplitudes)) <= 1e-12
    c = Circuit(3, [RY(0, 1.1), H(2), MCX([0], 1)])
    assert np.max(np.abs(run(c.inverse(), run(c, s)).amplitudes - s.amplitudes)) <= 1e-12


def test_reset():
    s = run(Circuit(2, [H(0), H(1)]), StateVector.zero(2))
    apply_gate(s, Reset(1))
    assert np.allclose(s.amplitudes, [SQ, SQ, 0, 0])
    with pytest.raises(ValueError):
        apply_gate(StateVector.basis(1, 1), Reset(0))


def test_gate_validation():
    with pytest.raises(ConfigError):
        Gate("CX", 0, (0,))
    with pytest.raises(ConfigError):
        Gate("FOO", 0)
    with pytest.raises(ConfigError):
        Circuit(2, [X(2)])
    with pytest.raises(ConfigError):
        apply_gate(StateVector.zero(1), CX(0, 1))
    with pytest.raises(ResourceLimitError):
        StateVector.zero(40)


def test_measure_basis_state():
    assert measure_all(StateVector.basis(3, 0b101), 100, seed=0) == {"101": 100}


def test_measure_uniform_statistics():
    s = run(Circuit(2, [H(0), H(1)]), StateVector.zero(2))
    hist = measure_all(s, 10000, seed=12345)
    # 4 sigma of Binomial(10000, 1/4) is 173
    assert set(hist) == {"00", "01", "10", "11"}
    assert all(abs(c - 2500) <= 200 for c in hist.values())


def test_measure_is_seed_deterministic():
    s = run(Circuit(3, [H(0), RY(1, 0.4), H(2)]), StateVector.zero(3))
    assert measure_all(s, 5000, seed=7) == measure_all(s, 5000, seed=7)
    assert measure_all(s, 5000, seed=7) != measure_all(s, 5000, seed=8)


def test_probabilities_register():
    s = apply_gate(StateVector.zero(2), H(0))
    assert probabilities(s, [0]) == pytest.approx({"0": 0.5, "1": 0.5})
    assert probabilities(s, [1]) == pytest.approx({"0": 1.0, "1": 0.0})
    # register order sets bit positions: register [1, 0] swaps the key
    s = StateVector.basis(2, 0b01)
    assert probabilities(s, [1, 0])["10"] == 1


def test_probabilities_sum_to_one():
    rng = np.random.default_rng(4)
    s = random_state(rng, 6)
    assert abs(sum(probabilities(s).values()) - 1) <= 1e-12
    assert abs(sum(probabilities(s, [5, 1, 3]).values()) - 1) <= 1e-12


def test_dump_round_trip():
    c = Circuit(4, [H(0), RY(1, 0.1 + 1e-9), MCX([0, 1, 2], 3), CZ(0, 1), Reset(2)])
    text = c.dump()
    assert "MCX 3 c=0,1,2" in text
    again = Circuit.parse(text)
    assert again.width == 4 and again.gates == c.gates
