"""Qubit counts for the published circuit architecture.

Both planes grow linearly: each extra header bit costs 1+l qubits (l
wildcard qubits), and with mid-circuit reset each extra edge costs one.

Run:  python3 demos/resource_scaling.py
"""
from qnwv import ControlPlaneParams, DataPlaneParams, controlplane_qubits, dataplane_qubits
from qnwv.resources import sweep

p = DataPlaneParams(n=2**16, R=10, r=5, ell=50, P=50, k=10, G=5)
print("data plane, 2^16 headers:", dataplane_qubits(p), "qubits,", dataplane_qubits(p, True), "with reset")
q = ControlPlaneParams(R=10, n=20, D=9, G=10)
print("control plane, 20 edges:", controlplane_qubits(q), "qubits,", controlplane_qubits(q, True), "with reset")

print("\nheader bits  qubits")
for x, qubits, _ in sweep("dataplane", "headers", range(8, 33, 4)):
    print(f"{x:>11}  {qubits}")

print("\nedges  no reset  reset")
for (x, a, _), (_, b, _) in zip(sweep("controlplane", "edges", range(10, 41, 10)),
                                sweep("controlplane", "edges", range(10, 41, 10), True)):
    print(f"{x:>5}  {a:>8}  {b:>5}")
