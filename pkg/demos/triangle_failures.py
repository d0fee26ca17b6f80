"""Which link-failure combinations cut C off from A in a triangle?

Edges e0=(A,B), e1=(B,C), e2=(A,C); a bit is 1 when the link is up and
strings print as e2 e1 e0. The failure scenarios are 000, 001 and 010.
With three marked states out of eight a single iterate lifts them to
about 84% of the shots.

Run:  python3 demos/triangle_failures.py
"""
from qnwv import compile_oracle, data, make_plan, search
from qnwv.grover import iter_rounds

net, prop = data.triangle()

result = search(make_plan(net, prop, k_hint=3, seed=0))
total = sum(result.histogram.values())
for key, count in sorted(result.histogram.items(), key=lambda kv: -kv[1]):
    flag = "*" if key in result.confirmed else " "
    print(f"{key} {flag} {'#' * round(60 * count / total):<60} {count}")
print(f"exact success {result.exact_success:.5f}")
for w in result.warnings:
    print("warning:", w)

print("\nrepeated search with exclusions:")
for i, r in enumerate(iter_rounds(net, prop, budget=8, shots=200, seed=3)):
    print(f"  round {i}: G={r.iterates} confirmed {list(r.confirmed)}")

gate = compile_oracle(net, prop, "gate")
print(f"\ngate oracle uses {gate.width} qubits:")
print(gate.circuit.dump())
