"""Hop-bounded reachability on the three-router toy network.

A forwards headers whose bit 0 is clear to B, and B forwards the same
headers to C. Which 2-bit headers reach C from A within two hops?
Brute force answers {00, 10}; one Grover iterate over the four headers
puts exactly half of the probability on those two.

Run:  python3 demos/toy_dataplane.py
"""
from qnwv import brute_force, compile_oracle, data, find_all, format_bits, make_plan, search
from qnwv.classical import simulate_dataplane

net, prop = data.toy_dataplane()

for h in range(1 << net.n):
    trace = simulate_dataplane(net, prop.src, h, prop.k, prop.dst)
    print(format_bits(h, net.n), " -> ".join(trace.hops), trace.terminated.value)

print("brute force:", [format_bits(x, 2) for x in brute_force(net, prop)])

result = search(make_plan(net, prop, iterates=1, seed=7))
print(f"G=1 exact success {result.exact_success:.3f}")
print("histogram:", result.histogram)
print("confirmed:", result.confirmed)

# the gate-level oracle marks the same headers as the phase table
gate = compile_oracle(net, prop, "gate")
print(f"gate oracle: {gate.width} qubits, {len(gate.circuit.gates)} gates, marks",
      [format_bits(x, 2) for x in gate.marked()])

print("find_all:", [format_bits(x, 2) for x in find_all(net, prop, budget=4, seed=1)])
