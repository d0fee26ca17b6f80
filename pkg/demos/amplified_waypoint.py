"""Amplified search for waypoint violations under few failures.

Traffic from C to D should pass E. With a biased start state each link is
measured up with probability 1-p, so instances with few failures start out
heavier. Every reported hit is re-checked classically.

Run:  python3 demos/amplified_waypoint.py
"""
from qnwv import Biased, brute_force, data, format_bits, make_plan, search

net, prop = data.waypoint()
truth = brute_force(net, prop)
print("violations:", [format_bits(x, net.n) for x in truth])

for p in (0.1, 0.25, 0.5):
    for G in (0, 1, 2):
        r = search(make_plan(net, prop, iterates=G, init=Biased(p), shots=2000, seed=5))
        print(f"p={p:<4} G={G}  exact {r.exact_success:.3f}  sampled {r.success_fraction:.3f}  confirmed {list(r.confirmed)}")
