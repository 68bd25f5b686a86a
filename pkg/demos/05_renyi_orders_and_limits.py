#!/usr/bin/env python3
# Sweeping the Renyi order and approaching the von Neumann point.
#
# The Renyi families interpolate smoothly through order one, where they are
# undefined but converge to the von Neumann quantities.  The chained
# fractional-power operator inside the plain family converges to an
# exponential of logarithms, at a rate visibly linear in |alpha - 1|.

import numpy as np

import qmarkov as qm
from qmarkov.functionals import lie_trotter_deviation

state = qm.TripartiteState(qm.random_density((2, 2, 2), seed=42))
vn = qm.von_neumann_cmi(state)
print(f"von Neumann CMI: {vn:.6f} bits\n")

print("order   Renyi CMI   sandwiched CMI")
for a in (0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2.0, 3.0):
    plain = qm.renyi_cmi(state, a)
    sand = qm.sandwiched_cmi(state, a)
    print(f"{a:5.2f}   {plain:9.6f}   {sand:14.6f}")

print("\napproach to the von Neumann point:")
print("offset       |Renyi - vN|   |sandwiched - vN|")
for k in (1, 2, 3, 4):
    for sign in (-1, 1):
        a = 1.0 + sign * 10.0**-k
        gap_p = abs(qm.renyi_cmi(state, a) - vn)
        gap_s = abs(qm.sandwiched_cmi(state, a) - vn)
        print(f"{sign * 10.0**-k:+9.0e}   {gap_p:12.3e}   {gap_s:17.3e}")

print("\nproduct-formula convergence (operator norm):")
for k in (1, 2, 3, 4):
    dev = lie_trotter_deviation(state, 1.0 + 10.0**-k)
    print(f"  alpha = 1 + 1e-{k}: deviation {dev:.3e}")

# On a Markov chain the sweep is flat at zero for every order.
chain = qm.build_markov_chain(qm.random_markov_spec(2, 2, ((2, 1), (1, 2)), seed=3))
sweep = [qm.renyi_cmi(chain, a) for a in (0.25, 0.5, 1.5, 2.5, 4.0)]
print("\nMarkov chain sweep:", np.round(sweep, 12))
