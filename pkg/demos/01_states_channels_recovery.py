#!/usr/bin/env python3
# States, channels, and the Petz recovery map.
#
# Walks through the basic objects: build a random two-qubit state, trace out
# half of it, and then undo the damage (exactly where that is possible) with
# the recovery map built from a reference state.

import numpy as np

import qmarkov as qm

rng_seed = 7

# A full-rank two-qubit state and its marginals
rho = qm.random_density((2, 2), seed=rng_seed)
print("two-qubit state, eigenvalues:", np.round(np.sort(rho.eigenvalues), 4))

rho_b = qm.partial_trace(rho.matrix, (2, 2), {0})
print("reduced state on B:\n", np.round(rho_b.real, 4))

# Channels are Kraus families.  Tracing out A is itself a channel:
trace_a = qm.partial_trace_channel((2, 2), {0})
print("partial trace is trace preserving:",
      np.allclose(np.trace(qm.apply_channel(trace_a, rho.matrix)), 1.0))

# The adjoint of a channel is unital: it sends the identity to the identity.
print("adjoint unitality:",
      np.allclose(qm.adjoint_apply(trace_a, np.eye(2)), np.eye(4)))

# Heisenberg-Weyl twirling: averaging over all d^2 shift-and-clock unitaries
# flattens any operator to a multiple of the identity.
ops = qm.heisenberg_weyl(3)
x = np.diag([1.0, 2.0, 3.0]).astype(complex)
print("twirl of diag(1,2,3):\n", np.round(qm.twirl(x, ops).real, 6))

# Every channel dilates to an isometry into a larger space.
chan = qm.random_channel(3, 2, seed=rng_seed)
v, env = qm.stinespring(chan)
print("dilation is an isometry:", np.allclose(v.conj().T @ v, np.eye(3)))
print("dilation reproduces the channel:",
      np.allclose(qm.dilation_apply(v, env, x), qm.apply_channel(chan, x)))

# The Petz recovery map of (sigma, N) undoes N on sigma always, and on
# everything else exactly when N keeps enough information.
sigma = qm.random_density((2, 2), seed=rng_seed + 1)
recovery = qm.petz_recovery(sigma, trace_a)
back = qm.apply_channel(recovery, qm.apply_channel(trace_a, sigma.matrix))
print("recovery restores its own reference:",
      qm.trace_distance(back, sigma.matrix) < 1e-10)

back_rho = qm.apply_channel(recovery, qm.apply_channel(trace_a, rho.matrix))
print("but a generic state is damaged, trace distance:",
      round(qm.trace_distance(back_rho, rho.matrix), 4))
