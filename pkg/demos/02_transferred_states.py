"""Phases picked up by coherent, Fock and polarization-entangled states.

A transferred n-photon component is multiplied by conj(P0)**n, so a coherent
amplitude is rotated and an entangled tag gathers one phase per photon.
The many-boson evolution confirms the Fock-state rule.
"""

import numpy as np

from photonswap import (CoherentAmplitude, EntangledTag, FockVector, Vacuum, apply_swap_coherent,
                        apply_swap_entangled, check_mirror, coupling_from_graph, hypercube,
                        ideal_phase, optimal_time_for)

omega = 0.8
c = coupling_from_graph(hypercube(1, 2), kappa=1.0)
tau = optimal_time_for(c)
p0 = ideal_phase(c) * np.exp(1j * omega * tau)
print(f"square (4 nodes): tau = {tau:.6f}, P0 = {p0:.6f}")

state = (CoherentAmplitude(1.0 + 0.5j), Vacuum(), Vacuum(), Vacuum())
out = apply_swap_coherent(state, p0)
print("coherent input at node 1 ->", out[-1], "at node 4")

tags = (EntangledTag(2), Vacuum(), EntangledTag(1), Vacuum())
mirrored, phase = apply_swap_entangled(tags, p0)
print("entangled tags", [getattr(t, "m_photons", 0) for t in mirrored], f"phase {phase:.6f}")

node0 = FockVector.normalized([0.5, 0.5j, -0.5, 0.5])
res = check_mirror(c, tau, p0, node0, omega)
print(f"many-boson evolution vs mirror rule: overlap = {res.overlap:.12f}")
