"""Decoherence factors for an Ohmic bath.

The factor for a coherence between n and n' photons splits into a
temperature-independent vacuum part and a thermal part; both only depend
on |n - n'|.
"""

import numpy as np

from photonswap import BathSpec, dephasing_table

bath = BathSpec.ohmic(gamma=0.5, omega_c=1.0, r=0.5)
tau = np.pi / 2
for temp in (0.0, 1.0, 4.0):
    table = dephasing_table(bath, cutoff=4, tau=tau, temperature=temp)
    print(f"T = {temp}")
    print(np.array2string(table.total, precision=6, suppress_small=True))
