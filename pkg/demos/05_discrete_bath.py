"""A finite set of bath modes against the continuum.

Discretizing the Ohmic density more and more finely approaches the
continuum vacuum factor, and for any finite mode list the factorized
result agrees with the product of single-mode displacement averages.
"""

from photonswap import (BathSpec, discrete_dephasing_exact, discretize_ohmic, thermal_factor,
                        vacuum_factor)

bath = BathSpec.ohmic(gamma=1.0, omega_c=1.0, r=0.7)
tau = 2.0
ref = vacuum_factor(bath, 1, tau)
print(f"continuum vacuum factor: {ref:.10f}")
for n in (10, 100, 1000, 10_000):
    d = vacuum_factor(discretize_ohmic(bath, n), 1, tau)
    print(f"{n:>6} modes: {d:.10f}  rel. error {abs(d - ref) / ref:.1e}")

disc = discretize_ohmic(bath, 200)
for temp in (0.0, 0.5, 2.0):
    exact = discrete_dephasing_exact(2, disc, tau, temp)
    factored = vacuum_factor(disc, 2, tau) * thermal_factor(disc, 2, tau, temp)
    print(f"T = {temp}: mode by mode {exact:.12f}, factorized {factored:.12f}")
