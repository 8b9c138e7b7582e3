"""Average SWAP fidelity across coupling strength and temperature.

Stronger coupling shortens the transfer and leaves the bath less time to
act, while a hotter bath dephases faster.  A Monte Carlo estimate is
printed next to the closed form at one grid point.
"""

from photonswap import (BathSpec, average_fidelity_mc, dephasing_table, fidelity_floor,
                        fidelity_sweep)

lambdas = [1, 2, 4, 8]
temps = [0, 0.5, 1, 2, 4]
rows = fidelity_sweep(5, lambdas, temps, r=0.5, gamma=1.0, omega_c=1.0, cutoff=3)
grid = {(row.lam, row.temperature): row.fidelity for row in rows}

print("lambda  " + "  ".join(f"T={t:<6}" for t in temps))
for lam in lambdas:
    print(f"{lam:<7} " + "  ".join(f"{grid[(lam, t)]:.6f}" for t in temps))
print(f"floor for M=3: {fidelity_floor(3):.6f}")

table = dephasing_table(BathSpec.ohmic(1.0, 1.0, 0.5), 3, 3.14159 / 2, 1.0)
mc = average_fidelity_mc(table, 100_000, seed=3)
print(f"lambda=2, T=1: closed form {grid[(2, 1)]:.6f}, Monte Carlo {mc.value:.6f} +- {mc.std_error:.1e}")
