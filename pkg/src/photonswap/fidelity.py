"""Average SWAP fidelity under dephasing.

Node 1 starts in ``sum_n c_n |n>`` (``n < M``), every other node in vacuum.
Once the deterministic phases are absorbed into the ideal gate, the
fidelity for one input is ``sum_{n,n'} |c_n|^2 |c_n'|^2 D[n, n']`` and the
reported figure is the square root of its average over inputs.  Inputs are
averaged over the unitarily invariant (Haar) measure on the unit sphere of
``C^M``, for which ``E[|c_n|^2 |c_n'|^2] = (1 + delta_nn') / (M (M + 1))``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .bath import BathSpec, DephasingTable, dephasing_table


@dataclass(frozen=True)
class FidelityResult:
    value: float
    method: str = "haar_closed_form"
    samples: Optional[int] = None
    std_error: float = 0.0
    parameters: dict = field(default_factory=dict)


def haar_weights(m: int) -> np.ndarray:
    """Second moments ``E[|c_n|^2 |c_n'|^2]`` of a Haar-random vector in ``C^m``."""
    return (np.ones((m, m)) + np.eye(m)) / (m * (m + 1))


def _table_matrix(table) -> np.ndarray:
    if isinstance(table, DephasingTable):
        return table.total
    d = np.asarray(table, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 1:
        raise ValueError(f"dephasing table must be a non-empty square matrix, got shape {d.shape}")
    return d


def average_fidelity_haar(table, **parameters) -> FidelityResult:
    d = _table_matrix(table)
    avg = float(np.sum(haar_weights(d.shape[0]) * d))
    return FidelityResult(float(np.sqrt(min(max(avg, 0.0), 1.0))), "haar_closed_form",
                          parameters=parameters)


def haar_vectors(rng: np.random.Generator, samples: int, m: int) -> np.ndarray:
    """Haar-uniform unit vectors in ``C^m`` (normalized complex Gaussians), one per row."""
    # Each sample consumes 2m consecutive normals, so batching does not change the stream.
    g = rng.standard_normal((samples, m, 2))
    z = g[..., 0] + 1j * g[..., 1]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def average_fidelity_mc(table, samples: int = 100_000, seed: int = 0,
                        batch: int = 50_000, **parameters) -> FidelityResult:
    """Monte Carlo estimate of the Haar-averaged fidelity.

    Returns the square root of the sample mean of ``p^T D p`` (``p = |c|^2``)
    with its standard error propagated through the square root.  The stream
    is fixed by ``seed`` and independent of ``batch``.
    """
    if samples < 100:
        raise ValueError(f"need at least 100 samples, got {samples}")
    d = _table_matrix(table)
    m = d.shape[0]
    rng = np.random.default_rng(seed)
    count, mean, m2 = 0, 0.0, 0.0
    while count < samples:
        k = min(batch, samples - count)
        p = np.abs(haar_vectors(rng, k, m)) ** 2
        vals = np.einsum("si,ij,sj->s", p, d, p)
        # merge batch mean / sum of squared deviations (Chan et al.)
        b_mean = float(vals.mean())
        b_m2 = float(np.sum((vals - b_mean) ** 2))
        delta = b_mean - mean
        total = count + k
        mean += delta * k / total
        m2 += b_m2 + delta**2 * count * k / total
        count = total
    se_mean = np.sqrt(m2 / (samples - 1) / samples)
    value = np.sqrt(max(mean, 0.0))
    std_error = float(se_mean / (2 * value)) if value > 0 else float(se_mean)
    return FidelityResult(float(value), "monte_carlo", samples, std_error, parameters)


@dataclass(frozen=True)
class SweepRow:
    lam: float
    temperature: float
    fidelity: float
    method: str = "haar_closed_form"
    std_error: float = 0.0


def fidelity_at(lam: float, temperature: float, bath: BathSpec, cutoff: int) -> FidelityResult:
    """Haar-averaged fidelity for an engineered chain at its transfer time ``pi/lam``."""
    if not lam > 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    tau = np.pi / lam
    table = dephasing_table(bath, cutoff, tau, temperature)
    return average_fidelity_haar(table, lam=lam, temperature=temperature, r=bath.r,
                                 gamma=bath.gamma, omega_c=bath.omega_c, M=cutoff)


def fidelity_sweep(chain_n: int, lambdas: Sequence[float], temperatures: Sequence[float],
                   r: float, gamma: float, omega_c: float, cutoff: int,
                   mc_samples: Optional[int] = None, seed: int = 0) -> list[SweepRow]:
    """Fidelity on a ``lambda x T`` grid for an Ohmic bath.

    ``chain_n`` does not affect the result: with one excited end node the
    chain length enters only through the transfer time, which is ``pi/lam``
    for every length.  It is validated and otherwise unused.

    With ``mc_samples`` set, a Monte Carlo row follows each closed-form row,
    seeded from ``seed`` and the grid position so each point is reproducible
    on its own.
    """
    if int(chain_n) != chain_n or chain_n < 2:
        raise ValueError(f"chain needs at least 2 nodes, got {chain_n}")
    lambdas = list(lambdas)
    temperatures = list(temperatures)
    if not lambdas or not temperatures:
        raise ValueError("lambda and temperature grids must be non-empty")
    if any(not lam > 0 for lam in lambdas):
        raise ValueError("all lambda values must be positive")
    bath = BathSpec.ohmic(gamma, omega_c, r)
    seeds = np.random.SeedSequence(seed).spawn(len(lambdas) * len(temperatures))
    rows = []
    for i, lam in enumerate(lambdas):
        tau = np.pi / lam
        for j, temp in enumerate(temperatures):
            table = dephasing_table(bath, cutoff, tau, temp)
            res = average_fidelity_haar(table)
            rows.append(SweepRow(float(lam), float(temp), res.value))
            if mc_samples:
                ss = seeds[i * len(temperatures) + j]
                mc = average_fidelity_mc(table, mc_samples, seed=int(ss.generate_state(1)[0]))
                rows.append(SweepRow(float(lam), float(temp), mc.value, "monte_carlo", mc.std_error))
    return rows


def fidelity_floor(m: int) -> float:
    """Lowest possible Haar-averaged fidelity, reached when all coherences vanish."""
    return float(np.sqrt(2 / (m + 1)))


CSV_HEADER = ("lambda", "temperature", "fidelity", "method", "std_error")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow([fmt(row.lam), fmt(row.temperature), fmt(row.fidelity), row.method, fmt(row.std_error)])
    return buf.getvalue()


def is_monotone(rows: Sequence[SweepRow], tol: float = 1e-12) -> tuple[bool, bool]:
    """Check (non-increasing in T at fixed lambda, non-decreasing in lambda at fixed T).

    Only closed-form rows are considered.
    """
    grid = {}
    for row in rows:
        if row.method == "haar_closed_form":
            grid[(row.lam, row.temperature)] = row.fidelity
    lams = sorted({k[0] for k in grid})
    temps = sorted({k[1] for k in grid})
    in_t = all(grid[(lam, temps[j + 1])] <= grid[(lam, temps[j])] + tol
               for lam in lams for j in range(len(temps) - 1))
    in_lam = all(grid[(lams[i + 1], t)] >= grid[(lams[i], t)] - tol
                 for t in temps for i in range(len(lams) - 1))
    return in_t, in_lam
