"""Brute-force reference computations.

These routines do not use the single-particle shortcut or the factorized
dephasing formulas; they exist to certify them.

* Closed network: the full many-boson Hamiltonian on a truncated Fock space,
  evolved with ``exp(-iHt)``.
* Dephasing: the thermal expectation of each bath displacement operator,
  ``<D(beta)>_T = exp(-|beta|^2 (n_T + 1/2))``, evaluated from the complex
  displacement ``beta_j = -i dn r conj(xi_j) eta_j(tau)`` directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from .bath import BathSpec
from .states import CoherentAmplitude, FockVector, mirror_fock, product_vector
from .topology import CouplingMatrix

MAX_DIM = 100_000
DENSE_DIM = 2000


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class FockSpace:
    """Product Fock space with occupations ``0..cutoff`` on each node.

    Basis index ``i`` corresponds to the occupation tuple of ``i`` written in
    base ``cutoff + 1`` with node 0 as the most significant digit.
    """

    n_nodes: int
    cutoff: int

    @property
    def levels(self) -> int:
        return self.cutoff + 1

    @property
    def dim(self) -> int:
        return self.levels**self.n_nodes

    def occupations(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(index, (self.levels,) * self.n_nodes))

    def index(self, occupations: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(occupations), (self.levels,) * self.n_nodes))

    def site_operator(self, op: sp.spmatrix, site: int) -> sp.csr_matrix:
        left = sp.identity(self.levels**site, format="csr")
        right = sp.identity(self.levels ** (self.n_nodes - site - 1), format="csr")
        return sp.kron(sp.kron(left, op), right, format="csr")

    def annihilation(self, site: int) -> sp.csr_matrix:
        a = sp.diags(np.sqrt(np.arange(1, self.levels)), 1, format="csr")
        return self.site_operator(a, site)

    def total_number(self) -> sp.csr_matrix:
        n = sp.diags(np.arange(self.levels, dtype=float), format="csr")
        return sum(self.site_operator(n, u) for u in range(self.n_nodes))


def build_hamiltonian(coupling: CouplingMatrix, omega: float, space: FockSpace) -> sp.csr_matrix:
    """``H = Omega sum_u a_u^dag a_u + sum_{u,v} K_uv a_u^dag a_v`` on ``space``."""
    k = coupling.k if isinstance(coupling, CouplingMatrix) else np.asarray(coupling, dtype=float)
    if k.shape[0] != space.n_nodes:
        raise OracleError(f"coupling has {k.shape[0]} nodes, Fock space has {space.n_nodes}")
    if space.dim > MAX_DIM:
        raise OracleError(f"Fock space dimension {space.dim} exceeds limit {MAX_DIM}")
    ann = [space.annihilation(u) for u in range(space.n_nodes)]
    h = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    for u in range(space.n_nodes):
        h = h + omega * (ann[u].T @ ann[u])
        for v in range(space.n_nodes):
            if k[u, v] != 0:
                h = h + k[u, v] * (ann[u].T @ ann[v])
    return h.tocsr()


def evolve_exact(h, psi0: np.ndarray, t: float, norm_tol: float = 1e-9) -> np.ndarray:
    """``exp(-iHt) psi0``.

    Dense diagonalization up to ``DENSE_DIM`` states, otherwise
    ``scipy.sparse.linalg.expm_multiply``.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if h.shape[0] != psi0.size:
        raise OracleError(f"dimension mismatch: H is {h.shape}, psi0 has {psi0.size}")
    if abs(np.linalg.norm(psi0) - 1) > 1e-12:
        raise OracleError("psi0 must be normalized")
    if t == 0:
        return psi0.copy()
    if h.shape[0] <= DENSE_DIM:
        dense = h.toarray() if sp.issparse(h) else np.asarray(h)
        w, v = np.linalg.eigh(dense)
        psi = v @ (np.exp(-1j * w * t) * (v.conj().T @ psi0))
    else:
        psi = expm_multiply(-1j * t * sp.csr_matrix(h), psi0)
    drift = abs(np.linalg.norm(psi) - 1)
    if drift > norm_tol:
        raise OracleError(f"norm drifted by {drift:.3g} during evolution")
    return psi


def coherent_cutoff(alpha: complex) -> int:
    """Smallest per-node photon cutoff with discarded mass safely below 1e-8."""
    a = abs(alpha)
    return int(np.ceil(a**2 + 8 * a + 8))


def tail_mass(alpha: complex, cutoff: int) -> float:
    """Probability of more than ``cutoff`` photons in ``|alpha>``."""
    c = CoherentAmplitude(alpha).fock_coeffs(cutoff + 1)
    return float(max(0.0, 1.0 - np.sum(np.abs(c) ** 2)))


@dataclass(frozen=True)
class ClosedSystemCheck:
    overlap: float
    tail_mass: float
    photon_drift: float


def check_mirror(coupling: CouplingMatrix, t: float, p0: complex, node0: FockVector,
                 omega: float = 0.0) -> ClosedSystemCheck:
    """Evolve ``node0 x vacuum...`` exactly and compare with :func:`mirror_fock`.

    ``node0`` may carry any number of levels; the Fock space cutoff is
    ``node0.cutoff - 1`` so that the evolution is free of truncation error.
    """
    n = coupling.n_nodes
    space = FockSpace(n, node0.cutoff - 1)
    state = (node0,) + tuple(FockVector.vacuum(node0.cutoff) for _ in range(n - 1))
    psi0 = product_vector(state)
    h = build_hamiltonian(coupling, omega, space)
    psi = evolve_exact(h, psi0, t)
    expected = product_vector(mirror_fock(state, p0))
    num = space.total_number()
    drift = abs(np.vdot(psi, num @ psi).real - np.vdot(psi0, num @ psi0).real)
    return ClosedSystemCheck(float(abs(np.vdot(expected, psi)) ** 2), 0.0, float(drift))


def check_mirror_coherent(coupling: CouplingMatrix, t: float, p0: complex, alpha: complex,
                          omega: float = 0.0) -> ClosedSystemCheck:
    """Coherent state at node 0 through the exact evolution, truncated per :func:`coherent_cutoff`."""
    cutoff = coherent_cutoff(alpha)
    c = CoherentAmplitude(alpha).fock_coeffs(cutoff + 1)
    res = check_mirror(coupling, t, p0, FockVector.normalized(c), omega)
    return ClosedSystemCheck(res.overlap, tail_mass(alpha, cutoff), res.photon_drift)


def displacement_expectation(beta: complex, omega: float, temperature: float) -> float:
    """Thermal average of ``<alpha| D(beta) |alpha>`` over the Glauber P-function.

    ``<alpha|D(beta)|alpha> = exp(-|beta|^2/2) exp(2i Im(beta conj(alpha)))``;
    averaging the second factor over a Gaussian of variance ``n_T`` gives
    ``exp(-|beta|^2 n_T)``, and ``n_T + 1/2 = coth(w / 2T) / 2``.
    """
    half_coth = 0.5 if temperature == 0 else 0.5 / np.tanh(omega / (2 * temperature))
    return float(np.exp(-abs(beta) ** 2 * half_coth))


def discrete_dephasing_exact(delta_n: int, spec: BathSpec, tau: float, temperature: float) -> float:
    """``prod_j <D(beta_j)>_T`` for a discrete bath, computed mode by mode."""
    if spec.is_ohmic:
        raise OracleError("discrete_dephasing_exact needs a discrete bath")
    w = spec.omegas
    xi = np.sqrt(spec.xi_sq)
    eta = 1j * (np.exp(-1j * w * tau) - 1) / w
    beta = -1j * delta_n * spec.r * np.conj(xi) * eta
    return float(np.prod([displacement_expectation(b, wj, temperature) for b, wj in zip(beta, w)]))
