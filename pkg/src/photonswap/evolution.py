"""Single-excitation propagators and perfect-SWAP checks.

With ``hbar = 1`` a creation operator evolves as

    a_m^dag(t) = exp(i*Omega*t) * sum_u [exp(i*K*t)]_{um} a_u^dag,

so every transfer question reduces to the N x N matrix ``exp(iKt)``.  The
scalar ``exp(i*Omega*t)`` is kept apart from the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .topology import CouplingMatrix, TopologyError

SWAP_TOL = 1e-9


class EvolutionError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenpairs of a coupling matrix.

    ``eigenvectors`` holds the eigenvectors as rows (``U`` with
    ``U @ K @ U.T`` diagonal), sorted by ascending eigenvalue.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return u.T @ np.diag(self.eigenvalues) @ u


@dataclass(frozen=True)
class Propagator:
    matrix: np.ndarray
    time: float
    omega: float = 0.0

    @property
    def free_phase(self) -> complex:
        return complex(np.exp(1j * self.omega * self.time))

    @property
    def n_nodes(self) -> int:
        return self.matrix.shape[0]

    def full(self) -> np.ndarray:
        """Propagator including the free-evolution phase."""
        return self.free_phase * self.matrix

    def __matmul__(self, other: "Propagator") -> "Propagator":
        return Propagator(self.matrix @ other.matrix, self.time + other.time, self.omega)


@dataclass(frozen=True)
class SwapCertificate:
    is_perfect: bool
    optimal_time: float
    global_phase: complex
    max_deviation: float
    tolerance: float = SWAP_TOL


def decompose(coupling) -> SpectralDecomposition:
    """Diagonalize a real symmetric coupling matrix.

    Accepts a :class:`CouplingMatrix` or a bare square array.
    """
    k = coupling.k if isinstance(coupling, CouplingMatrix) else np.asarray(coupling, dtype=float)
    if k.ndim != 2 or k.shape[0] != k.shape[1]:
        raise EvolutionError(f"matrix must be square, got shape {k.shape}")
    if not np.allclose(k, k.T, rtol=0, atol=1e-12):
        raise EvolutionError("matrix must be symmetric")
    w, v = np.linalg.eigh(k)
    return SpectralDecomposition(w, v.T.copy())


def propagate(decomp: SpectralDecomposition, t: float, omega: float = 0.0) -> Propagator:
    """Return ``exp(iKt)`` built from the spectral decomposition."""
    if not np.isfinite(t):
        raise EvolutionError(f"time must be finite, got {t}")
    u = decomp.eigenvectors
    phases = np.exp(1j * decomp.eigenvalues * t)
    return Propagator((u.T * phases) @ u, float(t), float(omega))


def transfer_amplitude(decomp: SpectralDecomposition, source: int, target: int, t) -> np.ndarray:
    """Amplitude ``[exp(iKt)]_{target, source}``, vectorized over ``t``."""
    u = decomp.eigenvectors
    weights = u[:, target] * u[:, source]
    t = np.asarray(t, dtype=float)
    return np.exp(1j * np.multiply.outer(t, decomp.eigenvalues)) @ weights


def _family_key(family: str) -> str:
    if family in ("path2", "path3", "hypercube"):
        return "hypercube"
    if family == "engineered_chain":
        return "engineered_chain"
    raise EvolutionError(f"no analytic optimal time for family {family!r}; use find_pst_time")


def optimal_time(family: str, scale: float, theta: Optional[int] = None) -> float:
    """Analytic perfect-transfer time.

    Parameters
    ----------
    family : str
        ``"hypercube"`` (or ``"path2"``/``"path3"``) or ``"engineered_chain"``.
    scale : float
        The uniform coupling kappa, or lambda for engineered chains.
    theta : int, optional
        1 for P2-based hypercubes, 2 for P3-based ones.  Required for the
        ``"hypercube"`` family and implied by ``"path2"``/``"path3"``.

    Returns
    -------
    float
        ``pi / (2**(1/theta) * kappa)`` or ``pi / lambda``.
    """
    if not scale > 0:
        raise EvolutionError(f"coupling scale must be positive, got {scale}")
    key = _family_key(family)
    if key == "engineered_chain":
        return np.pi / scale
    if family == "path2":
        theta = 1
    elif family == "path3":
        theta = 2
    if theta not in (1, 2):
        raise EvolutionError(f"theta must be 1 or 2, got {theta}")
    return np.pi / (2 ** (1 / theta) * scale)


def optimal_time_for(coupling: CouplingMatrix) -> float:
    return optimal_time(coupling.family, coupling.scale, coupling.theta)


def ideal_phase(coupling: CouplingMatrix) -> complex:
    """The i-power multiplying the antidiagonal: ``i**(theta*g)`` or ``i**(N-1)``."""
    key = _family_key(coupling.family)
    if key == "engineered_chain":
        power = coupling.n_nodes - 1
    else:
        power = coupling.theta * coupling.g
    return 1j ** (power % 4)


def p0_phase(omega: float, tau: float, power: int) -> complex:
    """Deterministic transfer phase ``exp(i*omega*tau) * i**power``."""
    return complex(np.exp(1j * omega * tau) * 1j ** (power % 4))


def verify_swap(prop: Propagator, expected_phase: complex, tolerance: float = SWAP_TOL) -> SwapCertificate:
    m = prop.matrix
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise EvolutionError("propagator must be square")
    target = expected_phase * np.fliplr(np.eye(m.shape[0]))
    dev = float(np.max(np.abs(m - target)))
    return SwapCertificate(
        is_perfect=dev < tolerance,
        optimal_time=prop.time,
        global_phase=complex(m[-1, 0]),
        max_deviation=dev,
        tolerance=tolerance,
    )


def certify(coupling: CouplingMatrix, t: Optional[float] = None, tolerance: float = SWAP_TOL) -> SwapCertificate:
    """Check the mirror property of ``coupling`` at its analytic optimal time (or ``t``)."""
    if t is None:
        t = optimal_time_for(coupling)
    return verify_swap(propagate(decompose(coupling), t), ideal_phase(coupling), tolerance)


@dataclass(frozen=True)
class TransferSearch:
    time: float
    phase: complex
    deviation: float


def find_pst_time(
    decomp: SpectralDecomposition,
    source: int,
    target: int,
    t_max: float,
    grid: int = 2000,
    xtol: float = 1e-12,
) -> TransferSearch:
    """Locate the time in ``[0, t_max]`` maximizing ``|exp(iKt)[target, source]|``.

    A uniform grid scan is refined by bounded golden-section search around the
    best grid point.  The best point is returned even if transfer is imperfect;
    ``deviation`` is ``1 - |amplitude|``.
    """
    if not t_max > 0:
        raise EvolutionError(f"t_max must be positive, got {t_max}")
    if grid < 2:
        raise EvolutionError(f"grid must have at least 2 points, got {grid}")
    n = decomp.n_nodes
    if not (0 <= source < n and 0 <= target < n):
        raise EvolutionError("source/target out of range")

    ts = np.linspace(0.0, t_max, grid)
    mod = np.abs(transfer_amplitude(decomp, source, target, ts))
    best = int(np.argmax(mod))
    t_best = ts[best]
    if mod[best] < 1.0 - 1e-15:
        dt = ts[1] - ts[0]
        lo, hi = max(0.0, t_best - dt), min(t_max, t_best + dt)
        res = minimize_scalar(
            lambda t: -abs(transfer_amplitude(decomp, source, target, t)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": xtol},
        )
        if -res.fun > mod[best]:
            t_best = float(res.x)
    amp = complex(transfer_amplitude(decomp, source, target, t_best))
    return TransferSearch(float(t_best), amp / abs(amp) if amp != 0 else 1.0 + 0j, 1.0 - abs(amp))


def multimode_phase(omegas, tau: float, power: int) -> np.ndarray:
    """Per-mode transfer phases ``exp(i*Omega_v*tau) * i**power``.

    ``power`` is ``theta*g`` for hypercubes or ``N-1`` for engineered chains;
    the transfer matrix itself does not depend on the mode frequency.
    """
    if not tau > 0:
        raise EvolutionError(f"tau must be positive, got {tau}")
    omegas = np.asarray(omegas, dtype=float)
    return np.exp(1j * omegas * tau) * 1j ** (int(power) % 4)


def is_unitary(m: np.ndarray, atol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) < atol)


__all__ = [
    "SpectralDecomposition",
    "Propagator",
    "SwapCertificate",
    "TransferSearch",
    "EvolutionError",
    "TopologyError",
    "decompose",
    "propagate",
    "transfer_amplitude",
    "optimal_time",
    "optimal_time_for",
    "ideal_phase",
    "p0_phase",
    "verify_swap",
    "certify",
    "find_pst_time",
    "multimode_phase",
    "is_unitary",
]
