"""Pure-dephasing bath: spectral densities, F(t), and decoherence factors.

Conventions: hbar = k_B = 1, so frequencies, couplings and temperature share
one energy unit.  A bath is either Ohmic, ``J(w) = gamma * w * exp(-w/wc)``,
or an explicit list of modes ``(w_j, |xi_j|^2)``.  ``r`` is the uniform
network-bath coupling.

For a relative photon number ``dn = n - n'`` the per-mode displacement has
``|beta_j|^2 = dn^2 r^2 |xi_j|^2 |eta_j(tau)|^2`` with
``|eta_j(tau)|^2 = 4 sin^2(w_j tau / 2) / w_j^2``.  The decoherence factor
splits into a vacuum part ``exp(-sum_j |beta_j|^2 / 2)`` and a thermal part
``exp(-sum_j |beta_j|^2 n_j(T))``.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from os import PathLike
from typing import Optional, Union

import numpy as np
from scipy import integrate

# Quadrature tolerances for the Ohmic integrals.
EPSABS = 1e-13
EPSREL = 1e-12
QUAD_LIMIT = 2000


class BathError(ValueError):
    pass


class QuadratureError(RuntimeError):
    def __init__(self, what: str, value: float, abserr: float, message: str = ""):
        self.value = value
        self.abserr = abserr
        super().__init__(f"{what}: quadrature did not converge (value={value!r}, error estimate={abserr:.3g}) {message}".strip())


@dataclass(frozen=True)
class BathSpec:
    """Ohmic or discrete bath plus the network-bath coupling ``r``.

    Use :meth:`ohmic` or :meth:`discrete` rather than the constructor.
    """

    kind: str
    r: float = 1.0
    gamma: Optional[float] = None
    omega_c: Optional[float] = None
    omegas: Optional[np.ndarray] = field(default=None, repr=False)
    xi_sq: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.r >= 0:
            raise BathError(f"r must be non-negative, got {self.r}")
        if self.kind == "ohmic":
            if self.gamma is None or not self.gamma >= 0:
                raise BathError(f"ohmic gamma must be >= 0, got {self.gamma}")
            if self.omega_c is None or not self.omega_c > 0:
                raise BathError(f"ohmic cutoff frequency must be > 0, got {self.omega_c}")
        elif self.kind == "discrete":
            w = np.atleast_1d(np.asarray(self.omegas, dtype=float))
            x = np.atleast_1d(np.asarray(self.xi_sq, dtype=float))
            if w.shape != x.shape or w.ndim != 1:
                raise BathError("omegas and xi_sq must be 1-d arrays of equal length")
            if np.any(~(w > 0)):
                raise BathError("all mode frequencies must be positive")
            if np.any(~(x >= 0)):
                raise BathError("all |xi|^2 weights must be non-negative")
            w.setflags(write=False)
            x.setflags(write=False)
            object.__setattr__(self, "omegas", w)
            object.__setattr__(self, "xi_sq", x)
        else:
            raise BathError(f"unknown bath kind {self.kind!r}")

    @classmethod
    def ohmic(cls, gamma: float, omega_c: float, r: float = 1.0) -> "BathSpec":
        return cls("ohmic", r=float(r), gamma=float(gamma), omega_c=float(omega_c))

    @classmethod
    def discrete(cls, omegas, xi_sq, r: float = 1.0) -> "BathSpec":
        return cls("discrete", r=float(r), omegas=omegas, xi_sq=xi_sq)

    @property
    def is_ohmic(self) -> bool:
        return self.kind == "ohmic"

    def with_r(self, r: float) -> "BathSpec":
        if self.is_ohmic:
            return BathSpec.ohmic(self.gamma, self.omega_c, r)
        return BathSpec.discrete(self.omegas, self.xi_sq, r)

    def spectral_density(self, omega):
        """Ohmic ``J(w)``; only defined for the Ohmic kind."""
        if not self.is_ohmic:
            raise BathError("spectral_density is only available for Ohmic baths")
        omega = np.asarray(omega, dtype=float)
        return self.gamma * omega * np.exp(-omega / self.omega_c)


def load_discrete_csv(path: Union[str, PathLike], r: float = 1.0) -> BathSpec:
    """Read a discrete bath from a CSV file with columns ``omega,xi_sq``."""
    omegas, xi_sq = [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"omega", "xi_sq"} <= set(reader.fieldnames):
            raise BathError(f"{path}: expected header with columns omega, xi_sq")
        for lineno, row in enumerate(reader, start=2):
            try:
                omegas.append(float(row["omega"]))
                xi_sq.append(float(row["xi_sq"]))
            except (TypeError, ValueError) as exc:
                raise BathError(f"{path}:{lineno}: {exc}") from exc
    if not omegas:
        raise BathError(f"{path}: no modes")
    return BathSpec.discrete(omegas, xi_sq, r)


def save_discrete_csv(spec: BathSpec, path: Union[str, PathLike]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["omega", "xi_sq"])
        for w, x in zip(spec.omegas, spec.xi_sq):
            writer.writerow([repr(float(w)), repr(float(x))])


def discretize_ohmic(spec: BathSpec, n_modes: int, omega_min: Optional[float] = None,
                     omega_max: Optional[float] = None) -> BathSpec:
    """Sample an Ohmic density on a geometric grid with weights ``J(w_j) dw_j``.

    Mode frequencies sit at the geometric midpoints of the cells.
    """
    if not spec.is_ohmic:
        raise BathError("discretize_ohmic needs an Ohmic spec")
    wc = spec.omega_c
    lo = 1e-7 * wc if omega_min is None else omega_min
    hi = 60.0 * wc if omega_max is None else omega_max
    edges = np.geomspace(lo, hi, n_modes + 1)
    w = np.sqrt(edges[:-1] * edges[1:])
    return BathSpec.discrete(w, spec.spectral_density(w) * np.diff(edges), spec.r)


def _quad(f, a: float, b: float, what: str, points=None) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, epsabs=EPSABS, epsrel=EPSREL, limit=QUAD_LIMIT,
                             points=points, full_output=1)
    value, abserr = out[0], out[1]
    if len(out) > 3 and abserr > 1e-9 * max(abs(value), 1e-3):
        raise QuadratureError(what, value, abserr, out[3].splitlines()[0] if out[3] else "")
    return value


def _oscillation_points(omega_max: float, t: float) -> Optional[list]:
    # Break the range at multiples of the oscillation period so each panel is smooth.
    t = abs(t)
    if t == 0:
        return None
    period = 2 * np.pi / t
    n = int(omega_max / period)
    if n < 2:
        return None
    step = max(1, n // 200)
    return list(period * np.arange(1, n, step))


def _one_minus_sinc(x):
    """``1 - sin(x)/x`` without cancellation at small ``x``."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < 0.1
    xs = x[small] ** 2
    out[small] = xs / 6 * (1 - xs / 20 * (1 - xs / 42 * (1 - xs / 72)))
    xl = x[~small]
    out[~small] = 1 - np.sin(xl) / xl
    return out


def _omega_max(spec: BathSpec, temperature: float = 0.0) -> float:
    return spec.omega_c * max(50.0, 20.0 * temperature / spec.omega_c)


def f_number(spec: BathSpec, t: float) -> float:
    """The c-number ``F(t) = 2 * int dw J(w) (t - sin(wt)/w) / w``."""
    t = float(t)
    if not np.isfinite(t):
        raise BathError(f"t must be finite, got {t}")
    if t == 0:
        return 0.0
    sign, t = np.sign(t), abs(t)
    if spec.is_ohmic:
        if spec.gamma == 0:
            return 0.0
        wc = spec.omega_c

        def integrand(w):
            return 2 * spec.gamma * np.exp(-w / wc) * t * _one_minus_sinc(np.array([w * t]))[0]

        wmax = _omega_max(spec)
        value = _quad(integrand, 0.0, wmax, "F(t)", _oscillation_points(wmax, t))
    else:
        w, x = spec.omegas, spec.xi_sq
        value = float(np.sum(2 * x * t * _one_minus_sinc(w * t) / w))
    return float(sign * value)


def eta_abs_sq(omega, t):
    """``|eta(t)|^2 = 4 sin^2(w t / 2) / w^2`` for the mode phase function."""
    omega = np.asarray(omega, dtype=float)
    if np.any(~(omega > 0)):
        raise BathError("omega must be positive")
    out = 4 * np.sin(omega * np.asarray(t) / 2) ** 2 / omega**2
    return float(out) if out.ndim == 0 else out


def bose_occupation(omega, temperature: float):
    """Mean thermal occupation ``1/(exp(w/T) - 1)``; zero at ``T = 0``."""
    omega = np.asarray(omega, dtype=float)
    if temperature == 0:
        return np.zeros_like(omega)
    x = omega / temperature
    return np.exp(-x) / -np.expm1(-x)


def vacuum_exponent(spec: BathSpec, tau: float) -> float:
    """``S0(tau) = sum_j |xi_j|^2 |eta_j(tau)|^2`` (per unit ``dn^2 r^2``).

    For the Ohmic density this is ``gamma * ln(1 + wc^2 tau^2)``.
    """
    if spec.is_ohmic:
        return spec.gamma * np.log1p((spec.omega_c * tau) ** 2)
    return float(np.sum(spec.xi_sq * eta_abs_sq(spec.omegas, tau)))


def vacuum_exponent_quad(spec: BathSpec, tau: float) -> float:
    """``int dw J(w) 4 sin^2(w tau/2) / w^2`` by direct quadrature (Ohmic only)."""
    if not spec.is_ohmic:
        raise BathError("vacuum_exponent_quad needs an Ohmic spec")
    wc, g = spec.omega_c, spec.gamma

    def integrand(w):
        if w == 0:
            return 0.0
        return g * np.exp(-w / wc) * 4 * np.sin(w * tau / 2) ** 2 / w

    wmax = _omega_max(spec)
    return _quad(integrand, 0.0, wmax, "vacuum exponent", _oscillation_points(wmax, tau))


def vacuum_factor(spec: BathSpec, delta_n: int, tau: float) -> float:
    """Vacuum-fluctuation factor ``D0``.

    Ohmic: ``(1 + wc^2 tau^2) ** (-dn^2 r^2 gamma / 2)``.
    Discrete: ``prod_j exp(-z_j / 2)`` with ``z_j = dn^2 r^2 |xi_j|^2 |eta_j|^2``.
    """
    if not tau > 0:
        raise BathError(f"tau must be positive, got {tau}")
    scale = delta_n**2 * spec.r**2
    if scale == 0:
        return 1.0
    if spec.is_ohmic:
        return float((1 + (spec.omega_c * tau) ** 2) ** (-scale * spec.gamma / 2))
    z = scale * spec.xi_sq * eta_abs_sq(spec.omegas, tau)
    return float(np.exp(-np.sum(z) / 2))


def thermal_integrand(omega, tau: float, temperature: float, omega_c: float):
    """``exp(-w/wc) sin^2(w tau/2) / (w (exp(w/T) - 1))``, continuous at ``w = 0``."""
    omega = np.asarray(omega, dtype=float)
    out = np.empty_like(omega)
    zero = omega == 0
    out[zero] = temperature * tau**2 / 4
    w = omega[~zero]
    x = w / temperature
    out[~zero] = np.exp(-w / omega_c - x) / -np.expm1(-x) * np.sin(w * tau / 2) ** 2 / w
    return out


def thermal_integral(spec: BathSpec, tau: float, temperature: float) -> float:
    """``I(tau) = int_0^inf dw sin^2(w tau/2) / (w exp(w/wc) (exp(w/T) - 1))``."""
    if not spec.is_ohmic:
        raise BathError("thermal_integral needs an Ohmic spec")
    if not tau > 0:
        raise BathError(f"tau must be positive, got {tau}")
    if not temperature >= 0:
        raise BathError(f"temperature must be non-negative, got {temperature}")
    if temperature == 0:
        return 0.0
    wc = spec.omega_c
    wmax = _omega_max(spec, temperature)

    def integrand(w):
        return float(thermal_integrand(np.array([w]), tau, temperature, wc)[0])

    return _quad(integrand, 0.0, wmax, "I(tau)", _oscillation_points(wmax, tau))


def thermal_factor(spec: BathSpec, delta_n: int, tau: float, temperature: float) -> float:
    """Thermal-excitation factor ``DT``.

    Ohmic: ``exp(-4 gamma dn^2 r^2 I(tau))``.
    Discrete: ``prod_j exp(-z_j n_j(T))``.
    """
    if not tau > 0:
        raise BathError(f"tau must be positive, got {tau}")
    if not temperature >= 0:
        raise BathError(f"temperature must be non-negative, got {temperature}")
    scale = delta_n**2 * spec.r**2
    if scale == 0 or temperature == 0:
        return 1.0
    if spec.is_ohmic:
        if spec.gamma == 0:
            return 1.0
        return float(np.exp(-4 * spec.gamma * scale * thermal_integral(spec, tau, temperature)))
    z = scale * spec.xi_sq * eta_abs_sq(spec.omegas, tau)
    return float(np.exp(-np.sum(z * bose_occupation(spec.omegas, temperature))))


@dataclass(frozen=True)
class DephasingTable:
    d0: np.ndarray
    dT: np.ndarray
    temperature: float
    tau: float

    @property
    def cutoff(self) -> int:
        return self.d0.shape[0]

    @property
    def total(self) -> np.ndarray:
        return self.d0 * self.dT

    @classmethod
    def from_matrix(cls, d, temperature: float = 0.0, tau: float = 1.0) -> "DephasingTable":
        """Wrap an arbitrary factor matrix (as the vacuum part, thermal part all ones)."""
        d = np.asarray(d, dtype=float)
        return cls(d, np.ones_like(d), temperature, tau)


def dephasing_table(spec: BathSpec, cutoff: int, tau: float, temperature: float) -> DephasingTable:
    """Decoherence factors ``D[n, n']`` for ``n, n' < cutoff``.

    Each factor depends only on ``|n - n'|``, so one value per distance is computed.
    """
    if int(cutoff) != cutoff or cutoff < 1:
        raise BathError(f"cutoff must be a positive integer, got {cutoff}")
    cutoff = int(cutoff)
    v0 = np.array([vacuum_factor(spec, dn, tau) for dn in range(cutoff)])
    vT = np.array([thermal_factor(spec, dn, tau, temperature) for dn in range(cutoff)])
    dist = np.abs(np.subtract.outer(np.arange(cutoff), np.arange(cutoff)))
    return DephasingTable(v0[dist], vT[dist], float(temperature), float(tau))


def dressing_phases(cutoff: int, p0: complex, r: float, f_value: float) -> np.ndarray:
    """Per-number phases ``conj(p0)**n * exp(-i n(n+1) r^2 F / 2)``."""
    n = np.arange(cutoff)
    return np.conj(p0) ** n * np.exp(-0.5j * n * (n + 1) * r**2 * f_value)


def dressed_coefficients(coeffs, p0: complex, spec: BathSpec, tau: float) -> np.ndarray:
    """Fock coefficients after transfer, carrying the deterministic phases.

    ``c_n -> conj(p0)**n * exp(-i n(n+1) r^2 F(-tau) / 2) * c_n``.
    """
    c = np.asarray(getattr(coeffs, "coeffs", coeffs), dtype=complex)
    if abs(abs(p0) - 1) > 1e-12:
        raise BathError(f"p0 must have unit modulus, got {abs(p0)}")
    return dressing_phases(c.size, p0, spec.r, f_number(spec, -tau)) * c
