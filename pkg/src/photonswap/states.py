"""Per-node state descriptors and the ideal mirror SWAP acting on them.

A network state is a product over nodes.  Each node holds one of

* :class:`Vacuum`
* :class:`FockVector` -- coefficients ``c_0 .. c_{M-1}`` in the number basis
* :class:`CoherentAmplitude` -- a coherent state ``|alpha>``
* :class:`EntangledTag` -- ``(|h>^M + |v>^M)/sqrt(2)`` tracked symbolically

At the transfer time every creation operator maps as
``a_u^dag -> P0 a_{N-1-u}^dag`` in the Heisenberg picture, so in the
Schrodinger picture an ``n``-photon component picks up ``conj(P0)**n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


class StateError(ValueError):
    pass


@dataclass(frozen=True)
class Vacuum:
    kind = "vacuum"


@dataclass(frozen=True)
class FockVector:
    coeffs: np.ndarray

    kind = "fock"

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size < 1:
            raise StateError("Fock vector needs at least one coefficient")
        norm = np.linalg.norm(c)
        if abs(norm - 1.0) > 1e-12:
            raise StateError(f"Fock vector must be normalized, got norm {norm:.15g}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def cutoff(self) -> int:
        return self.coeffs.size

    @classmethod
    def normalized(cls, coeffs) -> "FockVector":
        c = np.asarray(coeffs, dtype=complex)
        return cls(c / np.linalg.norm(c))

    @classmethod
    def vacuum(cls, cutoff: int) -> "FockVector":
        c = np.zeros(cutoff, dtype=complex)
        c[0] = 1
        return cls(c)


@dataclass(frozen=True)
class CoherentAmplitude:
    alpha: complex

    kind = "coherent"

    def __post_init__(self):
        a = complex(self.alpha)
        if not np.isfinite(a):
            raise StateError("coherent amplitude must be finite")
        object.__setattr__(self, "alpha", a)

    def fock_coeffs(self, cutoff: int) -> np.ndarray:
        """Number-basis amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for n < cutoff."""
        ratios = np.ones(cutoff, dtype=complex)
        ratios[1:] = self.alpha / np.sqrt(np.arange(1, cutoff))
        return np.exp(-abs(self.alpha) ** 2 / 2) * np.cumprod(ratios)


@dataclass(frozen=True)
class EntangledTag:
    m_photons: int

    kind = "ghz"

    def __post_init__(self):
        if int(self.m_photons) != self.m_photons or self.m_photons < 1:
            raise StateError(f"entangled tag needs m_photons >= 1, got {self.m_photons}")
        object.__setattr__(self, "m_photons", int(self.m_photons))


NodeState = Union[Vacuum, FockVector, CoherentAmplitude, EntangledTag]
NetworkState = tuple  # tuple[NodeState, ...]


def _check_unit(p0: complex) -> complex:
    p0 = complex(p0)
    if abs(abs(p0) - 1.0) > 1e-12:
        raise StateError(f"phase must have unit modulus, got |p0| = {abs(p0)}")
    return p0


def _require(state: Sequence[NodeState], allowed: tuple) -> None:
    bad = [type(s).__name__ for s in state if not isinstance(s, allowed)]
    if bad:
        names = ", ".join(a.__name__ for a in allowed)
        raise StateError(f"expected only {names} nodes, got {sorted(set(bad))}")


def apply_swap_coherent(state: Sequence[NodeState], p0: complex) -> NetworkState:
    """Mirror coherent amplitudes: node ``N-1-u`` receives ``conj(p0) * alpha_u``.

    Vacuum nodes are treated as ``alpha = 0`` and stay vacuum.
    """
    p0 = _check_unit(p0)
    _require(state, (CoherentAmplitude, Vacuum))
    out = []
    for s in reversed(state):
        if isinstance(s, Vacuum):
            out.append(s)
        else:
            out.append(CoherentAmplitude(np.conj(p0) * s.alpha))
    return tuple(out)


def apply_swap_entangled(state: Sequence[NodeState], p0: complex) -> tuple[NetworkState, complex]:
    """Mirror polarization-entangled tags and return the accumulated phase.

    The phase is ``prod_u conj(p0)**M_u`` over occupied nodes.
    """
    p0 = _check_unit(p0)
    _require(state, (EntangledTag, Vacuum))
    total = sum(s.m_photons for s in state if isinstance(s, EntangledTag))
    return tuple(reversed(state)), complex(np.conj(p0) ** total)


def mirror_fock(state: Sequence[NodeState], p0: complex) -> NetworkState:
    p0 = _check_unit(p0)
    _require(state, (FockVector,))
    cutoffs = {s.cutoff for s in state}
    if len(cutoffs) > 1:
        raise StateError(f"all Fock vectors must share a cutoff, got {sorted(cutoffs)}")
    out = []
    for s in reversed(state):
        n = np.arange(s.cutoff)
        out.append(FockVector(np.conj(p0) ** n * s.coeffs))
    return tuple(out)


def product_vector(state: Sequence[FockVector]) -> np.ndarray:
    """Dense product-state vector, row-major over node occupations."""
    vec = np.ones(1, dtype=complex)
    for s in state:
        vec = np.kron(vec, s.coeffs)
    return vec


# JSON descriptors: {"kind": "fock", "coeffs": [[re, im], ...]}, {"kind": "coherent",
# "alpha": [re, im]}, {"kind": "ghz", "m": int}, {"kind": "vacuum"}


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def to_json(node: NodeState) -> dict:
    if isinstance(node, Vacuum):
        return {"kind": "vacuum"}
    if isinstance(node, FockVector):
        return {"kind": "fock", "coeffs": [_pair(c) for c in node.coeffs]}
    if isinstance(node, CoherentAmplitude):
        return {"kind": "coherent", "alpha": _pair(node.alpha)}
    if isinstance(node, EntangledTag):
        return {"kind": "ghz", "m": node.m_photons}
    raise StateError(f"not a node state: {node!r}")


def from_json(obj: dict) -> NodeState:
    try:
        kind = obj["kind"]
        if kind == "vacuum":
            return Vacuum()
        if kind == "fock":
            return FockVector([complex(re, im) for re, im in obj["coeffs"]])
        if kind == "coherent":
            re, im = obj["alpha"]
            return CoherentAmplitude(complex(re, im))
        if kind == "ghz":
            return EntangledTag(obj["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StateError(f"malformed node descriptor {obj!r}: {exc}") from exc
    raise StateError(f"unknown node kind {kind!r}")


def network_to_json(state: Sequence[NodeState]) -> list[dict]:
    return [to_json(s) for s in state]


def network_from_json(objs: Sequence[dict]) -> NetworkState:
    return tuple(from_json(o) for o in objs)
