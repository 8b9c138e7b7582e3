"""Coupling matrices for coupled-resonator networks.

Three families are supported: the uniform paths P2 and P3, their g-fold
Cartesian powers (hypercubic networks), and the Jx-engineered chain of
arbitrary length.  Custom symmetric adjacency matrices are accepted as well
so that the numerical transfer-time search can be applied to them.

Node indices are 0-based.  The antipode of node ``m`` is ``n_nodes - 1 - m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

MAX_NODES = 4096

FAMILIES = ("path2", "path3", "hypercube", "engineered_chain", "custom")


class TopologyError(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph stored as a dense 0/1 adjacency matrix.

    ``family`` is one of ``FAMILIES``.  For hypercubes ``theta`` is 1 (P2
    base) or 2 (P3 base) and ``g`` the number of Cartesian factors.
    """

    adjacency: np.ndarray
    family: str = "custom"
    theta: Optional[int] = None
    g: Optional[int] = None

    def __post_init__(self):
        a = np.asarray(self.adjacency)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise TopologyError(f"adjacency must be square and non-empty, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise TopologyError("adjacency must be symmetric")
        if np.any(np.diag(a) != 0):
            raise TopologyError("adjacency must have a zero diagonal")
        if not np.all((a == 0) | (a == 1)):
            raise TopologyError("adjacency entries must be 0 or 1")
        if self.family not in FAMILIES:
            raise TopologyError(f"unknown family {self.family!r}")
        object.__setattr__(self, "adjacency", _frozen(a.astype(float)))

    @property
    def n_nodes(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        u, v = np.nonzero(np.triu(self.adjacency))
        return [(int(i), int(j)) for i, j in zip(u, v)]

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(int)


@dataclass(frozen=True)
class CouplingMatrix:
    """Real symmetric inter-resonator coupling matrix ``K``.

    Exactly one of ``kappa`` (uniform coupling on a graph) or ``lam``
    (engineered chain scale) is normally set; both are ``None`` only for
    matrices built directly from an arbitrary symmetric array.
    """

    k: np.ndarray
    family: str = "custom"
    kappa: Optional[float] = None
    lam: Optional[float] = None
    theta: Optional[int] = None
    g: Optional[int] = None
    graph: Optional[Graph] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise TopologyError(f"coupling matrix must be square, got shape {k.shape}")
        if not np.allclose(k, k.T, rtol=0, atol=1e-12):
            raise TopologyError("coupling matrix must be symmetric")
        if np.any(np.diag(k) != 0):
            raise TopologyError("coupling matrix must have a zero diagonal")
        object.__setattr__(self, "k", _frozen(k))

    @property
    def n_nodes(self) -> int:
        return self.k.shape[0]

    @property
    def scale(self) -> float:
        """The energy scale (kappa or lambda) that sets the optimal time."""
        if self.kappa is not None:
            return self.kappa
        if self.lam is not None:
            return self.lam
        raise TopologyError("custom coupling matrix has no scale")


def antipode(m: int, n_nodes: int) -> int:
    if not 0 <= m < n_nodes:
        raise IndexError(f"node {m} out of range for {n_nodes} nodes")
    return n_nodes - 1 - m


def path_graph(length: int) -> Graph:
    """Uniform path P2 or P3."""
    if length not in (2, 3):
        raise TopologyError(
            f"uniform paths of length {length} do not transfer perfectly; "
            "use engineered_chain for other lengths"
        )
    a = np.zeros((length, length))
    idx = np.arange(length - 1)
    a[idx, idx + 1] = a[idx + 1, idx] = 1
    return Graph(a, family=f"path{length}", theta=length - 1, g=1)


def kron_sum(base: np.ndarray, g: int) -> np.ndarray:
    """Kronecker sum of ``g`` copies of ``base``.

    Term ``j`` places ``base`` in slot ``j`` with identities elsewhere, so the
    flattened node index is row-major in the per-factor tuple.
    """
    n = base.shape[0]
    out = np.zeros((n**g, n**g))
    eye = np.eye(n)
    for j in range(g):
        term = np.ones((1, 1))
        for slot in range(g):
            term = np.kron(term, base if slot == j else eye)
        out += term
    return out


def cartesian_power(base: Graph, g: int, max_nodes: int = MAX_NODES) -> Graph:
    """g-fold Cartesian product of P2 or P3 with itself.

    Parameters
    ----------
    base : Graph
        A ``path2`` or ``path3`` graph.
    g : int
        Number of factors, at least 1.
    max_nodes : int
        Guard on the resulting network size.

    Returns
    -------
    Graph
        Hypercubic network on ``base.n_nodes ** g`` nodes whose node ``m``
        corresponds to the digit tuple of ``m`` in base ``base.n_nodes``.
    """
    if base.family not in ("path2", "path3"):
        raise TopologyError("cartesian_power needs a path2 or path3 base graph")
    if int(g) != g or g < 1:
        raise TopologyError(f"g must be a positive integer, got {g}")
    g = int(g)
    n = base.n_nodes**g
    if n > max_nodes:
        raise TopologyError(f"{n} nodes exceeds the configured maximum of {max_nodes}")
    return Graph(kron_sum(base.adjacency, g), family="hypercube", theta=base.theta, g=g)


def hypercube(theta: int, g: int, max_nodes: int = MAX_NODES) -> Graph:
    return cartesian_power(path_graph(theta + 1), g, max_nodes=max_nodes)


def coupling_from_graph(graph: Graph, kappa: float) -> CouplingMatrix:
    if not kappa > 0:
        raise TopologyError(f"kappa must be positive, got {kappa}")
    family = graph.family
    return CouplingMatrix(
        kappa * graph.adjacency,
        family=family,
        kappa=float(kappa),
        theta=graph.theta,
        g=graph.g,
        graph=graph,
    )


def engineered_couplings(n_nodes: int, lam: float) -> np.ndarray:
    u = np.arange(1, n_nodes)
    return lam * np.sqrt(u * (n_nodes - u)) / 2


def engineered_chain(n_nodes: int, lam: float, max_nodes: int = MAX_NODES) -> CouplingMatrix:
    """Tridiagonal chain with couplings ``lam*sqrt(u*(N-u))/2``, u = 1..N-1.

    The matrix equals ``lam * Jx`` for spin ``J = (N-1)/2`` and mirrors the
    chain at ``t = pi/lam``.
    """
    if int(n_nodes) != n_nodes or n_nodes < 2:
        raise TopologyError(f"engineered chain needs at least 2 nodes, got {n_nodes}")
    if not lam > 0:
        raise TopologyError(f"lambda must be positive, got {lam}")
    n_nodes = int(n_nodes)
    if n_nodes > max_nodes:
        raise TopologyError(f"{n_nodes} nodes exceeds the configured maximum of {max_nodes}")
    c = engineered_couplings(n_nodes, lam)
    k = np.diag(c, 1) + np.diag(c, -1)
    return CouplingMatrix(k, family="engineered_chain", lam=float(lam))


def custom_coupling(adjacency, kappa: float = 1.0) -> CouplingMatrix:
    return coupling_from_graph(Graph(np.asarray(adjacency), family="custom"), kappa)
