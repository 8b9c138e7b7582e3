import numpy as np
import pytest

from photonswap.bath import BathSpec, thermal_factor, vacuum_factor
from photonswap.evolution import decompose, ideal_phase, optimal_time_for, p0_phase, propagate
from photonswap.oracle import (
    FockSpace,
    OracleError,
    build_hamiltonian,
    check_mirror,
    check_mirror_coherent,
    coherent_cutoff,
    discrete_dephasing_exact,
    displacement_expectation,
    evolve_exact,
    tail_mass,
)
from photonswap.states import FockVector, mirror_fock, product_vector
from photonswap.topology import coupling_from_graph, engineered_chain, hypercube, path_graph


def test_fock_space_enumeration():
    space = FockSpace(3, 2)
    assert space.dim == 27
    seen = {space.occupations(i) for i in range(space.dim)}
    assert len(seen) == 27
    for i in range(space.dim):
        assert space.index(space.occupations(i)) == i
    assert space.occupations(1) == (0, 0, 1)


def test_single_mode_hamiltonian():
    h = build_hamiltonian(np.zeros((1, 1)), 1.5, FockSpace(1, 2))
    np.testing.assert_allclose(h.toarray(), np.diag([0, 1.5, 3.0]))


def test_two_node_single_excitation_block():
    c = coupling_from_graph(path_graph(2), 0.8)
    space = FockSpace(2, 1)
    h = build_hamiltonian(c, 2.0, space).toarray()
    idx = [space.index((1, 0)), space.index((0, 1))]
    np.testing.assert_allclose(h[np.ix_(idx, idx)], [[2.0, 0.8], [0.8, 2.0]])
    assert np.abs(h - h.conj().T).max() == 0


def test_single_excitation_sector_matches_propagator():
    # In the one-photon sector exp(-iHt) restricted to nodes is exp(-iKt) = conj(exp(iKt)).
    c = coupling_from_graph(hypercube(2, 2), 0.6)
    space = FockSpace(9, 1)
    h = build_hamiltonian(c, 0.0, space)
    t = 0.83
    u = propagate(decompose(c), t).matrix
    for m in (0, 4, 7):
        occ = [0] * 9
        occ[m] = 1
        psi0 = np.zeros(space.dim, complex)
        psi0[space.index(occ)] = 1
        psi = evolve_exact(h, psi0, t)
        for v in range(9):
            occ_v = [0] * 9
            occ_v[v] = 1
            assert psi[space.index(occ_v)] == pytest.approx(np.conj(u[v, m]), abs=1e-10)


def test_dimension_guard():
    with pytest.raises(OracleError):
        build_hamiltonian(coupling_from_graph(hypercube(1, 3), 1.0), 0.0, FockSpace(8, 4))
    with pytest.raises(OracleError):
        build_hamiltonian(coupling_from_graph(path_graph(2), 1.0), 0.0, FockSpace(3, 1))


def test_evolve_exact_basics(rng):
    c = engineered_chain(3, 1.0)
    space = FockSpace(3, 2)
    h = build_hamiltonian(c, 0.5, space)
    psi0 = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
    psi0 /= np.linalg.norm(psi0)
    np.testing.assert_array_equal(evolve_exact(h, psi0, 0.0), psi0)
    psi = evolve_exact(h, psi0, 2.3)
    assert abs(np.linalg.norm(psi) - 1) < 1e-9
    num = space.total_number()
    assert abs(np.vdot(psi, num @ psi) - np.vdot(psi0, num @ psi0)) < 1e-9
    with pytest.raises(OracleError):
        evolve_exact(h, psi0[:-1] / np.linalg.norm(psi0[:-1]), 1.0)


def test_sparse_path_agrees_with_dense(rng, monkeypatch):
    import photonswap.oracle as oracle

    c = engineered_chain(4, 0.9)
    space = FockSpace(4, 2)
    h = build_hamiltonian(c, 0.3, space)
    psi0 = rng.standard_normal(space.dim) + 0j
    psi0 /= np.linalg.norm(psi0)
    dense = evolve_exact(h, psi0, 1.7)
    monkeypatch.setattr(oracle, "DENSE_DIM", 10)
    sparse = evolve_exact(h, psi0, 1.7)
    np.testing.assert_allclose(sparse, dense, atol=1e-10)


def test_single_photon_engineered_chain_3():
    c = engineered_chain(3, 1.0)
    space = FockSpace(3, 1)
    h = build_hamiltonian(c, 0.0, space)
    psi0 = np.zeros(space.dim, complex)
    psi0[space.index((1, 0, 0))] = 1
    psi = evolve_exact(h, psi0, optimal_time_for(c))
    # Schrodinger amplitude is conj(i^2) = -1, all weight on the last node
    assert psi[space.index((0, 0, 1))] == pytest.approx(np.conj(1j**2), abs=1e-12)


@pytest.mark.parametrize("coupling", [coupling_from_graph(path_graph(2), 1.3),
                                      coupling_from_graph(path_graph(3), 0.7),
                                      engineered_chain(3, 1.0),
                                      engineered_chain(4, 0.5)],
                         ids=["P2", "P3", "chain3", "chain4"])
def test_mirror_fock_matches_exact_evolution(coupling, rng):
    omega = 0.9
    tau = optimal_time_for(coupling)
    p0 = ideal_phase(coupling) * np.exp(1j * omega * tau)
    node0 = FockVector.normalized(rng.standard_normal(4) + 1j * rng.standard_normal(4))
    res = check_mirror(coupling, tau, p0, node0, omega)
    assert res.overlap >= 1 - 1e-8
    assert res.photon_drift < 1e-9


def test_mirror_every_node_occupied(rng):
    # Product input with every node excited: the mirror must reverse the whole product.
    c = engineered_chain(3, 1.2)
    tau = optimal_time_for(c)
    p0 = p0_phase(0.4, tau, 2)
    state = tuple(FockVector.normalized(rng.standard_normal(3) + 1j * rng.standard_normal(3)) for _ in range(3))
    space = FockSpace(3, 6)
    h = build_hamiltonian(c, 0.4, space)
    # embed 3-level node states in the 7-level space so no photon count is truncated
    padded = tuple(FockVector(np.concatenate([s.coeffs, np.zeros(4)])) for s in state)
    psi = evolve_exact(h, product_vector(padded), tau)
    expected = product_vector(mirror_fock(padded, p0))
    assert abs(np.vdot(expected, psi)) ** 2 > 1 - 1e-8


def test_coherent_transfer():
    c = coupling_from_graph(path_graph(2), 1.0)
    tau = optimal_time_for(c)
    res = check_mirror_coherent(c, tau, p0_phase(0.2, tau, 1), 0.9 - 0.6j, 0.2)
    assert res.tail_mass < 1e-8
    assert res.overlap >= 1 - 1e-6


def test_coherent_cutoff_tail():
    for a in (0.1, 1.0, 2.5, 4.0):
        assert tail_mass(a, coherent_cutoff(a)) < 1e-8


def test_displacement_expectation_limits():
    assert displacement_expectation(0.7, 1.0, 0.0) == pytest.approx(np.exp(-0.49 / 2))
    # n_T = 1 at w = T ln 2
    t = 0.8
    assert displacement_expectation(0.5j, t * np.log(2), t) == pytest.approx(np.exp(-1.5 * 0.25), rel=1e-14)


def test_discrete_dephasing_exact_cases(rng):
    spec = BathSpec.discrete(rng.uniform(0.2, 3, 7), rng.uniform(0, 0.5, 7), r=0.8)
    assert discrete_dephasing_exact(0, spec, 1.1, 2.0) == 1.0
    v0 = vacuum_factor(spec, 2, 1.1)
    assert discrete_dephasing_exact(2, spec, 1.1, 0.0) == pytest.approx(v0, rel=1e-13)
    w = 0.5 * np.log(2)
    single = BathSpec.discrete([w], [0.3], r=1.0)
    tau = 2.0
    beta_sq = 0.3 * 4 * np.sin(w * tau / 2) ** 2 / w**2
    expect = np.exp(-1.5 * beta_sq)
    assert discrete_dephasing_exact(1, single, tau, 0.5) == pytest.approx(expect, rel=1e-13)
    assert vacuum_factor(single, 1, tau) * thermal_factor(single, 1, tau, 0.5) == pytest.approx(expect, rel=1e-13)
    with pytest.raises(OracleError):
        discrete_dephasing_exact(1, BathSpec.ohmic(1, 1), 1.0, 0.0)
