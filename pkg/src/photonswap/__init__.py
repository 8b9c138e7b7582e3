"""Multi-photon state transfer in coupled-resonator networks.

Hypercubic networks built from P2/P3 and Jx-engineered chains mirror every
bosonic state about their centre at a fixed time.  This package builds those
networks, certifies the mirror propagators, and evaluates how a thermal
pure-dephasing bath degrades the resulting SWAP gate.
"""

from .topology import (
    CouplingMatrix,
    Graph,
    TopologyError,
    antipode,
    cartesian_power,
    coupling_from_graph,
    custom_coupling,
    engineered_chain,
    hypercube,
    path_graph,
)
from .evolution import (
    Propagator,
    SpectralDecomposition,
    SwapCertificate,
    certify,
    decompose,
    find_pst_time,
    ideal_phase,
    multimode_phase,
    optimal_time,
    optimal_time_for,
    p0_phase,
    propagate,
    transfer_amplitude,
    verify_swap,
)
from .states import (
    CoherentAmplitude,
    EntangledTag,
    FockVector,
    Vacuum,
    apply_swap_coherent,
    apply_swap_entangled,
    mirror_fock,
)
from .bath import (
    BathSpec,
    DephasingTable,
    dephasing_table,
    discretize_ohmic,
    dressed_coefficients,
    eta_abs_sq,
    f_number,
    thermal_factor,
    thermal_integral,
    vacuum_factor,
)
from .fidelity import (
    FidelityResult,
    average_fidelity_haar,
    average_fidelity_mc,
    fidelity_floor,
    fidelity_sweep,
)
from .oracle import FockSpace, check_mirror, check_mirror_coherent, discrete_dephasing_exact

__version__ = "0.1.0"
