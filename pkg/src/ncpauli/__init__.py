"""Noncontextual Pauli Hamiltonians: structure, spectrum and stabilizer-sum eigenstates."""
from .clifford import CliffordMap, conjugate, project_sector, sector_block, tapering_map, verify_z2
from .eigenstate import StabilizerSum, StabilizerTableau, anchor_state, build_eigenstate, rank_bound
from .exceptions import *  # noqa: F401,F403
from .io import dumps, load, loads, save
from .partitioning import (
    NormalizedACSum,
    ReductionResult,
    RotationPlan,
    build_lcu_plan,
    build_sequence_plan,
    conjugate_by_plan,
    normalize,
    reduce_to_pauli,
)
from .pauli import PauliOperator, PauliSum, commutes, jordan_product, multiply
from .spectrum import (
    GroundResult,
    SectorValues,
    SpectrumSummary,
    full_spectrum,
    ground_search,
    projector,
    sector_energies,
    sector_values,
)
from .structure import (
    CompatibilityGraph,
    Decomposition,
    build_graph,
    clique_partition,
    enumerate_closure,
    extract_generators,
    find_witness,
    is_noncontextual,
    max_support_bound,
    table_of_bounds,
    to_dot,
    universally_commuting,
)

__version__ = "0.1.0"
