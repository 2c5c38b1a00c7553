"""Commuting-family measurement scheduling for second-quantized Hamiltonians.

The package turns the two-body excitation terms of an n-mode Hamiltonian
into O(n^3) certified-commuting families of Pauli strings.  The schedule
behind the grouping depends only on n, so it can be computed once and
cached per register size.
"""

from .baranyai import PartialState, Schedule, apply_step, build_schedule, build_step_network, pad_and_build
from .fermion import (
    FermionicTerm,
    JwPattern,
    UnsupportedTermError,
    jw_excitation,
    jw_ladder,
    jw_term,
    matches_pattern,
    pattern_of,
)
from .flows import FlowNetwork, ScaledFlow, check_flow, flow_value, max_flow_integral, round_flow
from .partition import (
    CommutingFamily,
    HamiltonianCoefficients,
    PartitionReport,
    build_partition,
    commuting_families,
    load_coefficients,
    load_schedule,
    residual_families,
    save_families,
    save_schedule,
    schedule_for,
)
from .pauli import (
    ExactComplex,
    PauliString,
    WeightedPauliString,
    anticommuting_index_count,
    commutes,
    format_pauli,
    multiply,
    parse_pauli,
)

__version__ = "0.1.0"
