"""Quantum correlations of small bipartite density matrices.

Mutual information, classical correlation, left and right quantum discord
with projective measurements, and the relative entropy of discord, built
on SU(N) Fano decompositions and local dephasing.
"""
from .discord import CorrelationReport, brute_force_oracle, classical_correlation, mutual_information, quantum_discord
from .errors import (
    ConsistencyError,
    ConvergenceFailure,
    DimensionMismatch,
    DiscordiumError,
    IndexOutOfRange,
    MissingBasis,
    NotHermitian,
    NotPositive,
    ParameterOutOfRange,
    ParseError,
    SupportViolation,
    TraceNotOne,
    UnsupportedDimension,
    ValidationError,
)
from .linalg import (
    DensityMatrix,
    eigh,
    partial_trace,
    relative_entropy,
    shannon_entropy,
    tensor,
    validate_density,
    von_neumann_entropy,
)
from .measurement import (
    BasisParams,
    ProjectiveBasis,
    basis_from_params,
    computational_basis,
    conditional_entropy,
    dephase,
    measure_subsystem,
)
from .optimizer import OptimizerConfig
from .reldiscord import ClassicalityReport, classicality_conditions, closest_classical, relative_discord
from .sun import FanoCoefficients, fano_compose, fano_decompose, gell_mann, generators, pauli
from .xstate import QubitQutritParams, XState2Params, example_state, qubit_qutrit_state, x2_state

__version__ = "0.1.0"
