"""Hybrid tree-tensor-network model, contraction engines, and pipelines."""

from .construct import build_M, build_MA, build_N
from .contract import MC_EXACT_CAP, contract_hermitian, contract_montecarlo, contract_svd
from .estimation import EstimationConfig, ShotEstimate
from .model import (
    ContractedMatrix,
    HTNState,
    IndexedUnitary,
    InitStateMapped,
    Role,
    SubsystemObservable,
)
from .oracle import oracle_dense, oracle_expectation, oracle_norm, oracle_transition
from .pipeline import (
    AmplitudeResult,
    ExpectationResult,
    amplitude_details,
    expectation,
    expectation_details,
    normalization,
    normalization_squared,
    overlap,
    transition_amplitude,
)
from .random import random_htn_state

__all__ = [
    "AmplitudeResult",
    "ContractedMatrix",
    "EstimationConfig",
    "ExpectationResult",
    "HTNState",
    "IndexedUnitary",
    "InitStateMapped",
    "MC_EXACT_CAP",
    "Role",
    "ShotEstimate",
    "SubsystemObservable",
    "amplitude_details",
    "build_M",
    "build_MA",
    "build_N",
    "contract_hermitian",
    "contract_montecarlo",
    "contract_svd",
    "expectation",
    "expectation_details",
    "normalization",
    "normalization_squared",
    "oracle_dense",
    "oracle_expectation",
    "oracle_norm",
    "oracle_transition",
    "overlap",
    "random_htn_state",
    "transition_amplitude",
]
