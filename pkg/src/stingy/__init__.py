"""Classical and quantum stinginess measures over dense qubit registers."""

from .channels import QuantumChannel, apply_channel, make_channel, standard_channel
from .metrics import DistanceMeasure, get_distance, hs_distance_normalized, trace_distance
from .qregister import (
    DensityMatrix,
    ProductBasis,
    PureState,
    QubitSubset,
    basis_state,
    make_density,
    make_pure,
    partial_trace,
    pure_to_density,
    reduced_basis_state,
)
from .stinginess import (
    INFINITE,
    ClassicalComb,
    FreeSetSpec,
    MeasureWitness,
    NoViolationFound,
    SamplerConfig,
    StinginessValue,
    ViolationFound,
    falsify_free_operation,
    is_free,
    reset_decision,
    s_classical,
    s_quantum,
    s_quantum_bruteforce,
)

__version__ = "0.1.0"
