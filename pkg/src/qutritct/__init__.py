"""Exact canonical forms, synthesis and verification for single-qutrit Clifford+T operators."""

from .adjoint import Adj8, adjoint_from_matrix, adjoint_of_word, symplectic_check
from .core import Gate, Mat3, Word, build_clifford_tables, generator_matrix, word_to_matrix
from .errors import (
    CircuitSyntaxError,
    ConversionError,
    DomainError,
    InternalConsistencyError,
    NotCliffordTError,
    QutritError,
)
from .normal_form import (
    CanonicalForm,
    ChannelForm,
    count_canonical,
    enumerate_canonical,
    from_channel,
    normalize,
    parse_canonical,
    parse_circuit,
    render_canonical,
    render_channel,
    to_channel,
    to_matrix,
    to_word,
    tp_gate,
)
from .oracle import bfs_operators, verify_optimality, verify_uniqueness
from .rings import AlphaRational, CycInt9, Dyadic, GammaRational
from .synthesis import synthesize_from_adjoint, synthesize_from_matrix

__version__ = "0.1.0"

__all__ = [
    "Adj8",
    "AlphaRational",
    "CanonicalForm",
    "ChannelForm",
    "CircuitSyntaxError",
    "ConversionError",
    "CycInt9",
    "DomainError",
    "Dyadic",
    "GammaRational",
    "Gate",
    "InternalConsistencyError",
    "Mat3",
    "NotCliffordTError",
    "QutritError",
    "Word",
    "adjoint_from_matrix",
    "adjoint_of_word",
    "bfs_operators",
    "build_clifford_tables",
    "count_canonical",
    "enumerate_canonical",
    "from_channel",
    "generator_matrix",
    "normalize",
    "parse_canonical",
    "parse_circuit",
    "render_canonical",
    "render_channel",
    "symplectic_check",
    "synthesize_from_adjoint",
    "synthesize_from_matrix",
    "to_channel",
    "to_matrix",
    "to_word",
    "tp_gate",
    "verify_optimality",
    "verify_uniqueness",
    "word_to_matrix",
    "__version__",
]
