"""Exact perfect state transfer and periodicity for continuous-time quantum walks."""

from pairwalk.algebra import (
    FactoredSpectrum,
    HamiltonianKind,
    Integer,
    IntPoly,
    Opaque,
    Quadratic,
    Rational,
    char_poly,
    factor_linear_quadratic,
    hamiltonian,
    krylov_min_poly,
)
from pairwalk.canon import canonical_form, enumerate_connected, enumerate_graphs, enumerate_trees, is_isomorphic
from pairwalk.graphs import Graph, ParameterError, build_named
from pairwalk.numeric import EigenDecomposition, SpectralMismatch, eigendecompose, fidelity, fidelity_curve
from pairwalk.survey import Convention, ScanConfig, SurveyRow, scan_graph, survey, tree_scan
from pairwalk.transfer import (
    ConsistencyError,
    Form,
    PiTime,
    QuantumState,
    TransferReport,
    Verdict,
    analyze,
    find_partner,
    is_fixed,
    periodicity,
    pst_decide,
    strong_cospectrality,
    support,
)

__all__ = [
    "ConsistencyError", "Convention", "EigenDecomposition", "FactoredSpectrum", "Form", "Graph",
    "HamiltonianKind", "IntPoly", "Integer", "Opaque", "ParameterError", "PiTime", "Quadratic",
    "QuantumState", "Rational", "ScanConfig", "SpectralMismatch", "SurveyRow", "TransferReport",
    "Verdict", "analyze", "build_named", "canonical_form", "char_poly", "eigendecompose", "enumerate_connected",
    "enumerate_graphs", "enumerate_trees", "factor_linear_quadratic", "fidelity", "find_partner", "fidelity_curve",
    "hamiltonian", "is_fixed", "is_isomorphic", "krylov_min_poly", "periodicity", "pst_decide",
    "scan_graph", "strong_cospectrality", "support", "survey", "tree_scan",
]
