"""Electrical-structure analysis and minimum PMU placement for power grids."""

from .caseio import (Branch, Bus, BusKind, CaseParseError,
                     CaseValidationError, PowerCase, parse_case,
                     serialize_case, validate_case)
from .eadj import BinaryAdjacency, ThresholdResult, threshold_adjacency
from .netmat import (AdmittanceMatrix, PAngleJacobian, VoltageProfile,
                     build_ybus, flat_profile, power_angle_jacobian,
                     topological_adjacency)
from .placement import (PlacementResult, brute_force_placement, greedy_cover,
                        solve_placement)
from .resistance import (GroundedInverse, MetricReport, ResistanceMatrix,
                         SingularNetworkError, check_metric,
                         ground_and_invert, resistance_matrix)
from .structural import (ComponentDecomposition, HeuristicPlacement,
                         LambdaVector, connected_components,
                         consistency_check, heuristic_placement,
                         lambda_vector)

__version__ = "0.1.0"

__all__ = [
    "AdmittanceMatrix", "BinaryAdjacency", "Branch", "Bus", "BusKind",
    "CaseParseError", "CaseValidationError", "ComponentDecomposition",
    "GroundedInverse", "HeuristicPlacement", "LambdaVector", "MetricReport",
    "PAngleJacobian", "PlacementResult", "PowerCase", "ResistanceMatrix",
    "SingularNetworkError", "ThresholdResult", "VoltageProfile",
    "brute_force_placement", "build_ybus", "check_metric",
    "connected_components", "consistency_check", "flat_profile",
    "ground_and_invert", "greedy_cover", "heuristic_placement",
    "lambda_vector", "parse_case", "power_angle_jacobian",
    "resistance_matrix", "serialize_case", "solve_placement",
    "threshold_adjacency", "topological_adjacency", "validate_case",
]
