"""
Energy transfer between colored partition families defined by a 0/1 minimal-energy matrix
"""
from .services.partition_space import difference_matrix, enumerate_partitions, validate
from .services.predictors import predict_phi, predict_psi
from .services.transfer import lambda_cross, phi, phi_dual, psi, psi_dual
from .utils.energy_utils import named_energy, overpartition_energy
from .utils.file_utils import energy_from_file, parse_partition
from .utils.models import BoundSpec, ColoredPartition, CrossingStrategy, MinimalEnergy, Side

__version__ = "0.1.0"

__all__ = [
    "BoundSpec",
    "ColoredPartition",
    "CrossingStrategy",
    "MinimalEnergy",
    "Side",
    "difference_matrix",
    "energy_from_file",
    "enumerate_partitions",
    "lambda_cross",
    "named_energy",
    "overpartition_energy",
    "parse_partition",
    "phi",
    "phi_dual",
    "predict_phi",
    "predict_psi",
    "psi",
    "psi_dual",
    "validate",
]
