"""
Equitable random graph ensembles: models, feasibility, sampling, serialization
"""
from src.ensemble.models import BlockModel, ConnectivityMatrix, Graph, Partition, modular_model
from src.ensemble.validation import DimensionMismatchError, validate_model, verify_equitable
from src.ensemble.sampler import SamplerError, sample
from src.ensemble.io import (
    ModelFileError,
    dump_model,
    load_model,
    parse_model,
    read_edge_list,
    write_edge_list,
)

__all__ = [
    "BlockModel",
    "ConnectivityMatrix",
    "Graph",
    "Partition",
    "modular_model",
    "DimensionMismatchError",
    "validate_model",
    "verify_equitable",
    "SamplerError",
    "sample",
    "ModelFileError",
    "dump_model",
    "load_model",
    "parse_model",
    "read_edge_list",
    "write_edge_list",
]
