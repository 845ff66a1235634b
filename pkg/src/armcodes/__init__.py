"""Armstrong codes over bounded domains.

Constructions, independent verifiers, exact bounds, and exhaustive searches
for q-ary codes realizing minimal-key systems, together with the double
cover and group divisible design machinery they are built from.
"""

from .report import (
    CeilingError,
    PreconditionError,
    StructureError,
    VerificationReport,
)
from .designs import (
    INF,
    BasePartition,
    GddDesign,
    Partition,
    PartitionSystem,
    PointSet,
    develop_base_partition,
    graph_type_of,
    verify_base_partition,
    verify_double_cover,
    verify_gdd,
)
from .codes import (
    ArmstrongCode,
    agreement_set,
    min_distance,
    verify_armstrong,
    verify_st_armstrong,
)
from .gf import Field, field_arith, field_make, poly_eval

__all__ = [
    "ArmstrongCode", "BasePartition", "CeilingError", "Field", "GddDesign",
    "INF", "Partition", "PartitionSystem", "PointSet", "PreconditionError",
    "StructureError", "VerificationReport", "agreement_set",
    "develop_base_partition", "field_arith", "field_make", "graph_type_of",
    "min_distance", "poly_eval", "verify_armstrong", "verify_base_partition",
    "verify_double_cover", "verify_gdd", "verify_st_armstrong",
]

__version__ = "0.1.0"
