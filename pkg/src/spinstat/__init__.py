"""Spin-statistics multiplicities of zero-weight SU(2n) representations."""

from .engine import (
    MultiplicityReport,
    Problem,
    a_class,
    a_identity,
    beta_of,
    classify,
    nu,
    nu_sum_weighted,
)
from .oracle import QuadratureSpec, equal_spin_dim, nu_oracle, zero_weight_dim
from .tableaux import Partition, conjugate, contains, make_partition, parse_partition, partitions_of

__all__ = [
    "MultiplicityReport",
    "Partition",
    "Problem",
    "QuadratureSpec",
    "a_class",
    "a_identity",
    "beta_of",
    "classify",
    "conjugate",
    "contains",
    "equal_spin_dim",
    "make_partition",
    "nu",
    "nu_oracle",
    "nu_sum_weighted",
    "parse_partition",
    "partitions_of",
    "zero_weight_dim",
]
