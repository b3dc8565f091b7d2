"""Exact q-series and enumeration toolkit for separable partition classes."""

from ._backend import BACKEND
from .partitions import (
    ABK,
    KPART,
    MKR,
    OKR,
    ClassSpec,
    OverPart,
    Overpartition,
    class_gf_enumerated,
    count_by_stats,
    enumerate_class,
    parse_class,
    parse_partition,
    phi,
    validate,
)
from .series import Monomial, QBinomial, TruncatedSeries, gaussian

__all__ = [
    "ABK",
    "BACKEND",
    "KPART",
    "MKR",
    "OKR",
    "ClassSpec",
    "Monomial",
    "OverPart",
    "Overpartition",
    "QBinomial",
    "TruncatedSeries",
    "class_gf_enumerated",
    "count_by_stats",
    "enumerate_class",
    "gaussian",
    "parse_class",
    "parse_partition",
    "phi",
    "validate",
]

__version__ = "0.1.0"
