"""Finite-model workbench for pseudo BCK-algebras."""

from .core import (
    CARRIER_CAP,
    FiniteAlgebra,
    System,
    boundedness_profile,
    check_axiom_system,
    check_basic_laws,
    derive_order,
    direct_product,
    structure_kind,
)
from .errors import PsBCKError
from .io import dumps, load_algebra, parse_text
from .laws import CheckReport

__version__ = "0.1.0"

__all__ = [
    "CARRIER_CAP",
    "CheckReport",
    "FiniteAlgebra",
    "PsBCKError",
    "System",
    "boundedness_profile",
    "check_axiom_system",
    "check_basic_laws",
    "derive_order",
    "direct_product",
    "dumps",
    "load_algebra",
    "parse_text",
    "structure_kind",
]
