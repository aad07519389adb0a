"""Koch matrices, quasi-resonances and splitting exponents for complex cubic frequencies."""

import json

from ._cubicsplit import (
    Analysis,
    CubicsplitError,
    Estimate,
    J1Star,
    __version__,
    analyze,
    c0,
    cc,
    intersect,
    lg,
    preset_names,
    verify,
)


def koch(preset="cubic-golden"):
    return json.loads(Analysis(preset).koch_json())


def constants(preset="cubic-golden"):
    return json.loads(Analysis(preset).constants_json())


__all__ = [
    "Analysis",
    "CubicsplitError",
    "Estimate",
    "J1Star",
    "__version__",
    "analyze",
    "c0",
    "cc",
    "constants",
    "intersect",
    "koch",
    "lg",
    "preset_names",
    "verify",
]
