"""Multimatroids and the activity expansions of their transition polynomials."""

from .core import Carrier, Multimatroid, MultimatroidError, PreconditionError, bar, dot, hat
from .expansions import (
    activities_expansion,
    basis_activities,
    basis_classes,
    class_expansion,
    cocompatible_expansion,
    cocompatible_transversals,
    interval_family,
    transition_direct,
    transition_recursive,
)
from .io import bundled, load_object
from .kernels import BACKEND
from .matroid_delta import DeltaMatroid, Matroid, lift_delta, lift_matroid
from .poly import T, Polynomial
from .ribbon import RibbonGraph, lift_ribbon, ribbon_delta, topo_transition_direct

__all__ = [
    "BACKEND",
    "Carrier",
    "DeltaMatroid",
    "Matroid",
    "Multimatroid",
    "MultimatroidError",
    "Polynomial",
    "PreconditionError",
    "RibbonGraph",
    "T",
    "activities_expansion",
    "bar",
    "basis_activities",
    "basis_classes",
    "bundled",
    "class_expansion",
    "cocompatible_expansion",
    "cocompatible_transversals",
    "dot",
    "hat",
    "interval_family",
    "lift_delta",
    "lift_matroid",
    "lift_ribbon",
    "load_object",
    "ribbon_delta",
    "topo_transition_direct",
    "transition_direct",
    "transition_recursive",
]
