"""Binuclear intervals of finite lattices and torsion-class lattices of type-A path algebras."""

from .binuclear import (
    BinucPoset,
    IntervalClass,
    binuclear_intervals,
    build_ni_order,
    check_bez,
    classify_interval,
    ice_intervals,
    is_binuclear_lattice,
    ni_join,
    ni_meet,
    pop_down,
    pop_up,
)
from .lattice import (
    FinLattice,
    Interval,
    Verdict,
    build_lattice,
    build_poset,
    export_dot,
    generate,
    is_lattice,
    join,
    lattice_from_json,
    lattice_to_json,
    meet,
)
from .semidistrib import (
    IrreducibleData,
    KappaMap,
    check_kappa_properties,
    check_semidistributivity,
    irreducibles,
    kappa,
    kappa_dual,
    kappa_map,
    kappa_ni,
    verify_cjirr_binuc,
)

__all__ = [
    "BinucPoset", "IntervalClass", "binuclear_intervals", "build_ni_order", "check_bez",
    "classify_interval", "ice_intervals", "is_binuclear_lattice", "ni_join", "ni_meet",
    "pop_down", "pop_up",
    "FinLattice", "Interval", "Verdict", "build_lattice", "build_poset", "export_dot", "generate",
    "is_lattice", "join", "lattice_from_json", "lattice_to_json", "meet",
    "IrreducibleData", "KappaMap", "check_kappa_properties", "check_semidistributivity",
    "irreducibles", "kappa", "kappa_dual", "kappa_map", "kappa_ni", "verify_cjirr_binuc",
]
