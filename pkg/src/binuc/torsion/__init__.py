"""Torsion classes of representation-finite algebras given combinatorially."""

from .algebra import AlgebraSpec, Indec, Ses, Subcat, load_algebra, to_json, validate
from .stability import (
    ConeData,
    TauRigidPair,
    cone_data,
    enumerate_presilting,
    fss_cover_check,
    hasse_vs_incidence,
    interval_dim,
    sample_thetas,
    semistable_classes,
    tau_rigid_pairs,
    tf_interval,
)
from .tors import (
    TorsData,
    bricks_and_kappa,
    cw_partition,
    enumerate_tors,
    heart,
    is_torsion_class,
    left_perp,
    res_interval,
    right_perp,
    star,
    tors_closure,
    tors_to_json,
)
from .typea import gen_linear_An

__all__ = [
    "AlgebraSpec", "Indec", "Ses", "Subcat", "load_algebra", "to_json", "validate",
    "ConeData", "TauRigidPair", "cone_data", "enumerate_presilting", "fss_cover_check",
    "hasse_vs_incidence", "interval_dim", "sample_thetas", "semistable_classes", "tau_rigid_pairs", "tf_interval",
    "TorsData", "bricks_and_kappa", "cw_partition", "enumerate_tors", "heart",
    "is_torsion_class", "left_perp", "res_interval", "right_perp", "star", "tors_closure", "tors_to_json",
    "gen_linear_An",
]
