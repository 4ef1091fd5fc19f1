from .core import DEFAULT_CAP, CapExceeded, FiniteGroup, GroupError
from .families import (
    abelian,
    alternating,
    cyclic,
    direct_product,
    generalized_dihedral,
    load_sporadic,
    projective_special_linear,
    quaternion,
    semidirect_cyclic,
    special_linear,
    symmetric,
)
from .spec import GroupSpec, build, parse_spec

__all__ = [
    "DEFAULT_CAP", "CapExceeded", "FiniteGroup", "GroupError", "GroupSpec",
    "abelian", "alternating", "build", "cyclic", "direct_product",
    "generalized_dihedral", "load_sporadic", "parse_spec",
    "projective_special_linear", "quaternion", "semidirect_cyclic",
    "special_linear", "symmetric",
]
