"""Groebner bases for ideals and submodules of free modules, with syzygies."""

from .basis import GroebnerBasis, eliminate, eliminate_polys, groebner_basis, kernel_of_ring_map, normal_form
from .engine import GBState, ModuleOrder, get_step_limit, step_limit
from .matrix import Matrix
from .resolution import FreeResolution, minimal_free_resolution, projective_dimension
from .syzygy import SubmoduleGB, columns_in, kernel, lift_vector, lift_vectors, minimize_columns, same_image, syzygies

__all__ = [
    "FreeResolution",
    "GBState",
    "GroebnerBasis",
    "Matrix",
    "ModuleOrder",
    "SubmoduleGB",
    "columns_in",
    "eliminate",
    "eliminate_polys",
    "get_step_limit",
    "groebner_basis",
    "kernel",
    "kernel_of_ring_map",
    "lift_vector",
    "lift_vectors",
    "minimal_free_resolution",
    "minimize_columns",
    "normal_form",
    "projective_dimension",
    "same_image",
    "step_limit",
    "syzygies",
]
