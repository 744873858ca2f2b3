from dgmodcat.limits.directed_system import Colimit, DirectedSystem, colimit, factor_through_stage
from dgmodcat.limits.factorization import Factorization, lazard_factorize
from dgmodcat.limits.presentations import (
    FreePresentation,
    free_cover,
    free_presentation,
    presentation_from_cover,
    relation_kernel,
)
from dgmodcat.limits.semifree import SemiFreeFiltration, recognize_fg_semifree
