import logging
from typing import List, Sequence, Tuple

from pydantic import BaseModel

from dgmodcat.duality.dualizability import is_dualizable
from dgmodcat.graded.operations import vectorize
from dgmodcat.linalg.elimination import solve_right
from dgmodcat.limits.presentations import free_presentation
from dgmodcat.limits.semifree import recognize_fg_semifree
from dgmodcat.module_category.dg_module import DGModule
from dgmodcat.module_category.hom_tensor import hom_module_vectors
from dgmodcat.system.constants import DEFAULT_DEGREE_BOUND, DEFAULT_LENGTH_BOUND
from dgmodcat.system.exceptions import UnsupportedInstanceError

logger = logging.getLogger(__name__)


def is_projective_ring_case(module: DGModule) -> bool:
    """
    Over a ring, X is projective iff id_X lifts through the free cover g : L0 -> X, i.e.
    g o s = id_X for some module map s : X -> L0.
    """
    if not module.algebra.is_ring:
        raise UnsupportedInstanceError("is_projective_ring_case needs an algebra concentrated in degree 0")
    presentation = free_presentation(module)
    cover = presentation.cover
    basis = hom_module_vectors(module, cover.source)
    composed = cover.matrix.kron(module.carrier.identity()) @ basis
    lifted = solve_right(composed, vectorize(module.carrier.identity())) is not None
    logger.debug(f"{module.name}: identity {'lifts' if lifted else 'does not lift'} through the free cover")
    return lifted


class GapCandidate(BaseModel):
    algebra: str
    module: str
    dimension: int


class GapSearchReport(BaseModel):
    """Dualizable modules on which the bounded semi-free recognizer came back empty."""

    examined: int = 0
    dualizable: int = 0
    recognized: int = 0
    degree_bound: int = DEFAULT_DEGREE_BOUND
    length_bound: int = DEFAULT_LENGTH_BOUND
    inconclusive: List[GapCandidate] = []


def search_semiprojective_gap(
    named_modules: Sequence[Tuple[str, DGModule]],
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    length_bound: int = DEFAULT_LENGTH_BOUND,
) -> GapSearchReport:
    """
    Look for dualizable modules that are not finitely generated semi-free within the bounds.

    A listed candidate only means the bounded search was inconclusive; the report asserts
    nothing about whether such modules exist.
    """
    report = GapSearchReport(degree_bound=degree_bound, length_bound=length_bound)
    for name, module in named_modules:
        report.examined += 1
        if not is_dualizable(module).dualizable:
            continue
        report.dualizable += 1
        if recognize_fg_semifree(module, degree_bound, length_bound) is not None:
            report.recognized += 1
            continue
        report.inconclusive.append(
            GapCandidate(algebra=module.algebra.name, module=name, dimension=module.dim)
        )
    logger.info(
        f"Gap search: {report.dualizable} dualizable of {report.examined}, "
        f"{len(report.inconclusive)} without a filtration in bounds"
    )
    return report
