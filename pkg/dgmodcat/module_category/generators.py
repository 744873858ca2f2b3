import logging
from typing import List, Optional, Sequence

from dgmodcat.linalg.elimination import image_basis, rank
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.dg_module import DGModule
from dgmodcat.system.exceptions import InvalidStructureError

logger = logging.getLogger(__name__)


def orbit_columns(module: DGModule, vector: Matrix, with_differential: bool) -> Matrix:
    """Columns b . v for every basis element b of A, followed by b . dv when asked."""
    algebra = module.algebra
    seeds = [vector, module.differential @ vector] if with_differential else [vector]
    return Matrix.hstack(
        module.field,
        module.dim,
        [module.left_operator(algebra.basis_vector(b)) @ seed for seed in seeds for b in range(algebra.dim)],
    )


def greedy_generators(
    module: DGModule,
    candidates: Sequence[Matrix],
    target_rank: int,
    with_differential: bool = False,
    order: Optional[Sequence[int]] = None,
) -> List[int]:
    """
    Pick candidates one at a time, always the one whose orbit adds the most to the span of the
    orbits picked so far; ties go to the earliest candidate in ``order``.

    :return: Indices into ``candidates``, in the order they were picked.
    """
    order = list(order) if order is not None else list(range(len(candidates)))
    if sorted(order) != list(range(len(candidates))):
        raise ValueError("Candidate order must be a permutation of the candidates")
    field = module.field
    orbits = {c: orbit_columns(module, candidates[c], with_differential) for c in order}
    chosen: List[int] = []
    span = Matrix.zeros(field, module.dim, 0)
    current = 0
    while current < target_rank:
        best, best_gain, best_span = None, 0, None
        for c in order:
            if c in chosen:
                continue
            combined = Matrix.hstack(field, module.dim, [span, orbits[c]])
            gain = rank(combined) - current
            if gain > best_gain:
                best, best_gain, best_span = c, gain, combined
        if best is None:
            logger.error(f"Candidates stall at rank {current} of {target_rank}")
            raise InvalidStructureError("Candidates do not generate the requested submodule")
        chosen.append(best)
        span = image_basis(best_span)
        current += best_gain
    logger.debug(f"Picked {len(chosen)} generators of {module.name} out of {len(candidates)} candidates")
    return chosen
