import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from dgmodcat.graded.operations import is_exact
from dgmodcat.linalg.elimination import rank
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import (
    Submodule,
    direct_sum,
    identity_map,
    module_cone,
    opposite_module,
    regular_module,
    restrict_side,
    shift_module,
    submodule_kernel,
    zero_module,
)
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.module_category.generators import greedy_generators
from dgmodcat.module_category.hom_tensor import hom_module_vectors
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidBatteryError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjectivePresentation:
    """
    0 -> K -> P -> X -> 0 with P a sum of cones cone(Id_{Sigma^(m-1) A}), one per generator of
    degree m.
    """

    module: DGModule
    projective: DGModule
    epi: ModuleMap
    kernel: Submodule
    generator_degrees: List[int]
    generators: List[Matrix]


def identity_cone(algebra, degree: int) -> DGModule:
    """cone(Id_{Sigma^(m-1) A}), free on one generator of degree m whose boundary is 1 in Sigma^(m-1) A."""
    shifted = shift_module(regular_module(algebra, "left"), degree - 1)
    return module_cone(identity_map(shifted), name=f"M(S^{degree - 1}A)").module


def _cone_images(module: DGModule, x: Matrix, degree: int) -> List[Matrix]:
    """Images of the cone basis: [b]_T -> (-1)^((m-1)|b|) b . dx, then [b]_S -> (-1)^(m|b|) b . x."""
    algebra = module.algebra
    field = module.field
    dx = module.differential @ x
    lower = [
        module.left_operator(algebra.basis_vector(b)) @ dx.scale(field.sign((degree - 1) * algebra.degrees[b]))
        for b in range(algebra.dim)
    ]
    upper = [
        module.left_operator(algebra.basis_vector(b)) @ x.scale(field.sign(degree * algebra.degrees[b]))
        for b in range(algebra.dim)
    ]
    return lower + upper


def _left_module(module: DGModule, side: str = "left") -> DGModule:
    """Bimodules are first restricted to ``side``; right modules become left modules over A^op."""
    if module.side == "bi":
        module = restrict_side(module, side)
    if module.side == "right":
        return opposite_module(module)
    return module


def projective_presentation(
    module: DGModule, candidate_order: Optional[Sequence[int]] = None
) -> ProjectivePresentation:
    """
    Cover X by identity cones, one per generator, and take the kernel of the covering map.

    Generators are basis vectors picked greedily by how much of X the submodule generated by x
    and dx adds; ``candidate_order`` permutes the basis vectors for tie-breaking.
    """
    module = _left_module(module)
    field = module.field
    basis = [module.carrier.identity().extract(list(range(module.dim)), [c]) for c in range(module.dim)]
    picked = greedy_generators(module, basis, module.dim, with_differential=True, order=candidate_order)
    degrees = [module.degrees[c] for c in picked]
    generators = [basis[c] for c in picked]
    if not picked:
        zero = zero_module(module.algebra)
        epi = ModuleMap(zero, module, Matrix.zeros(field, module.dim, 0), validate=False)
        return ProjectivePresentation(module, zero, epi, submodule_kernel(epi), [], [])
    summands = [identity_cone(module.algebra, degree) for degree in degrees]
    projective = direct_sum(*summands, name="P").module
    columns = [
        image for x, degree in zip(generators, degrees) for image in _cone_images(module, x, degree)
    ]
    epi = ModuleMap(projective, module, Matrix.hstack(field, module.dim, columns), validate=False)
    kernel = submodule_kernel(epi, name="K")
    logger.debug(
        f"Presented {module.name} by {len(picked)} cones in degrees {degrees}; kernel has dim {kernel.module.dim}"
    )
    return ProjectivePresentation(module, projective, epi, kernel, degrees, generators)


def ext1(source: DGModule, target: DGModule, candidate_order: Optional[Sequence[int]] = None) -> int:
    """
    dim Ext^1(X, Y) in the abelian category of DG-modules, as the cokernel of restriction
    Hom(P, Y) -> Hom(K, Y) along 0 -> K -> P -> X -> 0.
    """
    if source.algebra != target.algebra:
        raise DimensionMismatchError("ext1 needs modules over the same algebra")
    sides = {source.side, target.side} - {"bi"}
    if len(sides) > 1:
        raise DimensionMismatchError(f"ext1 needs modules on the same side, got {source.side} and {target.side}")
    side = sides.pop() if sides else "left"
    source, target = _left_module(source, side), _left_module(target, side)
    presentation = projective_presentation(source, candidate_order)
    kernel = presentation.kernel
    on_kernel = hom_module_vectors(kernel.module, target)
    on_projective = hom_module_vectors(presentation.projective, target)
    restriction = target.carrier.identity().kron(kernel.inclusion.matrix.transpose()) @ on_projective
    value = on_kernel.cols - rank(restriction)
    logger.debug(f"ext1({source.name}, {target.name}) = {value}")
    return value


def is_acyclic(module: DGModule) -> bool:
    return is_exact(module.carrier)


def is_semi_projective(module: DGModule, acyclics: Sequence[DGModule]) -> bool:
    """
    Ext^1(P, E) = 0 for every E in the battery. A True answer only holds relative to the battery.
    """
    for index, acyclic in enumerate(acyclics):
        if not is_acyclic(acyclic):
            logger.error(f"Battery member {index} ({acyclic.name}) has homology")
            raise InvalidBatteryError(f"Battery member {acyclic.name or index} is not acyclic")
    for acyclic in acyclics:
        if ext1(module, acyclic) != 0:
            logger.info(f"{module.name} has Ext^1 against {acyclic.name}")
            return False
    return True
