import logging
from dataclasses import dataclass
from typing import List

from dgmodcat.linalg.elimination import kernel_basis, rank
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import free_module, submodule_kernel
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.module_category.generators import greedy_generators
from dgmodcat.system.exceptions import DimensionMismatchError, UnsupportedInstanceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreePresentation:
    """
    L1 --f--> L0 --g--> P --> 0 with L0 = R^r0 and L1 = R^r1.

    ``generators`` are the images g(e_j) in P; ``relations`` are the columns f(e_i) in L0.
    """

    module: DGModule
    top: DGModule
    bottom: DGModule
    relation_map: ModuleMap
    cover: ModuleMap
    generators: List[Matrix]
    relations: List[Matrix]

    def coefficient(self, i: int, j: int) -> Matrix:
        """f_ij in R, the e_j component of the i-th relation."""
        a_dim = self.module.algebra.dim
        relation = self.relations[i]
        return relation.extract(list(range(j * a_dim, (j + 1) * a_dim)), [0])


def _cover_matrix(module: DGModule, vectors: List[Matrix]) -> Matrix:
    """Matrix of R^r -> X, e_j -> vectors[j]; column j * dim R + b holds b . vectors[j]."""
    algebra = module.algebra
    columns = [
        module.left_operator(algebra.basis_vector(b)) @ vector for vector in vectors for b in range(algebra.dim)
    ]
    return Matrix.hstack(module.field, module.dim, columns)


def free_cover(module: DGModule, vectors: List[Matrix]) -> ModuleMap:
    """The map from a free module of rank len(vectors) sending the j-th generator to vectors[j]."""
    source = free_module(module.algebra, [0] * len(vectors))
    return ModuleMap(source, module, _cover_matrix(module, vectors), validate=False)


def _basis_columns(matrix: Matrix) -> List[Matrix]:
    return [matrix.extract(list(range(matrix.rows)), [c]) for c in range(matrix.cols)]


def free_presentation(module: DGModule) -> FreePresentation:
    """
    Present a finitely generated module over a ring by finitely generated free modules.

    Generators of P and of ker(g) are both chosen greedily among basis vectors.
    """
    algebra = module.algebra
    if not algebra.is_ring:
        raise UnsupportedInstanceError("free_presentation needs an algebra concentrated in degree 0")
    if module.side != "left":
        raise DimensionMismatchError("free_presentation takes a left module")
    candidates = _basis_columns(module.carrier.identity())
    picked = greedy_generators(module, candidates, module.dim)
    return presentation_from_cover(free_cover(module, [candidates[c] for c in picked]))


def presentation_from_cover(cover: ModuleMap) -> FreePresentation:
    """Complete a surjection g : R^r0 -> P from a free module to a presentation by computing ker(g)."""
    module, bottom = cover.target, cover.source
    algebra = module.algebra
    if not algebra.is_ring:
        raise UnsupportedInstanceError("Presentations need an algebra concentrated in degree 0")
    count, remainder = divmod(bottom.dim, algebra.dim)
    if remainder or bottom.side != "left" or bottom != free_module(algebra, [0] * count):
        raise DimensionMismatchError("The source of a cover must be free on degree-0 generators")
    if rank(cover.matrix) != module.dim:
        logger.error(f"Cover of {module.name or 'module'} is not surjective")
        raise DimensionMismatchError("Cover is not surjective")
    unit = algebra.unit
    generators = [
        cover.matrix @ unit.embed((bottom.dim, 1), list(range(j * algebra.dim, (j + 1) * algebra.dim)), [0])
        for j in range(count)
    ]
    kernel = submodule_kernel(cover).inclusion.matrix
    kernel_candidates = _basis_columns(kernel)
    relations = [
        kernel_candidates[c] for c in greedy_generators(bottom, kernel_candidates, kernel.cols)
    ]
    relation_map = free_cover(bottom, relations)
    logger.info(
        f"Presented {module.name or 'module'} by {len(relations)} relations on {len(generators)} generators"
    )
    return FreePresentation(
        module=module,
        top=relation_map.source,
        bottom=bottom,
        relation_map=relation_map,
        cover=cover,
        generators=generators,
        relations=relations,
    )


def relation_kernel(presentation: FreePresentation) -> Matrix:
    """
    Basis of K = {kappa in R^r0 : sum_j f_ij kappa_j = 0 for every i}, the kernel of f* on
    L0* = R^r0. Column t stacks the components kappa_tj, block j of length dim R.
    """
    algebra = presentation.module.algebra
    field = algebra.field
    a_dim = algebra.dim
    r0, r1 = len(presentation.generators), len(presentation.relations)
    if r1 == 0:
        return Matrix.identity(field, r0 * a_dim)
    blocks = {}
    for i in range(r1):
        for j in range(r0):
            blocks[(i, j)] = algebra.left_multiplication(presentation.coefficient(i, j))
    entries = {}
    for (i, j), block in blocks.items():
        for (r, c), value in block.nonzero_entries().items():
            entries[(i * a_dim + r, j * a_dim + c)] = value
    operator = Matrix.from_entries(field, (r1 * a_dim, r0 * a_dim), entries)
    kernel = kernel_basis(operator)
    logger.debug(f"Kernel of f* has dimension {kernel.cols} inside R^{r0}")
    return kernel
