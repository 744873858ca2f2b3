import logging

from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.operations import vectorize
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import opposite_module, regular_bimodule, restrict_side
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.module_category.hom_tensor import (
    HomResult,
    complex_dual,
    complex_tensor_module,
    hom_A,
    tensor_with_complex,
)
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidStructureError

logger = logging.getLogger(__name__)


def bidual_map(module: DGModule) -> ModuleMap:
    """
    beta : X -> X**, beta(x)(f) = (-1)^(|x||f|) f(x).

    X* is a right module, so X** is computed as the dual over A^op and converted back.
    """
    if module.side == "bi":
        module = restrict_side(module, "left")
    if module.side != "left":
        raise DimensionMismatchError("bidual_map takes a left module")
    field = module.field
    algebra = module.algebra
    first = hom_A(module, regular_bimodule(algebra))
    dual = first.module
    flipped = opposite_module(dual)
    second = hom_A(flipped, regular_bimodule(algebra.opposite))
    bidual = opposite_module(second.module).renamed(f"{module.name}**")
    n_h = first.complex.dim
    columns = []
    for j in range(module.dim):
        entries = {}
        for k in range(n_h):
            f = first.basis_matrix(k)
            sign = field.sign(module.degrees[j] * first.complex.degrees[k])
            for (row, column), value in f.nonzero_entries().items():
                if column == j:
                    entries[(row, k)] = sign * value
        evaluation_at_x = Matrix.from_entries(field, (algebra.dim, n_h), entries)
        columns.append(_coordinates_in(second, evaluation_at_x))
    matrix = Matrix.hstack(field, second.complex.dim, columns)
    logger.debug(f"Bidual of {module.name}: {module.dim} -> {bidual.dim} dims")
    return ModuleMap(module, bidual, matrix, validate=False)


def dual_of_tensor_iso(module: DGModule, complex_: GradedComplex) -> ModuleMap:
    """
    Theta : S* (x) X* -> (X (x) S)*, Theta(phi (x) f)(x (x) s) = (-1)^(|phi|(|f| + |x|)) phi(s) f(x),
    for a left module X and a finite complex S.
    """
    if module.side == "bi":
        module = restrict_side(module, "left")
    field = module.field
    algebra = module.algebra
    first = hom_A(module, regular_bimodule(algebra))
    source = complex_tensor_module(complex_dual(complex_), first.module)
    tensored = tensor_with_complex(module, complex_)
    second = hom_A(tensored, regular_bimodule(algebra))
    target = second.module.renamed(f"({module.name}(x)S)*")
    n_s, n_x, n_h = complex_.dim, module.dim, first.complex.dim
    columns = []
    for p in range(n_s):
        phi_degree = -complex_.degrees[p]
        for q in range(n_h):
            f = first.basis_matrix(q)
            entries = {}
            for (row, j), value in f.nonzero_entries().items():
                sign = field.sign(phi_degree * (first.complex.degrees[q] + module.degrees[j]))
                entries[(row, j * n_s + p)] = sign * value
            image = Matrix.from_entries(field, (algebra.dim, n_x * n_s), entries)
            columns.append(_coordinates_in(second, image))
    matrix = Matrix.hstack(field, second.complex.dim, columns)
    return ModuleMap(source, target, matrix, validate=False)


def _coordinates_in(hom: HomResult, matrix: Matrix) -> Matrix:
    coordinates = hom.coordinates(matrix)
    if hom.inclusion @ coordinates != vectorize(matrix):
        logger.error("Evaluation map left the hom complex")
        raise InvalidStructureError("Map is not A-linear, so it has no coordinates in the hom complex")
    return coordinates
