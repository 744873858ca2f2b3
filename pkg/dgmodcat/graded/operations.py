import logging
from dataclasses import dataclass
from typing import Dict, List

from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.graded_map import GradedMap
from dgmodcat.linalg.elimination import (
    cokernel_projection,
    image_basis,
    kernel_basis,
    rank,
    right_inverse,
    left_inverse,
    solve_right,
)
from dgmodcat.linalg.field import BaseField
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import FieldMismatchError, InvalidStructureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Quotient:
    """A quotient complex with projection from the ambient basis and a k-linear section."""

    complex: GradedComplex
    projection: Matrix
    section: Matrix


@dataclass(frozen=True)
class Subcomplex:
    """A subcomplex with its inclusion into the ambient basis and a k-linear retraction."""

    complex: GradedComplex
    inclusion: Matrix
    retraction: Matrix


@dataclass(frozen=True)
class Cone:
    complex: GradedComplex
    inclusion: GradedMap
    projection: GradedMap


def _check_same_field(*complexes: GradedComplex) -> BaseField:
    fields = {c.field for c in complexes}
    if len(fields) != 1:
        raise FieldMismatchError(f"Complexes over different fields: {sorted(f.descriptor for f in fields)}")
    return complexes[0].field


def unit_object(field: BaseField) -> GradedComplex:
    return GradedComplex(field, [0])


def shift(complex_: GradedComplex, i: int) -> GradedComplex:
    """(Sigma^i X)_n = X_{n-i}; the differential picks up (-1)^i."""
    return GradedComplex(
        complex_.field,
        [d + i for d in complex_.degrees],
        complex_.differential.scale(complex_.field.sign(i)),
        validate=False,
    )


def direct_sum(*complexes: GradedComplex) -> GradedComplex:
    field = _check_same_field(*complexes)
    degrees = [d for c in complexes for d in c.degrees]
    return GradedComplex(
        field, degrees, Matrix.block_diagonal(field, [c.differential for c in complexes]), validate=False
    )


def cone(chain_map: GradedMap) -> Cone:
    """
    cone(f)_n = T_n + S_{n-1} with differential [[d_T, f], [0, -d_S]], basis ordered T then Sigma S.
    """
    if chain_map.degree != 0 or not chain_map.is_chain_map():
        logger.error("cone() needs a degree-0 chain map")
        raise InvalidStructureError("cone() needs a degree-0 chain map")
    field = chain_map.field
    source, target = chain_map.source, chain_map.target
    n_t, n_s = target.dim, source.dim
    top = Matrix.hstack(field, n_t, [target.differential, chain_map.matrix])
    bottom = Matrix.hstack(field, n_s, [Matrix.zeros(field, n_s, n_t), -source.differential])
    differential = Matrix.vstack(field, n_t + n_s, [top, bottom])
    cone_complex = GradedComplex(field, list(target.degrees) + [d + 1 for d in source.degrees], differential)
    inclusion = GradedMap(
        target, cone_complex, Matrix.identity(field, n_t).embed((n_t + n_s, n_t), list(range(n_t)), list(range(n_t)))
    )
    projection = GradedMap(
        cone_complex,
        shift(source, 1),
        Matrix.identity(field, n_s).embed((n_s, n_t + n_s), list(range(n_s)), list(range(n_t, n_t + n_s))),
    )
    return Cone(cone_complex, inclusion, projection)


def cycles(complex_: GradedComplex, degree: int) -> Matrix:
    """Basis of Z_n in coordinates of X_n."""
    return kernel_basis(complex_.d(degree))


def homology(complex_: GradedComplex) -> Dict[int, int]:
    """dim H_n = dim ker d_n - rank d_{n+1}, for every degree in the support."""
    result = {}
    for degree in complex_.support:
        kernel_dim = complex_.dims[degree] - rank(complex_.d(degree))
        result[degree] = kernel_dim - rank(complex_.d(degree + 1))
    return result


def is_exact(complex_: GradedComplex) -> bool:
    return all(value == 0 for value in homology(complex_).values())


def homology_map_rank(chain_map: GradedMap) -> Dict[int, int]:
    """
    Rank of H_n(f) for a degree-0 chain map, computed as dim(f(Z_n) + B_n) - dim B_n.
    """
    source, target = chain_map.source, chain_map.target
    result = {}
    for degree in source.support:
        image_of_cycles = chain_map.component(degree) @ cycles(source, degree)
        boundaries = target.d(degree + 1)
        rows = len(target.indices(degree))
        combined = Matrix.hstack(chain_map.field, rows, [image_of_cycles, boundaries])
        result[degree] = rank(combined) - rank(boundaries)
    return result


def tensor_base(left: GradedComplex, right: GradedComplex) -> GradedComplex:
    """
    Total tensor product; basis x_i (x) y_j sits at index i * right.dim + j and
    d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy.
    """
    field = _check_same_field(left, right)
    degrees = [p + q for p in left.degrees for q in right.degrees]
    differential = left.differential.kron(right.identity()) + left.sign_matrix().kron(right.differential)
    return GradedComplex(field, degrees, differential, validate=False)


def tensor_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """(f (x) g)(x (x) y) = (-1)^(|g||x|) f(x) (x) g(y)."""
    matrix = (f.matrix @ f.source.sign_matrix(g.degree)).kron(g.matrix)
    return GradedMap(
        tensor_base(f.source, g.source),
        tensor_base(f.target, g.target),
        matrix,
        f.degree + g.degree,
        validate=False,
    )


def hom_base(source: GradedComplex, target: GradedComplex) -> GradedComplex:
    """
    Internal hom [X, Y]; the matrix unit E_ij (i in Y, j in X) sits at index i * X.dim + j with
    degree |y_i| - |x_j|, and (df) = d_Y f - (-1)^|f| f d_X.
    """
    field = _check_same_field(source, target)
    degrees = [q - p for q in target.degrees for p in source.degrees]
    signs = Matrix.diagonal(field, [field.sign(d) for d in degrees])
    differential = target.differential.kron(source.identity()) - (
        target.identity().kron(source.differential.transpose()) @ signs
    )
    return GradedComplex(field, degrees, differential, validate=False)


def vectorize(matrix: Matrix) -> Matrix:
    """Row-major vectorization of a map matrix into a column over the internal hom basis."""
    cols = matrix.cols
    return Matrix.from_entries(
        matrix.field, (matrix.rows * cols, 1), {(i * cols + j, 0): v for (i, j), v in matrix.nonzero_entries().items()}
    )


def unvectorize(column: Matrix, rows: int, cols: int) -> Matrix:
    return Matrix.from_entries(
        column.field, (rows, cols), {(k // cols, k % cols): v for (k, _), v in column.nonzero_entries().items()}
    )


def swap(left: GradedComplex, right: GradedComplex) -> GradedMap:
    """The symmetry X (x) Y -> Y (x) X, x (x) y -> (-1)^(|x||y|) y (x) x."""
    field = _check_same_field(left, right)
    entries = {}
    for i, p in enumerate(left.degrees):
        for j, q in enumerate(right.degrees):
            entries[(j * left.dim + i, i * right.dim + j)] = field.sign(p * q)
    n = left.dim * right.dim
    return GradedMap(
        tensor_base(left, right), tensor_base(right, left), Matrix.from_entries(field, (n, n), entries)
    )


def quotient_by_columns(complex_: GradedComplex, relations: Matrix) -> Quotient:
    """
    Quotient of a complex by the span of homogeneous relation columns, degree by degree.

    The span must be a subcomplex; the induced differential is pi d sigma.
    """
    field = complex_.field
    projection_blocks: List[Matrix] = []
    quotient_degrees: List[int] = []
    for degree in complex_.support:
        ambient = complex_.indices(degree)
        block = relations.extract(ambient, list(range(relations.cols)))
        projection = cokernel_projection(block)
        projection_blocks.append(projection.embed((projection.rows, complex_.dim), list(range(projection.rows)), ambient))
        quotient_degrees.extend([degree] * projection.rows)
    projection = Matrix.vstack(field, complex_.dim, projection_blocks)
    section = right_inverse(projection) if projection.rows else Matrix.zeros(field, complex_.dim, 0)
    if not (projection @ complex_.differential @ relations).is_zero():
        logger.error("Relation span is not closed under the differential")
        raise InvalidStructureError("Cannot form a quotient complex: relations are not a subcomplex")
    differential = projection @ complex_.differential @ section
    quotient = GradedComplex(field, quotient_degrees, differential)
    logger.debug(f"Quotient of {complex_.dims} by {relations.cols} relations has dims {quotient.dims}")
    return Quotient(quotient, projection, section)


def kernel_subcomplex(complex_: GradedComplex, operator: Matrix) -> Subcomplex:
    """
    Kernel of a homogeneous operator on the basis of a complex, degree by degree.

    The kernel must be a subcomplex; the induced differential solves d iota = iota d_K.
    """
    field = complex_.field
    inclusion_blocks: List[Matrix] = []
    kernel_degrees: List[int] = []
    for degree in complex_.support:
        ambient = complex_.indices(degree)
        kernel = kernel_basis(operator.extract(list(range(operator.rows)), ambient))
        inclusion_blocks.append(kernel.embed((complex_.dim, kernel.cols), ambient, list(range(kernel.cols))))
        kernel_degrees.extend([degree] * kernel.cols)
    inclusion = Matrix.hstack(field, complex_.dim, inclusion_blocks)
    return subcomplex_from_basis(complex_, inclusion, kernel_degrees)


def subcomplex_from_basis(complex_: GradedComplex, inclusion: Matrix, degrees: List[int]) -> Subcomplex:
    field = complex_.field
    differential = solve_right(inclusion, complex_.differential @ inclusion)
    if differential is None:
        logger.error("Kernel is not closed under the differential")
        raise InvalidStructureError("Cannot form a subcomplex: span is not closed under the differential")
    retraction = left_inverse(inclusion) if inclusion.cols else Matrix.zeros(field, 0, complex_.dim)
    return Subcomplex(GradedComplex(field, degrees, differential), inclusion, retraction)


def span_subcomplex(complex_: GradedComplex, generators: Matrix) -> Subcomplex:
    """Subcomplex spanned by homogeneous columns (which must already span a subcomplex)."""
    blocks: List[Matrix] = []
    degrees: List[int] = []
    for degree in complex_.support:
        ambient = complex_.indices(degree)
        block = image_basis(generators.extract(ambient, list(range(generators.cols))))
        blocks.append(block.embed((complex_.dim, block.cols), ambient, list(range(block.cols))))
        degrees.extend([degree] * block.cols)
    return subcomplex_from_basis(complex_, Matrix.hstack(complex_.field, complex_.dim, blocks), degrees)
