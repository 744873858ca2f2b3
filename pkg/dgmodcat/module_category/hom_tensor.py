"""
Tensor over A as a coequalizer, internal hom over A as an equalizer, duals, and the structural
maps built from evaluation.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.graded_map import GradedMap
from dgmodcat.graded.operations import (
    hom_base,
    kernel_subcomplex,
    quotient_by_columns,
    tensor_base,
    unit_object,
    unvectorize,
    vectorize,
)
from dgmodcat.linalg.elimination import kernel_basis
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import opposite_module, regular_bimodule, restrict_side
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.system.exceptions import DimensionMismatchError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TensorResult:
    """Y (x)_A X as a quotient of Y (x) X, with the residual action when an argument is a bimodule."""

    complex: GradedComplex
    ambient: GradedComplex
    projection: Matrix
    section: Matrix
    module: Optional[DGModule]


@dataclass(frozen=True)
class HomResult:
    """
    _A[X, X'] as a subcomplex of [X, X']; ambient basis vector i * dim X + j is the matrix unit
    sending x_j to x'_i.
    """

    complex: GradedComplex
    ambient: GradedComplex
    inclusion: Matrix
    retraction: Matrix
    source_dim: int
    target_dim: int
    module: Optional[DGModule]

    def map_matrix(self, coordinates: Matrix) -> Matrix:
        """The k-linear map X -> X' with the given coordinates in the hom complex."""
        return unvectorize(self.inclusion @ coordinates, self.target_dim, self.source_dim)

    def basis_matrix(self, k: int) -> Matrix:
        return self.map_matrix(Matrix.from_entries(self.inclusion.field, (self.complex.dim, 1), {(k, 0): 1}))

    def coordinates(self, matrix: Matrix) -> Matrix:
        return self.retraction @ vectorize(matrix)


def _check_same_algebra(*modules: DGModule) -> DGAlgebra:
    algebra = modules[0].algebra
    for module in modules[1:]:
        if module.algebra != algebra:
            logger.error("Modules over different algebras")
            raise DimensionMismatchError("Modules live over different algebras")
    return algebra


def _rows(matrix: Matrix) -> Dict[int, Dict[int, object]]:
    rows: Dict[int, Dict[int, object]] = {}
    for (i, j), value in matrix.nonzero_entries().items():
        rows.setdefault(i, {})[j] = value
    return rows


def _columns(matrix: Matrix) -> Dict[int, Dict[int, object]]:
    columns: Dict[int, Dict[int, object]] = {}
    for (i, j), value in matrix.nonzero_entries().items():
        columns.setdefault(j, {})[i] = value
    return columns


def linearity_operator(
    source: DGModule,
    target: DGModule,
    positions: Sequence[Tuple[int, int]],
    sides: Sequence[str],
    include_differential: bool,
) -> Matrix:
    """
    Column c is the vectorized defect of the matrix unit E_ij, (i, j) = positions[c], as a graded
    map of degree |x'_i| - |x_j|:

    - chain defect d' f - (-1)^|f| f d (when include_differential)
    - left defect f(a . x) - (-1)^(|f||a|) a . f(x)
    - right defect f(x . a) - f(x) . a
    """
    field = source.field
    algebra = source.algebra
    n_s, n_t, a_dim = source.dim, target.dim, algebra.dim
    offsets, total = {}, 0
    if include_differential:
        offsets["d"], total = total, total + n_t * n_s
    for side in sides:
        offsets[side], total = total, total + n_t * n_s * a_dim
    target_d, source_d = _columns(target.differential), _rows(source.differential)
    if "left" in sides:
        source_left, target_left = _rows(source.left_action), _columns(target.left_action)
    if "right" in sides:
        source_right, target_right = _rows(source.right_action), _columns(target.right_action)
    entries: Dict[Tuple[int, int], object] = {}

    def add(row: int, column: int, value):
        entries[(row, column)] = entries.get((row, column), field.zero) + value

    for c, (i, j) in enumerate(positions):
        degree = target.degrees[i] - source.degrees[j]
        if include_differential:
            base = offsets["d"]
            for k, value in target_d.get(i, {}).items():
                add(base + k * n_s + j, c, value)
            sign = field.sign(degree)
            for l, value in source_d.get(j, {}).items():
                add(base + i * n_s + l, c, -sign * value)
        if "left" in sides:
            base, width = offsets["left"], a_dim * n_s
            for column, value in source_left.get(j, {}).items():
                add(base + i * width + column, c, value)
            for a in range(a_dim):
                sign = field.sign(degree * algebra.degrees[a])
                for row, value in target_left.get(a * n_t + i, {}).items():
                    add(base + row * width + a * n_s + j, c, -sign * value)
        if "right" in sides:
            base, width = offsets["right"], n_s * a_dim
            for column, value in source_right.get(j, {}).items():
                add(base + i * width + column, c, value)
            for a in range(a_dim):
                for row, value in target_right.get(i * a_dim + a, {}).items():
                    add(base + row * width + j * a_dim + a, c, -value)
    return Matrix.from_entries(field, (total, len(positions)), entries)


def _module_sides(module: DGModule) -> List[str]:
    return [side for side, present in (("left", module.has_left), ("right", module.has_right)) if present]


def hom_module_vectors(source: DGModule, target: DGModule) -> Matrix:
    """Columns are vectorized (row-major) matrices of a basis of module maps source -> target."""
    _check_same_algebra(source, target)
    if source.side != target.side:
        raise DimensionMismatchError(f"Module maps need equal sides, got {source.side} and {target.side}")
    field = source.field
    positions = [
        (i, j)
        for i in range(target.dim)
        for j in range(source.dim)
        if target.degrees[i] == source.degrees[j]
    ]
    n = target.dim * source.dim
    if not positions:
        return Matrix.zeros(field, n, 0)
    operator = linearity_operator(source, target, positions, _module_sides(source), include_differential=True)
    kernel = kernel_basis(operator)
    logger.debug(f"Module maps {source.name} -> {target.name}: {kernel.cols} of {len(positions)} unknowns")
    entries = {}
    for (p, c), value in kernel.nonzero_entries().items():
        i, j = positions[p]
        entries[(i * source.dim + j, c)] = value
    return Matrix.from_entries(field, (n, kernel.cols), entries)


def hom_module_set(source: DGModule, target: DGModule) -> List[ModuleMap]:
    """A basis of the k-space of module maps source -> target."""
    vectors = hom_module_vectors(source, target)
    return [
        ModuleMap(source, target, unvectorize(vectors.extract(list(range(vectors.rows)), [c]), target.dim, source.dim), validate=False)
        for c in range(vectors.cols)
    ]


def tensor_A(right: DGModule, left: DGModule) -> TensorResult:
    """
    Y (x)_A X as the cokernel of (y . a) (x) x - y (x) (a . x).

    A bimodule Y leaves a left action a . (y (x) x) = (a . y) (x) x; a bimodule X leaves a right
    action (y (x) x) . a = y (x) (x . a).
    """
    algebra = _check_same_algebra(right, left)
    if not right.has_right or not left.has_left:
        raise DimensionMismatchError("tensor_A needs a right module and a left module")
    field = algebra.field
    id_y, id_x, id_a = right.carrier.identity(), left.carrier.identity(), algebra.carrier.identity()
    ambient = tensor_base(right.carrier, left.carrier)
    relations = right.right_action.kron(id_x) - id_y.kron(left.left_action)
    quotient = quotient_by_columns(ambient, relations)
    pi, sigma = quotient.projection, quotient.section
    left_action = pi @ right.left_action.kron(id_x) @ id_a.kron(sigma) if right.has_left else None
    right_action = pi @ id_y.kron(left.right_action) @ sigma.kron(id_a) if left.has_right else None
    module = None
    if left_action is not None or right_action is not None:
        side = "bi" if left_action is not None and right_action is not None else (
            "left" if left_action is not None else "right"
        )
        module = DGModule(
            algebra,
            side,
            quotient.complex,
            left_action=left_action,
            right_action=right_action,
            name=f"{right.name}(x)_A{left.name}",
            validate=False,
        )
    logger.debug(f"{right.name} (x)_A {left.name}: {ambient.dim} -> {quotient.complex.dim} dims")
    return TensorResult(quotient.complex, ambient, pi, sigma, module)


def hom_A(source: DGModule, target: DGModule) -> HomResult:
    """
    _A[X, X'] as the kernel of f -> f o act_X - act_X' o (1 (x) f) inside [X, X'].

    When X' is a bimodule the result is a right module with (f . a)(x) = (-1)^(|a||x|) f(x) . a.
    """
    algebra = _check_same_algebra(source, target)
    if not source.has_left or not target.has_left:
        raise DimensionMismatchError("hom_A needs two left modules")
    field = algebra.field
    n_s, n_t, a_dim = source.dim, target.dim, algebra.dim
    ambient = hom_base(source.carrier, target.carrier)
    positions = [(i, j) for i in range(n_t) for j in range(n_s)]
    if positions:
        operator = linearity_operator(source, target, positions, ["left"], include_differential=False)
    else:
        operator = Matrix.zeros(field, 0, 0)
    sub = kernel_subcomplex(ambient, operator)
    module = None
    if target.has_right:
        entries = {}
        for (k, column), value in target.right_action.nonzero_entries().items():
            i, a = divmod(column, a_dim)
            for j in range(n_s):
                sign = field.sign(algebra.degrees[a] * source.degrees[j])
                entries[(k * n_s + j, (i * n_s + j) * a_dim + a)] = sign * value
        ambient_action = Matrix.from_entries(field, (ambient.dim, ambient.dim * a_dim), entries)
        action = sub.retraction @ ambient_action @ sub.inclusion.kron(algebra.carrier.identity())
        module = DGModule(
            algebra,
            "right",
            sub.complex,
            right_action=action,
            name=f"[{source.name},{target.name}]_A",
            validate=False,
        )
    logger.debug(f"hom_A({source.name}, {target.name}): {ambient.dim} -> {sub.complex.dim} dims")
    return HomResult(sub.complex, ambient, sub.inclusion, sub.retraction, n_s, n_t, module)


def dual(module: DGModule) -> DGModule:
    """
    X* = _A[X, A]. A left module has a right dual; a right module is dualized through the
    opposite algebra and comes back as a left module.
    """
    if module.side == "right":
        flipped = dual(opposite_module(module))
        result = opposite_module(flipped)
        return result.renamed(f"{module.name}*")
    source = restrict_side(module, "left") if module.side == "bi" else module
    result = hom_A(source, regular_bimodule(module.algebra)).module
    return result.renamed(f"{module.name}*")


def evaluation_map(module: DGModule, target: Optional[DGModule] = None) -> GradedMap:
    """
    epsilon : X (x) _A[X, X'] -> X', x (x) f -> (-1)^(|x||f|) f(x); X' defaults to A.
    """
    target = target if target is not None else regular_bimodule(module.algebra)
    hom = hom_A(restrict_side(module, "left") if module.side == "bi" else module, target)
    field = module.field
    n_x, n_h = module.dim, hom.complex.dim
    entries = {}
    for k in range(n_h):
        f = hom.basis_matrix(k)
        for (row, j), value in f.nonzero_entries().items():
            entries[(row, j * n_h + k)] = value * field.sign(module.degrees[j] * hom.complex.degrees[k])
    matrix = Matrix.from_entries(field, (target.dim, n_x * n_h), entries)
    return GradedMap(tensor_base(module.carrier, hom.complex), target.carrier, matrix, validate=False)


def nu_map(module: DGModule, bimodule: DGModule, other: DGModule) -> GradedMap:
    """
    nu : _A[X, Z] (x)_A X' -> _A[X, Z (x)_A X'], f (x) x' -> (x -> (-1)^(|x||x'|) f(x) (x) x').
    """
    _check_same_algebra(module, bimodule, other)
    if bimodule.side != "bi":
        raise DimensionMismatchError("nu_map needs a bimodule Z")
    module = restrict_side(module, "left") if module.side == "bi" else module
    other_left = restrict_side(other, "left") if other.side == "bi" else other
    hom = hom_A(module, bimodule)
    source = tensor_A(hom.module, other_left)
    inner = tensor_A(bimodule, other_left)
    target_module = restrict_side(inner.module, "left") if inner.module.side == "bi" else inner.module
    target = hom_A(module, target_module)
    field = module.field
    n_h, n_o = hom.complex.dim, other_left.dim
    columns = []
    for k in range(n_h):
        f = hom.basis_matrix(k)
        for l in range(n_o):
            unit = Matrix.from_entries(field, (n_o, 1), {(l, 0): 1})
            image = inner.projection @ f.kron(unit) @ module.carrier.sign_matrix(other_left.degrees[l])
            columns.append(vectorize(image))
    ambient_map = Matrix.hstack(field, inner.complex.dim * module.dim, columns)
    matrix = target.retraction @ ambient_map @ source.section
    return GradedMap(source.complex, target.complex, matrix, validate=False)


def tensor_with_complex(module: DGModule, complex_: GradedComplex) -> DGModule:
    """X (x) S for a left module X and a complex S, acting on the X factor."""
    module = restrict_side(module, "left") if module.side == "bi" else module
    if not module.has_left:
        raise DimensionMismatchError("tensor_with_complex needs a left module")
    return DGModule(
        module.algebra,
        "left",
        tensor_base(module.carrier, complex_),
        left_action=module.left_action.kron(complex_.identity()),
        name=f"{module.name}(x)S",
        validate=False,
    )


def complex_tensor_module(complex_: GradedComplex, module: DGModule) -> DGModule:
    """S (x) Y for a right module Y, acting on the Y factor."""
    module = restrict_side(module, "right") if module.side == "bi" else module
    if not module.has_right:
        raise DimensionMismatchError("complex_tensor_module needs a right module")
    return DGModule(
        module.algebra,
        "right",
        tensor_base(complex_, module.carrier),
        right_action=complex_.identity().kron(module.right_action),
        name=f"S(x){module.name}",
        validate=False,
    )


def complex_dual(complex_: GradedComplex) -> GradedComplex:
    """S* = [S, k]; basis vector p is the coordinate functional of s_p, in degree -|s_p|."""
    return hom_base(complex_, unit_object(complex_.field))
