import pytest

from dgmodcat.algebra.builders import builtin_catalog
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.operations import cycles, homology, is_exact
from dgmodcat.instances.corpus import residue_module
from dgmodcat.limits.presentations import free_presentation
from dgmodcat.linalg.elimination import rank
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import (
    complex_module,
    direct_sum,
    evaluate_at,
    free_bimodule,
    free_module,
    functor_module,
    identity_map,
    left_ideal,
    module_cone,
    opposite_module,
    quotient_by_submodule,
    regular_bimodule,
    regular_module,
    restrict_side,
    shift_module,
    submodule_kernel,
    zero_map,
)
from dgmodcat.module_category.dg_module import DGModule, ModuleMap, validate_module, validate_module_map
from dgmodcat.module_category.generators import greedy_generators
from dgmodcat.module_category.hom_tensor import dual, hom_A, hom_module_set, hom_module_vectors, tensor_A
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidStructureError


@pytest.mark.parametrize("name", ["dual_numbers(2)", "exterior(2)", "cone_dga(2)", "upper_triangular(3)"])
def test_regular_and_shifted_modules_validate(name):
    algebra = builtin_catalog(name)
    for side in ("left", "right", "bi"):
        assert validate_module(regular_module(algebra, side)).passed
    assert validate_module(shift_module(regular_module(algebra), 1)).passed
    assert validate_module(shift_module(regular_module(algebra, "bi"), -1)).passed
    assert validate_module(free_bimodule(algebra)).passed


def test_non_associative_action_is_rejected(dual_numbers, f2):
    carrier = GradedComplex(f2, [0])
    action = Matrix.from_rows(f2, [[1, 1]])
    broken = DGModule(dual_numbers, "left", carrier, left_action=action, validate=False)
    report = validate_module(broken)
    assert not report.check("left_associativity").passed
    with pytest.raises(InvalidStructureError):
        DGModule(dual_numbers, "left", carrier, left_action=action)


def test_action_shapes_are_checked(dual_numbers, f2):
    with pytest.raises(DimensionMismatchError):
        DGModule(dual_numbers, "left", GradedComplex(f2, [0]), left_action=Matrix.zeros(f2, 1, 1))


def test_direct_sum_structure_maps(exterior):
    regular = regular_module(exterior)
    k = residue_module(exterior)
    summed = direct_sum(regular, k)
    assert summed.module.dim == 3
    for injection, projection in zip(summed.injections, summed.projections):
        assert validate_module_map(injection).passed
        assert validate_module_map(projection).passed
        assert projection.compose(injection).matrix == injection.source.carrier.identity()


def test_cone_of_identity_is_acyclic_with_exact_structure_maps(cone_dga):
    regular = regular_module(cone_dga)
    cone = module_cone(identity_map(shift_module(regular, 1)))
    assert validate_module(cone.module).passed
    assert is_exact(cone.module.carrier)
    assert validate_module_map(cone.inclusion).passed
    assert validate_module_map(cone.projection).passed
    assert (cone.projection.matrix @ cone.inclusion.matrix).is_zero()


def test_cone_of_zero_map_is_a_direct_sum(exterior):
    regular = regular_module(exterior)
    cone = module_cone(zero_map(regular, regular))
    assert cone.module == direct_sum(regular, shift_module(regular, 1)).module


def test_kernels_and_quotients(dual_numbers):
    regular = regular_module(dual_numbers)
    quotient = quotient_by_submodule(regular, dual_numbers.basis_vector(1))
    assert quotient.module.dim == 1
    kernel = submodule_kernel(quotient.projection)
    assert kernel.module.dim == 1
    assert validate_module(kernel.module).passed
    assert validate_module_map(kernel.inclusion).passed


def test_module_maps_out_of_A_are_degree_zero_cycles(dual_numbers):
    regular = regular_module(dual_numbers)
    k = residue_module(dual_numbers)
    assert hom_module_vectors(regular, k).cols == 1
    assert hom_module_vectors(regular, regular).cols == 2
    assert hom_module_vectors(k, regular).cols == 1
    cone = module_cone(identity_map(regular)).module
    assert hom_module_vectors(regular, cone).cols == 2
    for module_map in hom_module_set(k, regular):
        assert validate_module_map(module_map).passed


def test_module_maps_need_equal_sides(dual_numbers):
    with pytest.raises(DimensionMismatchError):
        hom_module_vectors(regular_module(dual_numbers, "left"), regular_module(dual_numbers, "right"))


def test_tensoring_with_A_is_the_identity(exterior):
    k = residue_module(exterior)
    for module in (regular_module(exterior), k, shift_module(k, 2)):
        result = tensor_A(regular_bimodule(exterior), module)
        assert result.complex.dims == module.carrier.dims
        assert restrict_side(result.module, "left").dim == module.dim


def test_tensor_needs_a_right_and_a_left_module(dual_numbers):
    regular = regular_module(dual_numbers)
    with pytest.raises(DimensionMismatchError):
        tensor_A(regular, regular)


def test_residue_field_over_dual_numbers(dual_numbers):
    k = residue_module(dual_numbers)
    k_right = residue_module(dual_numbers, "right")
    assert tensor_A(k_right, k).complex.dim == 1
    assert hom_A(k, regular_module(dual_numbers)).complex.dim == 1
    assert dual(k).dim == 1
    assert dual(regular_module(dual_numbers)).carrier.dims == {0: 2}


def test_dual_of_a_shift_is_the_opposite_shift(exterior):
    shifted = shift_module(regular_module(exterior), 2)
    assert dual(shifted).carrier.dims == {-2: 1, -1: 1}
    assert dual(shifted).side == "right"


def test_opposite_module_round_trip(exterior):
    module = shift_module(regular_module(exterior), 1)
    once = opposite_module(module)
    assert once.side == "right"
    assert validate_module(once).passed
    assert opposite_module(once) == module


def test_functor_modules_evaluate_objectwise(arrow_algebra, f3):
    functor = functor_module(arrow_algebra, {"x": 2, "y": 1}, {"a": Matrix.from_rows(f3, [[1, 2]])})
    assert evaluate_at(functor, "x") == 2
    assert evaluate_at(functor, "y") == 1
    column = left_ideal(arrow_algebra, "x")
    assert column.dim == 2
    assert evaluate_at(column, "x") == evaluate_at(column, "y") == 1
    assert left_ideal(arrow_algebra, "y").dim == 1
    with pytest.raises(DimensionMismatchError):
        functor_module(arrow_algebra, {"x": 2, "y": 1}, {"a": Matrix.from_rows(f3, [[1], [2]])})


def test_complex_of_modules(dual_numbers_f3):
    regular = regular_module(dual_numbers_f3)
    x = dual_numbers_f3.basis_vector(1)
    multiplication = complex_module(
        dual_numbers_f3, {1: regular, 0: regular}, {1: dual_numbers_f3.right_multiplication(x)}
    )
    assert validate_module(multiplication).passed
    assert homology(multiplication.carrier) == {0: 1, 1: 1}


def test_module_maps_validate_linearity(dual_numbers, f2):
    regular = regular_module(dual_numbers)
    swap_basis = Matrix.from_rows(f2, [[0, 1], [1, 0]])
    with pytest.raises(InvalidStructureError):
        ModuleMap(regular, regular, swap_basis)
    scaling = ModuleMap(regular, regular, dual_numbers.right_multiplication(dual_numbers.basis_vector(1)))
    assert scaling.compose(scaling).matrix.is_zero()


def test_greedy_generators_prefer_large_orbits(dual_numbers, f2):
    free = free_module(dual_numbers, [0, 0])
    basis = [free.carrier.identity().extract(list(range(4)), [c]) for c in range(4)]
    assert greedy_generators(free, basis, 4) == [0, 2]
    assert greedy_generators(free, basis, 4, order=[2, 3, 0, 1]) == [2, 0]
    with pytest.raises(InvalidStructureError):
        greedy_generators(free, [basis[1], basis[3]], 4)


def test_free_modules_record_their_degrees(exterior):
    free = free_module(exterior, [0, 1], side="right")
    assert free.certificate == [0, 1]
    assert free.side == "right"
    assert validate_module(free).passed
    assert free.carrier.dims == {0: 1, 1: 2, 2: 1}
    assert free == direct_sum(regular_module(exterior, "right"), shift_module(regular_module(exterior, "right"), 1)).module


def _random_cyclic_quotient(algebra, side, rng):
    free = free_module(algebra, [0, 0], side=side)
    values = [int(v) for v in rng.integers(0, algebra.field.characteristic, size=free.dim)]
    return quotient_by_submodule(free, Matrix.column(algebra.field, values)).module


def _tensor_dimension_from_presentation(right, left):
    """dim of the cokernel of (relations) (x) X : X^r1 -> X^r0 for a free presentation of Y."""
    presentation = free_presentation(opposite_module(right))
    r0 = len(presentation.generators)
    n = left.dim
    basis = [left.carrier.identity().extract(list(range(n)), [x]) for x in range(n)]
    columns = [
        Matrix.vstack(
            left.field,
            1,
            [left.left_operator(presentation.coefficient(i, j)) @ vector for j in range(r0)],
        )
        for i in range(len(presentation.relations))
        for vector in basis
    ]
    if not columns:
        return r0 * n
    return r0 * n - rank(Matrix.hstack(left.field, r0 * n, columns))


@pytest.mark.parametrize("name", ["dual_numbers(3)", "truncated(3,3)", "upper_triangular(2)"])
def test_tensor_agrees_with_the_presentation_cokernel(name, rng):
    algebra = builtin_catalog(name)
    for _ in range(7):
        right = _random_cyclic_quotient(algebra, "right", rng)
        left = _random_cyclic_quotient(algebra, "left", rng)
        assert tensor_A(right, left).complex.dim == _tensor_dimension_from_presentation(right, left)


def _random_matrix(field, rng, rows, cols):
    return Matrix.from_rows(field, [[int(v) for v in row] for row in rng.integers(0, 3, size=(rows, cols))], cols)


@pytest.mark.parametrize("spaces", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)])
def test_representable_modules_evaluate_functors(arrow_algebra, f3, rng, spaces):
    x_dim, y_dim = spaces
    values = {"x": x_dim, "y": y_dim}
    covariant = functor_module(arrow_algebra, values, {"a": _random_matrix(f3, rng, y_dim, x_dim)})
    contravariant = functor_module(
        arrow_algebra, values, {"a": _random_matrix(f3, rng, x_dim, y_dim)}, side="right"
    )
    for obj in ("x", "y"):
        representable = left_ideal(arrow_algebra, obj)
        assert tensor_A(contravariant, representable).complex.dim == evaluate_at(contravariant, obj)
        maps = hom_A(representable, covariant).complex
        assert cycles(maps, 0).cols == evaluate_at(covariant, obj)
        assert hom_module_vectors(representable, covariant).cols == evaluate_at(covariant, obj)
