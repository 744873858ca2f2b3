import pytest

from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.graded_map import GradedMap
from dgmodcat.graded.operations import (
    cone,
    cycles,
    direct_sum,
    hom_base,
    homology,
    homology_map_rank,
    is_exact,
    kernel_subcomplex,
    quotient_by_columns,
    shift,
    swap,
    tensor_base,
)
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import InvalidStructureError


@pytest.fixture()
def interval(rationals):
    """k --1--> k in degrees 1 and 0."""
    return GradedComplex.from_blocks(rationals, {0: 1, 1: 1}, {1: Matrix.identity(rationals, 1)})


@pytest.fixture()
def circle(rationals):
    """k^2 --(1 1)--> k in degrees 1 and 0, with homology k in degree 1."""
    return GradedComplex.from_blocks(rationals, {0: 1, 1: 2}, {1: Matrix.from_rows(rationals, [[1, 1]])})


def test_differential_must_lower_degree(rationals):
    with pytest.raises(InvalidStructureError):
        GradedComplex(rationals, [0, 0], Matrix.from_rows(rationals, [[0, 1], [0, 0]]))


def test_differential_must_square_to_zero(rationals):
    differential = Matrix.from_entries(rationals, (3, 3), {(1, 0): 1, (2, 1): 1})
    with pytest.raises(InvalidStructureError):
        GradedComplex(rationals, [2, 1, 0], differential)


def test_homology_dimensions(interval, circle):
    assert homology(interval) == {0: 0, 1: 0}
    assert homology(circle) == {0: 0, 1: 1}
    assert is_exact(interval)
    assert not is_exact(circle)


def test_shift_moves_homology_and_flips_the_differential(circle):
    shifted = shift(circle, 1)
    assert homology(shifted) == {1: 0, 2: 1}
    assert shifted.differential == circle.differential.scale(-1)
    assert shift(circle, 2).differential == circle.differential


def test_cone_of_identity_is_exact(circle):
    result = cone(GradedMap.identity(circle))
    assert result.complex.dim == 2 * circle.dim
    assert is_exact(result.complex)
    assert result.inclusion.is_chain_map()
    assert result.projection.is_chain_map()


def test_cone_of_zero_map_splits(interval, circle):
    result = cone(GradedMap.zero(circle, interval))
    assert homology(result.complex) == {0: 0, 1: 0, 2: 1}


def test_cone_rejects_maps_that_are_not_chain_maps(rationals, interval):
    target = GradedComplex(rationals, [0, 1])
    not_chain = GradedMap(interval, target, Matrix.from_entries(rationals, (2, 2), {(0, 0): 1}))
    with pytest.raises(InvalidStructureError):
        cone(not_chain)


def test_tensor_product_follows_kunneth(interval, circle):
    product = tensor_base(circle, circle)
    GradedComplex(product.field, product.degrees, product.differential)
    assert homology(product) == {0: 0, 1: 0, 2: 1}
    assert is_exact(tensor_base(interval, circle))


def test_swap_is_an_involutive_chain_map(circle, interval):
    forward = swap(circle, interval)
    backward = swap(interval, circle)
    assert forward.is_chain_map()
    assert backward.compose(forward).matrix == tensor_base(circle, interval).identity()


def test_hom_complex_of_a_contractible_complex(interval):
    internal = hom_base(interval, interval)
    GradedComplex(internal.field, internal.degrees, internal.differential)
    assert internal.dims == {-1: 1, 0: 2, 1: 1}
    assert cycles(internal, 0).cols == 1
    assert is_exact(internal)


def test_cycles_form_a_subcomplex_and_quotients_compute_homology(circle):
    cycle_complex = kernel_subcomplex(circle, circle.differential)
    assert cycle_complex.complex.dims == {0: 1, 1: 1}
    assert cycle_complex.complex.differential.is_zero()
    quotient = quotient_by_columns(circle, circle.differential)
    assert quotient.complex.dims == {1: 2}
    assert quotient.projection @ quotient.section == quotient.complex.identity()


def test_homology_rank_of_identity_and_zero(circle):
    assert homology_map_rank(GradedMap.identity(circle)) == homology(circle)
    assert homology_map_rank(GradedMap.zero(circle, circle)) == {0: 0, 1: 0}


def test_direct_sum_adds_homology(interval, circle):
    assert homology(direct_sum(interval, circle)) == {0: 0, 1: 1}


def test_maps_must_be_homogeneous(rationals, interval):
    with pytest.raises(InvalidStructureError):
        GradedMap(interval, interval, Matrix.from_entries(rationals, (2, 2), {(0, 1): 1}), degree=0)
    assert GradedMap(interval, interval, Matrix.from_entries(rationals, (2, 2), {(0, 1): 1}), degree=-1).is_chain_map()
