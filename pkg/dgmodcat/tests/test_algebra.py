import pytest

from dgmodcat.algebra.axioms import validate_algebra
from dgmodcat.algebra.builders import builtin_catalog, category_algebra, from_ring, from_structure_constants
from dgmodcat.system.exceptions import InvalidStructureError

CATALOG = [
    "unit",
    "dual_numbers(2)",
    "dual_numbers(3)",
    "exterior(2)",
    "exterior(3)",
    "cone_dga(2)",
    "cone_dga(5)",
    "upper_triangular(3)",
    "matrix2(2)",
    "truncated(3,3)",
    "truncated(2,3,1)",
]


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_algebras_satisfy_their_axioms(name):
    algebra = builtin_catalog(name)
    assert validate_algebra(algebra).passed
    assert validate_algebra(algebra.opposite).passed
    assert algebra.opposite.opposite is algebra


def test_catalog_rejects_unknown_names_and_composite_moduli():
    with pytest.raises(ValueError):
        builtin_catalog("polynomial(2)")
    with pytest.raises(ValueError):
        builtin_catalog("dual_numbers(4)")
    with pytest.raises(ValueError):
        builtin_catalog("exterior")


def _broken_table(f2, validate):
    """1, x, y with x y = y and every other product of x and y zero; (x x) y != x (x y)."""
    products = {
        (0, 0): {0: 1},
        (0, 1): {1: 1},
        (0, 2): {2: 1},
        (1, 0): {1: 1},
        (2, 0): {2: 1},
        (1, 2): {2: 1},
    }
    return from_structure_constants(f2, [0, 0, 0], products, 0, labels=["1", "x", "y"], validate=validate)


def test_broken_associativity_is_reported_with_a_witness(f2):
    report = validate_algebra(_broken_table(f2, validate=False))
    assert not report.passed
    check = report.check("associativity")
    assert not check.passed
    assert len(check.witness) == 3
    assert [c.name for c in report.failures()] == ["associativity"]


def test_validated_construction_raises_with_the_report(f2):
    with pytest.raises(InvalidStructureError) as error:
        _broken_table(f2, validate=True)
    assert error.value.report.check("associativity").passed is False


def test_ring_detection(dual_numbers, exterior, cone_dga):
    assert dual_numbers.is_ring
    assert not exterior.is_ring
    assert not cone_dga.is_ring
    assert cone_dga.differential.entry(0, 1) == cone_dga.field.one


def test_truncated_polynomial_labels_and_products(truncated_f3):
    x = truncated_f3.basis_vector(1)
    assert truncated_f3.labels == ("1", "x", "x^2")
    assert truncated_f3.product(x, x) == truncated_f3.basis_vector(2)
    assert truncated_f3.product(x, truncated_f3.basis_vector(2)).is_zero()


def test_graded_commutativity_sign_in_the_opposite():
    exterior = builtin_catalog("exterior(3)")
    x = exterior.basis_vector(1)
    assert exterior.product(x, x).is_zero()
    cone = builtin_catalog("cone_dga(3)")
    e = cone.basis_vector(1)
    one = cone.basis_vector(0)
    assert cone.opposite.product(one, e) == cone.product(e, one)


def test_category_algebra_records_objects(arrow_algebra):
    assert arrow_algebra.labels == ("id_x", "id_y", "a")
    e_x, e_y = arrow_algebra.idempotents["x"], arrow_algebra.idempotents["y"]
    assert e_x + e_y == arrow_algebra.unit
    a = arrow_algebra.basis_vector(2)
    assert arrow_algebra.product(e_y, arrow_algebra.product(a, e_x)) == a
    assert arrow_algebra.product(a, e_y).is_zero()


def test_compositions_must_land_in_the_right_hom_space(f3):
    with pytest.raises(InvalidStructureError):
        category_algebra(
            f3,
            ["x", "y", "z"],
            [("a", "x", "y"), ("b", "y", "z"), ("c", "x", "y")],
            compositions={("b", "a"): {"c": 1}},
        )


def test_rings_from_multiplication_tables(rationals):
    gaussian = from_ring(
        rationals,
        [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]],
        0,
        labels=["1", "i"],
    )
    i = gaussian.basis_vector(1)
    assert gaussian.product(i, i) == gaussian.unit.scale(-1)
    assert gaussian.opposite == gaussian
