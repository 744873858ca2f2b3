import logging
import re
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from dgmodcat.algebra.axioms import validate_algebra
from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.linalg.field import BaseField, Scalar, get_field
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import InvalidStructureError

logger = logging.getLogger(__name__)

Products = Mapping[Tuple[int, int], Mapping[int, Scalar]]


def from_structure_constants(
    field: BaseField,
    degrees: Sequence[int],
    products: Products,
    unit: Union[int, Sequence[Scalar]],
    differential: Optional[Mapping[Tuple[int, int], Scalar]] = None,
    labels: Optional[Sequence[str]] = None,
    idempotents: Optional[Dict[str, Sequence[Scalar]]] = None,
    name: str = "",
    validate: bool = True,
) -> DGAlgebra:
    """
    Build a DGA from structure constants on an explicit graded basis.

    :param products: (i, j) -> {k: c} meaning e_i e_j has coefficient c on e_k.
    :param unit: Index of the unit basis element, or the unit as a coefficient vector.
    :param differential: (i, j) -> c meaning d(e_j) has coefficient c on e_i.
    :param validate: Reject the algebra with InvalidStructureError when an axiom fails.
    """
    n = len(degrees)
    multiplication = Matrix.from_entries(
        field,
        (n, n * n),
        {(k, i * n + j): value for (i, j), terms in products.items() for k, value in terms.items()},
    )
    if isinstance(unit, int):
        unit_vector = Matrix.from_entries(field, (n, 1), {(unit, 0): 1})
    else:
        unit_vector = Matrix.column(field, list(unit))
    carrier = GradedComplex(
        field, degrees, Matrix.from_entries(field, (n, n), dict(differential or {})), validate=False
    )
    algebra = DGAlgebra(
        carrier,
        multiplication,
        unit_vector,
        labels=labels,
        idempotents={key: Matrix.column(field, list(v)) for key, v in (idempotents or {}).items()},
        name=name,
    )
    if validate:
        report = validate_algebra(algebra)
        if not report.passed:
            logger.error(f"Rejected algebra {name!r}: failed {[c.name for c in report.failures()]}")
            raise InvalidStructureError(f"Algebra {name!r} fails its axioms", report)
    logger.debug(f"Built algebra {name!r} with dims {carrier.dims}")
    return algebra


def _table_products(table: Sequence[Sequence[Sequence[Scalar]]]) -> Dict[Tuple[int, int], Dict[int, Scalar]]:
    products = {}
    for i, row in enumerate(table):
        for j, coefficients in enumerate(row):
            products[(i, j)] = {k: c for k, c in enumerate(coefficients)}
    return products


def from_ring(
    field: BaseField,
    table: Sequence[Sequence[Sequence[Scalar]]],
    unit: Union[int, Sequence[Scalar]],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
) -> DGAlgebra:
    """
    A finite-dimensional k-algebra as a DGA concentrated in degree 0.

    :param table: table[i][j] is the coefficient list of e_i e_j.
    """
    return from_structure_constants(field, [0] * len(table), _table_products(table), unit, labels=labels, name=name)


def from_graded_ring(
    field: BaseField,
    degrees: Sequence[int],
    table: Sequence[Sequence[Sequence[Scalar]]],
    unit: Union[int, Sequence[Scalar]],
    labels: Optional[Sequence[str]] = None,
    name: str = "",
) -> DGAlgebra:
    return from_structure_constants(field, degrees, _table_products(table), unit, labels=labels, name=name)


def category_algebra(
    field: BaseField,
    objects: Sequence[str],
    arrows: Sequence[Tuple[str, str, str]],
    compositions: Optional[Mapping[Tuple[str, str], Mapping[str, Scalar]]] = None,
    name: str = "",
) -> DGAlgebra:
    """
    The algebra of a finite k-linear category: direct sum of all hom spaces with b . a = b o a.

    Identities id_x are added for every object and come first in the basis.

    :param arrows: Non-identity basis arrows as (label, source, target).
    :param compositions: (later, earlier) -> linear combination of arrows; composable pairs
        missing from the table compose to zero.
    """
    compositions = compositions or {}
    basis = [(f"id_{x}", x, x) for x in objects] + list(arrows)
    labels = [label for label, _, _ in basis]
    position = {label: index for index, label in enumerate(labels)}
    products: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
    for i, (later, later_source, later_target) in enumerate(basis):
        for j, (earlier, earlier_source, earlier_target) in enumerate(basis):
            if earlier_target != later_source:
                continue
            if later == f"id_{later_source}":
                products[(i, j)] = {j: 1}
            elif earlier == f"id_{earlier_source}":
                products[(i, j)] = {i: 1}
            else:
                terms = compositions.get((later, earlier), {})
                for label in terms:
                    _, source, target = basis[position[label]]
                    if (source, target) != (earlier_source, later_target):
                        raise InvalidStructureError(
                            f"{later} o {earlier} must lie in hom({earlier_source}, {later_target}), got {label}"
                        )
                products[(i, j)] = {position[label]: value for label, value in terms.items()}
    unit = [1 if label.startswith("id_") and index < len(objects) else 0 for index, label in enumerate(labels)]
    idempotents = {x: [1 if index == k else 0 for index in range(len(labels))] for k, x in enumerate(objects)}
    return from_structure_constants(
        field, [0] * len(labels), products, unit, labels=labels, idempotents=idempotents, name=name
    )


def truncated_polynomial(field: BaseField, length: int, degree: int = 0, name: str = "") -> DGAlgebra:
    """k[x]/x^length with |x| = degree and zero differential."""
    products = {(i, j): {i + j: 1} for i in range(length) for j in range(length) if i + j < length}
    return from_structure_constants(
        field,
        [i * degree for i in range(length)],
        products,
        0,
        labels=["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, length)],
        name=name,
    )


def matrix_algebra(field: BaseField, size: int = 2, name: str = "") -> DGAlgebra:
    """M_size(k) on the matrix units E_ij (basis index i * size + j)."""
    products = {}
    for i in range(size):
        for j in range(size):
            for l in range(size):
                products[(i * size + j, j * size + l)] = {i * size + l: 1}
    unit = [1 if i == j else 0 for i in range(size) for j in range(size)]
    labels = [f"E{i + 1}{j + 1}" for i in range(size) for j in range(size)]
    return from_structure_constants(field, [0] * size * size, products, unit, labels=labels, name=name)


_CATALOG_NAME = re.compile(r"^\s*(\w+)\s*(?:\((.*)\))?\s*$")


def builtin_catalog(name: str, field: Optional[BaseField] = None) -> DGAlgebra:
    """
    Named algebras: unit, dual_numbers(p), exterior(p), cone_dga(p), upper_triangular(p),
    matrix2(p), truncated(p, n[, degree]).

    :param name: Catalog name; "unit" takes its field from ``field`` (default Q) or an argument.
    :return: A validated DGAlgebra
    :raise ValueError: Unknown name or bad arguments.
    """
    match = _CATALOG_NAME.match(name)
    if match is None:
        raise ValueError(f"Unknown catalog algebra: {name!r}")
    family = match.group(1)
    arguments = [a.strip() for a in (match.group(2) or "").split(",") if a.strip()]
    if family == "unit":
        if arguments:
            field = get_field(arguments[0])
        field = field or get_field("Q")
        return from_structure_constants(field, [0], {(0, 0): {0: 1}}, 0, labels=["1"], name="unit")
    if not arguments:
        raise ValueError(f"Catalog algebra {family!r} needs a prime argument, e.g. {family}(2)")
    field = get_field(arguments[0])
    canonical = f"{family}({','.join(arguments)})"
    if family == "dual_numbers":
        return truncated_polynomial(field, 2, 0, name=canonical)
    if family == "exterior":
        return truncated_polynomial(field, 2, 1, name=canonical)
    if family == "truncated":
        if len(arguments) not in (2, 3):
            raise ValueError("truncated(p, n[, degree]) takes two or three arguments")
        degree = int(arguments[2]) if len(arguments) == 3 else 0
        return truncated_polynomial(field, int(arguments[1]), degree, name=canonical)
    if family == "cone_dga":
        return from_structure_constants(
            field,
            [0, 1],
            {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}},
            0,
            differential={(0, 1): 1},
            labels=["1", "e"],
            name=canonical,
        )
    if family == "upper_triangular":
        return category_algebra(field, ["x", "y"], [("a", "x", "y")], name=canonical)
    if family == "matrix2":
        return matrix_algebra(field, 2, name=canonical)
    logger.error(f"Unknown catalog algebra {name!r}")
    raise ValueError(f"Unknown catalog algebra: {name!r}")
