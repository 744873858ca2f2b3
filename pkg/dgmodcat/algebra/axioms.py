import logging
from typing import List

from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.algebra.validation import AxiomCheck, ValidationReport, matrix_identity_check
from dgmodcat.graded.operations import tensor_base

logger = logging.getLogger(__name__)


def differential_checks(carrier, name: str = "d_squared") -> List[AxiomCheck]:
    """Homogeneity of the differential (degree -1) and d^2 = 0, reported rather than raised."""
    checks = []
    bad_entries = [
        [i, j]
        for (i, j) in carrier.differential.nonzero_entries()
        if carrier.degrees[i] != carrier.degrees[j] - 1
    ]
    checks.append(
        AxiomCheck(
            name="differential_degree",
            passed=not bad_entries,
            witness=bad_entries[0] if bad_entries else None,
        )
    )
    square = carrier.differential @ carrier.differential
    square_entries = square.nonzero_entries()
    position = min(square_entries) if square_entries else None
    checks.append(
        AxiomCheck(name=name, passed=position is None, witness=list(position) if position else None)
    )
    return checks


def validate_algebra(algebra: DGAlgebra) -> ValidationReport:
    """
    Check d^2 = 0, homogeneity, associativity, both unit laws and the Leibniz rule.

    :param algebra: Algebra to check.
    :return: Report with one AxiomCheck per axiom; failures carry basis-index witnesses.
    """
    n = algebra.dim
    carrier = algebra.carrier
    field = algebra.field
    identity = carrier.identity()
    m = algebra.multiplication
    u = algebra.unit
    report = ValidationReport(subject=f"algebra {algebra.name or ''}".strip())
    report.checks.extend(differential_checks(carrier))

    bad_products = [
        [column // n, column % n, k]
        for (k, column) in m.nonzero_entries()
        if carrier.degrees[k] != carrier.degrees[column // n] + carrier.degrees[column % n]
    ]
    bad_unit = [k for (k, _) in u.nonzero_entries() if carrier.degrees[k] != 0]
    report.checks.append(
        AxiomCheck(
            name="homogeneity",
            passed=not bad_products and not bad_unit,
            witness=(bad_products[0] if bad_products else ([bad_unit[0]] if bad_unit else None)),
        )
    )

    report.checks.append(
        matrix_identity_check("associativity", m @ m.kron(identity), m @ identity.kron(m), [n, n, n])
    )
    report.checks.append(matrix_identity_check("left_unit", m @ u.kron(identity), identity, [n]))
    report.checks.append(matrix_identity_check("right_unit", m @ identity.kron(u), identity, [n]))
    square = tensor_base(carrier, carrier)
    report.checks.append(
        matrix_identity_check("leibniz", carrier.differential @ m, m @ square.differential, [n, n])
    )
    if not report.passed:
        logger.debug(f"Algebra validation failed: {[c.name for c in report.failures()]} over {field}")
    return report
