from dgmodcat.algebra.axioms import validate_algebra
from dgmodcat.algebra.builders import (
    builtin_catalog,
    category_algebra,
    from_graded_ring,
    from_ring,
    from_structure_constants,
    matrix_algebra,
    truncated_polynomial,
)
from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.algebra.validation import AxiomCheck, ValidationReport
