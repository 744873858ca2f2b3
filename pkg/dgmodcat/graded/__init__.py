from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.graded_map import GradedMap
from dgmodcat.graded.operations import (
    Cone,
    Quotient,
    Subcomplex,
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
    span_subcomplex,
    swap,
    tensor_base,
    tensor_maps,
    unit_object,
    unvectorize,
    vectorize,
)
