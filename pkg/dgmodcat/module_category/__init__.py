from dgmodcat.module_category.constructions import (
    ModuleCone,
    ModuleQuotient,
    ModuleSum,
    Submodule,
    arrow_endpoints,
    complex_module,
    compose,
    direct_sum,
    evaluate_at,
    free_bimodule,
    free_module,
    functor_module,
    generated_submodule,
    identity_map,
    left_ideal,
    module_cone,
    opposite_module,
    quotient_by_submodule,
    quotient_by_vectors,
    quotient_module,
    regular_bimodule,
    regular_module,
    restrict_side,
    right_ideal,
    shift_module,
    submodule_kernel,
    zero_map,
    zero_module,
)
from dgmodcat.module_category.dg_module import DGModule, ModuleMap, validate_module, validate_module_map
from dgmodcat.module_category.generators import greedy_generators, orbit_columns
from dgmodcat.module_category.hom_tensor import (
    HomResult,
    TensorResult,
    complex_dual,
    complex_tensor_module,
    dual,
    evaluation_map,
    hom_A,
    hom_module_set,
    hom_module_vectors,
    nu_map,
    tensor_A,
    tensor_with_complex,
)
