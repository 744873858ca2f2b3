import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, Optional, Sequence, Tuple

from dgmodcat.graded.operations import cycles, vectorize
from dgmodcat.linalg.elimination import is_isomorphism, rank, solve_right
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import opposite_module, regular_bimodule, restrict_side
from dgmodcat.module_category.dg_module import DGModule
from dgmodcat.module_category.hom_tensor import (
    HomResult,
    TensorResult,
    hom_A,
    hom_module_vectors,
    nu_map,
    tensor_A,
)

logger = logging.getLogger(__name__)


@dataclass
class DualizabilityVerdict:
    """
    Outcome of the coevaluation solve. When dualizable, ``coevaluation`` holds eta' in the
    coordinates of ``tensor.complex`` (X* (x)_A X); otherwise ``failed_condition`` names the check
    that failed and ``failure_witness`` carries the numbers behind it.
    """

    dualizable: bool
    coevaluation: Optional[Matrix] = None
    tensor: Optional[TensorResult] = None
    dual_hom: Optional[HomResult] = None
    failed_condition: Optional[str] = None
    failure_witness: Dict[str, Any] = dataclass_field(default_factory=dict)


def _left_view(module: DGModule) -> DGModule:
    if module.side == "right":
        return opposite_module(module)
    if module.side == "bi":
        return restrict_side(module, "left")
    return module


def evaluation_columns(module: DGModule, dual_hom: HomResult, other: DGModule) -> Matrix:
    """
    The k-linear map X* (x) X' -> [X, X'], f (x) x' -> (x -> (-1)^(|x||x'|) f(x) . x'), as a
    matrix on the basis f_k (x) x'_l (index k * dim X' + l).
    """
    field = module.field
    algebra = module.algebra
    n_x, n_o, a_dim = module.dim, other.dim, algebra.dim
    id_a = algebra.carrier.identity()
    columns = []
    for k in range(dual_hom.complex.dim):
        f = dual_hom.basis_matrix(k)
        for l in range(n_o):
            unit = Matrix.from_entries(field, (n_o, 1), {(l, 0): 1})
            acting = other.left_action @ id_a.kron(unit)
            columns.append(vectorize(acting @ f @ module.carrier.sign_matrix(other.degrees[l])))
    return Matrix.hstack(field, n_o * n_x, columns)


def degree_zero_cycles(complex_) -> Matrix:
    """Basis of Z_0 in the full coordinates of the complex."""
    z = cycles(complex_, 0)
    return z.embed((complex_.dim, z.cols), complex_.indices(0), list(range(z.cols)))


def _cycle_evaluation(module: DGModule, other: DGModule) -> Dict[str, int]:
    """Dimensions behind C_0(1, X* (x)_A X') -> _A C(X, X') induced by evaluation."""
    dual_hom = hom_A(module, regular_bimodule(module.algebra))
    tensor = tensor_A(dual_hom.module, other)
    z0 = degree_zero_cycles(tensor.complex)
    image = evaluation_columns(module, dual_hom, other) @ tensor.section @ z0
    return {
        "cycles": z0.cols,
        "module_maps": hom_module_vectors(module, other).cols,
        "rank": rank(image),
    }


def is_dualizable(module: DGModule) -> DualizabilityVerdict:
    """
    Solve for a degree-0 cycle eta' in X* (x)_A X whose image under evaluation is id_X.

    Right modules are decided through the opposite algebra.
    """
    module = _left_view(module)
    field = module.field
    n = module.dim
    dual_hom = hom_A(module, regular_bimodule(module.algebra))
    tensor = tensor_A(dual_hom.module, module)
    if n == 0:
        return DualizabilityVerdict(True, Matrix.zeros(field, tensor.complex.dim, 1), tensor, dual_hom)
    evaluation = evaluation_columns(module, dual_hom, module)
    unknowns = tensor.ambient.indices(0)
    all_rows = list(range(tensor.complex.dim))
    boundary = (tensor.complex.differential @ tensor.projection).extract(all_rows, unknowns)
    triangle = evaluation.extract(list(range(evaluation.rows)), unknowns)
    system = Matrix.vstack(field, len(unknowns), [boundary, triangle])
    rhs = Matrix.vstack(
        field, 1, [Matrix.zeros(field, tensor.complex.dim, 1), vectorize(module.carrier.identity())]
    )
    solution = solve_right(system, rhs)
    if solution is None:
        witness = _cycle_evaluation(module, module)
        logger.info(f"{module.name or 'module'} is not dualizable: {witness}")
        return DualizabilityVerdict(
            False,
            tensor=tensor,
            dual_hom=dual_hom,
            failed_condition="coevaluation",
            failure_witness=witness,
        )
    ambient_vector = solution.embed((tensor.ambient.dim, 1), unknowns, [0])
    coevaluation = tensor.projection @ ambient_vector
    logger.info(f"{module.name or 'module'} is dualizable")
    return DualizabilityVerdict(True, coevaluation, tensor, dual_hom)


def verify_coevaluation(module: DGModule, verdict: DualizabilityVerdict) -> bool:
    """Re-check that eta' is a degree-0 cycle and that the triangle composite is id_X."""
    if not verdict.dualizable:
        return False
    module = _left_view(module)
    tensor, eta = verdict.tensor, verdict.coevaluation
    if not (tensor.complex.differential @ eta).is_zero():
        return False
    if any(tensor.complex.degrees[i] != 0 for (i, _) in eta.nonzero_entries()):
        return False
    evaluation = evaluation_columns(module, verdict.dual_hom, module)
    return evaluation @ tensor.section @ eta == vectorize(module.carrier.identity())


def check_condition_2(module: DGModule) -> bool:
    """Evaluation induces C_0(1, X* (x)_A X) = _A C(X, X)."""
    return check_condition_3(module, [module])


def check_condition_3(module: DGModule, targets: Sequence[DGModule]) -> bool:
    """Evaluation induces C_0(1, X* (x)_A X') = _A C(X, X') for every sampled X'."""
    module = _left_view(module)
    for other in targets:
        dims = _cycle_evaluation(module, _left_view(other))
        if not dims["rank"] == dims["cycles"] == dims["module_maps"]:
            logger.debug(f"Evaluation on cycles fails against {other.name}: {dims}")
            return False
    return True


def check_condition_7(module: DGModule) -> bool:
    """nu : X* (x)_A X -> _A[X, X] is an isomorphism."""
    module = _left_view(module)
    return is_isomorphism(nu_map(module, regular_bimodule(module.algebra), module).matrix)


def check_condition_8(module: DGModule, pairs: Sequence[Tuple[DGModule, DGModule]]) -> bool:
    """nu : _A[X, Z] (x)_A X' -> _A[X, Z (x)_A X'] is an isomorphism for every sampled (Z, X')."""
    module = _left_view(module)
    return all(is_isomorphism(nu_map(module, z, _left_view(other)).matrix) for z, other in pairs)


def check_condition_9(module: DGModule, pairs: Sequence[Tuple[DGModule, DGModule]]) -> bool:
    """C_0(1, nu) is an isomorphism for every sampled (Z, X')."""
    module = _left_view(module)
    for z, other in pairs:
        nu = nu_map(module, z, _left_view(other))
        source_cycles = cycles(nu.source, 0)
        target_cycles = cycles(nu.target, 0)
        image = nu.component(0) @ source_cycles
        if not rank(image) == source_cycles.cols == target_cycles.cols:
            return False
    return True
