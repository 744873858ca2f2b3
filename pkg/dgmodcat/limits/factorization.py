import logging
from dataclasses import dataclass
from typing import Any, Optional

from dgmodcat.ext.battery import Battery, is_semi_flat
from dgmodcat.limits.presentations import FreePresentation, free_presentation, relation_kernel
from dgmodcat.linalg.elimination import right_inverse, solve_right
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import free_module
from dgmodcat.module_category.dg_module import DGModule, ModuleMap, validate_module_map
from dgmodcat.system.exceptions import DimensionMismatchError, FlatnessFailure, UnsupportedInstanceError

logger = logging.getLogger(__name__)


@dataclass
class Factorization:
    """
    u = w o v through a module carrying a freeness certificate: either a degree list (free) or a
    SemiFreeFiltration.
    """

    u: ModuleMap
    v: ModuleMap
    w: ModuleMap
    stage: Optional[int] = None
    certificate: Any = None

    @property
    def through(self) -> DGModule:
        return self.v.target

    def verify(self) -> bool:
        """Re-check w o v = u from the matrices alone, plus that v and w are module maps."""
        if self.v.source != self.u.source or self.w.target != self.u.target:
            return False
        if self.v.target != self.w.source:
            return False
        if self.w.matrix @ self.v.matrix != self.u.matrix:
            return False
        return validate_module_map(self.v).passed and validate_module_map(self.w).passed


def lazard_factorize(
    u: ModuleMap, presentation: Optional[FreePresentation] = None, battery: Optional[Battery] = None
) -> Factorization:
    """
    Factor u : P -> M through a finitely generated free module, for P finitely presented over a
    ring.

    With f_ij the relation coefficients and K = ker(f*) with k-basis kappa_1..kappa_s, the cover
    L' = R^s -> K is e_t -> kappa_t. The element u o g of L0* (x) M is lifted to
    L' (x) M = M^s by solving sum_t kappa_tj . m_t = u(g(e_j)); the lift exists whenever M is
    flat. Then L = R^s, w(e_t) = m_t and v is the descent of v'(e_j) = sum_t kappa_tj e_t.
    The step that would realize L' as a direct limit is not needed here since L' is free.

    When a battery is given, M must be flat on it before the lift is attempted; a failing battery
    sequence is reported as the witness instead.
    """
    source, target = u.source, u.target
    algebra = source.algebra
    if not algebra.is_ring:
        logger.error(f"lazard_factorize called over {algebra.name!r}, which is not a ring")
        raise UnsupportedInstanceError("Lazard factorization is only available over rings in degree 0")
    if source.side != "left":
        raise DimensionMismatchError("lazard_factorize takes maps of left modules")
    if battery is not None:
        verdict = is_semi_flat(target, battery)
        if not verdict.flat_on_battery:
            witness = {"battery": verdict.battery_hash, **verdict.witness.model_dump()}
            logger.error(f"{target.name} is not flat on the battery: {witness}")
            raise FlatnessFailure("M failed flatness on the battery", witness)
    presentation = presentation or free_presentation(source)
    if presentation.module != source:
        raise DimensionMismatchError("Presentation does not present the source of u")
    field = algebra.field
    a_dim, m_dim = algebra.dim, target.dim
    r0 = len(presentation.generators)
    kappa = relation_kernel(presentation)
    s = kappa.cols

    def kappa_component(t: int, j: int) -> Matrix:
        return kappa.extract(list(range(j * a_dim, (j + 1) * a_dim)), [t])

    system_entries = {}
    for j in range(r0):
        for t in range(s):
            block = target.left_operator(kappa_component(t, j))
            for (r, c), value in block.nonzero_entries().items():
                system_entries[(j * m_dim + r, t * m_dim + c)] = value
    system = Matrix.from_entries(field, (r0 * m_dim, s * m_dim), system_entries)
    rhs = Matrix.vstack(field, 1, [u.matrix @ generator for generator in presentation.generators])
    lift = solve_right(system, rhs)
    if lift is None:
        witness = {
            "generators": r0,
            "relations": len(presentation.relations),
            "kernel_cover_rank": s,
            "target": target.name,
        }
        logger.error(f"Lift of u o g through L' (x) M is unsolvable: {witness}")
        raise FlatnessFailure("M failed flatness on the constructed test", witness)

    through = free_module(algebra, [0] * s).renamed(f"R^{s}")
    w_columns = []
    for t in range(s):
        m_t = lift.extract(list(range(t * m_dim, (t + 1) * m_dim)), [0])
        for b in range(a_dim):
            w_columns.append(target.left_operator(algebra.basis_vector(b)) @ m_t)
    w_matrix = Matrix.hstack(field, m_dim, w_columns)

    v_entries = {}
    for j in range(r0):
        for b in range(a_dim):
            e_b = algebra.basis_vector(b)
            for t in range(s):
                image = algebra.product(e_b, kappa_component(t, j))
                for (r, _), value in image.nonzero_entries().items():
                    v_entries[(t * a_dim + r, j * a_dim + b)] = value
    v_prime = Matrix.from_entries(field, (s * a_dim, r0 * a_dim), v_entries)
    section = right_inverse(presentation.cover.matrix) if source.dim else Matrix.zeros(field, r0 * a_dim, 0)
    v_matrix = v_prime @ section

    factorization = Factorization(
        u=u,
        v=ModuleMap(source, through, v_matrix, validate=False),
        w=ModuleMap(through, target, w_matrix, validate=False),
        certificate=[0] * s,
    )
    if not factorization.verify():
        logger.error("Lazard factorization failed its own certificate")
        raise FlatnessFailure("Constructed factorization does not reproduce u", {"kernel_cover_rank": s})
    logger.info(f"Factored u : {source.name} -> {target.name} through R^{s}")
    return factorization
