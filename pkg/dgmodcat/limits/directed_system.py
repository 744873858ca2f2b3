import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from dgmodcat.graded.operations import unvectorize, vectorize
from dgmodcat.linalg.elimination import solve_right
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.limits.factorization import Factorization
from dgmodcat.limits.semifree import recognize_fg_semifree
from dgmodcat.module_category.constructions import direct_sum, quotient_by_vectors
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.module_category.hom_tensor import hom_module_vectors
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidStructureError

logger = logging.getLogger(__name__)


class DirectedSystem:
    """
    A finite directed system of modules indexed by 0..n-1, with generating transition maps
    i -> j for i < j. Composites along different paths must agree and every pair of indices must
    have a common upper bound.
    """

    def __init__(self, stages: Sequence[DGModule], transitions: Mapping[Tuple[int, int], ModuleMap]):
        if not stages:
            raise ValueError("A directed system needs at least one stage")
        self.stages = list(stages)
        self.transitions = dict(sorted(transitions.items()))
        for (i, j), t in self.transitions.items():
            if not 0 <= i < j < len(self.stages):
                raise InvalidStructureError(f"Transition {i} -> {j} is not between increasing stage indices")
            if t.source != self.stages[i] or t.target != self.stages[j]:
                raise DimensionMismatchError(f"Transition {i} -> {j} does not connect stages {i} and {j}")
        self._reach = self._composites()
        for i in range(len(self.stages)):
            for j in range(i + 1, len(self.stages)):
                if not set(self._reach[i]) & set(self._reach[j]):
                    logger.error(f"Stages {i} and {j} have no common upper bound")
                    raise InvalidStructureError(f"System is not directed: stages {i} and {j} have no upper bound")

    @classmethod
    def chain(cls, stages: Sequence[DGModule], maps: Sequence[ModuleMap]) -> "DirectedSystem":
        """X_0 -> X_1 -> ... with maps[i] : X_i -> X_{i+1}."""
        if len(maps) != len(stages) - 1:
            raise DimensionMismatchError("A chain of n stages needs n - 1 maps")
        return cls(stages, {(i, i + 1): t for i, t in enumerate(maps)})

    @classmethod
    def constant(cls, module: DGModule, length: int = 2) -> "DirectedSystem":
        identity = ModuleMap.identity(module)
        return cls.chain([module] * length, [identity] * (length - 1))

    @classmethod
    def accumulating(cls, base: DGModule, summand: DGModule, length: int = 3) -> "DirectedSystem":
        """base -> base + summand -> base + summand + summand -> ..., each map the inclusion of the first summands."""
        stages = [base] + [direct_sum(base, *[summand] * count).module for count in range(1, length)]
        maps = [
            ModuleMap(
                stages[i],
                stages[i + 1],
                Matrix.identity(base.field, stages[i].dim).embed(
                    (stages[i + 1].dim, stages[i].dim), list(range(stages[i].dim)), list(range(stages[i].dim))
                ),
            )
            for i in range(length - 1)
        ]
        return cls.chain(stages, maps)

    def _composites(self) -> List[Dict[int, ModuleMap]]:
        count = len(self.stages)
        reach: List[Dict[int, ModuleMap]] = [dict() for _ in range(count)]
        for i in reversed(range(count)):
            reach[i][i] = ModuleMap.identity(self.stages[i])
            for (source, k), t in self.transitions.items():
                if source != i:
                    continue
                for j, tail in reach[k].items():
                    composite = tail.compose(t)
                    if j in reach[i] and reach[i][j].matrix != composite.matrix:
                        logger.error(f"Paths {i} -> {j} disagree")
                        raise InvalidStructureError(f"System is not functorial: paths from {i} to {j} differ")
                    reach[i][j] = composite
        return reach

    def __len__(self) -> int:
        return len(self.stages)

    def transition(self, i: int, j: int) -> ModuleMap:
        """t_ij, the composite along any path from i to j."""
        if j not in self._reach[i]:
            raise InvalidStructureError(f"No path from stage {i} to stage {j}")
        return self._reach[i][j]


@dataclass(frozen=True)
class Colimit:
    module: DGModule
    injections: List[ModuleMap]


def colimit(system: DirectedSystem) -> Colimit:
    """Sum of the stages modulo iota_i(x) - iota_j(t_ij x) for every generating transition."""
    field = system.stages[0].field
    summed = direct_sum(*system.stages, name="sum")
    total = summed.module.dim
    relations = [
        summed.injections[i].matrix - summed.injections[j].matrix @ t.matrix
        for (i, j), t in system.transitions.items()
    ]
    relation_matrix = Matrix.hstack(field, total, relations)
    quotient = quotient_by_vectors(summed.module, relation_matrix, name="colim")
    injections = [quotient.projection.compose(injection) for injection in summed.injections]
    logger.info(f"Colimit of {len(system)} stages has dims {quotient.module.carrier.dims}")
    return Colimit(quotient.module, injections)


def factor_through_stage(
    u: ModuleMap, system: DirectedSystem, colimit_result: Optional[Colimit] = None
) -> Optional[Factorization]:
    """
    Smallest stage j such that u = iota_j o v for a module map v into stage j, or None.

    The target of u must be the colimit of the system in its canonical presentation.
    """
    colimit_result = colimit_result or colimit(system)
    target = colimit_result.module
    if u.target != target:
        logger.error("factor_through_stage called with a target that is not the system colimit")
        raise DimensionMismatchError("Target of u is not the colimit of the system")
    source = u.source
    goal = vectorize(u.matrix)
    for j, stage in enumerate(system.stages):
        basis = hom_module_vectors(source, stage)
        injection = colimit_result.injections[j]
        composed = injection.matrix.kron(source.carrier.identity()) @ basis
        coefficients = solve_right(composed, goal)
        if coefficients is None:
            logger.debug(f"u does not lift through stage {j}")
            continue
        v_matrix = unvectorize(basis @ coefficients, stage.dim, source.dim)
        factorization = Factorization(
            u=u,
            v=ModuleMap(source, stage, v_matrix, validate=False),
            w=ModuleMap(stage, u.target, injection.matrix, validate=False),
            stage=j,
            certificate=stage.certificate if stage.certificate is not None else recognize_fg_semifree(stage),
        )
        logger.info(f"u factors through stage {j}")
        return factorization
    return None
