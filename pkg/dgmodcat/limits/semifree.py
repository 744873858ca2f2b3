import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from dgmodcat.graded.operations import cycles
from dgmodcat.linalg.elimination import rank
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import opposite_module, quotient_by_vectors, restrict_side
from dgmodcat.module_category.dg_module import DGModule
from dgmodcat.system.constants import DEFAULT_DEGREE_BOUND, DEFAULT_LENGTH_BOUND

logger = logging.getLogger(__name__)


@dataclass
class SemiFreeFiltration:
    """
    0 = X_0 < X_1 < ... < X_n = X with X_{j+1} / X_j = Sigma^{degrees[j]} A, the j-th copy generated by
    the image of ``generators[j]`` in X / X_j.
    """

    degrees: List[int] = dataclass_field(default_factory=list)
    generators: List[Matrix] = dataclass_field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.degrees)

    def verify(self, module: DGModule) -> bool:
        """Replay the filtration: each generator must be a homogeneous cycle spanning a free copy of A."""
        module = _left_view(module)
        a_dim = module.algebra.dim
        current = module
        projection = module.carrier.identity()
        for degree, generator in zip(self.degrees, self.generators):
            if generator.shape != (module.dim, 1):
                return False
            z = projection @ generator
            if any(current.degrees[i] != degree for (i, _) in z.nonzero_entries()):
                return False
            if not (current.differential @ z).is_zero():
                return False
            image = _free_image(current, z)
            if rank(image) != a_dim:
                return False
            quotient = quotient_by_vectors(current, image)
            projection = quotient.projection.matrix @ projection
            current = quotient.module
        return current.dim == 0


def _left_view(module: DGModule) -> DGModule:
    if module.side == "bi":
        return restrict_side(module, "left")
    if module.side == "right":
        return opposite_module(module)
    return module


def _free_image(module: DGModule, z: Matrix) -> Matrix:
    """Columns b . z; they span a copy of Sigma^|z| A exactly when they are independent."""
    return module.left_action @ module.algebra.carrier.identity().kron(z)


def _candidate_cycles(module: DGModule, degree_bound: int) -> Iterator[Tuple[int, Matrix]]:
    """Basis cycles of each degree in [-bound, bound], then their pairwise sums."""
    for degree in range(-degree_bound, degree_bound + 1):
        if degree not in module.carrier.dims:
            continue
        z = cycles(module.carrier, degree)
        positions = module.carrier.indices(degree)
        basis = [
            z.extract(list(range(z.rows)), [c]).embed((module.dim, 1), positions, [0]) for c in range(z.cols)
        ]
        for vector in basis:
            yield degree, vector
        for first, second in combinations(basis, 2):
            yield degree, first + second


def recognize_fg_semifree(
    module: DGModule,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    length_bound: int = DEFAULT_LENGTH_BOUND,
) -> Optional[SemiFreeFiltration]:
    """
    Bounded depth-first search for a semi-free filtration. None means nothing was found within
    the bounds, which is inconclusive.
    """
    module = _left_view(module)
    a_dim = module.algebra.dim
    if module.dim % a_dim or module.dim // a_dim > length_bound:
        logger.debug(f"{module.name}: dimension {module.dim} rules out a filtration within bounds")
        return None

    def search(current: DGModule, lift: Matrix, degrees: List[int], generators: List[Matrix]):
        if current.dim == 0:
            return SemiFreeFiltration(list(degrees), list(generators))
        for degree, z in _candidate_cycles(current, degree_bound):
            image = _free_image(current, z)
            if rank(image) != a_dim:
                continue
            quotient = quotient_by_vectors(current, image)
            found = search(
                quotient.module,
                lift @ quotient.section,
                degrees + [degree],
                generators + [lift @ z],
            )
            if found is not None:
                return found
        return None

    filtration = search(module, module.carrier.identity(), [], [])
    if filtration is None:
        logger.info(f"No semi-free filtration of {module.name} within degree {degree_bound}")
    else:
        logger.info(f"{module.name} is semi-free on generators in degrees {filtration.degrees}")
    return filtration
