import logging
from dataclasses import dataclass, field as dataclass_field
from typing import List, Optional

from pydantic import BaseModel

from dgmodcat.ext.presentation import is_acyclic
from dgmodcat.graded.operations import homology
from dgmodcat.linalg.elimination import rank
from dgmodcat.module_category.constructions import ModuleCone, restrict_side
from dgmodcat.module_category.dg_module import DGModule, ModuleMap, validate_module, validate_module_map
from dgmodcat.module_category.hom_tensor import tensor_A
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidBatteryError

logger = logging.getLogger(__name__)


@dataclass
class ShortExactSequence:
    """0 -> first --inclusion--> middle --projection--> last -> 0"""

    inclusion: ModuleMap
    projection: ModuleMap
    name: str = ""

    @property
    def first(self) -> DGModule:
        return self.inclusion.source

    @property
    def middle(self) -> DGModule:
        return self.inclusion.target

    @property
    def last(self) -> DGModule:
        return self.projection.target

    @classmethod
    def from_cone(cls, cone: ModuleCone, name: str = "") -> "ShortExactSequence":
        """target -> cone(f) -> Sigma source"""
        return cls(cone.inclusion, cone.projection, name=name or cone.module.name)

    def is_exact(self) -> bool:
        if self.projection.source != self.middle:
            return False
        if not (validate_module_map(self.inclusion).passed and validate_module_map(self.projection).passed):
            return False
        if not (self.projection.matrix @ self.inclusion.matrix).is_zero():
            return False
        return (
            rank(self.inclusion.matrix) == self.first.dim
            and rank(self.projection.matrix) == self.last.dim
            and self.middle.dim == self.first.dim + self.last.dim
        )


@dataclass
class Battery:
    """Curated acyclic modules and short exact sequences standing in for all of them."""

    acyclics: List[DGModule] = dataclass_field(default_factory=list)
    sequences: List[ShortExactSequence] = dataclass_field(default_factory=list)

    def validate(self) -> None:
        for index, acyclic in enumerate(self.acyclics):
            if not validate_module(acyclic).passed or not is_acyclic(acyclic):
                logger.error(f"Battery acyclic {index} ({acyclic.name}) is invalid or has homology")
                raise InvalidBatteryError(f"Battery member {acyclic.name or index} is not an acyclic module")
        for index, sequence in enumerate(self.sequences):
            if not sequence.is_exact():
                logger.error(f"Battery sequence {index} ({sequence.name}) is not exact")
                raise InvalidBatteryError(f"Battery sequence {sequence.name or index} is not short exact")

    def acyclics_on(self, side: str) -> List[DGModule]:
        """Acyclic members usable on the given side; bimodules are restricted."""
        result = []
        for acyclic in self.acyclics:
            if acyclic.side == side:
                result.append(acyclic)
            elif acyclic.side == "bi":
                result.append(restrict_side(acyclic, side))
        return result

    @property
    def digest(self) -> str:
        """SHA-256 of the battery's compact canonical document."""
        from dgmodcat.cli.documents import battery_hash

        return battery_hash(self)


class SemiflatWitness(BaseModel):
    kind: str
    index: int
    name: str = ""
    degree: int
    dimension: int


class SemiflatVerdict(BaseModel):
    flat_on_battery: bool
    preserves_acyclicity_on_battery: bool
    battery_hash: str = ""
    witness: Optional[SemiflatWitness] = None

    @property
    def semi_flat(self) -> bool:
        return self.flat_on_battery and self.preserves_acyclicity_on_battery


def _left_view(module: DGModule) -> DGModule:
    if module.side == "bi":
        return restrict_side(module, "left")
    if module.side != "left":
        raise DimensionMismatchError("Semi-flatness is tested on left modules")
    return module


def _right_view(module: DGModule) -> DGModule:
    return restrict_side(module, "right") if module.side == "bi" else module


def sequence_defect(sequence: ShortExactSequence, module: DGModule, index: int = 0) -> Optional[SemiflatWitness]:
    """
    Degree of the first place where tensoring the sequence with M loses exactness. Tensoring is
    right exact, so only the kernel of the tensored inclusion can appear.
    """
    module = _left_view(module)
    first = tensor_A(_right_view(sequence.first), module)
    middle = tensor_A(_right_view(sequence.middle), module)
    last = tensor_A(_right_view(sequence.last), module)
    induced = middle.projection @ sequence.inclusion.matrix.kron(module.carrier.identity()) @ first.section
    for degree in sorted(set(first.complex.support) | set(middle.complex.support)):
        rows, cols = middle.complex.indices(degree), first.complex.indices(degree)
        image_rank = rank(induced.extract(rows, cols))
        kernel_dim = len(cols) - image_rank
        if kernel_dim or len(rows) != image_rank + len(last.complex.indices(degree)):
            return SemiflatWitness(
                kind="sequence", index=index, name=sequence.name, degree=degree, dimension=kernel_dim
            )
    return None


def acyclic_defect(acyclic: DGModule, module: DGModule, index: int = 0) -> Optional[SemiflatWitness]:
    """First degree where E (x)_A M has homology."""
    tensored = tensor_A(_right_view(acyclic), _left_view(module))
    for degree, value in sorted(homology(tensored.complex).items()):
        if value:
            return SemiflatWitness(kind="acyclic", index=index, name=acyclic.name, degree=degree, dimension=value)
    return None


def is_semi_flat(module: DGModule, battery: Battery, validate_battery: bool = True) -> SemiflatVerdict:
    """
    Exactness of - (x)_A M on every battery sequence, and acyclicity of E (x)_A M for every
    battery acyclic. A False verdict carries the first failing item.
    """
    if validate_battery:
        battery.validate()
    witness = None
    flat = True
    for index, sequence in enumerate(battery.sequences):
        witness = sequence_defect(sequence, module, index)
        if witness is not None:
            flat = False
            break
    preserves = True
    if flat:
        for index, acyclic in enumerate(battery.acyclics_on("right")):
            witness = acyclic_defect(acyclic, module, index)
            if witness is not None:
                preserves = False
                break
    verdict = SemiflatVerdict(
        flat_on_battery=flat,
        preserves_acyclicity_on_battery=preserves,
        battery_hash=battery.digest,
        witness=witness,
    )
    logger.info(f"{module.name}: semi-flat on battery {verdict.battery_hash[:12]} is {verdict.semi_flat}")
    return verdict


def recheck_witness(module: DGModule, battery: Battery, witness: SemiflatWitness) -> bool:
    """Recompute the single battery item a witness points at."""
    if witness.kind == "sequence":
        found = sequence_defect(battery.sequences[witness.index], module, witness.index)
    else:
        found = acyclic_defect(battery.acyclics_on("right")[witness.index], module, witness.index)
    return found is not None and found.degree == witness.degree and found.dimension == witness.dimension
