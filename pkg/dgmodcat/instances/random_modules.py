"""Seeded random modules and maps for property sweeps."""
import logging
from typing import List, Optional, Sequence

import numpy as np

from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.module_category.constructions import free_module, module_cone
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.module_category.hom_tensor import hom_module_set

logger = logging.getLogger(__name__)


def random_degrees(rng: np.random.Generator, count: int, low: int = -1, high: int = 1) -> List[int]:
    return sorted(int(d) for d in rng.integers(low, high + 1, size=count))


def random_combination(
    rng: np.random.Generator, maps: Sequence[ModuleMap], source: DGModule, target: DGModule
) -> ModuleMap:
    """A seeded linear combination of module maps; the zero map when there are none."""
    result = ModuleMap.zero(source, target)
    field = source.field
    modulus = field.characteristic or 5
    for module_map in maps:
        coefficient = int(rng.integers(0, modulus))
        if not field.characteristic:
            coefficient -= modulus // 2
        if coefficient:
            result = result + module_map.scale(coefficient)
    return result


def random_map(rng: np.random.Generator, source: DGModule, target: DGModule) -> ModuleMap:
    return random_combination(rng, hom_module_set(source, target), source, target)


def random_cone_module(
    algebra: DGAlgebra,
    rng: np.random.Generator,
    max_dim: int = 12,
    degree_range: Sequence[int] = (-1, 1),
    name: Optional[str] = None,
) -> DGModule:
    """
    cone(f) for a random module map f between random free modules; the total dimension stays
    within max_dim.
    """
    max_generators = max(max_dim // algebra.dim, 2)
    source_count = int(rng.integers(1, max_generators))
    target_count = int(rng.integers(1, max_generators - source_count + 1))
    low, high = degree_range
    source = free_module(algebra, random_degrees(rng, source_count, low, high))
    target = free_module(algebra, random_degrees(rng, target_count, low, high))
    f = random_map(rng, source, target)
    module = module_cone(f, name=name or f"cone({source.name}->{target.name})").module
    logger.debug(f"Random module {module.name} with dims {module.carrier.dims}")
    return module
