"""
Curated corpora: one algebra, named member modules, and the battery their flatness is tested on.

Member content is rebuilt deterministically from these builders; expected flags live in the
golden files.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List

from dgmodcat.algebra.builders import builtin_catalog
from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.ext.battery import Battery, ShortExactSequence
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import (
    complex_module,
    direct_sum,
    free_module,
    functor_module,
    generated_submodule,
    identity_map,
    left_ideal,
    module_cone,
    quotient_by_submodule,
    quotient_by_vectors,
    regular_module,
    shift_module,
)
from dgmodcat.module_category.dg_module import DGModule

logger = logging.getLogger(__name__)

FAMILIES = ("ring", "graded", "dg", "chain", "functor")


@dataclass
class Corpus:
    name: str
    algebra: DGAlgebra
    modules: Dict[str, DGModule]
    battery: Battery

    @property
    def family(self) -> str:
        return self.name.split("/", 1)[0]

    @property
    def member_names(self) -> List[str]:
        return list(self.modules)


def _vector(algebra: DGAlgebra, label: str) -> Matrix:
    return algebra.basis_vector(algebra.labels.index(label))


def residue_module(algebra: DGAlgebra, side: str = "left", label: str = "x", name: str = "k") -> DGModule:
    """A / (submodule generated by the named basis element)."""
    return quotient_by_submodule(regular_module(algebra, side), _vector(algebra, label), name=name).module


def identity_cone(module: DGModule, name: str = "") -> DGModule:
    return module_cone(identity_map(module), name=name or f"cone(Id_{module.name})").module


def ideal_sequence(algebra: DGAlgebra, generator: Matrix, name: str) -> ShortExactSequence:
    """0 -> gA -> A -> A/gA -> 0 as right modules."""
    right = regular_module(algebra, "right")
    ideal = generated_submodule(right, generator)
    quotient = quotient_by_vectors(right, ideal.inclusion.matrix)
    return ShortExactSequence(ideal.inclusion, quotient.projection, name=name)


def cone_sequence(algebra: DGAlgebra) -> ShortExactSequence:
    """A -> cone(Id_A) -> Sigma A as right modules."""
    cone = module_cone(identity_map(regular_module(algebra, "right")))
    return ShortExactSequence.from_cone(cone, name="A->cone(Id_A)->SA")


def _dual_numbers_ring() -> Corpus:
    algebra = builtin_catalog("dual_numbers(2)")
    regular = regular_module(algebra)
    k = residue_module(algebra)
    modules = {
        "A": regular,
        "k": k,
        "A+A": free_module(algebra, [0, 0]),
        "A+k": direct_sum(regular, k, name="A+k").module,
    }
    battery = Battery(sequences=[ideal_sequence(algebra, _vector(algebra, "x"), "(x)->A->k")])
    return Corpus("ring/dual_numbers_F2", algebra, modules, battery)


def _truncated_ring() -> Corpus:
    algebra = builtin_catalog("truncated(3,3)")
    modules = {
        "A": regular_module(algebra),
        "k": residue_module(algebra),
        "A/x^2": residue_module(algebra, label="x^2", name="A/x^2"),
        "A+A": free_module(algebra, [0, 0]),
    }
    battery = Battery(sequences=[ideal_sequence(algebra, _vector(algebra, "x"), "(x)->A->k")])
    return Corpus("ring/truncated_F3", algebra, modules, battery)


def _matrix_ring() -> Corpus:
    algebra = builtin_catalog("matrix2(2)")
    e11 = _vector(algebra, "E11")
    column = left_ideal(algebra, e11, name="A.E11")
    modules = {
        "A": regular_module(algebra),
        "A.E11": column,
        "A+A.E11": direct_sum(regular_module(algebra), column, name="A+A.E11").module,
    }
    battery = Battery(sequences=[ideal_sequence(algebra, e11, "E11.A->A->E22.A")])
    return Corpus("ring/matrix2_F2", algebra, modules, battery)


def _graded_exterior() -> Corpus:
    algebra = builtin_catalog("exterior(2)")
    regular = regular_module(algebra)
    k = residue_module(algebra)
    modules = {
        "A": regular,
        "SA": shift_module(regular, 1),
        "free[0,1]": free_module(algebra, [0, 1]),
        "k": k,
        "Sk": shift_module(k, 1),
    }
    battery = Battery(sequences=[ideal_sequence(algebra, _vector(algebra, "x"), "Sk->A->k")])
    return Corpus("graded/exterior_F2", algebra, modules, battery)


def _dg_exterior() -> Corpus:
    algebra = builtin_catalog("exterior(2)")
    regular = regular_module(algebra)
    k = residue_module(algebra)
    modules = {
        "cone(Id_A)": identity_cone(regular),
        "SA": shift_module(regular, 1),
        "free[0,1]": free_module(algebra, [0, 1]),
        "A": regular,
        "k": k,
        "cone(Id_k)": identity_cone(k),
    }
    battery = Battery(
        acyclics=[
            identity_cone(regular_module(algebra, "bi")),
            identity_cone(residue_module(algebra, "bi")),
        ],
        sequences=[ideal_sequence(algebra, _vector(algebra, "x"), "Sk->A->k"), cone_sequence(algebra)],
    )
    return Corpus("dg/exterior_F2", algebra, modules, battery)


def _dg_cone() -> Corpus:
    algebra = builtin_catalog("cone_dga(2)")
    regular = regular_module(algebra)
    shifted = shift_module(regular, 1)
    modules = {
        "A": regular,
        "SA": shifted,
        "A+SA": direct_sum(regular, shifted, name="A+SA").module,
        "cone(Id_A)": identity_cone(regular),
    }
    battery = Battery(
        acyclics=[regular_module(algebra, "bi"), identity_cone(regular_module(algebra, "bi"))],
        sequences=[cone_sequence(algebra)],
    )
    return Corpus("dg/cone_F2", algebra, modules, battery)


def _chain_dual_numbers() -> Corpus:
    """Bounded complexes over k[x]/x^2 as DG-modules over the ring in degree 0."""
    algebra = builtin_catalog("dual_numbers(3)")
    regular = regular_module(algebra)
    k = residue_module(algebra)
    to_residue = quotient_by_submodule(regular, _vector(algebra, "x")).projection.matrix
    modules = {
        "A": regular,
        "SA": shift_module(regular, 1),
        "cone(Id_A)": identity_cone(regular),
        "A-x->A": complex_module(
            algebra, {1: regular, 0: regular}, {1: algebra.right_multiplication(_vector(algebra, "x"))}, name="A-x->A"
        ),
        "k": k,
        "A->k": complex_module(algebra, {1: regular, 0: k}, {1: to_residue}, name="A->k"),
        "cone(Id_k)": identity_cone(k),
    }
    battery = Battery(
        acyclics=[
            identity_cone(regular_module(algebra, "bi")),
            identity_cone(residue_module(algebra, "bi")),
        ],
        sequences=[ideal_sequence(algebra, _vector(algebra, "x"), "(x)->A->k")],
    )
    return Corpus("chain/dual_numbers_F3", algebra, modules, battery)


def _arrow_category() -> Corpus:
    """Functors on the category x -> y over F_3; left modules are covariant functors."""
    algebra = builtin_catalog("upper_triangular(3)")
    field = algebra.field
    modules = {
        "A": regular_module(algebra),
        "A.e_x": left_ideal(algebra, "x", name="A.e_x"),
        "A.e_y": left_ideal(algebra, "y", name="A.e_y"),
        "S_x": functor_module(algebra, {"x": 1, "y": 0}, {"a": Matrix.zeros(field, 0, 1)}, name="S_x"),
    }
    right = regular_module(algebra, "right")
    e_y = generated_submodule(right, algebra.idempotents["y"], name="e_y.A")
    arrow = e_y.retraction @ _vector(algebra, "a")
    image = generated_submodule(e_y.module, arrow, name="a.A")
    top = quotient_by_vectors(e_y.module, image.inclusion.matrix, name="T_y")
    battery = Battery(sequences=[ShortExactSequence(image.inclusion, top.projection, name="a.A->e_y.A->T_y")])
    return Corpus("functor/arrow_category_F3", algebra, modules, battery)


CORPUS_BUILDERS: Dict[str, Callable[[], Corpus]] = {
    "ring/dual_numbers_F2": _dual_numbers_ring,
    "ring/truncated_F3": _truncated_ring,
    "ring/matrix2_F2": _matrix_ring,
    "graded/exterior_F2": _graded_exterior,
    "dg/exterior_F2": _dg_exterior,
    "dg/cone_F2": _dg_cone,
    "chain/dual_numbers_F3": _chain_dual_numbers,
    "functor/arrow_category_F3": _arrow_category,
}
CORPUS_NAMES = tuple(CORPUS_BUILDERS)


@lru_cache(maxsize=None)
def corpus(name: str) -> Corpus:
    """Build a named corpus; members come out in a fixed order."""
    if name not in CORPUS_BUILDERS:
        logger.error(f"Unknown corpus {name!r}")
        raise ValueError(f"Unknown corpus {name!r}; known corpora are {', '.join(CORPUS_NAMES)}")
    result = CORPUS_BUILDERS[name]()
    logger.info(f"Built corpus {name} with {len(result.modules)} members")
    return result
