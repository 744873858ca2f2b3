import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.operations import (
    cone,
    direct_sum as direct_sum_complexes,
    kernel_subcomplex,
    quotient_by_columns,
    shift,
    span_subcomplex,
    tensor_base,
)
from dgmodcat.linalg.elimination import rank
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.system.exceptions import DimensionMismatchError, UnsupportedInstanceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuleSum:
    module: DGModule
    injections: List[ModuleMap]
    projections: List[ModuleMap]


@dataclass(frozen=True)
class ModuleCone:
    """cone(f) with the canonical short exact sequence target -> cone(f) -> Sigma source."""

    module: DGModule
    inclusion: ModuleMap
    projection: ModuleMap


@dataclass(frozen=True)
class ModuleQuotient:
    module: DGModule
    projection: ModuleMap
    section: Matrix


@dataclass(frozen=True)
class Submodule:
    module: DGModule
    inclusion: ModuleMap
    retraction: Matrix


def _transported_actions(
    module: DGModule, projection: Matrix, section: Matrix
) -> Tuple[Optional[Matrix], Optional[Matrix]]:
    """
    Actions on a subquotient: pi . act . (1 (x) s) where (pi, s) is (projection, section) for a
    quotient or (retraction, inclusion) for a submodule.
    """
    id_a = module.algebra.carrier.identity()
    left = projection @ module.left_action @ id_a.kron(section) if module.has_left else None
    right = projection @ module.right_action @ section.kron(id_a) if module.has_right else None
    return left, right


def regular_module(algebra: DGAlgebra, side: str = "left") -> DGModule:
    """A over itself; both actions are the multiplication."""
    m = algebra.multiplication
    return DGModule(
        algebra,
        side,
        algebra.carrier,
        left_action=m if side in ("left", "bi") else None,
        right_action=m if side in ("right", "bi") else None,
        name="A",
        certificate=[0],
        validate=False,
    )


def regular_bimodule(algebra: DGAlgebra) -> DGModule:
    return regular_module(algebra, "bi")


def free_bimodule(algebra: DGAlgebra) -> DGModule:
    """A (x) A with a . (b (x) c) . a' = ab (x) ca'."""
    m = algebra.multiplication
    identity = algebra.carrier.identity()
    return DGModule(
        algebra,
        "bi",
        tensor_base(algebra.carrier, algebra.carrier),
        left_action=m.kron(identity),
        right_action=identity.kron(m),
        name="A(x)A",
    )


def zero_module(algebra: DGAlgebra, side: str = "left") -> DGModule:
    field = algebra.field
    empty = Matrix.zeros(field, 0, 0)
    return DGModule(
        algebra,
        side,
        GradedComplex(field, []),
        left_action=empty if side in ("left", "bi") else None,
        right_action=empty if side in ("right", "bi") else None,
        name="0",
        certificate=[],
        validate=False,
    )


def restrict_side(module: DGModule, side: str) -> DGModule:
    """Forget one action of a bimodule."""
    if module.side == side:
        return module
    if module.side != "bi":
        raise DimensionMismatchError(f"Cannot view a {module.side} module as a {side} module")
    return DGModule(
        module.algebra,
        side,
        module.carrier,
        left_action=module.left_action if side == "left" else None,
        right_action=module.right_action if side == "right" else None,
        name=module.name,
        certificate=module.certificate,
        validate=False,
    )


def shift_module(module: DGModule, i: int) -> DGModule:
    """
    Sigma^i X: a . (s x) = (-1)^(i|a|) s (a . x) and (s x) . a = s (x . a).
    """
    left = None
    if module.has_left:
        left = module.left_action @ module.algebra.carrier.sign_matrix(i).kron(module.carrier.identity())
    certificate = module.certificate
    if isinstance(certificate, list):
        certificate = [d + i for d in certificate]
    return DGModule(
        module.algebra,
        module.side,
        shift(module.carrier, i),
        left_action=left,
        right_action=module.right_action,
        name=f"S^{i}({module.name})" if i else module.name,
        certificate=certificate if isinstance(certificate, list) else None,
        validate=False,
    )


def _sum_actions(algebra: DGAlgebra, modules: Sequence[DGModule], side: str, total: int):
    field = algebra.field
    a_dim = algebra.dim
    left_entries: Dict[Tuple[int, int], object] = {}
    right_entries: Dict[Tuple[int, int], object] = {}
    offset = 0
    for module in modules:
        n = module.dim
        if side in ("left", "bi"):
            for (row, column), value in module.left_action.nonzero_entries().items():
                a, x = divmod(column, n)
                left_entries[(offset + row, a * total + offset + x)] = value
        if side in ("right", "bi"):
            for (row, column), value in module.right_action.nonzero_entries().items():
                x, a = divmod(column, a_dim)
                right_entries[(offset + row, (offset + x) * a_dim + a)] = value
        offset += n
    left = Matrix.from_entries(field, (total, a_dim * total), left_entries) if side in ("left", "bi") else None
    right = Matrix.from_entries(field, (total, total * a_dim), right_entries) if side in ("right", "bi") else None
    return left, right


def direct_sum(*modules: DGModule, name: str = "") -> ModuleSum:
    """X_1 + ... + X_r with canonical injections and projections."""
    if not modules:
        raise ValueError("direct_sum needs at least one module")
    algebra, side = modules[0].algebra, modules[0].side
    for module in modules[1:]:
        if module.algebra != algebra or module.side != side:
            logger.error("direct_sum called on modules over different algebras or sides")
            raise DimensionMismatchError("Summands must share algebra and side")
    field = algebra.field
    carrier = direct_sum_complexes(*[m.carrier for m in modules])
    total = carrier.dim
    left, right = _sum_actions(algebra, modules, side, total)
    certificate = None
    if all(isinstance(m.certificate, list) for m in modules):
        certificate = [d for m in modules for d in m.certificate]
    result = DGModule(
        algebra,
        side,
        carrier,
        left_action=left,
        right_action=right,
        name=name or " + ".join(m.name or "X" for m in modules),
        certificate=certificate,
        validate=False,
    )
    injections, projections = [], []
    offset = 0
    for module in modules:
        n = module.dim
        block = Matrix.identity(field, n)
        positions = list(range(offset, offset + n))
        injections.append(ModuleMap(module, result, block.embed((total, n), positions, list(range(n))), validate=False))
        projections.append(ModuleMap(result, module, block.embed((n, total), list(range(n)), positions), validate=False))
        offset += n
    return ModuleSum(result, injections, projections)


def free_module(algebra: DGAlgebra, degrees: Sequence[int], side: str = "left") -> DGModule:
    """
    Sigma^{i_1} A + ... + Sigma^{i_m} A with the regular action; the degree list is kept as the
    module's freeness certificate.
    """
    if not degrees:
        return zero_module(algebra, side)
    regular = regular_module(algebra, side)
    summands = [shift_module(regular, i) for i in degrees]
    summed = direct_sum(*summands).module
    return DGModule(
        algebra,
        side,
        summed.carrier,
        left_action=summed.left_action,
        right_action=summed.right_action,
        name=f"free{list(degrees)}",
        certificate=list(degrees),
        validate=False,
    )


def identity_map(module: DGModule) -> ModuleMap:
    return ModuleMap.identity(module)


def zero_map(source: DGModule, target: DGModule) -> ModuleMap:
    return ModuleMap.zero(source, target)


def compose(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    """g o f."""
    return g.compose(f)


def module_cone(f: ModuleMap, name: str = "") -> ModuleCone:
    """
    cone(f) = T + Sigma S with differential [[d_T, f], [0, -d_S]]; the Sigma S block carries the
    shifted action.
    """
    source, target = f.source, f.target
    graded = cone(f.underlying)
    shifted = shift_module(source, 1)
    left, right = _sum_actions(source.algebra, [target, shifted], source.side, graded.complex.dim)
    module = DGModule(
        source.algebra,
        source.side,
        graded.complex,
        left_action=left,
        right_action=right,
        name=name or f"cone({source.name}->{target.name})",
    )
    inclusion = ModuleMap(target, module, graded.inclusion.matrix, validate=False)
    projection = ModuleMap(module, shifted, graded.projection.matrix, validate=False)
    logger.debug(f"Built {module.name} with dims {module.carrier.dims}")
    return ModuleCone(module, inclusion, projection)


def quotient_module(f: ModuleMap, name: str = "") -> ModuleQuotient:
    """coker(f) with the induced action."""
    return quotient_by_vectors(f.target, f.matrix, name=name)


def quotient_by_vectors(module: DGModule, relations: Matrix, name: str = "") -> ModuleQuotient:
    """Quotient by columns that already span a submodule."""
    quotient = quotient_by_columns(module.carrier, relations)
    left, right = _transported_actions(module, quotient.projection, quotient.section)
    result = DGModule(
        module.algebra,
        module.side,
        quotient.complex,
        left_action=left,
        right_action=right,
        name=name or f"{module.name}/~",
        validate=False,
    )
    return ModuleQuotient(result, ModuleMap(module, result, quotient.projection, validate=False), quotient.section)


def submodule_kernel(f: ModuleMap, name: str = "") -> Submodule:
    sub = kernel_subcomplex(f.source.carrier, f.matrix)
    return _submodule(f.source, sub, name or f"ker({f.source.name}->{f.target.name})")


def _submodule(module: DGModule, sub, name: str) -> Submodule:
    left, right = _transported_actions(module, sub.retraction, sub.inclusion)
    result = DGModule(
        module.algebra,
        module.side,
        sub.complex,
        left_action=left,
        right_action=right,
        name=name,
        validate=False,
    )
    return Submodule(result, ModuleMap(result, module, sub.inclusion, validate=False), sub.retraction)


def generated_submodule(module: DGModule, vectors: Matrix, name: str = "") -> Submodule:
    """
    Smallest sub-DG-module containing the given homogeneous vectors: their orbits under every
    action the module carries, together with the orbits of their differentials.
    """
    field = module.field
    algebra = module.algebra
    n = module.dim
    columns = Matrix.hstack(field, n, [vectors, module.differential @ vectors])
    if module.has_left:
        columns = Matrix.hstack(
            field,
            n,
            [module.left_action @ algebra.basis_vector(a).kron(columns) for a in range(algebra.dim)],
        )
    if module.has_right:
        columns = Matrix.hstack(
            field,
            n,
            [module.right_action @ columns.kron(algebra.basis_vector(a)) for a in range(algebra.dim)],
        )
    sub = span_subcomplex(module.carrier, columns)
    return _submodule(module, sub, name or f"<{module.name}>")


def quotient_by_submodule(module: DGModule, vectors: Matrix, name: str = "") -> ModuleQuotient:
    """X / (submodule generated by the vectors)."""
    generated = generated_submodule(module, vectors)
    return quotient_by_vectors(module, generated.inclusion.matrix, name=name)


def _idempotent_vector(algebra: DGAlgebra, idempotent: Union[str, Matrix]) -> Matrix:
    if isinstance(idempotent, str):
        if idempotent not in algebra.idempotents:
            raise ValueError(f"Algebra has no idempotent named {idempotent!r}")
        return algebra.idempotents[idempotent]
    return idempotent


def left_ideal(algebra: DGAlgebra, idempotent: Union[str, Matrix], name: str = "") -> DGModule:
    """A . e as a left module, a projective summand of A when e is idempotent."""
    vector = _idempotent_vector(algebra, idempotent)
    label = idempotent if isinstance(idempotent, str) else "e"
    return generated_submodule(regular_module(algebra, "left"), vector, name=name or f"A.{label}").module


def right_ideal(algebra: DGAlgebra, idempotent: Union[str, Matrix], name: str = "") -> DGModule:
    vector = _idempotent_vector(algebra, idempotent)
    label = idempotent if isinstance(idempotent, str) else "e"
    return generated_submodule(regular_module(algebra, "right"), vector, name=name or f"{label}.A").module


def arrow_endpoints(algebra: DGAlgebra) -> Dict[int, Tuple[str, str]]:
    """
    For a category algebra, basis index -> (source, target) object names, read off from
    e_target . b . e_source = b.
    """
    if not algebra.idempotents:
        raise UnsupportedInstanceError(f"Algebra {algebra.name!r} records no object idempotents")
    endpoints = {}
    for b in range(algebra.dim):
        vector = algebra.basis_vector(b)
        for x, e_x in algebra.idempotents.items():
            for y, e_y in algebra.idempotents.items():
                if algebra.product(e_y, algebra.product(vector, e_x)) == vector:
                    endpoints[b] = (x, y)
        if b not in endpoints:
            raise UnsupportedInstanceError(f"Basis element {algebra.labels[b]} is not a single arrow")
    return endpoints


def functor_module(
    algebra: DGAlgebra,
    spaces: Mapping[str, int],
    arrow_maps: Mapping[str, Matrix],
    side: str = "left",
    name: str = "",
) -> DGModule:
    """
    The module of a k-linear functor on a category algebra.

    A left module is a covariant functor F with e_x . M = F(x); an arrow a: x -> y needs a
    matrix of shape dim F(y) x dim F(x). A right module is a contravariant functor G with
    M . e_x = G(x); the arrow then needs a matrix of shape dim G(x) x dim G(y).

    :param spaces: object -> dimension of its value.
    :param arrow_maps: non-identity basis arrow label -> matrix.
    """
    if side not in ("left", "right"):
        raise ValueError("functor_module builds left or right modules")
    field = algebra.field
    objects = list(algebra.idempotents)
    offsets, total = {}, 0
    for x in objects:
        offsets[x] = total
        total += spaces.get(x, 0)
    a_dim = algebra.dim
    entries = {}
    for b, (x, y) in arrow_endpoints(algebra).items():
        label = algebra.labels[b]
        if x == y and algebra.basis_vector(b) == algebra.idempotents[x]:
            matrix = Matrix.identity(field, spaces.get(x, 0))
        elif label in arrow_maps:
            matrix = arrow_maps[label]
        else:
            raise ValueError(f"No matrix given for arrow {label!r}")
        source, target = (x, y) if side == "left" else (y, x)
        expected = (spaces.get(target, 0), spaces.get(source, 0))
        if matrix.shape != expected:
            raise DimensionMismatchError(f"Arrow {label!r} needs a matrix of shape {expected}, got {matrix.shape}")
        for (r, c), value in matrix.nonzero_entries().items():
            if side == "left":
                entries[(offsets[target] + r, b * total + offsets[source] + c)] = value
            else:
                entries[(offsets[target] + r, (offsets[source] + c) * a_dim + b)] = value
    action = Matrix.from_entries(field, (total, a_dim * total), entries)
    return DGModule(
        algebra,
        side,
        GradedComplex(field, [0] * total),
        left_action=action if side == "left" else None,
        right_action=action if side == "right" else None,
        name=name or "F",
    )


def evaluate_at(module: DGModule, obj: str) -> int:
    """dim e_x . M for left modules, dim M . e_x for right modules."""
    e = _idempotent_vector(module.algebra, obj)
    if module.has_left:
        return rank(module.left_operator(e))
    return rank(module.right_operator(e))


def complex_module(
    algebra: DGAlgebra,
    terms: Mapping[int, DGModule],
    differentials: Optional[Mapping[int, Matrix]] = None,
    name: str = "",
) -> DGModule:
    """
    A bounded complex of modules over a ring, as a DG-module over the degree-0 DGA.

    :param terms: degree n -> left module concentrated in degree 0.
    :param differentials: degree n -> matrix of d_n : terms[n] -> terms[n - 1].
    """
    if not algebra.is_ring:
        raise UnsupportedInstanceError("complex_module needs an algebra concentrated in degree 0")
    degrees = sorted(terms)
    for n in degrees:
        if any(d != 0 for d in terms[n].degrees) or terms[n].side != "left":
            raise ValueError(f"Term in degree {n} must be a left module concentrated in degree 0")
    shifted = [shift_module(terms[n], n) for n in degrees]
    summed = direct_sum(*shifted).module
    offsets, total = {}, 0
    for n in degrees:
        offsets[n] = total
        total += terms[n].dim
    entries = {}
    for n, block in (differentials or {}).items():
        if n not in terms or n - 1 not in terms:
            raise ValueError(f"Differential d_{n} needs terms in degrees {n} and {n - 1}")
        expected = (terms[n - 1].dim, terms[n].dim)
        if block.shape != expected:
            raise DimensionMismatchError(f"d_{n} has shape {block.shape}, expected {expected}")
        for (i, j), value in block.nonzero_entries().items():
            entries[(offsets[n - 1] + i, offsets[n] + j)] = value
    carrier = GradedComplex(
        algebra.field, summed.degrees, Matrix.from_entries(algebra.field, (total, total), entries)
    )
    return DGModule(algebra, "left", carrier, left_action=summed.left_action, name=name or "complex")


def opposite_module(module: DGModule) -> DGModule:
    """
    Left A-modules as right A^op-modules and back: x * a = (-1)^(|a||x|) a . x.
    """
    algebra = module.algebra
    field = module.field
    n, a_dim = module.dim, algebra.dim

    def converted(action: Matrix, from_left: bool) -> Matrix:
        entries = {}
        for (row, column), value in action.nonzero_entries().items():
            if from_left:
                a, x = divmod(column, n)
                new_column = x * a_dim + a
            else:
                x, a = divmod(column, a_dim)
                new_column = a * n + x
            entries[(row, new_column)] = value * field.sign(algebra.degrees[a] * module.degrees[x])
        return Matrix.from_entries(field, (n, n * a_dim), entries)

    side = {"left": "right", "right": "left", "bi": "bi"}[module.side]
    return DGModule(
        algebra.opposite,
        side,
        module.carrier,
        left_action=converted(module.right_action, from_left=False) if module.has_right else None,
        right_action=converted(module.left_action, from_left=True) if module.has_left else None,
        name=f"{module.name}^op" if module.name else "",
        certificate=module.certificate,
        validate=False,
    )
