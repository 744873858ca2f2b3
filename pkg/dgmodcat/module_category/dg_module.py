import logging
from typing import Any, Optional

from dgmodcat.algebra.axioms import differential_checks
from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.algebra.validation import AxiomCheck, ValidationReport, matrix_identity_check
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.graded_map import GradedMap
from dgmodcat.graded.operations import tensor_base
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidStructureError

logger = logging.getLogger(__name__)

SIDES = ("left", "right", "bi")


class DGModule:
    """
    A left, right or bi DG-module over a DGAlgebra.

    The left action has shape n x (dim A * n) with column a * n + x holding a . x_x.
    The right action has shape n x (n * dim A) with column x * dim A + a holding x_x . a.
    """

    def __init__(
        self,
        algebra: DGAlgebra,
        side: str,
        carrier: GradedComplex,
        left_action: Optional[Matrix] = None,
        right_action: Optional[Matrix] = None,
        name: str = "",
        certificate: Any = None,
        validate: bool = True,
    ):
        if side not in SIDES:
            raise ValueError(f"Module side must be one of {SIDES}, got {side!r}")
        self.algebra = algebra
        self.side = side
        self.carrier = carrier
        self.left_action = left_action
        self.right_action = right_action
        self.name = name
        # degree list of a free module or a SemiFreeFiltration
        self.certificate = certificate
        self._check_shapes()
        if validate:
            report = validate_module(self)
            if not report.passed:
                logger.error(f"Rejected module {name!r}: failed {[c.name for c in report.failures()]}")
                raise InvalidStructureError(f"Module {name!r} fails its axioms", report)

    def _check_shapes(self):
        n, a = self.carrier.dim, self.algebra.dim
        if self.carrier.field != self.algebra.field:
            raise DimensionMismatchError("Module and algebra live over different fields")
        if self.has_left:
            if self.left_action is None or self.left_action.shape != (n, a * n):
                raise DimensionMismatchError(f"Left action must have shape {(n, a * n)}")
        if self.has_right:
            if self.right_action is None or self.right_action.shape != (n, n * a):
                raise DimensionMismatchError(f"Right action must have shape {(n, n * a)}")

    @property
    def has_left(self) -> bool:
        return self.side in ("left", "bi")

    @property
    def has_right(self) -> bool:
        return self.side in ("right", "bi")

    @property
    def field(self):
        return self.carrier.field

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def degrees(self):
        return self.carrier.degrees

    @property
    def differential(self) -> Matrix:
        return self.carrier.differential

    def act_left(self, a: Matrix, x: Matrix) -> Matrix:
        return self.left_action @ a.kron(x)

    def act_right(self, x: Matrix, a: Matrix) -> Matrix:
        return self.right_action @ x.kron(a)

    def left_operator(self, a: Matrix) -> Matrix:
        """Matrix of x -> a . x."""
        return self.left_action @ a.kron(self.carrier.identity())

    def right_operator(self, a: Matrix) -> Matrix:
        """Matrix of x -> x . a."""
        return self.right_action @ self.carrier.identity().kron(a)

    def renamed(self, name: str) -> "DGModule":
        return DGModule(
            self.algebra,
            self.side,
            self.carrier,
            self.left_action,
            self.right_action,
            name=name,
            certificate=self.certificate,
            validate=False,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DGModule):
            return NotImplemented
        return (
            self.side == other.side
            and self.algebra == other.algebra
            and self.carrier == other.carrier
            and self.left_action == other.left_action
            and self.right_action == other.right_action
        )

    __hash__ = None

    def __repr__(self) -> str:
        label = self.name or "DGModule"
        return f"{label}({self.side}, dims={self.carrier.dims})"


def validate_module(module: DGModule) -> ValidationReport:
    """
    Check d^2 = 0, homogeneity, associativity, unitality and Leibniz for every action the
    module carries, plus commutation of the two actions for bimodules.
    """
    algebra = module.algebra
    carrier = module.carrier
    a_dim, n = algebra.dim, carrier.dim
    id_a, id_x = algebra.carrier.identity(), carrier.identity()
    m, u = algebra.multiplication, algebra.unit
    report = ValidationReport(subject=f"{module.side} module {module.name}".strip())
    report.checks.extend(differential_checks(carrier))

    if module.has_left:
        action = module.left_action
        report.checks.append(_homogeneity_check("left_homogeneity", action, carrier, algebra, left=True))
        report.checks.append(
            matrix_identity_check(
                "left_associativity", action @ m.kron(id_x), action @ id_a.kron(action), [a_dim, a_dim, n]
            )
        )
        report.checks.append(matrix_identity_check("left_unit", action @ u.kron(id_x), id_x, [n]))
        source = tensor_base(algebra.carrier, carrier)
        report.checks.append(
            matrix_identity_check(
                "left_leibniz", carrier.differential @ action, action @ source.differential, [a_dim, n]
            )
        )
    if module.has_right:
        action = module.right_action
        report.checks.append(_homogeneity_check("right_homogeneity", action, carrier, algebra, left=False))
        report.checks.append(
            matrix_identity_check(
                "right_associativity", action @ action.kron(id_a), action @ id_x.kron(m), [n, a_dim, a_dim]
            )
        )
        report.checks.append(matrix_identity_check("right_unit", action @ id_x.kron(u), id_x, [n]))
        source = tensor_base(carrier, algebra.carrier)
        report.checks.append(
            matrix_identity_check(
                "right_leibniz", carrier.differential @ action, action @ source.differential, [n, a_dim]
            )
        )
    if module.side == "bi":
        left, right = module.left_action, module.right_action
        report.checks.append(
            matrix_identity_check(
                "bimodule_commutation", right @ left.kron(id_a), left @ id_a.kron(right), [a_dim, n, a_dim]
            )
        )
    return report


def _homogeneity_check(
    name: str, action: Matrix, carrier: GradedComplex, algebra: DGAlgebra, left: bool
) -> AxiomCheck:
    n, a_dim = carrier.dim, algebra.dim
    for (row, column) in sorted(action.nonzero_entries()):
        if left:
            a, x = divmod(column, n)
        else:
            x, a = divmod(column, a_dim)
        if carrier.degrees[row] != algebra.degrees[a] + carrier.degrees[x]:
            witness = [a, x, row] if left else [x, a, row]
            return AxiomCheck(name=name, passed=False, witness=witness)
    return AxiomCheck(name=name, passed=True)


class ModuleMap:
    """A degree-0 chain map of DG-modules commuting with every action both modules carry."""

    def __init__(self, source: DGModule, target: DGModule, matrix: Matrix, validate: bool = True):
        if source.algebra != target.algebra:
            raise DimensionMismatchError("Module map between modules over different algebras")
        if source.side != target.side:
            raise DimensionMismatchError(f"Module map from a {source.side} to a {target.side} module")
        if matrix.shape != (target.dim, source.dim):
            raise DimensionMismatchError(
                f"Module map matrix has shape {matrix.shape}, expected {(target.dim, source.dim)}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix
        if validate:
            report = validate_module_map(self)
            if not report.passed:
                logger.error(f"Rejected module map: failed {[c.name for c in report.failures()]}")
                raise InvalidStructureError("Matrix is not a module map", report)

    @classmethod
    def identity(cls, module: DGModule) -> "ModuleMap":
        return cls(module, module, module.carrier.identity(), validate=False)

    @classmethod
    def zero(cls, source: DGModule, target: DGModule) -> "ModuleMap":
        return cls(source, target, Matrix.zeros(source.field, target.dim, source.dim), validate=False)

    @property
    def field(self):
        return self.source.field

    @property
    def underlying(self) -> GradedMap:
        return GradedMap(self.source.carrier, self.target.carrier, self.matrix, 0, validate=False)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target != self.source:
            raise DimensionMismatchError("Module maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, validate=False)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return self.compose(other)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, validate=False)

    def scale(self, scalar: Any) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix.scale(scalar), validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.matrix == other.matrix

    __hash__ = None

    def __repr__(self) -> str:
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def validate_module_map(module_map: ModuleMap) -> ValidationReport:
    source, target = module_map.source, module_map.target
    f = module_map.matrix
    id_a = source.algebra.carrier.identity()
    a_dim = source.algebra.dim
    report = ValidationReport(subject="module map")
    bad = [
        [i, j]
        for (i, j) in f.nonzero_entries()
        if target.degrees[i] != source.degrees[j]
    ]
    report.checks.append(AxiomCheck(name="degree_zero", passed=not bad, witness=bad[0] if bad else None))
    report.checks.append(
        matrix_identity_check(
            "chain_map", target.differential @ f, f @ source.differential, [source.dim]
        )
    )
    if source.has_left:
        report.checks.append(
            matrix_identity_check(
                "left_linearity",
                f @ source.left_action,
                target.left_action @ id_a.kron(f),
                [a_dim, source.dim],
            )
        )
    if source.has_right:
        report.checks.append(
            matrix_identity_check(
                "right_linearity",
                f @ source.right_action,
                target.right_action @ f.kron(id_a),
                [source.dim, a_dim],
            )
        )
    return report

