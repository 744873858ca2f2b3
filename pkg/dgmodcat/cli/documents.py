"""
The JSON interchange format: a versioned envelope around kind-specific payloads.

Serialization is canonical (sorted keys, lowest-terms rationals, nonzero entries sorted by
position) so that documents diff and hash meaningfully.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from dgmodcat.algebra.builders import from_structure_constants
from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.ext.battery import Battery, ShortExactSequence
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.limits.directed_system import DirectedSystem
from dgmodcat.limits.factorization import Factorization
from dgmodcat.limits.semifree import SemiFreeFiltration
from dgmodcat.linalg.field import BaseField, get_field
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.dg_module import DGModule, ModuleMap
from dgmodcat.system.constants import FORMAT_VERSION, RATIONAL_FIELD_DESCRIPTOR
from dgmodcat.system.exceptions import DocumentFormatError

logger = logging.getLogger(__name__)

Kind = Literal["algebra", "module", "map", "system", "battery", "corpus", "factorization"]


class Document(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format_version: str
    field: str
    kind: Kind
    payload: Dict[str, Any]

    @field_validator("format_version")
    @classmethod
    def known_version(cls, value: str) -> str:
        if value != FORMAT_VERSION:
            raise ValueError(f"Unsupported format_version {value!r}, expected {FORMAT_VERSION!r}")
        return value

    @field_validator("field")
    @classmethod
    def known_field(cls, value: str) -> str:
        get_field(value)
        return value

    @property
    def ground_field(self) -> BaseField:
        return get_field(self.field)


def canonical_dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def compact_dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def make_document(kind: str, field: BaseField, payload: Dict[str, Any]) -> Dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "field": field.descriptor, "kind": kind, "payload": payload}


def parse_document(text: str) -> Document:
    try:
        return Document.model_validate(json.loads(text))
    except json.JSONDecodeError as error:
        logger.error(f"Document is not JSON: {error}")
        raise DocumentFormatError(f"Document is not JSON: {error}") from error
    except ValidationError as error:
        logger.error(f"Malformed document envelope: {error.error_count()} errors")
        raise DocumentFormatError(f"Malformed document: {error}") from error


def read_document(path: Path) -> Document:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def _require(payload: Dict[str, Any], key: str) -> Any:
    if key not in payload:
        raise DocumentFormatError(f"Payload is missing {key!r}")
    return payload[key]


def _scalar(field: BaseField, token: Any) -> Any:
    try:
        return field.parse(token)
    except ValueError as error:
        raise DocumentFormatError(str(error)) from error


def encode_matrix(matrix: Matrix) -> Dict[str, Any]:
    field = matrix.field
    return {
        "rows": matrix.rows,
        "cols": matrix.cols,
        "entries": [[i, j, field.format(v)] for (i, j), v in sorted(matrix.nonzero_entries().items())],
    }


def decode_matrix(field: BaseField, payload: Dict[str, Any]) -> Matrix:
    rows, cols = int(_require(payload, "rows")), int(_require(payload, "cols"))
    entries = {}
    for entry in _require(payload, "entries"):
        if len(entry) != 3:
            raise DocumentFormatError(f"Matrix entry {entry!r} is not [i, j, value]")
        i, j, value = entry
        if not (0 <= i < rows and 0 <= j < cols):
            raise DocumentFormatError(f"Matrix entry ({i}, {j}) outside a {rows} x {cols} matrix")
        entries[(int(i), int(j))] = _scalar(field, value)
    return Matrix.from_entries(field, (rows, cols), entries)


def _vector(field: BaseField, values: List[Any]) -> List[Any]:
    return [_scalar(field, v) for v in values]


def encode_algebra(algebra: DGAlgebra) -> Dict[str, Any]:
    field = algebra.field
    n = algebra.dim
    multiplication = []
    for (k, column), value in sorted(algebra.multiplication.nonzero_entries().items()):
        i, j = divmod(column, n)
        multiplication.append([i, j, k, field.format(value)])
    return {
        "name": algebra.name,
        "degrees": list(algebra.degrees),
        "labels": list(algebra.labels),
        "differential": encode_matrix(algebra.differential),
        "multiplication": sorted(multiplication),
        "unit": [field.format(v) for v in algebra.unit.column_values(0)],
        "idempotents": {name: [field.format(v) for v in e.column_values(0)] for name, e in algebra.idempotents.items()},
    }


def decode_algebra(field: BaseField, payload: Dict[str, Any], validate: bool = True) -> DGAlgebra:
    degrees = [int(d) for d in _require(payload, "degrees")]
    n = len(degrees)
    products: Dict = {}
    for entry in _require(payload, "multiplication"):
        i, j, k, value = entry
        if not all(0 <= index < n for index in (i, j, k)):
            raise DocumentFormatError(f"Multiplication entry {entry!r} has an index outside 0..{n - 1}")
        products.setdefault((int(i), int(j)), {})[int(k)] = _scalar(field, value)
    differential = decode_matrix(field, _require(payload, "differential"))
    if differential.shape != (n, n):
        raise DocumentFormatError(f"Algebra differential must be {n} x {n}")
    unit = _vector(field, _require(payload, "unit"))
    if len(unit) != n:
        raise DocumentFormatError(f"Unit has {len(unit)} coordinates, expected {n}")
    return from_structure_constants(
        field,
        degrees,
        products,
        unit,
        differential=differential.nonzero_entries(),
        labels=payload.get("labels") or None,
        idempotents={name: _vector(field, values) for name, values in payload.get("idempotents", {}).items()},
        name=payload.get("name", ""),
        validate=validate,
    )


def encode_module(module: DGModule) -> Dict[str, Any]:
    field = module.field
    n, a_dim = module.dim, module.algebra.dim
    left, right = [], []
    if module.has_left:
        for (y, column), value in module.left_action.nonzero_entries().items():
            a, x = divmod(column, n)
            left.append([a, x, y, field.format(value)])
    if module.has_right:
        for (y, column), value in module.right_action.nonzero_entries().items():
            x, a = divmod(column, a_dim)
            right.append([x, a, y, field.format(value)])
    return {
        "name": module.name,
        "algebra": encode_algebra(module.algebra),
        "side": module.side,
        "degrees": list(module.degrees),
        "differential": encode_matrix(module.differential),
        "left_action": sorted(left),
        "right_action": sorted(right),
    }


def _action(field: BaseField, entries: List[Any], n: int, a_dim: int, left: bool) -> Matrix:
    result = {}
    for entry in entries:
        if len(entry) != 4:
            raise DocumentFormatError(f"Action entry {entry!r} needs four components")
        if left:
            a, x, y, value = entry
        else:
            x, a, y, value = entry
        if not (0 <= a < a_dim and 0 <= x < n and 0 <= y < n):
            raise DocumentFormatError(f"Action entry {entry!r} has an index out of range")
        column = a * n + x if left else x * a_dim + a
        result[(int(y), int(column))] = _scalar(field, value)
    return Matrix.from_entries(field, (n, n * a_dim), result)


def decode_module(
    field: BaseField, payload: Dict[str, Any], validate: bool = True, algebra: Optional[DGAlgebra] = None
) -> DGModule:
    algebra = algebra or decode_algebra(field, _require(payload, "algebra"), validate=validate)
    side = _require(payload, "side")
    if side not in ("left", "right", "bi"):
        raise DocumentFormatError(f"Unknown module side {side!r}")
    degrees = [int(d) for d in _require(payload, "degrees")]
    n = len(degrees)
    differential = decode_matrix(field, _require(payload, "differential"))
    if differential.shape != (n, n):
        raise DocumentFormatError(f"Module differential must be {n} x {n}")
    carrier = GradedComplex(field, degrees, differential, validate=False)
    left = _action(field, payload.get("left_action", []), n, algebra.dim, True) if side != "right" else None
    right = _action(field, payload.get("right_action", []), n, algebra.dim, False) if side != "left" else None
    return DGModule(
        algebra, side, carrier, left_action=left, right_action=right, name=payload.get("name", ""), validate=validate
    )


def encode_map(module_map: ModuleMap) -> Dict[str, Any]:
    return {
        "source": encode_module(module_map.source),
        "target": encode_module(module_map.target),
        "matrix": encode_matrix(module_map.matrix),
    }


def decode_map(field: BaseField, payload: Dict[str, Any], validate: bool = True) -> ModuleMap:
    source = decode_module(field, _require(payload, "source"), validate=validate)
    target = decode_module(field, _require(payload, "target"), validate=validate)
    matrix = decode_matrix(field, _require(payload, "matrix"))
    return ModuleMap(source, target, matrix, validate=validate)


def encode_system(system: DirectedSystem) -> Dict[str, Any]:
    return {
        "stages": [encode_module(stage) for stage in system.stages],
        "edges": [
            {"source": i, "target": j, "matrix": encode_matrix(t.matrix)} for (i, j), t in system.transitions.items()
        ],
    }


def decode_system(field: BaseField, payload: Dict[str, Any]) -> DirectedSystem:
    stages = [decode_module(field, stage) for stage in _require(payload, "stages")]
    transitions = {}
    for edge in _require(payload, "edges"):
        i, j = int(_require(edge, "source")), int(_require(edge, "target"))
        if not (0 <= i < len(stages) and 0 <= j < len(stages)):
            raise DocumentFormatError(f"Edge {i} -> {j} refers to a missing stage")
        transitions[(i, j)] = ModuleMap(stages[i], stages[j], decode_matrix(field, _require(edge, "matrix")))
    return DirectedSystem(stages, transitions)


def encode_battery(battery: Battery) -> Dict[str, Any]:
    return {
        "acyclics": [encode_module(module) for module in battery.acyclics],
        "sequences": [
            {
                "name": sequence.name,
                "first": encode_module(sequence.first),
                "middle": encode_module(sequence.middle),
                "last": encode_module(sequence.last),
                "inclusion": encode_matrix(sequence.inclusion.matrix),
                "projection": encode_matrix(sequence.projection.matrix),
            }
            for sequence in battery.sequences
        ],
    }


def decode_battery(field: BaseField, payload: Dict[str, Any]) -> Battery:
    acyclics = [decode_module(field, module) for module in _require(payload, "acyclics")]
    sequences = []
    for entry in _require(payload, "sequences"):
        first = decode_module(field, _require(entry, "first"))
        middle = decode_module(field, _require(entry, "middle"))
        last = decode_module(field, _require(entry, "last"))
        sequences.append(
            ShortExactSequence(
                ModuleMap(first, middle, decode_matrix(field, _require(entry, "inclusion"))),
                ModuleMap(middle, last, decode_matrix(field, _require(entry, "projection"))),
                name=entry.get("name", ""),
            )
        )
    return Battery(acyclics, sequences)


def battery_field(battery: Battery) -> BaseField:
    for module in battery.acyclics:
        return module.field
    for sequence in battery.sequences:
        return sequence.middle.field
    return get_field(RATIONAL_FIELD_DESCRIPTOR)


def battery_hash(battery: Battery) -> str:
    document = make_document("battery", battery_field(battery), encode_battery(battery))
    return hashlib.sha256(compact_dumps(document).encode("utf-8")).hexdigest()


def encode_certificate(certificate: Any) -> Dict[str, Any]:
    if isinstance(certificate, SemiFreeFiltration):
        return {
            "kind": "semi_free",
            "degrees": list(certificate.degrees),
            "generators": [encode_matrix(g) for g in certificate.generators],
        }
    if isinstance(certificate, list):
        return {"kind": "free", "degrees": list(certificate)}
    return {"kind": "none"}


def decode_certificate(field: BaseField, payload: Dict[str, Any]) -> Any:
    kind = payload.get("kind", "none")
    if kind == "free":
        return [int(d) for d in _require(payload, "degrees")]
    if kind == "semi_free":
        return SemiFreeFiltration(
            [int(d) for d in _require(payload, "degrees")],
            [decode_matrix(field, g) for g in _require(payload, "generators")],
        )
    if kind != "none":
        raise DocumentFormatError(f"Unknown certificate kind {kind!r}")
    return None


def encode_factorization(factorization: Factorization) -> Dict[str, Any]:
    return {
        "u": encode_map(factorization.u),
        "v": encode_map(factorization.v),
        "w": encode_map(factorization.w),
        "stage": factorization.stage,
        "certificate": encode_certificate(factorization.certificate),
    }


def decode_factorization(field: BaseField, payload: Dict[str, Any]) -> Factorization:
    """Decoded maps are not validated here; Factorization.verify re-checks everything."""
    stage = payload.get("stage")
    return Factorization(
        u=decode_map(field, _require(payload, "u"), validate=False),
        v=decode_map(field, _require(payload, "v"), validate=False),
        w=decode_map(field, _require(payload, "w"), validate=False),
        stage=int(stage) if stage is not None else None,
        certificate=decode_certificate(field, payload.get("certificate", {})),
    )


def encode_corpus(corpus, flags: Dict[str, Dict[str, bool]]) -> Dict[str, Any]:
    return {
        "name": corpus.name,
        "algebra": encode_algebra(corpus.algebra),
        "modules": {
            member: {"module": encode_module(module), "flags": flags.get(member, {})}
            for member, module in corpus.modules.items()
        },
        "battery": encode_battery(corpus.battery),
    }


def decode(document: Document, validate: bool = True) -> Any:
    """The object a document describes. Corpus documents decode to (name, members, battery)."""
    field = document.ground_field
    payload = document.payload
    try:
        if document.kind == "algebra":
            return decode_algebra(field, payload, validate=validate)
        if document.kind == "module":
            return decode_module(field, payload, validate=validate)
        if document.kind == "map":
            return decode_map(field, payload, validate=validate)
        if document.kind == "system":
            return decode_system(field, payload)
        if document.kind == "battery":
            return decode_battery(field, payload)
        if document.kind == "factorization":
            return decode_factorization(field, payload)
        members = {
            name: decode_module(field, _require(entry, "module"), validate=validate)
            for name, entry in _require(payload, "modules").items()
        }
        return _require(payload, "name"), members, decode_battery(field, _require(payload, "battery"))
    except (TypeError, KeyError) as error:
        logger.error(f"Could not decode {document.kind} payload: {error}")
        raise DocumentFormatError(f"Malformed {document.kind} payload: {error}") from error
