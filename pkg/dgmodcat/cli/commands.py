import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from dgmodcat.algebra.axioms import validate_algebra
from dgmodcat.algebra.builders import builtin_catalog
from dgmodcat.algebra.dg_algebra import DGAlgebra
from dgmodcat.cli.documents import (
    Document,
    canonical_dumps,
    decode,
    encode_corpus,
    encode_factorization,
    encode_module,
    make_document,
    read_document,
)
from dgmodcat.duality.dualizability import is_dualizable
from dgmodcat.ext.battery import Battery, is_semi_flat
from dgmodcat.ext.presentation import ext1
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.operations import homology
from dgmodcat.instances.corpus import CORPUS_NAMES, corpus
from dgmodcat.instances.golden import load_golden
from dgmodcat.instances.suite import freeze, run_theorem_suite
from dgmodcat.limits.directed_system import DirectedSystem, factor_through_stage
from dgmodcat.limits.factorization import Factorization, lazard_factorize
from dgmodcat.limits.presentations import presentation_from_cover
from dgmodcat.limits.semifree import SemiFreeFiltration, recognize_fg_semifree
from dgmodcat.module_category.constructions import free_module
from dgmodcat.module_category.dg_module import DGModule, ModuleMap, validate_module, validate_module_map
from dgmodcat.module_category.hom_tensor import dual, hom_A, tensor_A
from dgmodcat.system.constants import EXIT_INPUT_ERROR, EXIT_MATHEMATICAL_FAILURE, EXIT_OK
from dgmodcat.system.default_paths import GOLDEN_FOLDER_PATH
from dgmodcat.system.exceptions import (
    DimensionMismatchError,
    FieldMismatchError,
    FlatnessFailure,
    InvalidBatteryError,
    InvalidStructureError,
)
from dgmodcat.system.params import SearchParams, SuiteParams

logger = logging.getLogger(__name__)


def _load(args: argparse.Namespace, path: str, kinds: Sequence[str], validate: bool = True) -> Any:
    document = read_document(Path(path))
    _check_field(args, document)
    if document.kind not in kinds:
        raise DimensionMismatchError(f"{path} holds a {document.kind} document, expected one of {list(kinds)}")
    return decode(document, validate=validate)


def _check_field(args: argparse.Namespace, document: Document) -> None:
    if args.field is not None and document.field != args.field:
        logger.error(f"Document over {document.field} given with --field {args.field}")
        raise FieldMismatchError(f"Document is over {document.field}, but --field is {args.field}")


def _search(args: argparse.Namespace) -> SearchParams:
    return SearchParams(degree_bound=args.degree_bound, length_bound=args.length_bound)


def _emit_document(args: argparse.Namespace, document: Dict[str, Any]) -> None:
    text = canonical_dumps(document)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {document['kind']} document to {args.output}")
    else:
        sys.stdout.write(text)


def _print(lines: List[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def _complex_as_module(complex_: GradedComplex) -> DGModule:
    """A bare complex is a left module over the ground field."""
    unit = builtin_catalog("unit", complex_.field)
    return DGModule(unit, "left", complex_, left_action=complex_.identity(), name="complex", validate=False)


def _load_battery(args: argparse.Namespace) -> Optional[Battery]:
    if args.battery is None:
        return None
    return _load(args, args.battery, ["battery"])


def cmd_validate(args: argparse.Namespace) -> int:
    document = read_document(Path(args.path))
    _check_field(args, document)
    lines = []
    passed = True
    if document.kind in ("algebra", "module", "map"):
        subject = decode(document, validate=False)
        if isinstance(subject, DGAlgebra):
            report = validate_algebra(subject)
        elif isinstance(subject, DGModule):
            report = validate_module(subject)
        else:
            report = validate_module_map(subject)
        lines.extend(report.render())
        passed = report.passed
    elif document.kind == "corpus":
        name, members, battery = decode(document, validate=False)
        lines.append(f"corpus {name}")
        for member, module in members.items():
            report = validate_module(module)
            report.subject = member
            lines.extend(report.render())
            passed = passed and report.passed
        passed = _battery_lines(battery, lines) and passed
    elif document.kind == "battery":
        passed = _battery_lines(decode(document), lines)
    elif document.kind == "factorization":
        factorization = decode(document)
        passed = _verify_factorization(factorization)
        lines.append(f"factorization: {'PASS' if passed else 'FAIL'}")
    else:
        try:
            system = decode(document)
            lines.append(f"system of {len(system)} stages: PASS")
        except InvalidStructureError as error:
            lines.append(f"system: FAIL ({error})")
            passed = False
    _print(lines)
    return EXIT_OK if passed else EXIT_MATHEMATICAL_FAILURE


def _battery_lines(battery: Battery, lines: List[str]) -> bool:
    try:
        battery.validate()
    except InvalidBatteryError as error:
        lines.append(f"battery: FAIL ({error})")
        return False
    lines.append(f"battery {battery.digest}: PASS")
    return True


def cmd_dualizable(args: argparse.Namespace) -> int:
    algebra = _load(args, args.algebra, ["algebra"])
    module = _load(args, args.module, ["module"])
    if module.algebra != algebra:
        raise DimensionMismatchError("The module document is over a different algebra")
    verdict = is_dualizable(module)
    lines = [f"module {module.name or args.module}"]
    if verdict.dualizable:
        lines.append("dualizable")
        coefficients = sorted(verdict.coevaluation.nonzero_entries().items())
        lines.append(
            "coevaluation " + " ".join(f"{i}:{module.field.format(value)}" for (i, _), value in coefficients)
        )
    else:
        lines.append("not dualizable")
        lines.append(f"failed {verdict.failed_condition}")
        lines.append("witness " + " ".join(f"{key}={value}" for key, value in sorted(verdict.failure_witness.items())))
    search = _search(args)
    filtration = recognize_fg_semifree(module, search.degree_bound, search.length_bound)
    if filtration is not None:
        lines.append(f"semi-free in degrees {filtration.degrees}")
    else:
        lines.append(f"semi-free: inconclusive within degree bound {search.degree_bound}")
    battery = _load_battery(args)
    if battery is not None:
        semiflat = is_semi_flat(module, battery)
        lines.append(f"semi-flat on battery {semiflat.battery_hash}: {'yes' if semiflat.semi_flat else 'no'}")
        if semiflat.witness is not None:
            lines.append(f"witness {semiflat.witness.model_dump_json()}")
    _print(lines)
    return EXIT_OK if verdict.dualizable else EXIT_MATHEMATICAL_FAILURE


def cmd_ext1(args: argparse.Namespace) -> int:
    source = _load(args, args.x, ["module"])
    target = _load(args, args.y, ["module"])
    _print([str(ext1(source, target))])
    return EXIT_OK


def cmd_homology(args: argparse.Namespace) -> int:
    subject = _load(args, args.path, ["module", "algebra"])
    lines = [f"H_{degree} {dimension}" for degree, dimension in sorted(homology(subject.carrier).items())]
    _print(lines or ["zero complex"])
    return EXIT_OK


def cmd_tensor(args: argparse.Namespace) -> int:
    right = _load(args, args.y, ["module"])
    left = _load(args, args.x, ["module"])
    result = tensor_A(right, left)
    module = result.module if result.module is not None else _complex_as_module(result.complex)
    _emit_document(args, make_document("module", module.field, encode_module(module)))
    return EXIT_OK


def cmd_hom(args: argparse.Namespace) -> int:
    source = _load(args, args.x, ["module"])
    target = _load(args, args.x2, ["module"])
    result = hom_A(source, target)
    module = result.module if result.module is not None else _complex_as_module(result.complex)
    _emit_document(args, make_document("module", module.field, encode_module(module)))
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    module = dual(_load(args, args.module, ["module"]))
    _emit_document(args, make_document("module", module.field, encode_module(module)))
    return EXIT_OK


def cmd_factorize(args: argparse.Namespace) -> int:
    u = _load(args, args.u, ["map"])
    if args.system is not None:
        system: DirectedSystem = _load(args, args.system, ["system"])
        factorization = factor_through_stage(u, system)
        if factorization is None:
            _print(["no stage of the system receives u"])
            return EXIT_MATHEMATICAL_FAILURE
        logger.info(f"Stage {factorization.stage} receives u")
    else:
        cover: ModuleMap = _load(args, args.relations, ["map"])
        if cover.target != u.source:
            raise DimensionMismatchError("The cover does not map onto the source of u")
        try:
            factorization = lazard_factorize(u, presentation_from_cover(cover), battery=_load_battery(args))
        except FlatnessFailure as failure:
            _print([str(failure), "witness " + json.dumps(failure.witness, sort_keys=True)])
            return EXIT_MATHEMATICAL_FAILURE
    _emit_document(args, make_document("factorization", u.field, encode_factorization(factorization)))
    return EXIT_OK


def _verify_factorization(factorization: Factorization) -> bool:
    """Recompute w o v = u and re-check the certificate of the middle module from scratch."""
    if not factorization.verify():
        return False
    through = factorization.through
    certificate = factorization.certificate
    if isinstance(certificate, list):
        return free_module(through.algebra, certificate) == through
    if isinstance(certificate, SemiFreeFiltration):
        return certificate.verify(through)
    return False


def cmd_verify(args: argparse.Namespace) -> int:
    factorization = _load(args, args.factorization, ["factorization"])
    passed = _verify_factorization(factorization)
    lines = [f"factorization through {factorization.through.dim}-dimensional module"]
    if factorization.stage is not None:
        lines.append(f"stage {factorization.stage}")
    lines.append("verified" if passed else "rejected")
    _print(lines)
    return EXIT_OK if passed else EXIT_MATHEMATICAL_FAILURE


def _suite_params(args: argparse.Namespace) -> SuiteParams:
    golden_dir = Path(args.golden) if getattr(args, "golden", None) else GOLDEN_FOLDER_PATH
    return SuiteParams(golden_dir=golden_dir, search=_search(args))


def _check_corpus_name(name: str) -> None:
    if name not in CORPUS_NAMES:
        raise ValueError(f"Unknown corpus {name!r}; known corpora are {', '.join(CORPUS_NAMES)}")


def cmd_suite(args: argparse.Namespace) -> int:
    _check_corpus_name(args.corpus)
    report = run_theorem_suite(args.corpus, _suite_params(args))
    sys.stdout.write(report.render())
    return EXIT_OK if report.passed else EXIT_MATHEMATICAL_FAILURE


def cmd_freeze(args: argparse.Namespace) -> int:
    _check_corpus_name(args.corpus)
    path = freeze(args.corpus, _suite_params(args))
    _print([f"froze {args.corpus} to {path}"])
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    _check_corpus_name(args.corpus)
    source = corpus(args.corpus)
    flags = load_golden(args.corpus, _suite_params(args).golden_dir)
    _emit_document(args, make_document("corpus", source.algebra.field, encode_corpus(source, flags)))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "validate": cmd_validate,
    "dualizable": cmd_dualizable,
    "ext1": cmd_ext1,
    "homology": cmd_homology,
    "tensor": cmd_tensor,
    "hom": cmd_hom,
    "dual": cmd_dual,
    "factorize": cmd_factorize,
    "verify": cmd_verify,
    "suite": cmd_suite,
    "freeze": cmd_freeze,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgmodcat", description="Exact computations in categories of DG-modules over finite DGAs."
    )
    parser.add_argument("--field", default=None, help='Require every input document to be over this field ("Q" or "Fp:<p>")')
    parser.add_argument("--degree-bound", type=int, default=SearchParams().degree_bound)
    parser.add_argument("--length-bound", type=int, default=SearchParams().length_bound)
    parser.add_argument("--battery", default=None, help="Battery document used for semi-flatness verdicts")
    parser.add_argument("--output", default=None, help="Write result documents here instead of stdout")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("validate", help="Check the axioms of any document").add_argument("path")
    dualizable = commands.add_parser("dualizable", help="Decide dualizability of a module")
    dualizable.add_argument("algebra")
    dualizable.add_argument("module")
    ext = commands.add_parser("ext1", help="dim Ext^1(X, Y)")
    ext.add_argument("x")
    ext.add_argument("y")
    commands.add_parser("homology", help="Homology dimensions of a module or algebra").add_argument("path")
    tensor = commands.add_parser("tensor", help="Y (x)_A X")
    tensor.add_argument("y")
    tensor.add_argument("x")
    hom = commands.add_parser("hom", help="_A[X, X']")
    hom.add_argument("x")
    hom.add_argument("x2")
    commands.add_parser("dual", help="X* = _A[X, A]").add_argument("module")
    factorize = commands.add_parser("factorize", help="Factor a map through a free or semi-free module")
    factorize.add_argument("u")
    target = factorize.add_mutually_exclusive_group(required=True)
    target.add_argument("--system", help="Directed system document whose colimit is the target of u")
    target.add_argument("--relations", help="Map document of a free cover of the source of u")
    commands.add_parser("verify", help="Re-check a factorization document").add_argument("factorization")
    suite = commands.add_parser("suite", help="Run the checks of a shipped corpus")
    suite.add_argument("corpus")
    suite.add_argument("--golden", default=None, help="Directory holding the golden flag files")
    freeze_parser = commands.add_parser("freeze", help="Regenerate the golden flags of a corpus")
    freeze_parser.add_argument("corpus")
    freeze_parser.add_argument("--golden", default=None)
    export = commands.add_parser("export", help="Write the document of a shipped corpus")
    export.add_argument("corpus")
    export.add_argument("--golden", default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_OK if exit_.code == 0 else EXIT_INPUT_ERROR
    try:
        return COMMANDS[args.command](args)
    except FlatnessFailure as failure:
        _print([str(failure), "witness " + json.dumps(failure.witness, sort_keys=True)])
        return EXIT_MATHEMATICAL_FAILURE
    except InvalidStructureError as error:
        lines = [str(error)]
        if error.report is not None:
            lines.extend(error.report.render())
        _print(lines)
        return EXIT_MATHEMATICAL_FAILURE
    except InvalidBatteryError as error:
        _print([f"battery: FAIL ({error})"])
        return EXIT_MATHEMATICAL_FAILURE
    except (ValueError, OSError, ValidationError) as error:
        logger.error(f"{args.command} failed on its input: {error}")
        sys.stderr.write(f"error: {error}\n")
        return EXIT_INPUT_ERROR
