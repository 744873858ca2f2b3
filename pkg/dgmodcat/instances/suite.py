import logging
import multiprocessing
from functools import partial
from typing import Dict, List, Optional

from pydantic import BaseModel
from tqdm import tqdm

from dgmodcat.duality.biduality import bidual_map
from dgmodcat.duality.dualizability import check_condition_2, check_condition_7, is_dualizable
from dgmodcat.ext.battery import is_semi_flat, recheck_witness
from dgmodcat.ext.presentation import ext1
from dgmodcat.graded.operations import homology
from dgmodcat.instances.corpus import Corpus, corpus
from dgmodcat.instances.golden import FLAG_NAMES, Flags, compute_flags, load_golden, write_golden
from dgmodcat.limits.directed_system import DirectedSystem, colimit, factor_through_stage
from dgmodcat.limits.factorization import lazard_factorize
from dgmodcat.linalg.elimination import is_isomorphism
from dgmodcat.module_category.constructions import identity_map, regular_module, shift_module
from dgmodcat.module_category.dg_module import DGModule, validate_module
from dgmodcat.module_category.hom_tensor import hom_module_set
from dgmodcat.system.exceptions import FlatnessFailure, InvalidBatteryError
from dgmodcat.system.params import SuiteParams

logger = logging.getLogger(__name__)

MAPS_PER_SOURCE = 4


class SuiteCheck(BaseModel):
    name: str
    anchor: str
    passed: bool
    detail: str = ""

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} ({self.anchor}) {self.detail}".rstrip()


class SuiteReport(BaseModel):
    corpus: str
    battery_hash: str = ""
    checks: List[SuiteCheck] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def render(self) -> str:
        lines = [f"corpus {self.corpus}", f"battery {self.battery_hash}"]
        lines.extend(check.render() for check in self.checks)
        passed = sum(check.passed for check in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"


def _is_plain(module: DGModule) -> bool:
    """An ordinary module: concentrated in degree 0 with zero differential."""
    return all(d == 0 for d in module.degrees) and module.differential.is_zero()


def _flag_check(member: str, computed: Flags, expected: Optional[Flags]) -> SuiteCheck:
    if expected is None:
        return SuiteCheck(name=f"{member}: flags", anchor="frozen flags", passed=False, detail="no golden entry")
    differing = [flag for flag in FLAG_NAMES if computed[flag] != expected.get(flag)]
    detail = " ".join(f"{flag}={computed[flag]}" for flag in FLAG_NAMES)
    if differing:
        detail += f" differs on {','.join(differing)}"
    return SuiteCheck(name=f"{member}: flags", anchor="frozen flags", passed=not differing, detail=detail)


def _homology_check(member: str, module: DGModule, degrees) -> SuiteCheck:
    regular = regular_module(module.algebra)
    homology_dims = homology(module.carrier)
    mismatches = []
    for i in degrees:
        value = ext1(shift_module(regular, i + 1), module)
        if value != homology_dims.get(i, 0):
            mismatches.append(f"i={i}:{value}!={homology_dims.get(i, 0)}")
    return SuiteCheck(
        name=f"{member}: ext-homology",
        anchor="Ext^1(S^(i+1)A, N) = H_i(N)",
        passed=not mismatches,
        detail=" ".join(mismatches) or f"degrees {min(degrees)}..{max(degrees)}",
    )


def _lazard_check(member: str, module: DGModule, source_corpus: Corpus, dualizable: bool) -> SuiteCheck:
    anchor = "flat objects are direct limits of finitely generated free ones"
    if not dualizable:
        try:
            lazard_factorize(identity_map(module))
        except FlatnessFailure as failure:
            return SuiteCheck(
                name=f"{member}: lazard", anchor=anchor, passed=True, detail=f"identity fails flatness {failure.witness}"
            )
        return SuiteCheck(name=f"{member}: lazard", anchor=anchor, passed=False, detail="identity factored")
    count = 0
    for source_name, source in source_corpus.modules.items():
        if not _is_plain(source):
            continue
        for u in hom_module_set(source, module)[:MAPS_PER_SOURCE]:
            try:
                factorization = lazard_factorize(u)
            except FlatnessFailure as failure:
                return SuiteCheck(
                    name=f"{member}: lazard", anchor=anchor, passed=False, detail=f"from {source_name}: {failure.witness}"
                )
            if not factorization.verify():
                return SuiteCheck(
                    name=f"{member}: lazard", anchor=anchor, passed=False, detail=f"from {source_name}: unverified"
                )
            count += 1
    return SuiteCheck(name=f"{member}: lazard", anchor=anchor, passed=True, detail=f"{count} maps factored")


def _stage_check(member: str, module: DGModule) -> SuiteCheck:
    anchor = "semi-flat objects are direct limits of dualizable ones"
    regular = regular_module(module.algebra)
    system = DirectedSystem.accumulating(module, regular, length=3)
    limit = colimit(system)
    count = 0
    for source in (module, regular):
        for u in hom_module_set(source, limit.module)[:MAPS_PER_SOURCE]:
            factorization = factor_through_stage(u, system, limit)
            if factorization is None or not factorization.verify():
                return SuiteCheck(name=f"{member}: stage", anchor=anchor, passed=False, detail=f"from {source.name}")
            count += 1
    return SuiteCheck(name=f"{member}: stage", anchor=anchor, passed=True, detail=f"{count} maps factored")


def member_checks(corpus_name: str, member: str, params: SuiteParams, expected: Optional[Flags]) -> List[SuiteCheck]:
    """Every check the suite runs on one corpus member. Rebuilds the corpus from its name."""
    source_corpus = corpus(corpus_name)
    module = source_corpus.modules[member]
    checks = []
    report = validate_module(module)
    checks.append(
        SuiteCheck(
            name=f"{member}: axioms",
            anchor="module axioms",
            passed=report.passed,
            detail=",".join(check.name for check in report.failures()),
        )
    )
    flags = compute_flags(module, params.search)
    checks.append(_flag_check(member, flags, expected))
    dualizable = flags["dualizable"]
    evaluation, nu = check_condition_2(module), check_condition_7(module)
    checks.append(
        SuiteCheck(
            name=f"{member}: equivalence",
            anchor="coevaluation, evaluation on cycles and nu agree",
            passed=dualizable == evaluation == nu,
            detail=f"coevaluation={dualizable} evaluation={evaluation} nu={nu}",
        )
    )
    verdict = is_semi_flat(module, source_corpus.battery, validate_battery=False)
    if dualizable:
        checks.append(
            SuiteCheck(
                name=f"{member}: bidual",
                anchor="dualizable objects are reflexive",
                passed=is_isomorphism(bidual_map(module).matrix),
            )
        )
        checks.append(
            SuiteCheck(
                name=f"{member}: semi-flat",
                anchor="dualizable implies semi-flat",
                passed=verdict.semi_flat,
                detail=f"witness {verdict.witness.model_dump()}" if verdict.witness else "",
            )
        )
    else:
        holds = verdict.witness is not None and recheck_witness(module, source_corpus.battery, verdict.witness)
        checks.append(
            SuiteCheck(
                name=f"{member}: witness",
                anchor="finite semi-flat objects are dualizable",
                passed=not verdict.semi_flat and holds,
                detail=f"{verdict.witness.kind} {verdict.witness.name} degree {verdict.witness.degree}"
                if verdict.witness
                else "no battery witness",
            )
        )
    if source_corpus.family != "ring":
        checks.append(_homology_check(member, module, params.homology_degrees))
    if source_corpus.algebra.is_ring and _is_plain(module):
        checks.append(_lazard_check(member, module, source_corpus, dualizable))
    elif dualizable:
        checks.append(_stage_check(member, module))
    return checks


def _member_task(corpus_name: str, params: SuiteParams, expected: Dict[str, Flags], member: str) -> List[SuiteCheck]:
    return member_checks(corpus_name, member, params, expected.get(member))


def run_theorem_suite(corpus_name: str, params: Optional[SuiteParams] = None) -> SuiteReport:
    """
    Recompute every member's flags against the golden file and run the per-member checks.

    Members are dispatched by name, so the report does not depend on worker scheduling.
    """
    params = params or SuiteParams()
    source_corpus = corpus(corpus_name)
    expected = load_golden(corpus_name, params.golden_dir)
    report = SuiteReport(corpus=corpus_name, battery_hash=source_corpus.battery.digest)
    try:
        source_corpus.battery.validate()
        report.checks.append(SuiteCheck(name="battery", anchor="battery is exact and acyclic", passed=True))
    except InvalidBatteryError as error:
        report.checks.append(
            SuiteCheck(name="battery", anchor="battery is exact and acyclic", passed=False, detail=str(error))
        )
    extra = sorted(set(expected) - set(source_corpus.modules))
    report.checks.append(
        SuiteCheck(
            name="golden members",
            anchor="frozen flags",
            passed=not extra,
            detail=f"unknown members {extra}" if extra else f"{len(expected)} members",
        )
    )
    members = source_corpus.member_names
    task = partial(_member_task, corpus_name, params, expected)
    if params.num_processes > 1:
        with multiprocessing.Pool(params.num_processes) as pool:
            results = list(
                tqdm(pool.imap(task, members), total=len(members), desc=corpus_name, disable=not params.use_tqdm)
            )
    else:
        results = [task(member) for member in tqdm(members, desc=corpus_name, disable=not params.use_tqdm)]
    for checks in results:
        report.checks.extend(checks)
    logger.info(f"Suite {corpus_name}: {'passed' if report.passed else 'failed'}")
    return report


def freeze(corpus_name: str, params: Optional[SuiteParams] = None):
    """Recompute the flags of every member and overwrite the golden file."""
    params = params or SuiteParams()
    source_corpus = corpus(corpus_name)
    flags = {
        member: compute_flags(module, params.search)
        for member, module in tqdm(source_corpus.modules.items(), desc=corpus_name, disable=not params.use_tqdm)
    }
    return write_golden(corpus_name, flags, params.golden_dir)
