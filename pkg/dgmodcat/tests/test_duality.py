import pytest

from dgmodcat.algebra.builders import builtin_catalog
from dgmodcat.duality.biduality import bidual_map, dual_of_tensor_iso
from dgmodcat.duality.dualizability import (
    check_condition_2,
    check_condition_3,
    check_condition_7,
    check_condition_8,
    check_condition_9,
    is_dualizable,
    verify_coevaluation,
)
from dgmodcat.duality.projectivity import is_projective_ring_case, search_semiprojective_gap
from dgmodcat.ext.battery import ShortExactSequence
from dgmodcat.graded.graded_complex import GradedComplex
from dgmodcat.graded.operations import unit_object
from dgmodcat.instances.corpus import CORPUS_NAMES, corpus, residue_module
from dgmodcat.instances.golden import load_golden
from dgmodcat.instances.random_modules import random_cone_module, random_map
from dgmodcat.linalg.elimination import is_isomorphism
from dgmodcat.linalg.matrix import Matrix
from dgmodcat.module_category.constructions import (
    free_module,
    module_cone,
    regular_bimodule,
    regular_module,
    shift_module,
)
from dgmodcat.system.exceptions import UnsupportedInstanceError

MEMBERS = [(name, member) for name in CORPUS_NAMES for member in corpus(name).member_names]


def _plain(module):
    return all(d == 0 for d in module.degrees) and module.differential.is_zero()


@pytest.mark.parametrize("corpus_name,member", MEMBERS)
def test_dualizability_matches_frozen_flags(corpus_name, member, corpora):
    module = corpora[corpus_name].modules[member]
    verdict = is_dualizable(module)
    assert verdict.dualizable == load_golden(corpus_name)[member]["dualizable"]
    assert verify_coevaluation(module, verdict) == verdict.dualizable
    if not verdict.dualizable:
        assert verdict.failed_condition == "coevaluation"
        assert set(verdict.failure_witness) == {"cycles", "module_maps", "rank"}


@pytest.mark.parametrize("corpus_name,member", MEMBERS)
def test_equivalent_characterisations_agree(corpus_name, member, corpora):
    module = corpora[corpus_name].modules[member]
    dualizable = is_dualizable(module).dualizable
    assert check_condition_2(module) == dualizable
    assert check_condition_7(module) == dualizable


@pytest.mark.parametrize("corpus_name,member", MEMBERS)
def test_dualizable_members_are_reflexive(corpus_name, member, corpora):
    module = corpora[corpus_name].modules[member]
    if not is_dualizable(module).dualizable:
        pytest.skip("bidual comparison only holds for dualizable modules")
    assert is_isomorphism(bidual_map(module).matrix)


def test_projectivity_over_rings_matches_dualizability(corpora):
    checked = 0
    for name in CORPUS_NAMES:
        source = corpora[name]
        if not source.algebra.is_ring:
            continue
        for module in source.modules.values():
            if not _plain(module):
                continue
            assert is_projective_ring_case(module) == is_dualizable(module).dualizable
            checked += 1
    assert checked >= 12


def test_projectivity_needs_a_ring(exterior):
    with pytest.raises(UnsupportedInstanceError):
        is_projective_ring_case(regular_module(exterior))


def test_sampled_conditions(exterior):
    regular = regular_module(exterior)
    k = residue_module(exterior)
    free = free_module(exterior, [0, 1])
    targets = [regular, k, shift_module(k, 1), free]
    pairs = [(regular_bimodule(exterior), other) for other in targets]
    for module in (regular, free, shift_module(regular, -1)):
        assert check_condition_3(module, targets)
        assert check_condition_8(module, pairs)
        assert check_condition_9(module, pairs)
    assert not check_condition_3(k, [k])
    assert not check_condition_8(k, [(regular_bimodule(exterior), k)])


def test_right_modules_are_decided_through_the_opposite(dual_numbers):
    assert is_dualizable(regular_module(dual_numbers, "right")).dualizable
    assert not is_dualizable(residue_module(dual_numbers, "right")).dualizable


def _sample_complexes(field):
    return [
        unit_object(field),
        GradedComplex(field, [1]),
        GradedComplex(field, [0, 0]),
        GradedComplex.from_blocks(field, {0: 1, 1: 1}, {1: Matrix.identity(field, 1)}),
        GradedComplex.from_blocks(field, {-1: 1, 0: 2}, {0: Matrix.from_rows(field, [[1, 1]])}),
    ]


@pytest.mark.parametrize("name", ["exterior(2)", "dual_numbers(3)"])
def test_dual_of_tensor_with_a_complex(name):
    algebra = builtin_catalog(name)
    modules = [regular_module(algebra), shift_module(regular_module(algebra), 1), residue_module(algebra)]
    for module in modules:
        for complex_ in _sample_complexes(algebra.field):
            theta = dual_of_tensor_iso(module, complex_)
            assert theta.source.dim == theta.target.dim
            assert is_isomorphism(theta.matrix)


@pytest.mark.parametrize("name", ["exterior(2)", "cone_dga(2)", "dual_numbers(3)"])
def test_cones_between_free_modules_are_dualizable(name, rng):
    algebra = builtin_catalog(name)
    for _ in range(10):
        module = random_cone_module(algebra, rng)
        verdict = is_dualizable(module)
        assert verdict.dualizable
        assert verify_coevaluation(module, verdict)


@pytest.mark.parametrize("name", ["exterior(2)", "dual_numbers(3)"])
def test_extensions_of_dualizable_modules_are_dualizable(name, rng):
    algebra = builtin_catalog(name)
    for _ in range(10):
        first = random_cone_module(algebra, rng, max_dim=6)
        last = random_cone_module(algebra, rng, max_dim=6)
        extension = ShortExactSequence.from_cone(module_cone(random_map(rng, last, first)))
        assert extension.is_exact()
        assert extension.first == first
        assert is_dualizable(extension.first).dualizable
        assert is_dualizable(extension.last).dualizable
        verdict = is_dualizable(extension.middle)
        assert verdict.dualizable
        assert verify_coevaluation(extension.middle, verdict)


def test_gap_search_over_the_matrix_ring(corpora):
    source = corpora["ring/matrix2_F2"]
    report = search_semiprojective_gap(list(source.modules.items()))
    assert report.examined == 3
    assert report.dualizable == 3
    assert report.recognized == 1
    assert [candidate.module for candidate in report.inconclusive] == ["A.E11", "A+A.E11"]
    assert all(candidate.algebra == "matrix2(2)" for candidate in report.inconclusive)


def test_gap_search_finds_nothing_over_the_exterior_algebra(corpora):
    source = corpora["dg/exterior_F2"]
    report = search_semiprojective_gap(list(source.modules.items()))
    assert report.examined == 6
    assert report.dualizable == 4
    assert report.recognized == 4
    assert report.inconclusive == []
