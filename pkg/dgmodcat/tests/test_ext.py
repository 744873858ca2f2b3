import pytest

from dgmodcat.algebra.builders import builtin_catalog
from dgmodcat.duality.dualizability import is_dualizable
from dgmodcat.ext.battery import Battery, ShortExactSequence, is_semi_flat, recheck_witness
from dgmodcat.ext.presentation import ext1, identity_cone, is_acyclic, is_semi_projective, projective_presentation
from dgmodcat.graded.operations import homology
from dgmodcat.instances.corpus import CORPUS_NAMES, corpus, residue_module
from dgmodcat.instances.random_modules import random_cone_module
from dgmodcat.linalg.elimination import rank
from dgmodcat.module_category.constructions import (
    direct_sum,
    identity_map,
    module_cone,
    regular_bimodule,
    regular_module,
    restrict_side,
    shift_module,
    zero_map,
    zero_module,
)
from dgmodcat.module_category.dg_module import validate_module_map
from dgmodcat.system.exceptions import DimensionMismatchError, InvalidBatteryError

MEMBERS = [(name, member) for name in CORPUS_NAMES for member in corpus(name).member_names]


@pytest.mark.parametrize("name", ["exterior(2)", "dual_numbers(3)", "cone_dga(2)"])
def test_ext_against_shifted_A_computes_homology(name, rng):
    algebra = builtin_catalog(name)
    regular = regular_module(algebra)
    for _ in range(10):
        module = random_cone_module(algebra, rng, max_dim=12)
        homology_dims = homology(module.carrier)
        for i in range(-2, 3):
            assert ext1(shift_module(regular, i + 1), module) == homology_dims.get(i, 0)


@pytest.mark.parametrize("name", ["exterior(2)", "dual_numbers(3)"])
def test_ext_does_not_depend_on_the_presentation(name, rng):
    algebra = builtin_catalog(name)
    k = residue_module(algebra)
    for _ in range(5):
        module = random_cone_module(algebra, rng, max_dim=8)
        reverse = list(reversed(range(module.dim)))
        for target in (k, shift_module(k, 1), regular_module(algebra)):
            assert ext1(module, target) == ext1(module, target, candidate_order=reverse)


def test_ext_is_additive(exterior):
    regular = regular_module(exterior)
    k = residue_module(exterior)
    shifted = shift_module(k, 1)
    summed = direct_sum(k, shifted).module
    for target in (k, regular, shifted):
        assert ext1(summed, target) == ext1(k, target) + ext1(shifted, target)


def test_ext_needs_matching_algebras(exterior, dual_numbers):
    with pytest.raises(DimensionMismatchError):
        ext1(regular_module(exterior), regular_module(dual_numbers))


@pytest.mark.parametrize("source_side,target_side", [("right", "bi"), ("bi", "right"), ("bi", "bi")])
def test_ext_restricts_bimodules_to_the_other_side(source_side, target_side):
    algebra = builtin_catalog("upper_triangular(2)")

    def as_side(side):
        return regular_bimodule(algebra) if side == "bi" else regular_module(algebra, side)

    side = "left" if source_side == target_side == "bi" else "right"
    source, target = as_side(source_side), as_side(target_side)
    expected = ext1(restrict_side(source, side), restrict_side(target, side))
    assert ext1(source, target) == expected == 0
    assert ext1(shift_module(source, 1), target) == algebra.dim


@pytest.mark.parametrize("degree", [-1, 0, 2])
def test_identity_cones_present_themselves(cone_dga, degree):
    presentation = projective_presentation(identity_cone(cone_dga, degree))
    assert presentation.generator_degrees == [degree]
    assert presentation.kernel.module.dim == 0
    assert presentation.epi.matrix.rows == presentation.projective.dim


@pytest.mark.parametrize("corpus_name,member", MEMBERS)
def test_presentation_covers_every_member(corpus_name, member, corpora):
    presentation = projective_presentation(corpora[corpus_name].modules[member])
    assert validate_module_map(presentation.epi).passed
    assert rank(presentation.epi.matrix) == presentation.module.dim
    assert validate_module_map(presentation.kernel.inclusion).passed


def test_zero_module_has_an_empty_presentation(exterior):
    zero = zero_module(exterior)
    presentation = projective_presentation(zero)
    assert presentation.generator_degrees == []
    assert presentation.kernel.module.dim == 0
    assert ext1(zero, residue_module(exterior)) == 0
    assert ext1(regular_module(exterior), regular_module(exterior)) == 0


def test_semi_projectivity_against_acyclics(exterior):
    acyclics = [identity_cone(exterior, 0), identity_cone(exterior, 1)]
    assert is_semi_projective(regular_module(exterior), acyclics)
    assert is_semi_projective(identity_cone(exterior, 3), acyclics)
    with pytest.raises(InvalidBatteryError):
        is_semi_projective(regular_module(exterior), [regular_module(exterior)])


def test_battery_rejects_members_with_homology(exterior):
    with pytest.raises(InvalidBatteryError):
        Battery(acyclics=[regular_bimodule(exterior)]).validate()


def test_battery_rejects_sequences_that_are_not_exact(exterior):
    regular = regular_module(exterior, "right")
    broken = ShortExactSequence(zero_map(regular, regular), identity_map(regular), name="0->A->A")
    assert not broken.is_exact()
    with pytest.raises(InvalidBatteryError):
        Battery(sequences=[broken]).validate()


def test_cone_sequences_are_exact(cone_dga):
    cone = module_cone(identity_map(regular_module(cone_dga, "right")))
    assert ShortExactSequence.from_cone(cone).is_exact()
    assert is_acyclic(cone.module)


@pytest.mark.parametrize("corpus_name", CORPUS_NAMES)
def test_corpus_batteries_are_valid(corpus_name, corpora):
    battery = corpora[corpus_name].battery
    battery.validate()
    assert len(battery.digest) == 64
    assert battery.digest == corpus(corpus_name).battery.digest


@pytest.mark.parametrize("corpus_name,member", MEMBERS)
def test_semi_flatness_on_the_battery_matches_dualizability(corpus_name, member, corpora):
    source = corpora[corpus_name]
    module = source.modules[member]
    verdict = is_semi_flat(module, source.battery, validate_battery=False)
    assert verdict.battery_hash == source.battery.digest
    assert verdict.semi_flat == is_dualizable(module).dualizable
    if verdict.semi_flat:
        assert verdict.witness is None
    else:
        assert recheck_witness(module, source.battery, verdict.witness)


def test_residue_field_fails_on_the_ideal_sequence(corpora):
    source = corpora["ring/dual_numbers_F2"]
    verdict = is_semi_flat(source.modules["k"], source.battery)
    assert not verdict.flat_on_battery
    assert verdict.witness.kind == "sequence"
    assert verdict.witness.index == 0
    assert verdict.witness.degree == 0
    assert verdict.witness.dimension == 1
