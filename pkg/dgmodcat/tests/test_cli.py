import json

from dgmodcat.algebra.builders import from_structure_constants
from dgmodcat.cli.commands import main
from dgmodcat.cli.documents import (
    canonical_dumps,
    decode,
    encode_algebra,
    encode_battery,
    encode_map,
    encode_module,
    encode_system,
    make_document,
    parse_document,
)
from dgmodcat.instances.corpus import corpus, residue_module
from dgmodcat.limits.directed_system import DirectedSystem, colimit
from dgmodcat.limits.presentations import free_cover
from dgmodcat.module_category.constructions import identity_map, regular_module, shift_module
from dgmodcat.module_category.hom_tensor import hom_module_set
from dgmodcat.system.constants import EXIT_INPUT_ERROR, EXIT_MATHEMATICAL_FAILURE, EXIT_OK
from dgmodcat.system.default_paths import get_golden_file_path


def _write(tmp_path, name, kind, field, payload):
    path = tmp_path / name
    path.write_text(canonical_dumps(make_document(kind, field, payload)), encoding="utf-8")
    return str(path)


def _module_file(tmp_path, name, module):
    return _write(tmp_path, name, "module", module.field, encode_module(module))


def _map_file(tmp_path, name, module_map):
    return _write(tmp_path, name, "map", module_map.field, encode_map(module_map))


def _output_lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_validate_exit_codes(tmp_path, capsys, dual_numbers, f2):
    good = _write(tmp_path, "good.json", "algebra", f2, encode_algebra(dual_numbers))
    assert main(["validate", good]) == EXIT_OK
    assert _output_lines(capsys)[0].endswith("PASS")

    broken_algebra = from_structure_constants(
        f2,
        [0, 0, 0],
        {(0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (1, 0): {1: 1}, (2, 0): {2: 1}, (1, 2): {2: 1}},
        0,
        validate=False,
    )
    broken = _write(tmp_path, "broken.json", "algebra", f2, encode_algebra(broken_algebra))
    assert main(["validate", broken]) == EXIT_MATHEMATICAL_FAILURE
    lines = _output_lines(capsys)
    assert lines[0].endswith("FAIL")
    assert any("[FAIL] associativity" in line for line in lines)

    malformed = tmp_path / "malformed.json"
    malformed.write_text("{not json", encoding="utf-8")
    assert main(["validate", str(malformed)]) == EXIT_INPUT_ERROR
    assert "error:" in capsys.readouterr().err

    wrong_version = tmp_path / "version.json"
    document = make_document("algebra", f2, encode_algebra(dual_numbers))
    document["format_version"] = "2.0"
    wrong_version.write_text(json.dumps(document), encoding="utf-8")
    assert main(["validate", str(wrong_version)]) == EXIT_INPUT_ERROR


def test_missing_file_and_bad_arguments(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "absent.json")]) == EXIT_INPUT_ERROR
    assert main([]) == EXIT_INPUT_ERROR
    assert main(["factorize", "u.json"]) == EXIT_INPUT_ERROR
    assert main(["--help"]) == EXIT_OK
    capsys.readouterr()


def test_dualizable(tmp_path, capsys, dual_numbers, f2):
    algebra = _write(tmp_path, "algebra.json", "algebra", f2, encode_algebra(dual_numbers))
    regular = _module_file(tmp_path, "A.json", regular_module(dual_numbers))
    k = _module_file(tmp_path, "k.json", residue_module(dual_numbers))
    battery = corpus("ring/dual_numbers_F2").battery
    battery_path = _write(tmp_path, "battery.json", "battery", f2, encode_battery(battery))

    assert main(["dualizable", algebra, regular]) == EXIT_OK
    lines = _output_lines(capsys)
    assert lines[:2] == ["module A", "dualizable"]
    assert lines[2].startswith("coevaluation ")
    assert lines[3] == "semi-free in degrees [0]"

    assert main(["--battery", battery_path, "dualizable", algebra, k]) == EXIT_MATHEMATICAL_FAILURE
    lines = _output_lines(capsys)
    assert lines[1:3] == ["not dualizable", "failed coevaluation"]
    assert lines[3].startswith("witness cycles=")
    assert lines[4] == "semi-free: inconclusive within degree bound 4"
    assert lines[5] == f"semi-flat on battery {battery.digest}: no"
    assert json.loads(lines[6][len("witness ") :])["kind"] == "sequence"


def test_dualizable_rejects_a_module_over_another_algebra(tmp_path, capsys, dual_numbers, exterior, f2):
    algebra = _write(tmp_path, "algebra.json", "algebra", f2, encode_algebra(exterior))
    regular = _module_file(tmp_path, "A.json", regular_module(dual_numbers))
    assert main(["dualizable", algebra, regular]) == EXIT_INPUT_ERROR


def test_ext1_and_homology(tmp_path, capsys, exterior):
    shifted = _module_file(tmp_path, "SA.json", shift_module(regular_module(exterior), 1))
    k = _module_file(tmp_path, "k.json", residue_module(exterior))
    assert main(["ext1", shifted, k]) == EXIT_OK
    assert _output_lines(capsys) == ["1"]
    assert main(["homology", shifted]) == EXIT_OK
    assert _output_lines(capsys) == ["H_1 1", "H_2 1"]


def test_tensor_hom_and_dual_emit_module_documents(tmp_path, capsys, dual_numbers):
    k_right = _module_file(tmp_path, "k_right.json", residue_module(dual_numbers, "right"))
    k = _module_file(tmp_path, "k.json", residue_module(dual_numbers))
    regular = _module_file(tmp_path, "A.json", regular_module(dual_numbers))

    assert main(["tensor", k_right, k]) == EXIT_OK
    tensor = decode(parse_document(capsys.readouterr().out))
    assert tensor.dim == 1
    assert tensor.algebra.name == "unit"

    output = tmp_path / "hom.json"
    assert main(["--output", str(output), "hom", regular, regular]) == EXIT_OK
    hom = decode(parse_document(output.read_text(encoding="utf-8")))
    assert hom.carrier.dims == {0: 2}

    assert main(["dual", k]) == EXIT_OK
    dual = decode(parse_document(capsys.readouterr().out))
    assert dual.side == "right"
    assert dual.dim == 1


def test_factorize_through_a_free_module_and_verify(tmp_path, capsys, dual_numbers):
    k = residue_module(dual_numbers)
    u = hom_module_set(k, regular_module(dual_numbers))[0]
    u_path = _map_file(tmp_path, "u.json", u)
    cover = _map_file(tmp_path, "cover.json", free_cover(k, [k.carrier.identity()]))
    output = tmp_path / "factorization.json"
    assert main(["--output", str(output), "factorize", u_path, "--relations", cover]) == EXIT_OK
    assert parse_document(output.read_text(encoding="utf-8")).kind == "factorization"
    assert main(["verify", str(output)]) == EXIT_OK
    assert _output_lines(capsys)[-1] == "verified"
    assert main(["validate", str(output)]) == EXIT_OK
    assert _output_lines(capsys) == ["factorization: PASS"]


def test_tampered_factorization_is_rejected(tmp_path, capsys, dual_numbers):
    k = residue_module(dual_numbers)
    u = hom_module_set(k, regular_module(dual_numbers))[0]
    output = tmp_path / "factorization.json"
    main(
        [
            "--output",
            str(output),
            "factorize",
            _map_file(tmp_path, "u.json", u),
            "--relations",
            _map_file(tmp_path, "cover.json", free_cover(k, [k.carrier.identity()])),
        ]
    )
    document = json.loads(output.read_text(encoding="utf-8"))
    document["payload"]["w"]["matrix"]["entries"] = []
    output.write_text(json.dumps(document), encoding="utf-8")
    assert main(["verify", str(output)]) == EXIT_MATHEMATICAL_FAILURE
    assert _output_lines(capsys)[-1] == "rejected"


def test_factorize_into_a_non_flat_target(tmp_path, capsys, dual_numbers):
    k = residue_module(dual_numbers)
    u_path = _map_file(tmp_path, "u.json", identity_map(k))
    cover = _map_file(tmp_path, "cover.json", free_cover(k, [k.carrier.identity()]))
    assert main(["factorize", u_path, "--relations", cover]) == EXIT_MATHEMATICAL_FAILURE
    lines = _output_lines(capsys)
    assert json.loads(lines[-1][len("witness ") :])["generators"] == 1

    battery = corpus("ring/dual_numbers_F2").battery
    battery_path = _write(tmp_path, "battery.json", "battery", k.field, encode_battery(battery))
    assert main(["--battery", battery_path, "factorize", u_path, "--relations", cover]) == EXIT_MATHEMATICAL_FAILURE
    lines = _output_lines(capsys)
    assert lines[0] == "M failed flatness on the battery"
    assert json.loads(lines[-1][len("witness ") :])["battery"] == battery.digest


def test_factorize_through_a_stage_of_a_system(tmp_path, capsys, exterior):
    regular = regular_module(exterior)
    system = DirectedSystem.accumulating(regular, regular, length=2)
    limit = colimit(system)
    system_path = _write(tmp_path, "system.json", "system", exterior.field, encode_system(system))
    u_path = _map_file(tmp_path, "u.json", limit.injections[0])
    output = tmp_path / "factorization.json"
    assert main(["--output", str(output), "factorize", u_path, "--system", system_path]) == EXIT_OK
    assert main(["verify", str(output)]) == EXIT_OK
    assert _output_lines(capsys) == ["factorization through 2-dimensional module", "stage 0", "verified"]


def test_field_mismatch_is_an_input_error(tmp_path, capsys, exterior):
    k = _module_file(tmp_path, "k.json", residue_module(exterior))
    assert main(["--field", "Q", "homology", k]) == EXIT_INPUT_ERROR
    assert main(["--field", "Fp:2", "homology", k]) == EXIT_OK
    capsys.readouterr()


def test_suite_is_deterministic(capsys):
    assert main(["suite", "ring/matrix2_F2"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["suite", "ring/matrix2_F2"]) == EXIT_OK
    assert capsys.readouterr().out == first
    assert first.startswith("corpus ring/matrix2_F2\n")
    assert main(["suite", "ring/integers"]) == EXIT_INPUT_ERROR


def test_suite_fails_against_a_corrupted_golden_directory(tmp_path, capsys):
    name = "ring/matrix2_F2"
    document = json.loads(get_golden_file_path(name).read_text(encoding="utf-8"))
    document["members"]["A"]["semi_free"] = False
    get_golden_file_path(name, tmp_path).write_text(json.dumps(document), encoding="utf-8")
    assert main(["suite", name, "--golden", str(tmp_path)]) == EXIT_MATHEMATICAL_FAILURE
    assert "[FAIL] A: flags" in capsys.readouterr().out


def test_freeze_and_export(tmp_path, capsys):
    name = "graded/exterior_F2"
    assert main(["freeze", name, "--golden", str(tmp_path)]) == EXIT_OK
    assert get_golden_file_path(name, tmp_path).read_text(encoding="utf-8") == get_golden_file_path(name).read_text(
        encoding="utf-8"
    )
    output = tmp_path / "corpus.json"
    assert main(["--output", str(output), "export", name]) == EXIT_OK
    text = output.read_text(encoding="utf-8")
    document = parse_document(text)
    assert document.kind == "corpus"
    assert canonical_dumps(document.model_dump()) == text
    assert document.payload["modules"]["Sk"]["flags"] == {"acyclic": False, "dualizable": False, "semi_free": False}
    capsys.readouterr()
    assert main(["validate", str(output)]) == EXIT_OK
    lines = _output_lines(capsys)
    assert lines[0] == f"corpus {name}"
    assert lines[-1] == f"battery {corpus(name).battery.digest}: PASS"


def test_canonical_documents_survive_a_round_trip(dual_numbers, cone_dga):
    for module in (regular_module(dual_numbers), shift_module(regular_module(cone_dga, "right"), -1)):
        text = canonical_dumps(make_document("module", module.field, encode_module(module)))
        decoded = decode(parse_document(text))
        assert decoded == module
        assert canonical_dumps(make_document("module", decoded.field, encode_module(decoded))) == text
