from __future__ import annotations

import json
from pathlib import Path

from koszulkit import settings
from koszulkit.catalogue import get_entry
from koszulkit.cli import EXIT_INPUT, EXIT_OK, build_parser, main


def run_json(capsys, *argv: str) -> dict:
    code = main([*argv, "--format", "json"])
    assert code == EXIT_OK
    return json.loads(capsys.readouterr().out)


def test_parse_args_defaults():
    args = build_parser().parse_args(["homology", "@ex9"])

    assert args.max_p == 6
    assert args.max_weight == 6
    assert args.coeff == "A"
    assert args.variant == "standard"
    assert args.format == "table"


def test_commands_carry_their_own_defaults():
    parser = build_parser()

    hochschild = parser.parse_args(["hochschild", "@ex9"])
    selftest = parser.parse_args(["selftest"])
    homology = parser.parse_args(["homology", "@ex9"])

    assert (hochschild.max_p, hochschild.max_weight) == (3, 6)
    assert (selftest.max_p, selftest.max_weight) == (4, 4)
    assert (homology.max_p, homology.max_weight) == (6, 6)


def test_defaults_follow_the_settings(mocker):
    mocker.patch.object(settings, "DEFAULT_MAX_P", 3)

    args = build_parser().parse_args(["homology", "@ex9"])

    assert args.max_p == 3
    assert args.max_weight == 6


def test_homology_json_payload(capsys):
    payload = run_json(capsys, "homology", "@ex9", "--max-p", "3", "--max-weight", "3")

    assert payload["schema"] == "1"
    assert payload["command"] == "homology"
    assert payload["algebra"]["dims"] == [1, 2, 2, 1]
    table = payload["tables"]["HK_p(A)_m"]
    assert sum(value for key, value in table.items() if key.startswith("(0,")) == 4


def test_koszulity_verdict(capsys):
    payload = run_json(capsys, "koszulity", "@ex9", "--max-degree", "3")

    assert payload["facts"]["verdict"] == "NOT Koszul: H_2(K_ℓ) ≠ 0"
    assert payload["facts"]["failures"][0] == [2, 2]


def test_table_output_is_markdown(capsys):
    assert main(["wspaces", "@ex9", "--max-p", "3"]) == EXIT_OK

    out = capsys.readouterr().out
    assert out.startswith("## wspaces: ex9")
    assert "dim W_p: 1, 2, 2, 1" in out


def test_missing_file_is_an_input_error(tmp_path: Path, capsys):
    assert main(["info", str(tmp_path / "missing.txt")]) == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_unknown_catalogue_entry(capsys):
    assert main(["info", "@nope"]) == EXIT_INPUT
    assert "Unknown catalogue entry" in capsys.readouterr().err


def test_malformed_presentation_reports_the_line(tmp_path: Path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("gens x y\nrel x*z\n", encoding="utf-8")

    assert main(["info", str(path)]) == EXIT_INPUT
    assert "line 2" in capsys.readouterr().err


def test_dual_writes_the_presentation(tmp_path: Path, capsys):
    output = tmp_path / "dual.txt"

    assert main(["dual", "@kx", "-o", str(output)]) == EXIT_OK
    capsys.readouterr()

    text = output.read_text(encoding="utf-8")
    assert "gens x*" in text
    assert "rel x* * x*" in text


def test_bad_arguments_exit_with_input_code(capsys):
    assert main(["homology", "@ex9", "--max-p", "-1"]) == EXIT_INPUT
    assert main([]) == EXIT_INPUT
    capsys.readouterr()


def test_duality_check_at_default_trials(capsys):
    payload = run_json(capsys, "duality-check", "@kx", "--max-p", "5", "--max-weight", "5")

    assert payload["facts"]["trials"] == settings.DEFAULT_TRIALS


def test_duality_check_without_higher_tables(capsys):
    payload = run_json(
        capsys, "duality-check", "@ex9", "--max-p", "2", "--max-weight", "2", "--trials", "5", "--no-higher"
    )

    assert payload["facts"]["trials"] == 5
    assert payload["facts"]["uncertified_rows"] == []
    assert set(payload["facts"]["identities"].values()) == {5}


def test_selftest_runs_to_completion(mocker, capsys):
    mocker.patch("koszulkit.cli.suite_algebras", return_value=[get_entry("ex9").algebra()])

    payload = run_json(capsys, "selftest", "--max-p", "2", "--max-weight", "2", "--trials", "2")

    assert payload["facts"]["failed"] == 0
    assert payload["facts"]["passed"] > 0


def test_hochschild_cohomology_totals(capsys):
    payload = run_json(capsys, "hochschild", "@ex9", "--kind", "cohomology")

    totals = payload["facts"]["totals"]
    assert sorted(totals) == ["0", "1", "2", "3"]
    assert totals["2"] == 3
    assert payload["facts"]["comparison"]["3"]["rank"] == 1


def test_cohomology_brackets_of_the_worked_example(capsys):
    payload = run_json(capsys, "cohomology", "@ex9", "--max-p", "3", "--max-weight", "3", "--brackets")

    assert payload["facts"]["graded_commutative"] is True
    assert payload["facts"]["nonzero_brackets"] == []
