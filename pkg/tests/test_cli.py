"""CLI behavior: flags, exit codes, output schema, determinism."""

import json

import pytest

from ellmassey import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def strip_timing(payload):
    if isinstance(payload, dict):
        payload = dict(payload)
        meta = payload.get("meta")
        if isinstance(meta, dict):
            payload["meta"] = {k: v for k, v in meta.items() if k != "elapsed_ms"}
    return payload


def test_search_unipotent_ell5(capsys):
    code, data = run_json(
        capsys, "search", "--ell", "5", "--case", "unipotent", "--max-p", "2000", "--limit", "4"
    )
    assert code == 0
    assert data["rows"]
    for row in data["rows"]:
        assert row["p"] % 5 == 1
        assert row["points"] % 5 == 0
        A = row["frobenius_matrix"]
        assert (A[0][0] + A[1][1]) % 5 == 2
        assert (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % 5 == row["p"] % 5


def test_search_full3_rows_have_p_1_mod_3(capsys):
    code, data = run_json(
        capsys, "search", "--ell", "3", "--case", "full3", "--max-p", "50", "--limit", "3"
    )
    assert code == 0
    for row in data["rows"]:
        assert row["p"] % 3 == 1
        assert row["frobenius_matrix"] == [[1, 0], [0, 1]]
        assert row["points"] % 9 == 0


def test_search_split_example_recipe(capsys):
    # p = 2 mod 3 with a rational 3-torsion point
    code, data = run_json(
        capsys, "search", "--ell", "3", "--case", "split", "--max-p", "100", "--limit", "3"
    )
    assert code == 0
    for row in data["rows"]:
        assert row["p"] % 3 == 2
        assert row["points"] % 3 == 0


def test_search_exhausted_exit_3(capsys):
    code, data = run_json(capsys, "search", "--ell", "3", "--case", "full3", "--max-p", "5")
    assert code == 3
    assert "error" in data


def test_search_case_validation(capsys):
    code, data = run_json(capsys, "search", "--ell", "5", "--case", "full3", "--max-p", "100")
    assert code == 2


def test_search_csv_format(capsys):
    code, out = run(
        capsys, "search", "--ell", "3", "--case", "split", "--max-p", "20",
        "--limit", "1", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,a,b,frobenius_matrix,points"
    assert len(lines) == 2


def test_analyze_unipotent_ell5_contains_non_vanishing_row(capsys):
    code, data = run_json(
        capsys, "analyze", "--p", "11", "--a", "1", "--b", "7", "--ell", "5"
    )
    assert code == 0
    assert data["case"] == "unipotent_line"
    assert data["characters"] == 25
    statuses = {v["status"] for v in data["verdicts"]}
    assert "NonVanishing" in statuses
    nv = [v for v in data["verdicts"] if v["status"] == "NonVanishing"]
    assert all(v["witness"] is not None for v in nv)
    assert data["frobenius_matrix_l"] == [[1, 1], [0, 1]]


def test_analyze_split_ell7_no_non_vanishing(capsys):
    code, data = run_json(
        capsys, "analyze", "--p", "5", "--a", "2", "--b", "1", "--ell", "7",
        "--triples", "sample", "400",
    )
    assert code == 0
    assert data["case"] == "split_line"
    statuses = {v["status"] for v in data["verdicts"]}
    assert statuses <= {"Empty", "ContainsZero"}


def test_analyze_full3_report_shape(capsys):
    code, data = run_json(
        capsys, "analyze", "--p", "7", "--a", "0", "--b", "2", "--ell", "3",
        "--triples", "same-char",
    )
    assert code == 0
    assert data["ell_prime"] == 9
    assert set(data["constants"]) == {"alpha", "beta", "gamma", "delta", "c"}
    assert len(data["verdicts"]) == 27
    assert data["curve"]["j"] == [0]
    keys = {
        "curve", "ell", "ell_prime", "case", "frobenius_matrix_l",
        "frobenius_matrix_lprime", "constants", "characters", "verdicts", "meta",
    }
    assert set(data) == keys
    assert set(data["meta"]) == {"seed", "mode", "elapsed_ms"}


def test_analyze_full3_scalar_action_never_non_vanishing(capsys):
    # y^2 = x^3 + 5 over GF(61): full rational 3-torsion with Frobenius 4*I
    # on the 9-torsion; no witness vector can leave its line
    code, data = run_json(
        capsys, "analyze", "--p", "61", "--a", "0", "--b", "5", "--ell", "3",
        "--triples", "same-char",
    )
    assert code == 0
    assert data["case"] == "full_torsion"
    A = data["frobenius_matrix_lprime"]
    assert A == [[4, 0], [0, 4]]
    assert all(v["status"] == "ContainsZero" for v in data["verdicts"])
    code, data = run_json(
        capsys, "analyze", "--p", "61", "--a", "0", "--b", "5", "--ell", "3",
        "--triples", "sample", "500",
    )
    assert all(v["status"] != "NonVanishing" for v in data["verdicts"])


def test_analyze_singular_curve_exit_2(capsys):
    code, data = run_json(capsys, "analyze", "--p", "7", "--a", "0", "--b", "0", "--ell", "3")
    assert code == 2
    assert "error" in data


def test_analyze_bad_characteristic_and_coeffs_exit_2(capsys):
    code, data = run_json(capsys, "analyze", "--p", "3", "--a", "1", "--b", "1", "--ell", "5")
    assert code == 2 and "error" in data
    code, data = run_json(capsys, "analyze", "--p", "7", "--a", "x", "--b", "1", "--ell", "3")
    assert code == 2 and "error" in data


def test_analyze_no_fixed_points_reports_matrix_when_affordable(capsys):
    code, data = run_json(
        capsys, "analyze", "--p", "5", "--a", "1", "--b", "0", "--ell", "3",
        "--triples", "same-char",
    )
    assert code == 0
    assert data["case"] == "no_fixed_points"
    A = data["frobenius_matrix_l"]
    assert A is not None
    det = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) % 3
    assert det == 5 % 3
    assert all(v["status"] == "ContainsZero" for v in data["verdicts"])


def test_analyze_output_deterministic(capsys):
    args = ("analyze", "--p", "11", "--a", "1", "--b", "7", "--ell", "5",
            "--triples", "sample", "50")
    code1, d1 = run_json(capsys, *args)
    code2, d2 = run_json(capsys, *args)
    assert code1 == code2 == 0
    assert strip_timing(d1) == strip_timing(d2)


def test_analyze_prime_power_base(capsys):
    code, data = run_json(
        capsys, "analyze", "--p", "5", "--k0", "2", "--a", "0,1", "--b", "2", "--ell", "3",
        "--triples", "same-char",
    )
    assert code == 0
    assert data["curve"]["k0"] == 2
    assert data["curve"]["a"] == [0, 1]


def test_verify_exhaustive_split_ell3(capsys):
    code, data = run_json(
        capsys, "verify", "--p", "5", "--a", "0", "--b", "1", "--ell", "3",
        "--mode", "exhaustive",
    )
    assert code == 0
    assert data["checked"] == 9**3
    assert data["mismatches"] == []


def test_verify_exhaustive_unipotent_ell3(capsys):
    code, data = run_json(
        capsys, "verify", "--p", "7", "--a", "0", "--b", "1", "--ell", "3",
        "--mode", "exhaustive",
    )
    assert code == 0
    assert data["checked"] == 9**3
    assert data["mismatches"] == []


def test_character_validation_rejects_bad_values():
    import fixtures
    from ellmassey.errors import GroupMismatch
    from ellmassey.galois import Character

    g = fixtures.group(5, "unipotent_line")
    with pytest.raises(GroupMismatch):
        Character(g, (1, 0, 0))  # nonzero on mprime violates the conjugation relation


def test_verify_sample_ell7_unipotent(capsys):
    code, data = run_json(
        capsys, "verify", "--p", "29", "--a", "1", "--b", "7", "--ell", "7",
        "--mode", "sample", "60",
    )
    assert code == 0
    assert data["checked"] == 60
    assert data["mismatches"] == []


def test_verify_exhaustive_no_fixed_points(capsys):
    code, data = run_json(
        capsys, "verify", "--p", "5", "--a", "1", "--b", "0", "--ell", "3",
        "--mode", "exhaustive",
    )
    assert code == 0
    assert data["case"] == "no_fixed_points"
    assert data["checked"] == 27
    assert data["mismatches"] == []


def test_verify_exhaustive_rejected_for_ell7(capsys):
    code, data = run_json(
        capsys, "verify", "--p", "29", "--a", "1", "--b", "7", "--ell", "7",
        "--mode", "exhaustive",
    )
    assert code == 2


def test_galois_check_examples(tmp_path, capsys):
    scalar = tmp_path / "scalar.json"
    scalar.write_text(
        json.dumps(
            {
                "generators": [[[4, 0], [0, 4]]],
                "chi_on_generators": [0],
                "chi_on_torsion": [0, 1],
                "has_ninth_root": False,
                "unique_cubic_extension": True,
            }
        )
    )
    code, data = run_json(capsys, "galois-check", "--input", str(scalar), "--theorem", "11")
    assert code == 0
    assert data == {"theorem": "11", "exists_non_vanishing_chi": False, "branch": "none"}

    nonscalar = tmp_path / "nonscalar.json"
    nonscalar.write_text(
        json.dumps(
            {
                "generators": [[[1, 3], [0, 1]], [[4, 0], [0, 4]]],
                "chi_on_generators": [0, 0],
                "chi_on_torsion": [1, 0],
                "has_ninth_root": False,
                "unique_cubic_extension": False,
            }
        )
    )
    code, data = run_json(capsys, "galois-check", "--input", str(nonscalar), "--theorem", "11")
    assert code == 0
    assert data["branch"] == "i" and data["exists_non_vanishing_chi"] is True

    code, data = run_json(capsys, "galois-check", "--input", str(nonscalar), "--theorem", "52")
    assert code == 0
    assert data["status"] == "NonVanishing"
    assert data["witness"]["a"] and data["witness"]["sigma"]


def test_galois_check_schema_violation_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"generators": [[[0, 1], [1, 0]]]}))
    code, data = run_json(capsys, "galois-check", "--input", str(bad), "--theorem", "52")
    assert code == 2
    assert "error" in data
