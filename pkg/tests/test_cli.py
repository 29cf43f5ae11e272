import json

import pytest

from antsel.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    return header, rows


def test_bound_row_schema(capsys):
    code, out, _ = run_cli(capsys, "bound", "bf", "--nr", "128", "--nt", "8", "--l", "4",
                           "--snr-db", "8")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["kind", "nr", "nt", "l", "snr_db", "u", "mu", "var",
                      "mc_mean", "mc_var", "trials"]
    assert len(rows) == 1
    assert rows[0]["kind"] == "bf"
    assert float(rows[0]["u"]) == pytest.approx(14.02, abs=0.01)
    assert out.startswith("# antsel=")


def test_bound_rejects_bad_l(capsys):
    code, _, err = run_cli(capsys, "bound", "bf", "--nr", "8", "--nt", "2", "--l", "0",
                           "--snr-db", "5")
    assert code == 2
    assert "l" in err


def test_select_outputs_indices_and_nodes(capsys):
    code, out, _ = run_cli(capsys, "select", "--algo", "bab", "--nr", "12", "--nt", "4",
                           "--l", "4", "--snr-db", "5", "--seed", "1")
    assert code == 0
    _, rows = parse_csv(out)
    idx = [int(x) for x in rows[0]["indices"].split()]
    assert len(idx) == 4 and len(set(idx)) == 4
    assert int(rows[0]["visited_nodes"]) >= 1
    assert int(rows[0]["csi_rows_used"]) == 12


def test_select_algorithms_agree_on_optimum(capsys):
    results = {}
    for algo in ("es", "bab"):
        code, out, _ = run_cli(capsys, "select", "--algo", algo, "--nr", "10", "--nt", "3",
                               "--l", "3", "--snr-db", "5", "--seed", "7")
        assert code == 0
        _, rows = parse_csv(out)
        results[algo] = (rows[0]["indices"], rows[0]["capacity"])
    assert results["es"] == results["bab"]


def test_snr_total_is_normalized_by_nt(capsys):
    _, out_norm, _ = run_cli(capsys, "bound", "bf", "--nr", "32", "--nt", "4", "--l", "2",
                             "--snr-db", "5")
    _, out_total, _ = run_cli(capsys, "bound", "bf", "--nr", "32", "--nt", "4", "--l", "2",
                              "--snr-total", "11.0205999132796239")
    _, rows_n = parse_csv(out_norm)
    _, rows_t = parse_csv(out_total)
    assert float(rows_t[0]["mu"]) == pytest.approx(float(rows_n[0]["mu"]), rel=1e-9)


def test_unknown_recipe_exits_2(capsys):
    code, _, err = run_cli(capsys, "bound", "bf", "--recipe", "fig99")
    assert code == 2
    assert "fig99" in err


def test_recipe_subcommand_mismatch_exits_2(capsys):
    code, _, err = run_cli(capsys, "bound", "bf", "--recipe", "fig5")
    assert code == 2
    assert "sweep" in err


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "exp.json"
    cfg.write_text(json.dumps({"nr": 16, "nt": 4, "l": 2, "snr_db": [5.0]}))
    code, out, _ = run_cli(capsys, "bound", "bf", "--config", str(cfg), "--l", "3")
    assert code == 0
    _, rows = parse_csv(out)
    assert rows[0]["nr"] == "16"
    assert rows[0]["l"] == "3"  # flag wins over the file


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "exp.json"
    cfg.write_text(json.dumps({"frobnicate": 1}))
    code, _, err = run_cli(capsys, "bound", "bf", "--config", str(cfg))
    assert code == 2
    assert "frobnicate" in err


def test_out_writes_lf_file(tmp_path, capsys):
    path = tmp_path / "r.csv"
    code, out, _ = run_cli(capsys, "bound", "bf", "--nr", "16", "--nt", "2", "--l", "2",
                           "--snr-db", "0", "--out", str(path))
    assert code == 0 and out == ""
    raw = path.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")


def test_sweep_csv_contains_ratio_columns(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--nr", "12", "--nt", "3", "--l", "2",
                           "--snr-db", "5", "--csi-grid", "2,6,12", "--eta", "0.01",
                           "--trials", "10", "--seed", "2", "--algo", "greedy")
    assert code == 0
    _, rows = parse_csv(out)
    assert [r["csi_rows"] for r in rows] == ["2", "6", "12"]
    assert float(rows[-1]["r2"]) == 1.0
    assert float(rows[-1]["r1"]) == pytest.approx(1.0)


def test_adaptive_csv_has_target_and_complexity(capsys):
    code, out, _ = run_cli(capsys, "adaptive", "--nr", "16", "--nt", "4", "--l", "3",
                           "--snr-db", "5,15", "--trials", "10", "--seed", "2",
                           "--algo", "bab", "--target", "value:4.0")
    assert code == 0
    _, rows = parse_csv(out)
    assert len(rows) == 2
    assert float(rows[0]["target"]) == 4.0
    assert float(rows[0]["csi_mean"]) <= 16
    assert rows[0]["inner"] == "bab"


def test_simulate_cdf_schema(capsys):
    code, out, _ = run_cli(capsys, "simulate", "cdf", "--nr", "16", "--nt", "4", "--l", "2",
                           "--snr-db", "8", "--trials", "50", "--seed", "3")
    assert code == 0
    header, rows = parse_csv(out)
    assert len(rows) == 50
    assert rows[0]["bound_kind"] == "bf"
    assert 0.0 < float(rows[0]["ecdf"]) <= 1.0


def test_missing_subcommand_exits_2(capsys):
    assert main([]) == 2


def test_floats_are_nine_significant_digits(capsys):
    _, out, _ = run_cli(capsys, "bound", "bf", "--nr", "32", "--nt", "4", "--l", "2",
                        "--snr-db", "7.123")
    _, rows = parse_csv(out)
    assert len(rows[0]["mu"].replace(".", "").replace("-", "").lstrip("0")) <= 9
