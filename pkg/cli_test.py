import csv
import io
import json

import pytest

import golden
from cli import main
from gamedef import parse_game_file, serialize_game
from solvers import EquilibriumReport
from verify import ClaimReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))[1:]


def test_classical_hawk_dove_table(capsys):
    code, out, _ = run(capsys, "table", "--game", "hd", "--v", "50", "--i", "100", "--d", "10", "--format", "json")
    assert code == 0
    assert parse_game_file(out).same_payoffs(golden.CLASSICAL_HD)


def test_quantum_prisoners_dilemma_table(capsys):
    code, out, _ = run(capsys, "table", "--game", "pd", "--scheme", "eisert", "--strategies", "C,D,Q",
                       "--format", "json")
    assert code == 0
    assert parse_game_file(out).same_payoffs(golden.QUANTUM_PD, tol=1e-9)


def test_marinatto_weber_table_corners(capsys):
    code, out, _ = run(capsys, "table", "--game", "hd", "--scheme", "mw", "--state", "bell",
                       "--strategies", "H,D", "--format", "json")
    assert code == 0
    game = parse_game_file(out)
    assert game.cell(0, 0) == pytest.approx((-5, -5))
    assert game.cell(0, 1) == pytest.approx((25, 25))


def test_ascii_and_csv_tables(capsys):
    _, out, _ = run(capsys, "table", "--game", "pd")
    assert "(3,3)" in out
    _, out, _ = run(capsys, "table", "--game", "pd", "--format", "csv")
    assert csv_rows(out)[0] == ["C", "C", "3", "3"]


def test_scan_corners(capsys):
    code, out, _ = run(capsys, "scan", "--game", "hd", "--resolution", "2")
    assert code == 0
    assert [row[2] for row in csv_rows(out)] == ["-5", "25", "25", "-5"]
    _, out, _ = run(capsys, "scan", "--game", "pd", "--resolution", "2")
    assert [row[2] for row in csv_rows(out)] == ["2", "2.5", "2.5", "2"]


def test_scan_is_deterministic(capsys):
    _, first, _ = run(capsys, "scan", "--resolution", "21")
    _, second, _ = run(capsys, "scan", "--resolution", "21")
    assert first == second


def test_scan_rejects_resolution_one(capsys):
    code, _, err = run(capsys, "scan", "--resolution", "1")
    assert code == 2
    assert "resolution" in err


def test_unknown_flag_is_a_usage_error(capsys):
    code, _, _ = run(capsys, "table", "--game", "chess")
    assert code == 2


def test_region(capsys):
    code, out, _ = run(capsys, "region", "--game", "hd", "--threshold", "15", "--resolution", "1001",
                       "--lobe", "p>q")
    assert code == 0
    rows = csv_rows(out)
    assert rows
    assert all(float(p) > 0.666 for p, _, _, _ in rows)
    _, out, _ = run(capsys, "region", "--game", "hd", "--threshold", "15")
    assert any(row[:2] == ["0.8", "0.1"] for row in csv_rows(out))


def test_empty_region_prints_header(capsys):
    code, out, _ = run(capsys, "region", "--threshold", "1000")
    assert code == 0
    assert out == "p,q,payoff_a,payoff_b\n"


def test_solve_prisoners_dilemma(capsys):
    code, out, _ = run(capsys, "solve", "--game", "pd")
    assert code == 0
    report = EquilibriumReport.from_dict(json.loads(out))
    assert report.pure_nash == [(1, 1)]


def test_solve_from_file_with_ess(capsys, tmp_path):
    hd = tmp_path / "hd.json"
    hd.write_text(serialize_game(golden.CLASSICAL_HD))
    code, out, _ = run(capsys, "solve", "--input", str(hd), "--ess")
    assert code == 0
    assert json.loads(out)["ess"]["1"] is False

    table = tmp_path / "table.json"
    table.write_text(serialize_game(golden.EXTENDED_HD))
    code, out, _ = run(capsys, "solve", "--input", str(table), "--ess")
    assert code == 0
    assert json.loads(out)["ess"]["3"] is True


def test_bad_input_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels_a": ["a"], "labels_b": ["b"], "payoffs": [[[1]]]}))
    code, out, err = run(capsys, "solve", "--input", str(bad))
    assert code == 1
    assert out == ""
    assert "payoffs[0][0]" in err
    code, _, err = run(capsys, "solve", "--input", str(tmp_path / "missing.json"))
    assert code == 1
    assert err.startswith("error:")


def test_quantum_table_needs_two_by_two_input(capsys, tmp_path):
    table = tmp_path / "table.json"
    table.write_text(serialize_game(golden.QUANTUM_HD))
    code, _, _ = run(capsys, "table", "--input", str(table), "--strategies", "H,Q")
    assert code == 1


def test_output_file(capsys, tmp_path):
    target = tmp_path / "pd.json"
    code, out, _ = run(capsys, "table", "--game", "pd", "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""
    assert parse_game_file(target.read_text()).same_payoffs(golden.CLASSICAL_PD)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "20", "--seed", "5")
    assert code == 0
    doc = json.loads(out)
    claims = [ClaimReport.from_dict(c) for c in doc["claims"]]
    assert doc["summary"]["total"] == len(claims)
    assert doc["summary"]["families"] == ["D1", "D2", "D3", "D4"]


def test_json_table_prints_clean_numbers(capsys):
    code, out, _ = run(capsys, "table", "--game", "pd", "--scheme", "eisert", "--strategies", "C,D,Q",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["payoffs"] == [
        [[3, 3], [0, 5], [1, 1]],
        [[5, 0], [1, 1], [0, 5]],
        [[1, 1], [5, 0], [3, 3]],
    ]
    assert "e-" not in out and "99999" not in out


def test_solve_prints_clean_mixed_equilibria(capsys):
    code, out, _ = run(capsys, "solve", "--game", "hd")
    assert code == 0
    mixed = json.loads(out)["mixed_nash_2x2"]
    assert [0, 1] in mixed and [1, 0] in mixed
    assert [round(7 / 12, 12)] * 2 in mixed


def test_repeated_strategy_is_rejected(capsys):
    code, out, err = run(capsys, "table", "--strategies", "H,H", "--format", "json")
    assert code == 1
    assert out == ""
    assert "strategies" in err
