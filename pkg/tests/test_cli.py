import csv
import io
import json

import pytest

from algaslab import asymptotics as asy
from algaslab.cli import COLUMNS, CSV_HEADER, main
from algaslab.spectral import SpectralBand


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


@pytest.fixture
def wide_problem(tmp_path):
    path = tmp_path / "wide.json"
    path.write_text(json.dumps({"eta1": 1.5, "eta2": 2.5, "reflection": {"kind": "constant", "params": {"value": 1.0}}}))
    return str(path)


def test_single_point(capsys):
    code, out, _ = run(capsys, "nsoliton", "--N", "1", "--n-from", "0")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 1
    assert list(rows[0]) == COLUMNS and rows[0]["method"] == "nsoliton"


def test_grid_order(capsys):
    code, out, _ = run(capsys, "nsoliton", "--N", "5", "--n-from", "-2", "--n-to", "2",
                       "--t-from", "0", "--t-to", "1", "--t-steps", "5")
    rows = rows_of(out)
    assert code == 0 and len(rows) == 25
    keys = [(int(r["n"]), float(r["t"])) for r in rows]
    assert keys == sorted(keys)


def test_parallel_output_identical(tmp_path):
    args = ["nsoliton", "--N", "20", "--n-from", "-3", "--n-to", "3", "--t-from", "0", "--t-to", "2", "--t-steps", "4"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--jobs", "1", "--out", str(a)]) == 0
    assert main(args + ["--jobs", "8", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_empty_range_leaves_no_file(tmp_path, capsys):
    out = tmp_path / "never.csv"
    code, _, err = run(capsys, "gas", "--t-from", "1", "--t-to", "0", "--t-steps", "3", "--out", str(out))
    assert code == 1 and "empty t-range" in err
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_gas_decay_row(capsys, wide_problem):
    code, out, _ = run(capsys, "gas", "--problem", wide_problem, "--n-from", "30")
    row = rows_of(out)[0]
    assert code == 0 and float(row["abs_q"]) < 1e-6


def test_gas_convergence_column_shrinks(capsys, wide_problem):
    ests = []
    for m in (8, 16):
        _, out, _ = run(capsys, "gas", "--problem", wide_problem, "--n-from", "-2", "--t-from", "0.3", "--nodes", str(m))
        ests.append(float(rows_of(out)[0]["conv_est"]))
    assert ests[1] < ests[0]


def test_asym_labels_and_values(capsys):
    band = SpectralBand(1.3, 1.8)
    code, out, _ = run(capsys, "asym", "--n-from", "-210", "--n-to", "5", "--t-from", "10", "--t-to", "40", "--t-steps", "2")
    assert code == 0
    for row in rows_of(out):
        n, t = int(row["n"]), float(row["t"])
        assert row["region"] == str(asy.classify_region(n, t, band))
        if row["region"] == "FastDecay":
            assert float(row["abs_q"]) == 0.0
        if row["region"] == "H_II":
            assert float(row["conv_est"]) == pytest.approx(1 / t)


def test_regions_json(capsys):
    code, out, _ = run(capsys, "regions", "--format", "json", "--n-from", "-3", "--n-to", "0", "--t-from", "5")
    payload = json.loads(out)
    assert code == 0 and payload["format"] == "al-gas-lab v1" and len(payload["rows"]) == 4
    assert all(set(r) >= set(COLUMNS) for r in payload["rows"])


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify", "identities")
    assert code == 0
    summary = json.loads(out.strip().splitlines()[-1])
    assert summary == {"suite": "identities", "passed": 7, "failed": 0}


def test_verify_json_report(tmp_path):
    path = tmp_path / "report.json"
    assert main(["verify", "identities", "--out", str(path)]) == 0
    report = json.loads(path.read_text())
    assert {c["criterion"] for c in report["checks"]} == {2, 3, 6, 8, 9, 10, 14}
    assert all(isinstance(c["measured"], float) for c in report["checks"])


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 1 and "identities" in err and "asymptotics" in err


def test_bad_problem_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"eta1": 2.0, "eta2": 1.0}')
    code, _, err = run(capsys, "gas", "--problem", str(bad))
    assert code == 1 and "configuration error" in err
    code, _, _ = run(capsys, "gas", "--problem", str(tmp_path / "missing.json"))
    assert code == 1


def test_argument_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gas", "--nodes", "many"])
    assert exc.value.code == 1
    code, _, _ = run(capsys, "gas", "--nodes", "4")
    assert code == 1


def test_overflow_is_marked(capsys):
    code, out, _ = run(capsys, "nsoliton", "--n-from", "-2000")
    row = rows_of(out)[0]
    assert code == 0 and row["re_q"] == "OVERFLOW" and row["abs_q"] == "OVERFLOW"
