"""Command-line interface: literals, subcommands, exit codes, CSV scans."""

import json
import math

import numpy as np
import pytest

from tomobell.cli import format_complex, main, parse_complex
from tomobell.errors import InvalidParameter

SQUEEZED_DOC = {
    "type": "gaussian",
    "M": [
        [3.0, math.sqrt(35) / 2, 0.0, 0.0],
        [math.sqrt(35) / 2, 3.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, math.sqrt(3) / 2],
        [0.0, 0.0, math.sqrt(3) / 2, 1.0],
    ],
}


@pytest.fixture
def squeezed_file(tmp_path):
    path = tmp_path / "squeezed.json"
    path.write_text(json.dumps(SQUEEZED_DOC))
    return str(path)


@pytest.fixture
def cat_file(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"type": "cat", "gamma1": [0, 0], "gamma2": [0, 0]}))
    return str(path)


@pytest.fixture
def coherent_file(tmp_path):
    path = tmp_path / "coh.json"
    path.write_text(json.dumps({"type": "coherent", "gamma1": 0.5, "gamma2": 0.5}))
    return str(path)


# --- complex literal grammar --------------------------------------------------


def test_parse_complex_forms():
    assert parse_complex("1.5") == 1.5 + 0j
    assert parse_complex("-2") == -2 + 0j
    assert parse_complex("0.5i") == 0.5j
    assert parse_complex("-0.12i") == -0.12j
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("-1.5-0.5i") == -1.5 - 0.5j
    assert parse_complex("1e-3+2.5e-1i") == 0.001 + 0.25j


def test_parse_complex_rejects_malformed():
    for bad in ("1+i2", "i", "1 + 2i", "2j", "abc", "1+2", "--1", "1++2i"):
        with pytest.raises(InvalidParameter):
            parse_complex(bad)


def test_format_complex_roundtrips():
    for z in (1.5 + 0j, -0.12j, 0.25 - 0.75j, 0j):
        assert parse_complex(format_complex(z)) == z


# --- tomogram ------------------------------------------------------------------


def test_tomogram_vacuum_prints_one(cat_file, capsys):
    rc = main(["tomogram", "--state", cat_file, "--n1", "0", "--n2", "0",
               "--alpha1", "0", "--alpha2", "0"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1.000000000000"


def test_tomogram_malformed_literal_exits_2(cat_file, capsys):
    rc = main(["tomogram", "--state", cat_file, "--n1", "0", "--n2", "0",
               "--alpha1", "1+i2", "--alpha2", "0"])
    assert rc == 2
    err = capsys.readouterr().err
    assert err.startswith("error[InvalidParameter]:")
    assert err.count("\n") == 1


def test_tomogram_missing_state_file_exits_2(capsys):
    rc = main(["tomogram", "--state", "/nonexistent/state.json", "--n1", "0",
               "--n2", "0", "--alpha1", "0", "--alpha2", "0"])
    assert rc == 2
    assert capsys.readouterr().err.startswith("error[")


def test_tomogram_consistent_with_portrait_cell(squeezed_file, capsys):
    rc = main(["tomogram", "--state", squeezed_file, "--n1", "0", "--n2", "0",
               "--alpha1", "-0.12i", "--alpha2", "0.04i"])
    assert rc == 0
    w00 = float(capsys.readouterr().out.strip())
    rc = main(["portrait", "--state", squeezed_file, "--partition", "even-odd",
               "--alpha1", "-0.12i", "--alpha2", "0.04i"])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    w_pp = float(out[0].split()[1])
    # the vacuum cell is one member of the even-even portrait cell
    assert 0.0 < w00 < w_pp


# --- portrait -------------------------------------------------------------------


def test_portrait_matches_printed_column(squeezed_file, capsys):
    rc = main(["portrait", "--state", squeezed_file, "--partition", "even-odd",
               "--alpha1", "-0.12i", "--alpha2", "0.04i"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    values = [float(l.split()[1]) for l in lines[:4]]
    printed = [0.6199, 0.0222, 0.0241, 0.3335]
    assert np.max(np.abs(np.array(values) - printed)) < 5e-3
    assert lines[4].startswith("tail_deficit ")


def test_portrait_tail_too_large_exits_3(squeezed_file, capsys):
    rc = main(["portrait", "--state", squeezed_file, "--partition", "even-odd",
               "--alpha1", "-0.12i", "--alpha2", "0.04i",
               "--nmax", "5", "--tail-eps", "1e-8"])
    assert rc == 3
    assert capsys.readouterr().err.startswith("error[TailTooLarge]:")


def test_portrait_vacuum_zero_nonzero(cat_file, capsys):
    rc = main(["portrait", "--state", cat_file, "--partition", "zero-nonzero",
               "--alpha1", "0", "--alpha2", "0"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    values = [float(l.split()[1]) for l in lines[:4]]
    assert values == pytest.approx([1, 0, 0, 0], abs=1e-12)


# --- bell -----------------------------------------------------------------------


def test_bell_reproduces_worked_example(squeezed_file, capsys):
    rc = main(["bell", "--state", squeezed_file, "--partition", "even-odd",
               "--alpha1", "-0.12i", "--alpha2", "0.04i",
               "--beta1", "0.22i", "--beta2", "-0.32i", "--nmax", "30"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    b_line = [l for l in lines if l.startswith("B ")][0]
    assert abs(float(b_line.split()[1]) - 2.26) < 0.02
    verdict = [l for l in lines if l.startswith("verdict ")][0]
    assert verdict.split()[1] == "ENTANGLED-WITNESSED"


def test_bell_outside_box_strict_exits_2(squeezed_file, capsys):
    rc = main(["bell", "--state", squeezed_file, "--partition", "even-odd",
               "--alpha1", "2.5", "--alpha2", "0.04i",
               "--beta1", "0.22i", "--beta2", "-0.32i",
               "--box-enforce", "strict"])
    assert rc == 2
    assert capsys.readouterr().err.startswith("error[InvalidParameter]:")


def test_bell_coherent_separable(coherent_file, capsys):
    rc = main(["bell", "--state", coherent_file, "--partition", "zero-nonzero",
               "--alpha1", "0.3+0.1i", "--alpha2", "-0.2i",
               "--beta1", "0.5", "--beta2", "0.1-0.4i"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    b = float([l for l in lines if l.startswith("B ")][0].split()[1])
    assert b <= 2.0 + 1e-9


# --- maximize --------------------------------------------------------------------


def test_maximize_coherent_product(coherent_file, capsys):
    rc = main(["maximize", "--state", coherent_file, "--partition", "even-odd",
               "--starts", "8", "--seed", "3"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    f = float(lines[0].split()[1])
    assert f <= 2.0 + 1e-6
    assert any(l.startswith("evaluations ") for l in lines)


# --- scan -----------------------------------------------------------------------


def test_scan_csv_deterministic(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    args = ["scan", "--preset", "cat-even-odd", "--param1", "0,1",
            "--param2", "1", "--starts", "4", "--seed", "9"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    a = out1.read_bytes()
    assert a == out2.read_bytes()
    lines = a.decode().splitlines()
    assert lines[0].startswith("param1,param2,f,argmax")
    assert len(lines) == 3
    assert lines[1].startswith("0.0,1.0,")
    assert lines[2].startswith("1.0,1.0,")
    # gamma1 = 0 is a separable product state; gamma1 = 1 is entangled
    row0 = lines[1].split(",")
    row1 = lines[2].split(",")
    assert float(row0[2]) <= 2.0 + 1e-6
    assert float(row1[2]) > 2.0


def test_scan_jobs_agree_with_serial(tmp_path):
    base = ["scan", "--preset", "cat-even-odd", "--param1", "1",
            "--param2", "0,1", "--starts", "3", "--seed", "2"]
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    assert main(base + ["--out", str(serial)]) == 0
    assert main(base + ["--jobs", "2", "--out", str(parallel)]) == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_scan_error_rows_continue(tmp_path):
    import csv

    out = tmp_path / "err.csv"
    rc = main(["scan", "--preset", "cat-even-odd", "--param1", "nan,1",
               "--param2", "1", "--starts", "3", "--seed", "0",
               "--out", str(out)])
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 3
    header, bad, good = rows
    assert header[-1] == "error"
    assert bad[2] == ""  # no f value for the failed point
    assert bad[-1] != "" and ":" in bad[-1]
    assert float(good[2]) > 2.0


def test_scan_empty_grid_exits_2(capsys):
    rc = main(["scan", "--preset", "cat-even-odd", "--param1", ""])
    assert rc == 2
    assert "empty" in capsys.readouterr().err


def test_scan_unknown_preset_exits_2(capsys):
    rc = main(["scan", "--preset", "nope"])
    assert rc == 2
    assert capsys.readouterr().err.startswith("error[Usage]:")


def test_usage_error_single_line(capsys):
    rc = main(["portrait", "--no-such-flag"])
    assert rc == 2
    err = capsys.readouterr().err
    assert err.startswith("error[Usage]:")
    assert err.count("\n") == 1
