import csv
import hashlib
import json

import numpy as np
import pytest

from pvlik import (Family, PCloud, SimConfig, StoppingRule, Tails, TestSpec,
                   ThetaUniform, horizontal_slice, run_cloud)
from pvlik.cli import main


def _read_csv(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_likelihood_default_grid(tmp_path, capsys):
    out = tmp_path / "like.csv"
    rc = main(["likelihood", "--n", "10", "--tails", "two", "--p", "0.01",
               "--out", str(out)])
    assert rc == 0
    rows = _read_csv(out)
    assert rows[0] == ["theta", "likelihood"]
    assert len(rows) == 1 + 601  # header + theta grid -1..5 step 0.01
    values = {float(r[0]): float(r[1]) for r in rows[1:]}
    assert max(values.values()) == pytest.approx(1.0)
    # two-tailed curves are symmetric in theta
    assert values[-1.0] == pytest.approx(values[1.0], rel=1e-9)


def test_likelihood_stdout(capsys):
    rc = main(["likelihood", "--n", "10", "--tails", "one", "--p", "0.05",
               "--grid", "0:2:0.5"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "theta,likelihood"
    assert len(lines) == 1 + 5


def test_manifest_digests(tmp_path):
    out = tmp_path / "pd.csv"
    rc = main(["pdensity", "--n", "10", "--tails", "two", "--theta", "0.5",
               "--out", str(out), "--gnuplot"])
    assert rc == 0
    manifest = json.loads((out.parent / "pd.csv.manifest.json").read_text())
    assert manifest["command"][0] == "pvlik"
    for path, digest in manifest["outputs"].items():
        data = open(path, "rb").read()
        assert hashlib.sha256(data).hexdigest() == digest
    assert (out.parent / "pd.csv.gp").exists()


def test_cloud_rerun_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["cloud", "--n", "5", "--tails", "two", "--runs", "2000",
            "--theta", "uniform:-2:2", "--seed", "42", "--workers", "2"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_cloud_matches_library(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["cloud", "--n", "5", "--tails", "two", "--runs", "1000",
                 "--theta", "uniform:-2:2", "--seed", "9",
                 "--out", str(out)]) == 0
    lib = run_cloud(SimConfig(
        spec=TestSpec(Family.TWO_SAMPLE, 5, Tails.TWO), runs=1000,
        theta_mode=ThetaUniform(-2.0, 2.0), seed=9))
    back = PCloud.from_csv(str(out))
    assert np.array_equal(back.p, lib.p)
    assert np.array_equal(back.theta, lib.theta)


def test_cloud_auto_seed_printed(tmp_path, capsys):
    out = tmp_path / "c.csv"
    assert main(["cloud", "--n", "5", "--tails", "two", "--runs", "10",
                 "--out", str(out)]) == 0
    assert "seed: " in capsys.readouterr().err


def test_stopping_and_slice_round_trip(tmp_path):
    cloud_csv = tmp_path / "cloud.csv"
    assert main(["stopping", "--n", "5", "--tails", "one", "--runs", "20000",
                 "--theta", "uniform:0:3", "--seed", "3", "--band",
                 "0.05:0.15", "--increment", "5", "--out", str(cloud_csv)]) == 0
    slice_csv = tmp_path / "slice.csv"
    assert main(["slice", "--cloud", str(cloud_csv), "--axis", "horizontal",
                 "--band", "0.01:0.05", "--bins", "30", "--stage", "2",
                 "--theta-range", "0:3", "--out", str(slice_csv)]) == 0
    rows = _read_csv(slice_csv)
    assert rows[0] == ["theta_low", "theta_high", "theta_center", "count",
                       "density"]
    assert len(rows) == 1 + 30
    # the CLI slice must agree with slicing the same cloud in memory
    hist = horizontal_slice(PCloud.from_csv(str(cloud_csv)), (0.01, 0.05),
                            bins=30, stage=2, theta_range=(0.0, 3.0))
    assert [int(r[3]) for r in rows[1:]] == hist.counts.tolist()
    assert [float(r[4]) for r in rows[1:]] == hist.density.tolist()


def test_vertical_slice_cli(tmp_path):
    cloud_csv = tmp_path / "cloud.csv"
    assert main(["cloud", "--n", "10", "--tails", "two", "--runs", "5000",
                 "--seed", "11", "--out", str(cloud_csv)]) == 0
    assert main(["slice", "--cloud", str(cloud_csv), "--axis", "vertical",
                 "--band=-0.5:0.5", "--bins", "10"]) == 0


def test_coin_report(tmp_path, capsys):
    out = tmp_path / "coin.csv"
    rc = main(["coin", "--tosses", "6", "--heads", "1", "--out", str(out)])
    assert rc == 0
    report = capsys.readouterr().out
    assert "binomial_p=0.109375" in report
    assert "negative_binomial_p=0.03125" in report
    assert "likelihood_ratio_constant=6" in report
    rows = _read_csv(out)
    assert rows[0] == ["p", "likelihood_fixed_n", "likelihood_until_first_head"]


def test_ttest_on_data_file(tmp_path, capsys):
    data = tmp_path / "data.csv"
    rng = np.random.default_rng(5)
    a = rng.normal(1.0, 1.0, 8)
    b = rng.normal(0.0, 1.0, 8)
    with open(data, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["a", "b"])
        w.writerows(zip(a, b))
    rc = main(["ttest", "--data", str(data), "--header", "--tails", "two"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "t,p,df,tails,n"
    t, p, df, tails, n = lines[1].split(",")
    assert tails == "two_tailed"
    assert (int(n), float(df)) == (8, 14.0)
    assert 0.0 < float(p) < 1.0


def test_exit_code_usage_error(capsys):
    # malformed theta mode
    rc = main(["cloud", "--n", "5", "--tails", "two", "--runs", "10",
               "--theta", "gaussian:0:1", "--seed", "1"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_exit_code_budget(capsys):
    rc = main(["cloud", "--n", "5", "--tails", "two", "--runs", "1000000000",
               "--seed", "1"])
    assert rc == 4


def test_exit_code_input_errors(tmp_path, capsys):
    rc = main(["slice", "--cloud", str(tmp_path / "missing.csv"),
               "--axis", "vertical", "--band", "0:1"])
    assert rc == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,cloud\n1,2,3\n")
    rc = main(["slice", "--cloud", str(bad), "--axis", "vertical",
               "--band", "0:1"])
    assert rc == 3
    # a well-formed cloud but an empty selection
    ok = tmp_path / "ok.csv"
    ok.write_text("theta,p,stage,final_n\n0.5,0.2,1,10\n")
    rc = main(["slice", "--cloud", str(ok), "--axis", "vertical",
               "--band", "2:3"])
    assert rc == 3


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as e:
        main(["--version"])
    assert e.value.code == 0
