import subprocess
import sys

import pytest

from cgkit import pgm
from cgkit.bench import RunRecord, parse_profile, write_records
from cgkit.cli import DEFAULTS, build_parser, main
from cgkit.problems import synthetic_image


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    report = dict(line.split("=", 1) for line in out.out.splitlines() if "=" in line)
    return code, report, out.err


def test_defaults_match_library():
    assert (DEFAULTS["delta"], DEFAULTS["sigma"], DEFAULTS["gtol"]) == (0.01, 0.1, 1e-6)
    assert (DEFAULTS["t"], DEFAULTS["eta"], DEFAULTS["lambda"]) == (0.1, 0.01, 0.08)
    assert (DEFAULTS["step_rtol"], DEFAULTS["eps_smooth"]) == (1e-3, 1e-3)
    args = build_parser().parse_args(["solve", "--problem", "beale"])
    assert (args.method, args.sigma, args.max_iter) == ("azhs", 0.1, 50_000)


def test_solve_heat(capsys):
    code, report, _ = run(capsys, "solve", "--problem", "heat", "--method", "azhs")
    assert code == 0
    assert report["status"] == "converged"
    assert float(report["f_final"]) <= 1e-6


def test_heat_subcommand(capsys):
    code, report, _ = run(capsys, "heat")
    assert code == 0
    assert float(report["max_dist_reference"]) <= 1e-2


def test_iteration_cap_exit(capsys):
    code, report, _ = run(capsys, "solve", "--problem", "rosenbrock", "--method", "fr", "--max-iter", "1")
    assert code == 2
    assert report["status"] == "iteration-cap"


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--problem", "rosenbrock", "--method", "bfgs"],
        ["solve", "--problem", "nosuch"],
        ["solve", "--problem", "beale", "--sigma", "0.9", "--delta", "0.95"],
        ["bench", "--out", "x.csv", "--methods", "azhs,nope"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 64
    assert err


def test_argparse_errors_exit_64(capsys):
    for argv in (["solve"], ["frobnicate"], ["solve", "--problem", "beale", "--max-iter", "x"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 64


def test_env_precedence(capsys, monkeypatch):
    monkeypatch.setenv("CGKIT_METHOD", "hz")
    _, report, _ = run(capsys, "solve", "--problem", "beale")
    assert report["method"] == "hz"
    _, report, _ = run(capsys, "solve", "--problem", "beale", "--method", "fr")
    assert report["method"] == "fr"
    monkeypatch.setenv("CGKIT_MAX_ITER", "1")
    code, _, _ = run(capsys, "solve", "--problem", "rosenbrock")
    assert code == 2
    monkeypatch.setenv("CGKIT_SIGMA", "lots")
    code, _, err = run(capsys, "solve", "--problem", "beale")
    assert code == 64 and "CGKIT_SIGMA" in err


def test_bench_then_profile(capsys, tmp_path):
    runs, prof = tmp_path / "runs.csv", tmp_path / "prof.csv"
    code, report, _ = run(capsys, "bench", "--problems", "tridia", "--methods", "azhs,hs", "--out", str(runs))
    assert code == 0 and report["solved"] == "2"
    code, _, _ = run(capsys, "profile", "--runs", str(runs), "--out", str(prof))
    assert code == 0
    solvers, rows = parse_profile(prof.read_text())
    assert solvers == ["azhs", "hs"]
    assert rows[-1][1:] == (1.0, 1.0)


def test_profile_hand_example(capsys, tmp_path):
    runs, prof = tmp_path / "runs.csv", tmp_path / "prof.csv"
    cost = {("p1", "s1"): 2, ("p1", "s2"): 1, ("p2", "s1"): 3, ("p2", "s2"): 6}
    write_records(
        [RunRecord(p, s, "converged", c, c, c, 0.1, 0.0, 0.0) for (p, s), c in cost.items()], runs,
    )
    code, report, _ = run(capsys, "profile", "--runs", str(runs), "--out", str(prof))
    assert code == 0 and report["r_m"] == "4.0"
    assert prof.read_text() == "t,s1,s2\n1.0,0.5,0.5\n2.0,1.0,1.0\n4.0,1.0,1.0\n"


def test_profile_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("azhs,TRIDIA,converged\n")
    code, _, err = run(capsys, "profile", "--runs", str(bad), "--out", str(tmp_path / "p.csv"))
    assert code == 65 and "line 1" in err
    assert not (tmp_path / "p.csv").exists()
    code, _, _ = run(capsys, "profile", "--runs", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "p.csv"))
    assert code == 74


def test_noise_zero_sigma_is_identity(capsys, tmp_path):
    clean = tmp_path / "clean.pgm"
    pgm.write_pgm(synthetic_image(16), clean)
    out = tmp_path / "out.pgm"
    code, _, _ = run(capsys, "noise", "--in", str(clean), "--out", str(out), "--sigma-frac", "0")
    assert code == 0
    assert out.read_bytes() == clean.read_bytes()


def test_noise_and_denoise(capsys, tmp_path):
    clean, noisy, restored = (tmp_path / n for n in ("clean.pgm", "noisy.pgm", "restored.pgm"))
    code, _, _ = run(
        capsys, "noise", "--synthetic", "64", "--clean-out", str(clean), "--out", str(noisy), "--seed", "3",
    )
    assert code == 0
    code, report, _ = run(capsys, "denoise", "--in", str(noisy), "--ref", str(clean), "--out", str(restored))
    assert code == 0
    assert float(report["rmse_restored"]) < float(report["rmse_noisy"])
    assert pgm.read_pgm(restored).width == 64


def test_image_errors(capsys, tmp_path):
    junk = tmp_path / "junk.pgm"
    junk.write_bytes(b"P7 nonsense")
    code, _, _ = run(capsys, "denoise", "--in", str(junk), "--out", str(tmp_path / "o.pgm"))
    assert code == 65
    small, big = tmp_path / "s.pgm", tmp_path / "b.pgm"
    pgm.write_pgm(synthetic_image(8), small)
    pgm.write_pgm(synthetic_image(16), big)
    code, _, _ = run(capsys, "denoise", "--in", str(small), "--ref", str(big), "--out", str(tmp_path / "o.pgm"))
    assert code == 64
    code, _, _ = run(capsys, "noise", "--out", str(tmp_path / "o.pgm"))
    assert code == 64
    code, _, _ = run(capsys, "noise", "--in", str(small), "--out", str(tmp_path / "o.pgm"), "--sigma-frac", "1.5")
    assert code == 64


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cgkit", "solve", "--problem", "beale"], capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "status=converged" in proc.stdout
