import io
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ifsmeasure.cli import run
from ifsmeasure.config import ConfigError, parse_config

CONFIGS = Path(__file__).resolve().parent.parent / "demos" / "configs"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_integrate_example():
    code, out, _ = call("integrate", CONFIGS / "cantor_moments.cfg", "--k", 2)
    assert code == 0
    assert out.splitlines()[-1].startswith("k=2  0.6666666666")


def test_validate_expanding_system_exits_2():
    code, out, err = call("validate", CONFIGS / "expanding.cfg")
    assert code == 2
    assert "contraction check failed" in out
    code, _, err = call("integrate", CONFIGS / "expanding.cfg")
    assert code == 2 and "contraction check failed" in err


def test_wasserstein_k8_matches_reference():
    code, out, _ = call("wasserstein", CONFIGS / "affine_wasserstein.cfg", "--k", 8, "--format", "csv")
    assert code == 0
    rows = out.splitlines()
    assert rows[0] == "k,value,stable_digits"
    value = rows[-1].split(",")[1]
    assert value.startswith("0.39999999995831699720326495795627945349")
    assert abs(float(value) - 0.4) < 1e-10


def test_csv_and_plain_carry_the_same_digits():
    base = ("moments", CONFIGS / "moebius_moments.cfg", "--digits", 50, "--k", 9, "--M", 3)
    _, plain, _ = call(*base)
    _, csv, _ = call(*base, "--format", "csv")
    plain_vals = [line.split()[1] for line in plain.splitlines()]
    csv_vals = [line.split(",")[1] for line in csv.splitlines()[1:]]
    assert plain_vals == csv_vals and len(plain_vals) == 4


def test_workers_do_not_change_output():
    base = ("integrate", CONFIGS / "cantor_moments.cfg", "--k", 8)
    assert call(*base)[1] == call(*base, "--workers", 2)[1]


def test_exit_codes(tmp_path):
    assert call("integrate", CONFIGS / "cantor_moments.cfg", "--digits", 10)[0] == 1
    assert call("integrate", tmp_path / "missing.cfg")[0] == 1
    assert call("integrate", write(tmp_path, "map = affine 1/3 0\nbogus = 1\n"))[0] == 1
    assert call("integrate", write(tmp_path, "map = affine 1/3 0\nmap = cubic 1\np = 1/2 1/2\n"))[0] == 1
    assert call("integrate", CONFIGS / "cantor_moments.cfg", "--print-digits", 80)[0] == 1
    assert call("oracle", CONFIGS / "cantor_moments.cfg", "--n", 30)[0] == 3
    flipped = write(tmp_path, "map = affine 1/4 0\nmap = affine 1/4 3/8\nmap = affine 1/4 3/4\n"
                              "p = 1/2 1/4 1/4\nq = 1/4 5/8 1/8\nepsilon = 1/4\n")
    assert call("wasserstein", flipped, "--k", 4)[0] == 2


def test_bad_config_names_the_key(tmp_path):
    with pytest.raises(ConfigError) as exc:
        parse_config("map = affine 1/3 0\nmap = affine 1/3 2/3\np = 1/3 1/3\nk = many\n")
    assert exc.value.key == "k"
    code, _, err = call("integrate", write(tmp_path, "map = affine 1/3 0\nmap = affine 1/3 2/3\np = 1/3 2/3 1/3\n"))
    assert code == 1 and err.startswith("config error: p")


def test_echo_round_trip(tmp_path):
    for name in ("cantor_moments.cfg", "piecewise.cfg", "affine_wasserstein.cfg", "sine_lyapunov.cfg"):
        code, out, _ = call("validate", CONFIGS / name, "--echo")
        assert code == 0
        echoed = out[out.index("map = "):]
        again = parse_config(echoed)
        assert again.to_text() == echoed
        assert again.system == parse_config((CONFIGS / name).read_text()).system


def test_function_weight_config(tmp_path):
    cfg = write(tmp_path, "map = affine 1/3 0\nmap = affine 1/3 2/3\npfun = 1/4 1/2\npfun = 3/4 -1/2\n"
                          "epsilon = 1/4\nk = 12\nobservable = monomial 2\n")
    code, out, _ = call("integrate", cfg)
    value = Fraction(out.splitlines()[-1].split()[1])
    assert code == 0 and abs(value - Fraction(7, 20)) < Fraction(1, 10**30)


def test_other_commands():
    code, out, _ = call("piecewise", CONFIGS / "piecewise.cfg")
    assert code == 0 and out.split()[1].startswith("0.60905349794238683127572016460905")
    code, out, _ = call("oracle", CONFIGS / "cantor_moments.cfg", "--n", 1, "--print-digits", 12)
    assert code == 0 and out.strip() == "n=1  0.611111111111"
    code, out, _ = call("traces", CONFIGS / "cantor_moments.cfg", "--k", 2, "--format", "csv")
    rows = out.splitlines()
    assert rows[0] == "m,t,tau,a,alpha"
    assert rows[2].startswith("2,1.125") and ",0.5625" in rows[2] and rows[2].endswith(",0.7500000000000000000000000000000000000000")
    code, out, _ = call("lyapunov", CONFIGS / "sine_lyapunov.cfg", "--digits", 40, "--k", 10, "--print-digits", 12)
    assert code == 0 and out.splitlines()[-1].split()[1] == "1.73672081474"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ifsmeasure", "integrate", str(CONFIGS / "cantor_moments.cfg"),
                          "--k", "3", "--print-digits", "10"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[-1] == "k=3  0.6666666667  " + res.stdout.split()[-1]
