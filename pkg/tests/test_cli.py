import os
import subprocess
import sys

import pytest

from eeenum import cli

SMALL = """
[scenario]
num_sensors = 6
num_sources = 2
num_snapshots = 20
snr_db = 5

[noise]
model = mixture
epsilon = 0.05
eta = 20

[sweep]
axis = snapshots
values = 10, 40
methods = eee-tail, mdl
trials = 30
seed = 17
"""


@pytest.fixture
def small_conf(tmp_path):
    path = tmp_path / "small.conf"
    path.write_text(SMALL)
    return path


def run(argv, capsys):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_sweep_csv_shape(small_conf, tmp_path, capsys):
    out_path = tmp_path / "out.csv"
    code, _, err = run(["sweep", "--config", small_conf, "--output", out_path], capsys)
    assert code == 0
    raw = out_path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "axis,axis_value,method,trials,p_detect,p_fa,p_missed,seed"
    rows = [l.split(",") for l in lines[1:]]
    assert [(r[1], r[2]) for r in rows] == [("10", "eee-tail"), ("10", "mdl"),
                                            ("40", "eee-tail"), ("40", "mdl")]
    for r in rows:
        assert r[0] == "snapshots" and r[3] == "30"
        probs = [float(x) for x in r[4:7]]
        assert all(0 <= p <= 1 for p in probs)
        assert abs(sum(probs) - 1) < 2e-6
        assert all(len(x.split(".")[1]) == 6 for x in r[4:7])
    assert '"emitted_rows": 4' in err
    assert not [p for p in os.listdir(tmp_path) if p.endswith(".tmp")]


def test_sweep_reruns_byte_identical(small_conf, tmp_path, capsys):
    outs = []
    for i, workers in enumerate([1, 1, 2]):
        path = tmp_path / f"run{i}.csv"
        assert run(["sweep", "--config", small_conf, "--output", path, "--workers", workers], capsys)[0] == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_overrides(small_conf, capsys):
    code, out, _ = run(["sweep", "--config", small_conf, "--trials", 5, "--seed", 1,
                        "--methods", "aic,eee-head"], capsys)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines()[1:]]
    assert {r[2] for r in rows} == {"aic", "eee-head"}
    assert {r[3] for r in rows} == {"5"}
    code2, out2, _ = run(["sweep", "--config", small_conf, "--trials", 5, "--seed", 2,
                          "--methods", "aic,eee-head"], capsys)
    assert out2 != out


def test_bundled_fig1(capsys):
    code, out, _ = run(["sweep", "--config", "fig1.conf", "--trials", 3], capsys)
    assert code == 0
    rows = out.splitlines()[1:]
    assert {r.split(",")[0] for r in rows} == {"snapshots"}
    assert len(rows) == 8 * 4
    assert "fig1.conf" in cli.bundled_configs()


@pytest.mark.parametrize("name", cli.bundled_configs())
def test_every_bundled_config_parses(name):
    scenario, kernel, sweep = cli.read_config(open(cli.resolve_config_path(name)).read())
    spec = cli.build_sweep(scenario, sweep)
    assert spec.trials_per_point == 1000


def test_num_sources_too_large(tmp_path, capsys):
    path = tmp_path / "bad.conf"
    path.write_text(SMALL.replace("num_sources = 2", "num_sources = 6"))
    code, _, err = run(["sweep", "--config", path], capsys)
    assert code == 2
    assert "num_sources" in err


def test_sweep_point_violation(tmp_path, capsys):
    path = tmp_path / "bad.conf"
    path.write_text(SMALL.replace("axis = snapshots", "axis = num_sources").replace("10, 40", "1, 6"))
    code, _, err = run(["sweep", "--config", path], capsys)
    assert code == 2
    assert "num_sources=6" in err


@pytest.mark.parametrize("edit,field", [
    (("[noise]", "[noise]\ncolour = pink"), "colour"),
    (("[sweep]", "[extra]\nx = 1\n[sweep]"), "extra"),
    (("snr_db = 5", "snr_db = loud"), "snr_db"),
    (("axis = snapshots", "axis = time"), "axis"),
    (("methods = eee-tail, mdl", "methods = rmt"), "methods"),
    (("eta = 20", "eta = 0.5"), "eta"),
])
def test_invalid_configs_exit_2(tmp_path, capsys, edit, field):
    path = tmp_path / "bad.conf"
    path.write_text(SMALL.replace(*edit))
    code, _, err = run(["sweep", "--config", path], capsys)
    assert code == 2
    assert field in err


def test_missing_config(capsys):
    assert run(["sweep", "--config", "/nonexistent/x.conf"], capsys)[0] == 2


def test_unwritable_output(small_conf, capsys):
    code, _, err = run(["sweep", "--config", small_conf, "--output", "/nonexistent/dir/out.csv"], capsys)
    assert code == 1


def test_spectrum_dump(small_conf, capsys):
    code, out, _ = run(["spectrum", "--config", small_conf, "--seed", 3], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,eigenvalue,F,delta_F"
    assert len(lines) == 1 + 6
    assert lines[-1].endswith(",")
    values = [float(l.split(",")[1]) for l in lines[1:]]
    assert values == sorted(values, reverse=True)


def test_spectrum_high_snr_minimum_at_k(tmp_path, capsys):
    path = tmp_path / "k3.conf"
    path.write_text("[scenario]\nnum_sensors = 10\nnum_sources = 3\nnum_snapshots = 1000\nsnr_db = 20\n")
    code, out, _ = run(["spectrum", "--config", path, "--seed", 1], capsys)
    assert code == 0
    dF = [float(l.split(",")[3]) for l in out.splitlines()[1:-1]]
    assert dF.index(min(dF)) + 1 == 3


@pytest.mark.parametrize("scope", ["window", "global"])
def test_spectrum_noise_only(tmp_path, capsys, scope):
    path = tmp_path / "k0.conf"
    path.write_text("[scenario]\nnum_sensors = 8\nnum_sources = 0\nnum_snapshots = 5000\n"
                    f"[kernel]\nscope = {scope}\n")
    code, out, _ = run(["spectrum", "--config", path], capsys)
    assert code == 0
    rows = [l.split(",") for l in out.splitlines()[1:]]
    assert all(abs(float(r[1]) - 1) < 0.2 for r in rows)
    # no jump: compare with |dF| of order 1 to 20 at a signal edge
    assert all(abs(float(r[3])) < 1 for r in rows[:-1])


def test_entropy_command(capsys):
    assert run(["entropy", "0", "0", "0", "--bandwidth", "1"], capsys)[1].strip() == "0.918938533205"
    assert run(["entropy", "0", "1", "--bandwidth", "1"], capsys)[1].strip() == "1.13800872958"
    code, out, _ = run(["entropy", "1", "2", "3"], capsys)
    assert code == 0 and float(out) > 0
    code, _, err = run(["entropy", "5"], capsys)
    assert code == 2 and "bandwidth" in err


def test_entropy_requires_values(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["entropy"])
    assert exc.value.code == 2


def test_module_entry_point_and_fallback(small_conf):
    env = dict(os.environ, EEENUM_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import eeenum; print(eeenum.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    fast = subprocess.run([sys.executable, "-m", "eeenum", "sweep", "--config", str(small_conf)],
                          capture_output=True, check=True).stdout
    slow = subprocess.run([sys.executable, "-m", "eeenum", "sweep", "--config", str(small_conf)],
                          env=env, capture_output=True, check=True).stdout
    assert fast == slow
