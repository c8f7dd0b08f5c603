import numpy as np

from qubattery.cli import main, parse_config_file


def test_cli_parallel_run(tmp_path, capsys):
    out = tmp_path / "parallel.csv"
    code = main(["parallel", "--steps", "201", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "t,ergotropy,power,entanglement,coherence"
    assert len(lines) == 202
    last = [float(x) for x in lines[-1].split(",")]
    assert abs(last[0] - np.pi / 2) < 1e-11  # 12 significant digits round-trip
    assert abs(last[1] - 1.0) < 1e-9


def test_cli_unknown_scenario_is_config_error(tmp_path, capsys):
    assert main(["warp-drive", "--out", str(tmp_path / "x.csv")]) == 1
    assert "config error" in capsys.readouterr().err


def test_cli_bad_flag_value_is_config_error(capsys):
    assert main(["parallel", "--steps", "many"]) == 1
    assert "config error" in capsys.readouterr().err


def test_cli_even_steps_is_config_error(tmp_path, capsys):
    assert main(["parallel", "--steps", "300", "--out", str(tmp_path / "x.csv")]) == 1
    err = capsys.readouterr().err
    assert "steps" in err


def test_cli_unwritable_output_is_io_error(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "out.csv"
    assert main(["parallel", "--steps", "201", "--out", str(target)]) == 2
    assert "io error" in capsys.readouterr().err


def test_cli_missing_config_file_is_io_error(capsys):
    assert main(["parallel", "--config", "/nonexistent/options.cfg"]) == 2


def test_config_file_parsing(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# comment line\n"
        "delta = -1 0 1\n"
        "j-over-omega = 2.0\n"
        "steps=201\n"
        "out = from-file.csv\n")
    options = parse_config_file(str(cfg))
    assert options == {
        "delta": (-1.0, 0.0, 1.0),
        "j_over_omega": (2.0,),
        "steps": 201,
        "out": "from-file.csv",
    }


def test_config_file_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("phasers = 11\n")
    assert main(["parallel", "--config", str(cfg)]) == 1
    assert "unknown key" in capsys.readouterr().err


def test_flags_override_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"steps = 201\nout = {tmp_path / 'file.csv'}\n")
    flag_out = tmp_path / "flag.csv"
    code = main(["parallel", "--config", str(cfg), "--out", str(flag_out)])
    assert code == 0
    assert flag_out.exists()
    assert not (tmp_path / "file.csv").exists()


def test_cli_rerun_byte_identical(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    argv = ["dephasing", "--steps", "201", "--gamma", "0", "0.3"]
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
