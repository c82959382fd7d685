import json
import math

from ecgeom.cli import main


def _write_config(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


def _example_space_config():
    return {
        "zeros": [{"im": 0, "mult": 3}, {"im": 1, "mult": 2}, {"im": 2, "mult": 1}],
        "alpha": -math.pi / 2,
        "beta": math.pi / 2,
    }


def test_space_command_outputs(tmp_path, capsys):
    config = _write_config(tmp_path / "space.json", _example_space_config())
    out = tmp_path / "out"
    assert main(["space", "--config", config, "--out", str(out), "--samples", "501"]) == 0
    header = (out / "bbasis.csv").read_text().splitlines()
    assert header[0] == "u," + ",".join(f"b_{i}" for i in range(9))
    assert len(header) == 502  # header plus one row per sample
    assert (out / "ordinary.csv").exists()
    assert (out / "ordinary.svg").read_text().count("<polyline") == 9
    assert (out / "bbasis.svg").exists()
    assert (out / "ordinary.png").exists()
    assert (out / "bbasis.png").exists()
    report = (out / "report.txt").read_text()
    assert "dimension: 9" in report
    assert "\\sin(2u)" in report


def test_critical_length_command(tmp_path, capsys):
    config = _write_config(
        tmp_path / "m.json",
        {
            "zeros": [
                {"mult": 1},
                {"re": 1, "im": 0.2},
                {"re": -1, "im": 0.2},
            ],
            "alpha": 0.0,
            "search_cap": 25.0,
        },
    )
    out = tmp_path / "out"
    assert main(["critical-length", "--config", config, "--out", str(out)]) == 0
    report = (out / "report.txt").read_text()
    assert "critical length for design: ~16.694941" in report
    captured = capsys.readouterr().out
    assert "16.694941" in captured


def test_critical_length_infinite(tmp_path, capsys):
    config = _write_config(
        tmp_path / "p.json", {"zeros": [{"mult": 5}], "alpha": 0.0}
    )
    assert main(["critical-length", "--config", config, "--out", str(tmp_path / "o")]) == 0
    assert "infinite" in capsys.readouterr().out


def test_curve_command(tmp_path):
    config = _write_config(
        tmp_path / "curve.json",
        {
            "space": {
                "zeros": [{"mult": 1}, {"im": 1}],
                "alpha": 0.0,
                "beta": math.pi / 2,
            },
            "ordinary_coefficients": [[0, 0], [1, 0], [0, 1]],
        },
    )
    out = tmp_path / "out"
    assert main(
        ["curve", "--config", config, "--out", str(out), "--samples", "101", "--dmax", "1"]
    ) == 0
    lines = (out / "curve.csv").read_text().splitlines()
    assert lines[0] == "u,d0_c0,d0_c1,d1_c0,d1_c1"
    assert len(lines) == 102
    assert (out / "curve.svg").exists()
    assert (out / "curve.png").exists()


def test_surface_command_mesh_counts(tmp_path, capsys):
    t2 = {"zeros": [{"mult": 1}, {"im": 1}], "alpha": 0.0, "beta": math.pi / 2}
    config = _write_config(
        tmp_path / "torus.json",
        {
            "space_u0": t2,
            "space_u1": t2,
            "separable": {
                "terms": [
                    [[[0, 1, 0], [1.25, 1, 0]]],
                    [[[0, 0, 1], [1.25, 1, 0]]],
                    [[[1, 0, 0], [0, 0, 1]]],
                ]
            },
            "field": "gaussian",
        },
    )
    out = tmp_path / "out"
    assert main(
        ["surface", "--config", config, "--out", str(out), "--grid", "50x100"]
    ) == 0
    obj = (out / "surface.obj").read_text().splitlines()
    kinds = [line.split()[0] for line in obj]
    assert kinds.count("v") == 5000
    assert kinds.count("f") == 9702
    assert (out / "field.csv").exists()
    assert (out / "surface.png").exists()
    assert "5000 vertices, 9702 faces" in capsys.readouterr().out


def test_bench_command(tmp_path, capsys):
    config = _write_config(
        tmp_path / "p2.json", {"zeros": [{"mult": 3}], "alpha": 0.0, "beta": 1.0}
    )
    out = tmp_path / "out"
    assert main(
        ["bench", "--config", config, "--out", str(out), "--trials", "3"]
    ) == 0
    lines = (out / "bench.csv").read_text().splitlines()
    assert lines[0] == "lower_ms,upper_ms,mean_ms,stddev_ms,trials"
    assert len(lines) == 3
    assert "build_space" in capsys.readouterr().out


def test_bad_config_is_an_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["space", "--config", str(bad), "--out", str(tmp_path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_missing_field_is_an_error(tmp_path, capsys):
    config = _write_config(tmp_path / "c.json", {"zeros": [{"mult": 3}]})
    assert main(["space", "--config", config, "--out", str(tmp_path)]) == 1
    assert "alpha" in capsys.readouterr().err


def test_conditioning_flag_honored(tmp_path, capsys):
    payload = {"zeros": [{"mult": 13}], "alpha": 0.0, "beta": 1.0}
    config = _write_config(tmp_path / "p12.json", payload)
    out = str(tmp_path / "out")
    # without the flag the space builds fine
    assert main(["space", "--config", config, "--out", out]) == 0
    # with strict expectations the staged diagnostic aborts the run
    code = main(
        [
            "space",
            "--config",
            config,
            "--out",
            out,
            "--check-conditioning",
            "--expected-digits",
            "14",
        ]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "ill-conditioned" in err
    assert "estimated correct digits" in err
