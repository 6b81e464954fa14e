"""CLI behaviour: file outputs, exit codes, error JSON."""

import json

import pytest

from zmap import cli


def run_cli(args):
    return cli.main(args)


def test_value_rhp(capsys):
    code = run_cli(["value", "--n", "6", "--m", "8", "--a", "2/3",
                    "--method", "rhp", "--N0", "42"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    got = complex(out["value_re"], out["value_im"])
    assert abs(got - complex(3.610326860525178, 2.568086087959661)) <= 1e-6


def test_value_parity_error_json(capsys):
    code = run_cli(["value", "--n", "1", "--m", "2", "--a", "2/3"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2
    assert out["error"] == "ParityViolation"


def test_exponent_parsing_rational():
    assert cli.parse_a("2/3") == "2/3"
    assert cli.parse_a("0.75") == "0.75"
    with pytest.raises(ValueError):
        cli.parse_a("not-a-number")


def test_lattice_csv_and_svg(tmp_path, capsys):
    csv_path = tmp_path / "lat.csv"
    svg_path = tmp_path / "lat.svg"
    code = run_cli(["lattice", "--a", "2/3", "--N", "12",
                    "--method", "stable", "--output", str(csv_path),
                    "--svg", str(svg_path)])
    capsys.readouterr()
    assert code == 0
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0] == "n,m,re,im"
    assert len(lines) == 1 + 13 * 13
    svg = svg_path.read_text()
    assert svg.startswith("<svg")
    assert "<circle" in svg  # verified pattern property at a=2/3


def test_lattice_a1_exact_grid(tmp_path, capsys):
    path = tmp_path / "grid.csv"
    code = run_cli(["lattice", "--a", "1", "--N", "8", "--method", "naive",
                    "--output", str(path)])
    capsys.readouterr()
    assert code == 0
    rows = path.read_text().strip().split("\n")[1:]
    for row in rows:
        n, m, re, im = row.split(",")
        assert float(re) == float(n)
        assert float(im) == float(m)


def test_lattice_json_format(tmp_path, capsys):
    path = tmp_path / "lat.json"
    code = run_cli(["lattice", "--a", "2/3", "--N", "6", "--method",
                    "stable", "--format", "json", "--output", str(path)])
    capsys.readouterr()
    assert code == 0
    payload = json.loads(path.read_text())
    assert payload["N"] == 6
    assert payload["method"] == "stable"
    assert len(payload["values"]) == 49


def test_painleve_writes_csv(tmp_path, capsys):
    path = tmp_path / "x.csv"
    code = run_cli(["painleve", "--a", "2/3", "--N", "120",
                    "--output", str(path)])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["iters"] <= 15
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "n,re,im,abs_err_modulus"
    assert len(lines) == 122


def test_model_command(capsys):
    code = run_cli(["model", "--m", "10", "--method", "nystrom"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert out["nystrom"]["y0_error"] <= 1e-11


def test_instability_series_files(tmp_path, capsys):
    code = run_cli(["instability", "--a", "2/3", "--N", "30",
                    "--output-dir", str(tmp_path)])
    capsys.readouterr()
    assert code == 0
    for name in ("naive_diagonal", "dpii_forward", "modulus_indicator"):
        text = (tmp_path / f"{name}.csv").read_text()
        assert text.splitlines()[0] == "n,error"


def test_compare_table(tmp_path, capsys):
    path = tmp_path / "table.txt"
    code = run_cli(["compare", "--a", "1", "--points", "2,2 4,4",
                    "--output", str(path)])
    capsys.readouterr()
    assert code == 0
    table = path.read_text()
    assert "|stable-rhp|" in table
    assert len(table.strip().split("\n")) == 3


def test_invalid_exponent_exit_code(capsys):
    code = run_cli(["painleve", "--a", "2.5"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2
    assert "error" in out


def test_remote_dispatch_path(monkeypatch, capsys):
    # route the CLI's httpx call through the ASGI test client so the
    # remote code path is exercised without a live server
    import httpx
    from fastapi.testclient import TestClient

    from zmap.service import app

    tc = TestClient(app)

    def fake_post(url, json=None, timeout=None):
        endpoint = url.rsplit("/", 1)[1]
        return tc.post(f"/{endpoint}", json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    code = run_cli(["--server", "http://example.invalid", "value",
                    "--n", "2", "--m", "2", "--a", "1"])
    out = json.loads(capsys.readouterr().out)
    assert code == 0
    assert abs(complex(out["value_re"], out["value_im"]) - (2 + 2j)) <= 1e-8

    code = run_cli(["--server", "http://example.invalid", "value",
                    "--n", "1", "--m", "2", "--a", "2/3"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2
    assert out["error"] == "ParityViolation"
