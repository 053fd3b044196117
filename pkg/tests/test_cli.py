import csv
import io
import json

import pytest

from polycosec import cache
from polycosec.cli import main


@pytest.fixture(autouse=True)
def cache_dir(monkeypatch, tmp_path):
    monkeypatch.setenv(cache.CACHE_ENV, str(tmp_path))
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_values(out):
    rows = list(csv.DictReader(io.StringIO(out)))
    return [r["value"] for r in rows]


def test_table_d_zero(capsys):
    code, out, _ = run(capsys, "table", "--family", "D", "--k", "0", "--n-max", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,value,route"
    assert csv_values(out) == ["1", "0", "0", "0", "0"]
    assert "\r" not in out


def test_table_negative_k(capsys):
    code, out, _ = run(capsys, "table", "--family", "D", "--k", "-3", "--n-max", "2")
    assert code == 0
    assert csv_values(out) == ["1", "0", "13"]


def test_table_b_json(capsys):
    code, out, _ = run(capsys, "table", "--family", "B", "--k", "1", "--n-max", "1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["family"] == "B" and doc["indices"] == [1]
    assert [v["value"] for v in doc["values"]] == ["1", "1/2"]
    assert set(doc) == {"family", "indices", "values"}
    assert set(doc["values"][0]) == {"n", "value", "route"}


def test_table_multi(capsys):
    # A(0,0; z) = 4z^2 + 8z^4 + ..., so the numerator is t^2 + t^4/3 + ...
    # and dividing by t + t^3/6 leaves t + t^3/6: D_3 = 3!/6
    code, out, _ = run(capsys, "table", "--family", "Dmulti", "--k", "0,0", "--n-max", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["indices"] == [0, 0]
    assert [v["value"] for v in doc["values"]] == ["0", "1", "0", "1"]


@pytest.mark.parametrize("fmt_", ["csv", "json"])
def test_output_deterministic(capsys, fmt_):
    args = ("table", "--family", "D", "--k", "2", "--n-max", "12", "--format", fmt_)
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_csv_and_json_agree(capsys):
    base = ("table", "--family", "C", "--k", "-2", "--n-max", "9")
    _, out_csv, _ = run(capsys, *base, "--format", "csv")
    _, out_json, _ = run(capsys, *base, "--format", "json")
    assert sorted(csv_values(out_csv)) == sorted(v["value"] for v in json.loads(out_json)["values"])


def test_route_override(capsys):
    for route in ("definition_series", "formula1", "formula2", "bivariate_f", "bivariate_F"):
        code, out, _ = run(capsys, "table", "--family", "D", "--k", "-3", "--n-max", "4", "--route", route)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [r["value"] for r in rows] == ["1", "0", "13", "0", "121"]
        assert {r["route"] for r in rows} == {route}


@pytest.mark.parametrize(
    "argv",
    [
        ("table", "--family", "E", "--k", "1", "--n-max", "3"),
        ("table", "--family", "D", "--k", "", "--n-max", "3"),
        ("table", "--family", "Dmulti", "--k", "1,,2", "--n-max", "3"),
        ("table", "--family", "D", "--k", "1", "--n-max", "-1"),
        ("table", "--family", "D", "--k", "1,2", "--n-max", "3"),
        ("table", "--family", "D", "--k", "1", "--n-max", "3", "--route", "magic"),
        ("table", "--family", "D", "--k", "2", "--n-max", "3", "--route", "bivariate_F"),
        ("verify", "nonsense"),
        ("gf", "--which", "4G", "--deg", "-1"),
        ("gf", "--which", "H", "--deg", "2"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(list(argv))
        raise SystemExit(code)
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("verify", "duality-D", "--n-max", "10", "--k-max", "10"),
        ("verify", "duality-B", "--n-max", "6", "--k-max", "6"),
        ("verify", "duality-C"),
        ("verify", "routes-D", "--k-range", "-8:8", "--n-max", "20"),
        ("verify", "gh", "--m-max", "4", "--order", "12"),
        ("verify", "multi-recurrence", "--r-max", "2", "--n-max", "10"),
        ("verify", "multi-recurrence", "--k", "1,-1,2", "--n-max", "8"),
        ("verify", "c-gf", "--order", "6"),
    ],
)
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[-1] == "PASS"


def test_verify_f_constant_reports_constant(capsys):
    code, out, _ = run(capsys, "verify", "f-constant", "--order", "20", "--quiet")
    assert code == 0
    assert "note: constant difference f_def - f_closed = 1" in out
    assert out.splitlines()[-1] == "PASS"


def test_gf_4g(capsys):
    code, out, _ = run(capsys, "gf", "--which", "4G", "--deg", "4")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    grid = [[int(v) for v in r[1:]] for r in rows]
    diagonals = [[grid[a][s - a] for a in range(s + 1)] for s in range(5)]
    assert diagonals == [[1], [1, 1], [1, 2, 1], [1, 4, 4, 1], [1, 8, 13, 8, 1]]


def test_gf_f_is_even_part_of_4g(capsys):
    _, out_f, _ = run(capsys, "gf", "--which", "F", "--deg", "4", "--format", "json")
    _, out_g, _ = run(capsys, "gf", "--which", "4G", "--deg", "4", "--format", "json")
    f, g = json.loads(out_f)["grid"], json.loads(out_g)["grid"]
    for a in range(5):
        for b in range(5):
            assert f[a][b] == (g[a][b] if a % 2 == 0 and b % 2 == 0 else "0")


def test_gf_c_deg0(capsys):
    code, out, _ = run(capsys, "gf", "--which", "C-gf", "--deg", "0", "--format", "json")
    assert code == 0 and json.loads(out)["grid"] == [["1"]]


@pytest.mark.parametrize("which", ["f-closed", "f-def"])
def test_gf_f_variants(capsys, which):
    code, out, _ = run(capsys, "gf", "--which", which, "--deg", "3", "--deg-y", "2")
    assert code == 0
    assert out.splitlines()[0] == "a,b=0,b=1,b=2"


def test_selftest_quick_with_corrupted_cache(capsys, cache_dir):
    (cache_dir / cache.CACHE_FILE).write_text("corrupted")
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    assert out.splitlines()[-1] == "PASS"
    assert json.loads((cache_dir / cache.CACHE_FILE).read_text())["format_version"] == cache.FORMAT_VERSION


def test_no_cache_writes_nothing(capsys, cache_dir):
    run(capsys, "table", "--family", "D", "--k", "1", "--n-max", "4", "--no-cache")
    assert not (cache_dir / cache.CACHE_FILE).exists()


def test_cache_command(capsys, cache_dir):
    code, out, _ = run(capsys, "cache", "build", "--max-index", "20")
    assert code == 0 and "stirling2: max_index" in out
    assert (cache_dir / cache.CACHE_FILE).exists()
    code, out, _ = run(capsys, "cache", "clear")
    assert code == 0 and not (cache_dir / cache.CACHE_FILE).exists()
