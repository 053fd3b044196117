import json

import pytest

from polycosec import cache
from polycosec.combinatorics import bernoulli, get_table, reset_tables, stirling1_unsigned, stirling2


@pytest.fixture
def filled(tmp_path):
    reset_tables()
    stirling2(12, 3)
    stirling1_unsigned(10, 2)
    bernoulli(14)
    path = tmp_path / cache.CACHE_FILE
    assert cache.save(path)
    return path


def test_roundtrip_is_byte_identical(filled):
    before = filled.read_bytes()
    reset_tables()
    assert cache.load(filled)
    assert get_table("stirling2").max_index == 12
    assert get_table("bernoulli").entries[1] == bernoulli(1)
    assert not cache.save(filled)
    assert cache.dumps().encode() == before
    assert filled.read_bytes() == before


def test_growth_rewrites(filled):
    before = filled.read_bytes()
    stirling2(20, 5)
    assert cache.save(filled)
    assert filled.read_bytes() != before


def test_loaded_values_are_correct(filled):
    expected = [stirling2(12, m) for m in range(13)]
    reset_tables()
    cache.load(filled)
    assert [stirling2(12, m) for m in range(13)] == expected


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(format_version=99),
        lambda d: d["tables"]["stirling2"]["entries"][3].__setitem__(1, 999),
        lambda d: d["tables"].pop("bernoulli"),
        lambda d: d.update(checksum="0" * 64),
    ],
)
def test_bad_files_are_ignored(filled, mutate):
    doc = json.loads(filled.read_text())
    mutate(doc)
    filled.write_text(json.dumps(doc))
    reset_tables()
    assert not cache.load(filled)
    assert get_table("stirling2").max_index == -1
    assert stirling2(4, 2) == 7


def test_garbage_and_missing(tmp_path):
    p = tmp_path / "c.json"
    assert not cache.load(p)
    p.write_text("{not json")
    assert not cache.load(p)


def test_default_dir_respects_env(monkeypatch, tmp_path):
    monkeypatch.setenv(cache.CACHE_ENV, str(tmp_path))
    assert cache.default_cache_dir() == tmp_path
