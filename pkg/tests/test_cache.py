import pytest

from kronlef import cache


def test_put_then_get(tmp_path):
    c = cache.Caches(tmp_path)
    c.coefficients.put("d=3:2;1,1;1,1", 7)
    c.characters.put((3, (2, 1), (3,)), -1)
    fresh = cache.Caches(tmp_path)
    assert fresh.coefficients.get("d=3:2;1,1;1,1") == 7
    assert fresh.characters.get((3, (2, 1), (3,))) == -1
    assert fresh.characters.get((3, (3,), (3,))) is None
    assert fresh.characters.stats() == {"hits": 1, "misses": 1}


def test_large_values_survive(tmp_path):
    big = 3**200
    cache.Caches(tmp_path).coefficients.put("x", big)
    assert cache.Caches(tmp_path).coefficients.get("x") == big


def test_disabled_by_empty_env(monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, "")
    c = cache.Caches()
    assert c.root is None
    c.coefficients.put("k", 1)
    assert c.coefficients.get("k") is None
    assert c.coefficients.stats() == {"hits": 0, "misses": 1}


def test_default_directory(monkeypatch):
    monkeypatch.delenv(cache.ENV_VAR, raising=False)
    assert str(cache.cache_dir()) == ".kron-cache"


def test_corrupted_lines_skipped(tmp_path):
    c = cache.Caches(tmp_path)
    c.coefficients.put("a", 1)
    with open(tmp_path / "coefficients.jsonl", "a") as fh:
        fh.write("{not json\n")
        fh.write('{"key": ["bad"], "value": "2"}\n')
        fh.write('{"key": "b", "value": "3"}\n')
    fresh = cache.Caches(tmp_path)
    with pytest.warns(cache.CacheWarning, match="2 corrupted"):
        assert fresh.coefficients.get("b") == 3
    assert fresh.coefficients.get("a") == 1


def test_inconsistent_character_record_skipped(tmp_path):
    (tmp_path / "characters.jsonl").write_text(
        '{"m": 3, "lambda": [2, 2], "mu": [3], "value": "1"}\n')
    with pytest.warns(cache.CacheWarning):
        assert cache.Caches(tmp_path).characters.get((3, (2, 2), (3,))) is None


def test_unwritable_path_warns_and_keeps_memory(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    c = cache.Caches(blocker / "sub")  # parent is a regular file
    with pytest.warns(cache.CacheWarning):
        c.coefficients.put("k", 1)
    assert c.coefficients.get("k") == 1
    c.coefficients.put("j", 2)  # no second warning, no exception
