"""Command-line interface: exit codes, determinism, and the result cache."""

import json
import os

import pytest

import invar.catalog as catalog
import invar.cli as cli
from invar.cache import ResultCache, digest_key


def run(capsys, argv):
    code = cli.main(argv)
    return code, capsys.readouterr().out


def test_steenrod_command(capsys):
    code, out = run(capsys, ["steenrod", "1", "w^2+t*w+t^2", "--format",
                             "json"])
    assert code == 0
    assert json.loads(out)["output"] == "t^2*w+t*w^2"


def test_invariants_trivial(capsys):
    code, out = run(capsys, ["invariants", "trivial_1var", "--degrees", "3",
                             "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["invariant_dims"] == [1, 1, 1, 1]
    assert rep["free_module"] is True


def test_invariants_dihedral(capsys):
    code, out = run(capsys, ["invariants", "D8_on_3", "--degrees", "8",
                             "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["primary_degrees"] == [1, 2, 4]
    assert "t^2+t*w" in rep["primaries"]


def test_unknown_group_is_config_error(capsys):
    code, _ = run(capsys, ["invariants", "no_such_group"])
    assert code == cli.EXIT_CONFIG


def test_budget_exceeded(capsys):
    code, _ = run(capsys, ["steenrod", "1", "w", "--budget", "0"])
    assert code == cli.EXIT_BUDGET


def test_verification_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(catalog, "sylow_claims", lambda: {"ok": False})
    code, _ = run(capsys, ["sylow"])
    assert code == cli.EXIT_MISMATCH


def test_output_is_deterministic(capsys):
    _, out1 = run(capsys, ["invariants", "D8_on_3", "--degrees", "10",
                           "--format", "json"])
    _, out2 = run(capsys, ["invariants", "D8_on_3", "--degrees", "10",
                           "--format", "json"])
    assert out1 == out2


def test_text_and_json_formats_differ_but_agree(capsys):
    _, text = run(capsys, ["steenrod", "2", "t*w", "--format", "text"])
    _, js = run(capsys, ["steenrod", "2", "t*w", "--format", "json"])
    assert json.loads(js)["output"] in text


def test_detect_command(capsys):
    code, out = run(capsys, ["detect", "2S8", "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["exact"] and rep["ok"]


def test_perm_normalizer(capsys):
    code, out = run(capsys, ["perm", "S8", "normalizer", "--format", "json"])
    assert code == 0
    assert json.loads(out)["quotient_order"] == 168


def test_intersect_command(capsys):
    code, out = run(capsys, ["intersect", "dickson_pair", "even_summand",
                             "--bound", "16", "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["dims"][:13] == [1] + [0] * 7 + [1, 0, 0, 0, 1]


# ---------------------------------------------------------------------------
# cache behaviour

def test_cache_put_get_roundtrip(tmp_path):
    cache = ResultCache(str(tmp_path))
    key = digest_key({"cmd": "x"})
    cache.put(key, b'{"a": 1}')
    assert cache.get(key) == b'{"a": 1}'


def test_cache_miss_on_absent_key(tmp_path):
    cache = ResultCache(str(tmp_path))
    assert cache.get(digest_key({"cmd": "y"})) is None


def test_cache_discards_corrupted_entry(tmp_path):
    cache = ResultCache(str(tmp_path))
    key = digest_key({"cmd": "x"})
    cache.put(key, b'{"a": 1}')
    path = os.path.join(str(tmp_path), key + ".json")
    with open(path, "w") as fh:
        fh.write("not json at all")
    assert cache.get(key) is None
    assert not os.path.exists(path)


def test_cache_version_bump_is_a_miss(tmp_path, monkeypatch):
    cache = ResultCache(str(tmp_path))
    key = digest_key({"cmd": "x"})
    cache.put(key, b'{"a": 1}')
    monkeypatch.setattr("invar.cache.TOOL_VERSION", "999")
    assert cache.get(key) is None


def test_cached_rerun_is_byte_identical(capsys, tmp_path):
    argv = ["invariants", "D8_on_3", "--degrees", "12", "--format", "json",
            "--cache", str(tmp_path)]
    code1, cold = run(capsys, argv)
    assert code1 == 0
    assert os.listdir(str(tmp_path))  # an entry was written
    code2, warm = run(capsys, argv)
    assert code2 == 0
    assert cold == warm


def test_cache_env_variable(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    run(capsys, ["steenrod", "1", "w"])
    assert os.listdir(str(tmp_path))
