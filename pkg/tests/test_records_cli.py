"""Record serialization and the command-line interface."""
import io
import json

from zetalike.cli import CACHE_ENV, main
from zetalike.records import (dumps_json, loads_record_file, make_header, record_to_dict,
                              records_to_csv, result_set_to_markdown)
from zetalike.search import SearchConfig, run_search

from conftest import gf


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_json_roundtrip():
    f = gf(4)
    rs = run_search(SearchConfig(f, 2, 8))
    text = dumps_json(make_header(f, rs.config.echo()), [record_to_dict(r) for r in rs.records])
    header, f2, recs = loads_record_file(text)
    assert f2 == f and header["field"]["modulus"] == [1, 1, 1]
    assert [(r.tuple, r.status, r.ratio) for r in recs] == [(r.tuple, r.status, r.ratio) for r in rs.records]


def test_csv_and_markdown():
    rs = run_search(SearchConfig(gf(2), 2, 7))
    lines = records_to_csv(rs.records).splitlines()
    assert lines[0].startswith("tuple,weight,depth,status")
    assert "1-1,2,2,eulerian,1/(t^2 + t),1" in lines[1]
    md = result_set_to_markdown(rs)
    assert md == result_set_to_markdown(run_search(SearchConfig(gf(2), 2, 7)))
    assert "| (1, 1)* |" in md and "(2, 5)" in md


def test_compute_text():
    code, out = run(["compute", "--q", "2", "--tuple", "1", "--prec", "8"])
    assert code == 0 and "1, 0, 1, 1, 1, 1, 0, 0" in out


def test_compute_json_and_modulus_note():
    code, out = run(["compute", "--q", "4", "--tuple", "1,2", "--prec", "10"])
    assert code == 0 and "default modulus" in out
    code, out = run(["compute", "--q", "3", "--tuple", "2", "--prec", "6", "--format", "json"])
    assert code == 0 and json.loads(out)


def test_usage_errors():
    assert run(["compute", "--q", "6", "--tuple", "1"])[0] == 1
    assert run(["classify", "--q", "2", "--tuple", "3"])[0] == 1
    assert run(["verify", "--q", "2", "--family", "main6"])[0] == 1
    assert run(["verify", "--q", "2", "--family", "bogus"])[0] == 1
    assert run(["compute", "--q", "2"])[0] == 1
    assert run([])[0] == 1


def test_classify_cli():
    code, out = run(["classify", "--q", "3", "--tuple", "1,2"])
    assert code == 0 and "zeta_like" in out and "2/(t^3 + 2*t)" in out


def test_verify_cli_theorems():
    code, out = run(["verify", "--q", "3", "--family", "theorems", "--max-n", "1", "--max-d", "3",
                     "--prec", "30"])
    assert code == 0 and "0 theorem failures" in out
    code, out = run(["verify", "--q", "2", "--family", "main2", "--max-n", "1", "--format", "json"])
    assert code == 0 and all(r["pass"] for r in json.loads(out)["records"])


def test_search_resume_is_idempotent(tmp_path):
    ck = tmp_path / "ck.jsonl"
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    base = ["search", "--q", "2", "--depth", "2", "--max-weight", "9", "--checkpoint", str(ck),
            "--no-timestamp"]
    assert run(base + ["--out", str(a)])[0] == 0
    assert run(base + ["--resume", "--out", str(b)])[0] == 0
    assert a.read_text() == b.read_text()
    assert "timestamp" not in a.read_text()


def test_search_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    code, out = run(["search", "--q", "3", "--depth", "2", "--max-weight", "6", "--format", "md",
                     "--out", str(tmp_path / "t.md")])
    assert code == 0 and "(1, 2)" in out
    assert any(p.suffix == ".jsonl" for p in tmp_path.iterdir())
    assert (tmp_path / "t.md").read_text() == out


def test_search_restriction_defaults_by_field_size():
    _, out4 = run(["search", "--q", "4", "--depth", "2", "--max-weight", "6", "--format", "md"])
    assert "(primitive, restricted)" in out4
    _, out4u = run(["search", "--q", "4", "--depth", "2", "--max-weight", "6", "--unrestricted"])
    assert "(primitive, unrestricted)" in out4u
    _, out2 = run(["search", "--q", "2", "--depth", "2", "--max-weight", "4"])
    assert "(primitive, unrestricted)" in out2
