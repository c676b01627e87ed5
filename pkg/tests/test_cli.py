import json

from coxchains import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_recursion_plain_value(capsys):
    code, out, _ = run(capsys, "compute", "E6", "--method", "recursion")
    assert code == cli.EXIT_OK
    assert out.strip() == "82"


def test_compute_all_methods_agree(capsys):
    code, out, _ = run(capsys, "compute", "A3", "--method", "all")
    assert code == cli.EXIT_OK
    lines = out.strip().splitlines()
    assert "recursion: 2" in lines
    assert "bruteforce: 2" in lines
    assert "closed: 2" in lines
    assert lines[-1] == "agreement: ok"


def test_compute_json_detail(capsys):
    code, out, _ = run(capsys, "compute", "E6", "--method", "recursion",
                       "--format", "json")
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["group"] == "E6"
    assert payload["results"]["recursion"] == "82"
    assert payload["agreement"] is True
    terms = payload["recursion_detail"]["terms"]
    assert sorted(int(v) for _, v in terms) == [15, 16, 25, 26]


def test_compute_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "compute", "Z9")
    assert code == cli.EXIT_PARSE
    assert "error" in err


def test_compute_bruteforce_unsupported_exit_code(capsys):
    code, _, err = run(capsys, "compute", "E7", "--method", "bruteforce")
    assert code == cli.EXIT_UNSUPPORTED
    assert "recursion" in err


def test_compute_all_skips_unsupported_bruteforce(capsys):
    code, out, _ = run(capsys, "compute", "E7", "--method", "all")
    assert code == cli.EXIT_OK
    assert "bruteforce" not in out
    assert "recursion: 768" in out


def test_compute_disagreement_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(cli, "closed_form_value", lambda spec: 999)
    code, out, _ = run(capsys, "compute", "A3", "--method", "all")
    assert code == cli.EXIT_DISAGREE
    assert "MISMATCH" in out


def test_table_csv_contract_and_determinism(capsys):
    code, first, _ = run(capsys, "table", "--format", "csv", "--max-rank", "8")
    assert code == cli.EXIT_OK
    code, second, _ = run(capsys, "table", "--format", "csv", "--max-rank", "8")
    assert first == second
    lines = first.strip().splitlines()
    assert lines[0] == "family,rank_or_m,method,value"
    rows = {tuple(l.split(",")[:2]): l.split(",")[3] for l in lines[1:]}
    assert rows[("A", "6")] == "61"
    assert rows[("B", "5")] == "61"
    assert rows[("D", "8")] == "4792"
    assert rows[("barD", "8")] == "3407"
    assert rows[("E", "8")] == "4056"
    assert rows[("I2", "7")] == "1"


def test_closed_form_value_handles_products():
    assert cli.closed_form_value("B2xA1") == 6
    assert cli.closed_form_value("1") == 1


def test_cache_cold_then_warm_identical(capsys, tmp_path):
    cache = str(tmp_path / "k.json")
    code, cold, _ = run(capsys, "compute", "E8", "--method", "recursion",
                        "--cache", cache)
    assert code == cli.EXIT_OK
    data = json.loads(open(cache).read())
    assert data["engine_version"] == cli.ENGINE_VERSION
    assert data["results"]["E8"]["value"] == "4056"
    code, warm, _ = run(capsys, "compute", "E8", "--method", "recursion",
                        "--cache", cache)
    assert cold == warm


def test_cache_env_variable(capsys, tmp_path, monkeypatch):
    cache = str(tmp_path / "env.json")
    monkeypatch.setenv("COXETER_CACHE", cache)
    code, _, _ = run(capsys, "compute", "E6", "--method", "recursion")
    assert code == cli.EXIT_OK
    assert json.loads(open(cache).read())["results"]["E6"]["value"] == "82"


def test_stale_engine_version_ignored(capsys, tmp_path):
    cache = tmp_path / "stale.json"
    cache.write_text(json.dumps({
        "engine_version": -1,
        "results": {"E6": {"value": "7777", "method": "summ2", "terms": []}},
    }))
    code, out, _ = run(capsys, "compute", "E6", "--method", "recursion",
                       "--cache", str(cache))
    assert code == cli.EXIT_OK
    assert out.strip() == "82"


def test_verify_flags_corrupted_cache(capsys, tmp_path):
    cache = tmp_path / "bad.json"
    cache.write_text(json.dumps({
        "engine_version": cli.ENGINE_VERSION,
        "results": {"E6": {"value": "7777", "method": "summ2", "terms": []}},
    }))
    code = cli.main(["verify", "--cache", str(cache)])
    out = capsys.readouterr().out
    assert code == cli.EXIT_FAIL
    assert "FAIL" in out and "cache-consistency" in out
    fail_line = next(l for l in out.splitlines()
                     if l.startswith("FAIL") and "cache-consistency" in l)
    assert "E6" in fail_line


def test_export_lattice(capsys, tmp_path):
    out_path = tmp_path / "a3.json"
    code = cli.main(["export-lattice", "A3", str(out_path), "--include-model"])
    assert code == cli.EXIT_OK
    payload = json.loads(out_path.read_text())
    assert payload["group"] == "A3"
    assert payload["lattice"]["rank_sizes"] == [1, 6, 7, 1]
    assert payload["model"]["kind"] == "matrix"
    assert len(payload["model"]["roots"]) == 6


def test_export_lattice_unsupported(capsys, tmp_path):
    code = cli.main(["export-lattice", "E8", str(tmp_path / "x.json")])
    capsys.readouterr()
    assert code == cli.EXIT_UNSUPPORTED
