import json

import pytest

from symspace import certs
from symspace.cli import main


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "sl_R:3" in out and "g2_split" in out
    assert "rank=2" in out


def test_rank_command(capsys):
    assert main(["rank", "sl_R:3"]) == 0
    out = capsys.readouterr().out
    assert "rank(sl_R:3) = 2" in out


def test_rank_bad_space(capsys):
    assert main(["rank", "sl_R:99"]) == 2


def test_generate_and_verify_round_trip(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert main(["generate", "so3k_block", "--param", "k=4", "-o", str(path)]) == 0
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out


def test_generate_to_stdout(capsys):
    assert main(["generate", "sl3R_centralizer"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["space"] == "sl_R:3"


def test_verify_failure_exit_code(tmp_path, capsys):
    cert = certs.generate_certificate("sl3R_centralizer")
    data = cert.to_dict()
    data["claims"]["codim"] = 4
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert main(["verify", str(path)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_malformed_exit_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["verify", str(path)]) == 2


def test_verify_with_transversal_flag(tmp_path, capsys):
    cert = certs.generate_certificate("so1k_hyperplane", k=4)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cert.to_dict()))
    assert main(["verify", str(path), "--with-transversal", "--seed", "5"]) == 0
    assert "transversal-flat" in capsys.readouterr().out


def test_flats_command(tmp_path, capsys):
    cert = certs.generate_certificate("sl3R_centralizer")
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cert.to_dict()))
    assert main(["flats", "sl_R:3", "--transversal", str(path), "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "transversal maximal flat found" in out


def test_flats_space_mismatch(tmp_path):
    cert = certs.generate_certificate("sl3R_centralizer")
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cert.to_dict()))
    assert main(["flats", "sl_R:4", "--transversal", str(path)]) == 2


def test_orbit_command(capsys):
    assert main(["orbit", "sl_R:3", "--vector", "0,0,0,1,2", "--symmetric-test"]) == 0
    out = capsys.readouterr().out
    assert "tangent dim = 2, normal dim = 3" in out
    assert "symmetric submanifold test: True" in out
    assert main(["orbit", "sl_R:3", "--vector", "0,0,0,1,1", "--curvature-normals"]) == 0
    out = capsys.readouterr().out
    assert "curvature normals: g = 3, m = 3" in out
    # curvature normals need a regular vector
    assert main(["orbit", "sl_R:3", "--vector", "0,0,0,1,2", "--curvature-normals"]) == 2


def test_orbit_bad_vector(capsys):
    assert main(["orbit", "sl_R:3", "--vector", "1,2"]) == 2
    assert main(["orbit", "sl_R:3", "--vector", "a,b,c,d,e"]) == 2


def test_search_command(capsys):
    assert main(["search", "sl_R:3", "--codim", "2", "--restarts", "12", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "accepted=True" in out
    assert "candidate certificate" in out


def test_search_probe(capsys):
    assert main(["search", "so:1,4", "--probe-max", "2", "--restarts", "5"]) == 0
    out = capsys.readouterr().out
    assert "rank lower bound: 1" in out
    assert "index probe result: 1" in out


def test_search_needs_codim_or_probe(capsys):
    assert main(["search", "sl_R:3"]) == 2
