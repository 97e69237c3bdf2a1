import json

from sesqui.cli import main


def _gen(tmp_path, name="inst.json", *extra):
    out = tmp_path / name
    code = main(["gen", "--family", "f541", "--degree", "2", "--seed", "3", "--out", str(out), *extra])
    return code, out


def test_verify_example_f101(capsys):
    """Teste la commande verify-example sur F_{101^2}"""
    assert main(["verify-example", "--name", "f101"]) == 0
    out = capsys.readouterr().out
    assert "exemple: f101" in out
    assert "ECHEC" not in out


def test_verify_example_f541_prints_tables(capsys):
    """Teste l'affichage des tables 5x5 de F_541"""
    assert main(["verify-example", "--name", "f541"]) == 0
    out = capsys.readouterr().out
    assert "partie réelle" in out and "partie imaginaire" in out
    assert "u = 1" in out
    assert "ECHEC" not in out


def test_gen_then_attack_with_reveal(tmp_path, capsys):
    """Teste gen puis attack --reveal : verdict PASS et code 0"""
    code, out = _gen(tmp_path)
    assert code == 0 and out.exists()
    capsys.readouterr()
    assert main(["attack", "--in", str(out), "--reveal"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "variante: norm"
    assert lines[-1] == "PASS"


def test_gen_is_deterministic(tmp_path):
    """Teste que la même graine produit deux fichiers identiques octet pour octet"""
    _, first = _gen(tmp_path, "a.json")
    _, second = _gen(tmp_path, "b.json")
    assert first.read_bytes() == second.read_bytes()


def test_attack_json_report(tmp_path):
    """Teste l'écriture du rapport structuré avec --json"""
    _, out = _gen(tmp_path)
    report_path = tmp_path / "report.json"
    assert main(["attack", "--in", str(out), "--reveal", "--json", str(report_path)]) == 0
    report = json.loads(report_path.read_text(encoding="utf-8"))
    assert report["variant"] == "norm"
    assert report["verdict"] == "PASS"
    assert int(report["candidate_bound"]) >= len(report["candidates"])


def test_attack_missing_file(tmp_path, capsys):
    """Teste le code de sortie 3 pour une instance introuvable"""
    assert main(["attack", "--in", str(tmp_path / "absent.json")]) == 3
    assert capsys.readouterr().err.startswith("ERROR MALFORMED_INSTANCE_ERROR")


def test_gen_budget_exceeded(tmp_path, capsys):
    """Teste le code de sortie 4 pour un degré hors budget"""
    code = main(["gen", "--family", "f541", "--degree", "17", "--out", str(tmp_path / "x.json")])
    assert code == 4
    assert capsys.readouterr().err.startswith("ERROR BUDGET_EXCEEDED")


def test_pair(tmp_path, capsys):
    """Teste l'évaluation de T̂ sur deux points donnés par leurs coordonnées"""
    _, out = _gen(tmp_path)
    capsys.readouterr()
    assert main(["pair", "--in", str(out), "--op", "sesqui", "--P", "1,1", "--Q", "1,1"]) == 0
    assert capsys.readouterr().out.startswith("sesqui sur E[5]")
