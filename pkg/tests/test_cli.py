import csv
import io
import json

from skewunitary import cli, orders


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ring_text(capsys):
    code, out, _ = run(capsys, "ring", "--p", "3", "--k", "1", "--d", "1", "--b", "zero",
                       "--star", "quadratic")
    assert code == 0
    assert "stats.card_A" in out and " 9\n" in out


def test_ring_json_is_stable(capsys):
    args = ("ring", "--p", "3", "--k", "2", "--b", "1", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["stats"]["card_A"] == "81"
    assert doc["principal_structure"]["conditions"] == {"A7": True, "A8": True, "A9": True,
                                                        "A10": True}


def test_ring_spec_file(tmp_path, capsys):
    spec = tmp_path / "ring.spec"
    spec.write_text("p=3\nk=2\nd=1\nsigma_order=1\nb=zero\ntruncate_odd=false\nstar_mode=quadratic\n")
    code, out, _ = run(capsys, "ring", "--spec", str(spec), "--format", "csv")
    assert code == 0
    rows = dict(csv.reader(io.StringIO(out)))
    assert rows["ring"] == "Z/9[t]/(t^2)"
    assert rows["principal_structure.conditions.A7"] == "False"


def test_malformed_key_is_named(tmp_path, capsys):
    spec = tmp_path / "bad.spec"
    spec.write_text("p=3\nk=1\nradicand=0\n")
    code, _, err = run(capsys, "ring", "--spec", str(spec))
    assert code == 2
    assert "radicand" in err and "line 3" in err


def test_usage_errors(capsys):
    assert run(capsys, "ring")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "ring", "--p", "3", "--k", "1", "--b", "two")[0] == 2
    assert run(capsys, "order", "--p", "3", "--k", "1", "--m", "0")[0] == 2


def test_order(capsys):
    code, out, _ = run(capsys, "order", "--p", "3", "--k", "1", "--m", "1", "--format", "json")
    assert code == 0
    rows = {r["name"]: r for r in json.loads(out)["entries"][0]["reports"]}
    assert rows["unitary_order_radical_form"]["formula_value"] == "72"
    assert rows["unitary_order_skew_form"]["formula_value"] == "72"
    assert rows["unitary_order_radical_form"]["oracle_value"] is None


def test_order_m3_oracle_rows_skipped(capsys):
    code, out, _ = run(capsys, "order", "--p", "3", "--k", "1", "--m", "3", "--oracle",
                       "--format", "json")
    assert code == 0
    rows = {r["name"]: r for r in json.loads(out)["entries"][0]["reports"]}
    assert rows["unitary_order_radical_form"]["match"] is None
    assert rows["unitary_order_radical_form"]["note"].startswith("skipped")


def test_count_with_oracle(capsys):
    code, out, _ = run(capsys, "count", "--p", "3", "--k", "1", "--m", "1", "--oracle",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    names = {r["name"]: r for r in rows}
    for key in ("basis_vectors[s=0|1]", "symplectic_pairs", "stabilizer_order"):
        assert names[key]["match"] == "true"
    assert list(rows[0]) == ["ring", "m", *orders.CSV_COLUMNS]


def test_basis(tmp_path, capsys):
    gram = tmp_path / "gram.txt"
    gram.write_text("0|1 1|0\n2|0 0|1\n")
    code, out, _ = run(capsys, "basis", "--p", "3", "--k", "1", "--gram", str(gram),
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["symplectic"] is True
    assert doc["gram_in_new_basis"] == "0|0 1|0; 2|0 0|0"


def test_basis_rejects_bad_gram(tmp_path, capsys):
    gram = tmp_path / "gram.txt"
    gram.write_text("1|0 0|0\n0|0 1|0\n")
    code, _, err = run(capsys, "basis", "--p", "3", "--k", "1", "--gram", str(gram))
    assert code == 1 and "NotSkewHermitian" in err


def test_lift_and_transport_are_seeded(capsys):
    args = ("lift", "--p", "3", "--k", "2", "--b", "1", "--j", "2", "--m", "2", "--seed", "5",
            "--format", "json")
    code, first, _ = run(capsys, *args)
    assert code == 0 and json.loads(first)["verified"] is True
    assert run(capsys, *args)[1] == first
    args = ("transport", "--p", "3", "--k", "1", "--d", "2", "--sigma", "2", "--m", "2",
            "--seed", "3", "--format", "json")
    code, first, _ = run(capsys, *args)
    assert code == 0 and json.loads(first)["verified"] is True
    assert run(capsys, *args)[1] == first


def test_lift_from_file(tmp_path, capsys):
    matrix = tmp_path / "x.txt"
    matrix.write_text("0|0 1|0\n2|0 0|0\n")
    code, out, _ = run(capsys, "lift", "--p", "3", "--k", "1", "--j", "1",
                       "--matrix", str(matrix), "--format", "json")
    assert code == 0 and json.loads(out)["verified"] is True


def test_transport_inline(capsys):
    code, out, _ = run(capsys, "transport", "--p", "3", "--k", "1", "--u", "1|0 0|0",
                       "--v", "1|0 1|0", "--format", "json")
    assert code == 0
    code, _, err = run(capsys, "transport", "--p", "3", "--k", "1", "--u", "1|0 0|0",
                       "--v", "1|0 0|1")
    assert code == 1 and "LengthMismatch" in err


def test_verify_empty_sweep(tmp_path, capsys):
    sweep = tmp_path / "empty.sweep"
    sweep.write_text("# nothing here\n")
    code, out, _ = run(capsys, "verify", "--sweep", str(sweep), "--format", "json")
    assert code == 0 and json.loads(out) == {"entries": []}


def test_verify_sweep_file(tmp_path, capsys):
    sweep = tmp_path / "small.sweep"
    sweep.write_text("p=3\nk=1\nm=1\n---\np=3\nk=2\nstar_mode=trivial\nm=1\n")
    code, out, _ = run(capsys, "verify", "--sweep", str(sweep), "--format", "json", "--timings")
    assert code == 0
    doc = json.loads(out)
    assert [e["ring"] for e in doc["entries"]] == ["F_3[t]/(t^2)", "Z/9 (trivial *)"]
    assert all("elapsed_ms" in r for r in doc["entries"][0]["reports"])


def test_verify_sweep_diagnostics(tmp_path, capsys):
    sweep = tmp_path / "bad.sweep"
    sweep.write_text("p=3\nk=1\n")
    code, _, err = run(capsys, "verify", "--sweep", str(sweep))
    assert code == 2 and "no m= line" in err
    sweep.write_text("p=3\nk=1\nm=1\n\np=3\nq=1\nm=1\n")
    code, _, err = run(capsys, "verify", "--sweep", str(sweep))
    assert code == 2 and "unknown key 'q'" in err


def test_corrupted_formula_fails_the_run(tmp_path, capsys, monkeypatch):
    real = orders.unitary_order_radical_form
    monkeypatch.setattr(orders, "unitary_order_radical_form", lambda s, m: real(s, m) + 1)
    sweep = tmp_path / "one.sweep"
    sweep.write_text("p=3\nk=1\nm=1\n")
    code, out, _ = run(capsys, "verify", "--sweep", str(sweep))
    assert code == 1
    assert "MISMATCH" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "order", "--p", "3", "--k", "1", "--format", "json",
                       "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["entries"][0]["m"] == "1"


def test_bundled_desk_suite(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["entries"]) == 7
    assert not any(r["match"] is False for e in doc["entries"] for r in e["reports"])
