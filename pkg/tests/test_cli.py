"""End-to-end CLI behavior: exit codes, JSON reports, determinism, replay."""

import json
import re

import pytest

from evslib.cli import main
from evslib.metrics import MetricMatrix, builtin_metric, transform_bounded

FLOAT_PATTERN = re.compile(r"\d+\.\d")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out.strip() else None
    return code, doc, captured.err


def write_json(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


@pytest.fixture
def disc_file(tmp_path):
    return write_json(tmp_path / "disc.json",
                      builtin_metric("discrete", {}, 4).to_json())


def test_validate_pass(capsys, disc_file):
    code, doc, _ = run(capsys, "validate", disc_file)
    assert code == 0
    assert doc["report"]["pass"] is True


def test_validate_fail_carries_violation(capsys, tmp_path):
    bad = write_json(tmp_path / "bad.json",
                     {"labels": ["a", "b"], "rows": [["0", "0"], ["0", "0"]]})
    code, doc, _ = run(capsys, "validate", bad)
    assert code == 1
    assert doc["report"]["violation"]["axiom"] == "identity-of-indiscernibles"


def test_missing_file_is_input_error(capsys):
    code, doc, err = run(capsys, "validate", "no-such-file.json")
    assert code == 2
    assert "no such file" in err


def test_validate_csv(capsys, tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("a,b\n0,1/2\n1/2,0\n", encoding="utf-8")
    code, doc, _ = run(capsys, "validate", str(path))
    assert code == 0


def test_combine_scale_halves_entries(capsys, tmp_path, disc_file):
    code, doc, _ = run(capsys, "combine", "--scale=-1/2", disc_file)
    assert code == 0
    assert doc["report"]["matrix"]["rows"][0][1] == "1/2"


def test_combine_add_writes_output_file(capsys, tmp_path, disc_file):
    out = tmp_path / "sum.json"
    code, doc, _ = run(capsys, "combine", "--add", disc_file, disc_file,
                       "--out", str(out))
    assert code == 0
    saved = json.loads(out.read_text(encoding="utf-8"))
    assert saved["rows"][0][1] == "2/1"


def test_compare_bounded_companion(capsys, tmp_path):
    rho = MetricMatrix.from_rows(("a", "b", "c"),
                                 [[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    f1 = write_json(tmp_path / "rho.json", rho.to_json())
    f2 = write_json(tmp_path / "rb.json", transform_bounded(rho).to_json())
    code, doc, _ = run(capsys, "compare", f1, f2)
    assert code == 0
    assert doc["report"]["classification"] == "mutually-dependent"
    assert doc["report"]["sandwich"]["lowerHolds"] is True


def test_builtin_emits_matrix(capsys):
    code, doc, _ = run(capsys, "builtin", "kappa", "--depth", "21",
                       "--step", "1/10")
    assert code == 0
    assert doc["report"]["matrix"]["labels"][0] == "x1"


def test_builtin_bad_params_exit_two(capsys):
    code, _, err = run(capsys, "builtin", "kappa", "--depth", "10")
    assert code == 2 and "odd" in err


def test_partial_compare_trend(capsys):
    code, doc, _ = run(capsys, "partial-compare", "--first", "discrete",
                       "--second", "shrinking", "--depths", "10,25,50")
    assert code == 0
    assert doc["report"]["upperBounds"] == ["1/90", "1/600", "1/2450"]
    assert doc["report"]["nonincreasing"] is True


def test_partial_compare_usual_alias_on_kappa_grid(capsys):
    code, doc, _ = run(capsys, "partial-compare", "--first", "kappa",
                       "--second", "usual", "--depths", "11,21,41")
    assert code == 0
    assert doc["report"]["upperBounds"] == ["1/10", "1/20", "1/40"]


def test_cauchy_demo(capsys, tmp_path):
    pairs = write_json(tmp_path / "pairs.json",
                       [[[0, 0], [0, 1]], [[1, 0], [2, 5]]])
    code, doc, _ = run(capsys, "cauchy-demo", "--indices", "10,20,40",
                       "--pairs", pairs)
    assert code == 0
    assert doc["report"]["demonstratesIncompleteness"] is True


def test_norms_partition_and_weights(capsys, tmp_path):
    code, doc, _ = run(capsys, "norms", "partition", "--depth", "12")
    assert code == 0
    assert doc["report"]["assignment"]["h1"] == "d(h0,1)"

    spec = write_json(tmp_path / "p.json",
                      {"depth": 12, "subsetC": ["h0"], "gamma": "2"})
    code, doc, _ = run(capsys, "norms", "weights", "--spec", spec)
    assert code == 0
    assert doc["report"]["weights"]["h1"] == "2/1"


def test_norms_eval(capsys, tmp_path):
    spec = write_json(tmp_path / "p.json",
                      {"depth": 12, "subsetC": ["h0"], "gamma": "2"})
    vec = write_json(tmp_path / "v.json", {"e(h0,5)": "1"})
    code, doc, _ = run(capsys, "norms", "eval", "--spec", spec, "--vector", vec)
    assert code == 0
    assert doc["report"]["value"] == "1/32"


def test_norms_witness_reaches_spec_ratio(capsys, tmp_path):
    p = write_json(tmp_path / "p.json",
                   {"depth": 12, "subsetC": ["h0"], "gamma": "2"})
    q = write_json(tmp_path / "q.json",
                   {"depth": 12, "subsetC": ["h2"], "gamma": "2"})
    code, doc, _ = run(capsys, "norms", "witness", "--spec", p, "--spec", q,
                       "--eps", "1/1000")
    assert code == 0
    direction = doc["report"]["firstRelativeToSecond"]
    assert direction["index"] == 10
    assert direction["ratioAtIndex"] == "1/1024"


def test_norms_embed(capsys, tmp_path):
    w = write_json(tmp_path / "w.json", {"h0": "1", "h1": "3"})
    pts = write_json(tmp_path / "pts.json",
                     [{}, {"h0": "1"}, {"h1": "2"}])
    code, doc, _ = run(capsys, "norms", "embed", "--weights", w, "--points", pts)
    assert code == 0
    assert doc["report"]["matrix"]["rows"][0][2] == "6/1"
    assert doc["report"]["validation"]["pass"] is True


def test_axioms_deterministic_for_fixed_seed(capsys):
    args = ("axioms", "--instance", "metrics", "--seed", "0",
            "--sample", "12", "--carrier", "4")
    code1, doc1, _ = run(capsys, *args)
    code2, doc2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert doc1 == doc2


def test_axioms_mutant_fails_with_exit_one(capsys):
    code, doc, _ = run(capsys, "axioms", "--instance", "metrics-reversed-order",
                       "--seed", "0", "--sample", "12", "--carrier", "4")
    assert code == 1
    failed = [e for e in doc["report"]["axioms"] if e["status"] == "fail"]
    assert any(e["axiom"] == "A6" for e in failed)
    assert all("counterexample" in e for e in failed)


def test_axioms_with_properties(capsys):
    code, doc, _ = run(capsys, "axioms", "--instance", "cone", "--seed", "0",
                       "--sample", "12", "--dim", "2", "--properties")
    assert code == 0
    props = {p["axiom"]: p["status"] for p in doc["report"]["properties"]}
    assert props["zero-primitive"] == "fail"
    assert props["single-primitive"] == "pass"


def make_metric_universe(tmp_path, count=4):
    labels = ("x1", "x2", "x3", "x4")
    import random

    from evslib.metrics import random_metric

    rng = random.Random(3)
    refs = []
    for k in range(count):
        m = random_metric(rng, labels)
        write_json(tmp_path / f"u{k}.json", m.to_json())
        refs.append(f"u{k}.json")
    manifest = write_json(tmp_path / "universe.json",
                          {"instance": "metrics", "elements": refs})
    return manifest, labels


def test_order_in_l_and_generates(capsys, tmp_path):
    manifest, labels = make_metric_universe(tmp_path)
    disc = write_json(tmp_path / "disc.json",
                      builtin_metric("discrete", {}, 4).to_json())
    code, doc, _ = run(capsys, "order", "in-l", "--universe", manifest,
                       "--x", disc, "--y", str(tmp_path / "u0.json"))
    assert code == 0
    assert doc["report"]["status"] == "positive"

    code, doc, _ = run(capsys, "order", "generates", "--universe", manifest,
                       "--generator", disc)
    assert code == 0
    assert doc["report"]["status"] == "pass"


def test_order_indep_fails_on_dependent_universe(capsys, tmp_path):
    manifest, _ = make_metric_universe(tmp_path, count=3)
    code, doc, _ = run(capsys, "order", "indep", "--universe", manifest)
    assert code == 1
    assert doc["report"]["status"] == "fail"


def test_order_basis_and_feasible(capsys, tmp_path):
    manifest, _ = make_metric_universe(tmp_path)
    disc = write_json(tmp_path / "disc.json",
                      builtin_metric("discrete", {}, 4).to_json())
    code, doc, _ = run(capsys, "order", "basis", "--universe", manifest,
                       "--generator", disc)
    assert code == 0 and doc["report"]["status"] == "pass"

    code, doc, _ = run(capsys, "order", "feasible", "--universe", manifest,
                       "--x", str(tmp_path / "u0.json"))
    assert code == 0 and doc["report"]["status"] == "pass"


def test_order_norm_family_indep_with_eps(capsys, tmp_path):
    p = write_json(tmp_path / "p.json",
                   {"depth": 12, "subsetC": ["h0"], "gamma": "2"})
    q = write_json(tmp_path / "q.json",
                   {"depth": 12, "subsetC": ["h2"], "gamma": "3"})
    manifest = write_json(tmp_path / "nu.json",
                          {"instance": "norm-family", "depth": 12,
                           "elements": ["p.json", "q.json"]})
    code, doc, _ = run(capsys, "order", "indep", "--universe", manifest,
                       "--eps", "1/1000000")
    assert code == 0
    assert doc["report"]["status"] == "pass-with-eps"


def test_replay_round_trip(capsys, tmp_path, disc_file):
    code, doc, _ = run(capsys, "compare", disc_file, disc_file)
    assert code == 0
    report_file = write_json(tmp_path / "report.json", doc)
    code, replay_doc, _ = run(capsys, "--replay", report_file)
    assert code == 0
    assert replay_doc["match"] is True


def test_replay_detects_tampering(capsys, tmp_path, disc_file):
    code, doc, _ = run(capsys, "compare", disc_file, disc_file)
    doc["report"]["classification"] = "orderly-independent"
    report_file = write_json(tmp_path / "tampered.json", doc)
    code, replay_doc, _ = run(capsys, "--replay", report_file)
    assert code == 1
    assert replay_doc["match"] is False


def test_no_floating_point_in_reports(capsys, tmp_path, disc_file):
    for args in (
        ("validate", disc_file),
        ("combine", "--scale", "1/3", disc_file),
        ("partial-compare", "--first", "discrete", "--second", "shrinking",
         "--depths", "5,10"),
    ):
        code = main(list(args))
        out = capsys.readouterr().out
        assert code == 0
        assert not FLOAT_PATTERN.search(out), args
