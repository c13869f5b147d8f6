import json

import pytest

from conftest import CAR_BOMB, KUCHMA
from tempus import __version__
from tempus.cli import main
from tempus.corpus import dumps_jsonl, generate_corpus
from tempus.pipeline import MissingDCTError, annotate_text, evaluate_corpus


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def test_annotate_example_one_json(write, capsys):
    assert main(["annotate", write("kuchma.txt", KUCHMA), "--dct", "1998-02-27"]) == 0
    data = json.loads(capsys.readouterr().out)
    timexes = [n for n in data["graph"]["nodes"] if n["kind"] == "timex"]
    assert [(t["text"], t["value"]) for t in timexes] == [("February 27, 1998", "1998-02-27")]
    assert data["schema_version"] == 1 and data["id"] == "kuchma"


def test_annotate_example_two_dot(write, capsys):
    assert main(["annotate", write("car.txt", CAR_BOMB), "--dct", "2018-05-15", "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    ids = {}
    for line in dot.splitlines():
        if "[label=" in line and "->" not in line:
            ids[line.split('"')[1]] = line.split()[0]
    assert f'{ids["exploded"]} -> {ids["died"]} [label="before"];' in dot


def test_empty_file_gives_empty_record(write, capsys):
    assert main(["annotate", write("empty.txt", ""), "--dct", "2018-05-15"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["graph"] == {"nodes": [], "ee_edges": [], "et_edges": []}
    assert data["timeline"]["groups"] == []


def test_exit_codes(write, tmp_path, capsys):
    txt = write("a.txt", "It rained.")
    assert main(["annotate", txt]) == 2
    assert "DCT" in capsys.readouterr().err
    assert main(["annotate", txt, "--dct", "yesterday"]) == 2
    assert main(["annotate", str(tmp_path / "missing.txt"), "--dct", "2018-05-15"]) == 2
    assert main(["annotate", txt, "--dct", "2018-05-15", "--models", str(tmp_path)]) == 3
    assert main(["eval", write("bad.jsonl", "{nope\n")]) == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_multiple_inputs_and_formats(write, tmp_path, capsys):
    a, b = write("a.txt", KUCHMA), write("b.txt", CAR_BOMB)
    assert main(["annotate", a, b, "--dct", "2018-05-15", "--jobs", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [json.loads(l)["id"] for l in lines] == ["a", "b"]
    out = tmp_path / "html"
    assert main(["annotate", a, b, "--dct", "2018-05-15", "--format", "html", "-o", str(out)]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["a.html", "b.html"]
    assert main(["annotate", b, "--dct", "2018-05-15", "--format", "text", "--figures", str(tmp_path / "fig")]) == 0
    assert capsys.readouterr().out.startswith("# schema_version: 1\n")
    assert (tmp_path / "fig" / "b_timeline.png").read_bytes()[:4] == b"\x89PNG"


def test_rules_only_needs_no_models(write, tmp_path, capsys):
    txt = write("a.txt", "We met yesterday.")
    assert main(["annotate", txt, "--dct", "2018-05-15", "--rules-only", "--models", str(tmp_path)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [n["value"] for n in data["graph"]["nodes"]] == ["2018-05-14"]


def test_jsonl_input_uses_record_dct(write, capsys):
    recs = generate_corpus(2, seed=4)
    assert main(["annotate", write("c.jsonl", dumps_jsonl(recs))]) == 0
    out = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert [o["dct"] for o in out] == [r.dct for r in recs]


def test_gen_train_eval_roundtrip(tmp_path, capsys):
    corpus = tmp_path / "corpus.jsonl"
    assert main(["gen-corpus", "--docs", "12", "--seed", "2", "-o", str(corpus)]) == 0
    models = tmp_path / "models"
    assert main(["train", "all", str(corpus), "--epochs", "3", "--out", str(models)]) == 0
    assert sorted(p.name for p in models.iterdir()) == ["chunker.model", "events.model", "temprel_ee.model",
                                                        "temprel_et.model", "temprob.tsv"]
    assert main(["train", "temprel", str(corpus), "--epochs", "2", "--models", str(models),
                 "--out", str(tmp_path / "m2")]) == 0
    system = tmp_path / "system.jsonl"
    assert main(["annotate", str(corpus), "--models", str(models), "-o", str(system)]) == 0
    report = tmp_path / "report"
    assert main(["eval", str(corpus), "--system", str(system), "--relaxed", "--out", str(report)]) == 0
    data = json.loads((report / "report.json").read_text())
    assert {"timex_extraction", "ee_system", "ee_system_relaxed"} <= set(data["metrics"])
    assert (report / "report.tsv").read_text().startswith("# schema_version: 1\n")
    assert (report / "prf.png").exists()
    capsys.readouterr()
    assert main(["eval", str(corpus), "--models", str(models)]) == 0
    assert "ee_gold" in capsys.readouterr().out


def test_bench_small(tmp_path, models, capsys):
    assert main(["bench", "--tokens", "2000", "--repeats", "1", "--out", str(tmp_path)]) == 0
    result = json.loads((tmp_path / "bench.json").read_text())
    assert result["tokens"] >= 2000 and result["classifier_calls"] < result["tokens"]
    assert (tmp_path / "bench.tsv").read_text().splitlines()[1] == "system\tseconds\ttokens\ttimexes"
    assert (tmp_path / "bench.png").exists()


def test_annotate_text_requires_dct(models):
    with pytest.raises(MissingDCTError):
        annotate_text("It rained.", None, models)


def test_evaluate_corpus_needs_one_source(models):
    with pytest.raises(ValueError):
        evaluate_corpus(generate_corpus(1), models, system={})
