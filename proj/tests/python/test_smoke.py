import os
import pathlib

import pytest

import obo

DATA = pathlib.Path(os.environ.get("OBO_TEST_DATA", pathlib.Path(__file__).parents[1] / "fixtures"))


def listing(n):
    return (DATA / f"listing{n}_method.java").read_text()


def test_java_hash():
    assert obo.java_string_hash("") == 0
    assert obo.java_string_hash("Ab") == 2113
    assert obo.java_string_hash("Aa") == obo.java_string_hash("BB")


def test_normalize():
    assert obo.normalize_terminal("setContents") == "set|contents"
    assert obo.normalize_terminal('"hi"') == "STR"


def test_sites_and_mutation():
    m = obo.parse_method(listing(1))
    sites = obo.comparator_sites(m)
    assert [(s["statement"], s["comparator"]) for s in sites] == [("FOR", "less")]
    original, mutated = obo.mutate_site(m, 0, "Listing::setContents#0")
    assert original.label == 0 and mutated.label == 1
    assert original.context == "FORless"
    assert mutated.source + "\n" == listing(2)
    pair = obo.mutate_method(m, "Listing::setContents#0", seed=3)
    assert pair[1].source == mutated.source
    assert obo.mutate_method(m, "x", only_context="IF") is None


def test_parse_error():
    with pytest.raises(obo.ParseError):
        obo.parse_file("class {", "Broken.java")


def test_paths():
    m = obo.parse_method("int f(int a) { return a + 1; }")
    paths = obo.extract_paths(m)
    assert ("int", "PrimitiveType^Parameter_SimpleName", "a") in paths
    assert ("a", "NameExpr^BinaryExpr:plus_IntegerLiteralExpr", "1") in paths
    # 15 terminal pairs; return type -> body operands span width 3 and are cut
    assert len(paths) == 13
    assert len(obo.extract_paths(m, max_length=3)) < len(paths)


def test_corpus_pipeline(tmp_path):
    records = obo.mutate_directory(DATA / "methods", seed=5)
    labels = [r.label for r in records]
    assert labels.count(0) == labels.count(1) > 50
    train, val, test = obo.split_by_project(records, seed=5)
    assert len(train) + len(val) + len(test) == len(records)
    vocab = obo.build_vocabulary(train)
    assert vocab.token_count > 2 and vocab.path_count > 2

    vocab.save(tmp_path / "vocab.tsv")
    assert obo.Vocabulary.load(tmp_path / "vocab.tsv").token_count == vocab.token_count

    enc = [obo.encode(r, vocab, seed=5) for r in records[:40]]
    assert all(1 <= len(e.contexts) <= 200 for e in enc)

    cfg = obo.TrainConfig()
    cfg.seed = 5
    cfg.max_epochs = 3
    cfg.embed_dim = 16
    seen = []
    result = obo.train(enc, enc, vocab, cfg, on_epoch=seen.append)
    assert len(seen) == len(result.history) >= 1
    assert 1 <= result.best_epoch <= len(result.history)

    model = result.model
    p = model.predict(enc[0])
    assert 0.0 < p < 1.0
    alpha = model.attention(enc[0].contexts)
    assert sum(alpha) == pytest.approx(1.0, abs=1e-9)

    model.save(tmp_path / "model.bin")
    assert obo.Model.load(tmp_path / "model.bin") == model

    m = obo.evaluate(model, enc)
    assert m.total == len(enc)
    csv = obo.report(model, enc, group_by="statement")
    assert csv.startswith("context_type,tp,tn,fp,fn,total,accuracy,recall,precision,f1\n")
    assert "\nTotal," in csv


def test_metrics_row():
    m = obo.Metrics.from_counts(15906, 177, 573, 2016)
    assert m.accuracy == pytest.approx(0.8613, abs=1e-4)
    assert m.recall == pytest.approx(0.8875, abs=1e-4)
    assert m.precision == pytest.approx(0.9652, abs=1e-4)
    assert m.f1 == pytest.approx(0.9247, abs=1e-4)


def test_model_basics():
    model = obo.Model.init(10, 10, embed_dim=4, seed=1)
    t = [obo.Triple(2, 3, 4)]
    assert model.attention(t) == [1.0]
    with pytest.raises(obo.InvalidId):
        model.predict([obo.Triple(10, 1, 1)])
