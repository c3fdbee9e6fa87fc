import os
from pathlib import Path

import numpy as np
import pytest

import cosal

DATA = Path(os.environ.get("COSAL_DATA", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def bundled():
    cosal.set_warning_handler(lambda message: None)
    table = cosal.load_table(DATA / "vectors.vec")
    corpus = cosal.load_stats(DATA / "corpus_stats.json")
    model = cosal.train_text((DATA / "contexts" / "stanford_tech.txt").read_text(), table, corpus)
    yield table, corpus, model
    cosal.set_warning_handler(None)


def test_table_and_model(bundled):
    table, corpus, model = bundled
    assert table.dim == 50
    assert "laser" in table
    assert model.dim == 50
    assert model.scheme == "confidence"
    assert model.p == pytest.approx(cosal.confidence(model.n))
    assert cosal.cosal(model, model.mean) == pytest.approx(0.0, abs=1e-9)
    assert cosal.score_token(model, table, "zzzz-not-a-word") is None


def test_sentence_embedding_is_unit_length(bundled):
    table, _, model = bundled
    v = cosal.embed_sentence(model, table, cosal.tokenize("The laser finds hidden objects."))
    assert v.shape == (50,)
    assert np.linalg.norm(v) == pytest.approx(1.0)


def test_round_trip_and_search(bundled):
    table, _, model = bundled
    target = cosal.embed_sentence(model, table, ["spiderman", "rocks"])
    removed = cosal.remove_component(model, target, table.vector("spiderman"))
    residual = removed.residual / np.linalg.norm(removed.residual)
    assert residual @ table.vector("rocks") >= 0.999
    result = cosal.summarize_sentence(model, table, target, radius=0.01)
    assert sorted(result.tokens) == ["rocks", "spiderman"]


def test_adjusted_cosine_and_solver(bundled):
    table, _, model = bundled
    c = cosal.adjusted_cosine(model, table.vector("cardinal"), table.vector("red"))
    assert -1.0 <= c <= 1.0
    v1, v2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert cosal.best_linear_combination(v1, v2, np.array([0.7, 0.3])) == pytest.approx(0.7)


def test_model_round_trip(bundled, tmp_path):
    table, _, model = bundled
    path = tmp_path / "model.json"
    cosal.save_model(path, model)
    back = cosal.load_model(path)
    v = table.vector("laser")
    assert cosal.cosal(back, v) == pytest.approx(cosal.cosal(model, v))


def test_errors_are_python_exceptions(bundled):
    table, corpus, _ = bundled
    with pytest.raises(cosal.CosalError, match="context too small"):
        cosal.train_context([["laser"]], table, corpus)
    with pytest.raises(cosal.ParseError):
        cosal.load_stats(DATA / "vectors.vec")
