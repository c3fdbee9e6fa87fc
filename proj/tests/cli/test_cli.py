import csv
import io
import json
import os
import subprocess
from pathlib import Path

import pytest

BIN = os.environ.get("COSAL_BIN", "cosal")
DATA = Path(os.environ.get("COSAL_DATA", Path(__file__).resolve().parents[2] / "data"))


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("COSAL_VECTORS", None)
    full_env.pop("COSAL_CORPUS_STATS", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env)


def common():
    return ["--vectors", DATA / "vectors.vec", "--corpus-stats", DATA / "corpus_stats.json"]


@pytest.fixture(scope="module")
def model(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "tech.json"
    out = run(*common(), "train", "--context", DATA / "contexts" / "stanford_tech.txt", "-o", path)
    assert out.returncode == 0, out.stderr
    summary = json.loads(out.stdout)
    assert summary["n"] > 0
    return path


def test_score_word_emits_one_csv_row(model):
    out = run(*common(), "score", "--model", model, "--word", "the")
    assert out.returncode == 0, out.stderr
    rows = list(csv.reader(io.StringIO(out.stdout)))
    assert rows[0] == ["token", "score"]
    assert len(rows) == 2
    assert rows[1][0] == "the"
    assert float(rows[1][1]) > 0.0


def test_vectors_from_environment(model):
    out = run("score", "--model", model, "--word", "laser",
              env={"COSAL_VECTORS": str(DATA / "vectors.vec")})
    assert out.returncode == 0, out.stderr
    assert out.stdout.splitlines()[1].startswith("laser,")


def test_unknown_flag_exits_2_with_usage():
    out = run("--no-such-flag")
    assert out.returncode == 2
    assert "Usage" in out.stderr or "usage" in out.stderr.lower()
    assert out.stdout == ""


def test_one_word_context_is_too_small(tmp_path):
    context = tmp_path / "one.txt"
    context.write_text("laser\n")
    out = run(*common(), "train", "--context", context, "-o", tmp_path / "m.json")
    assert out.returncode == 1
    last = out.stderr.strip().splitlines()[-1]
    error = json.loads(last)
    assert error["error"] == "context too small"
    assert out.stdout == ""


def test_adjcos_is_json(model):
    out = run(*common(), "adjcos", "--model", model, "--word1", "cardinal", "--word2", "red")
    assert out.returncode == 0, out.stderr
    result = json.loads(out.stdout)
    assert -1.0 <= result["cosine"] <= 1.0


def test_summarize_sentence_reproduces_two_words(model):
    out = run(*common(), "summarize-sentence", "--model", model, "--text", "spiderman rocks", "--radius", "0.01")
    assert out.returncode == 0, out.stderr
    result = json.loads(out.stdout)
    assert sorted(result["tokens"]) == ["rocks", "spiderman"]


def test_embed_writes_tsv(model, tmp_path):
    sentences = tmp_path / "s.txt"
    sentences.write_text("the laser finds hidden objects\nthe green plant\n")
    out = run(*common(), "embed", "--model", model, "--input", sentences)
    assert out.returncode == 0, out.stderr
    lines = out.stdout.strip().splitlines()
    assert len(lines) == 2
    fields = lines[0].split("\t")
    assert fields[0] == "0"
    assert len(fields) == 51
