import json

import pytest

from conftest import DESK, GOLD
from punrecover import langmodel as lm
from punrecover.cli import main
from punrecover.config import ENV_VAR


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def corpus(tmp_path):
    p = tmp_path / "corpus.txt"
    p.write_text("the cat sat\nthe dog\n", encoding="utf-8")
    return p


def test_build_lexicon(tmp_path, corpus, capsys):
    out = tmp_path / "lex"
    code, stdout, _ = run(capsys, "build-lexicon", str(corpus), str(out), "--min-count", "1")
    assert code == 0 and "english words: 4" in stdout
    assert (out / "english_words.txt").read_text().splitlines() == ["cat", "dog", "sat", "the"]
    first = (out / "english_words.txt").read_bytes(), (out / "named_entities.txt").read_bytes()
    run(capsys, "build-lexicon", str(corpus), str(out), "--min-count", "1")
    assert ((out / "english_words.txt").read_bytes(),
            (out / "named_entities.txt").read_bytes()) == first


def test_build_lexicon_unreadable(tmp_path, capsys):
    code, _, err = run(capsys, "build-lexicon", str(tmp_path / "ghost.txt"), str(tmp_path))
    assert code != 0 and "ghost.txt" in err


def test_train_lm_round_trip(tmp_path, corpus, capsys):
    out = tmp_path / "m.bgm"
    code, stdout, _ = run(capsys, "train-lm", str(corpus), "english", str(out),
                          "--min-count", "1", "--json")
    assert code == 0
    stats = json.loads(stdout)
    mem = lm.train(corpus.read_text().splitlines(), "english", min_count=1)
    assert stats == {"vocab": len(mem.vocab), "bigram_types": mem.total_bigram_types}
    disk = lm.load(out)
    for h in mem.vocab:
        for w in mem.vocab:
            assert disk.prob(h, w) == mem.prob(h, w)


def test_train_lm_bad_language(tmp_path, corpus):
    with pytest.raises(SystemExit) as e:
        main(["train-lm", str(corpus), "french", str(tmp_path / "m.bgm")])
    assert e.value.code == 2


def test_train_lm_empty_corpus(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    out = tmp_path / "m.bgm"
    code, _, err = run(capsys, "train-lm", str(empty), "hindi", str(out))
    assert code != 0 and "empty" in err
    assert not out.exists()


def test_recover_examples(capsys):
    code, out, _ = run(capsys, "recover", "Grand Salaam")
    top = next(line for line in out.splitlines() if line.startswith(" 1."))
    assert code == 0 and "-> slam " in top
    code, out, _ = run(capsys, "recover", "Doodh Morning!")
    top = next(line for line in out.splitlines() if line.startswith(" 1."))
    assert "-> good " in top


def test_recover_empty(capsys):
    code, out, _ = run(capsys, "recover", "", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["hypotheses"] == [] and data["tagged"] == []


def test_recover_json_stable(capsys):
    _, one, _ = run(capsys, "recover", "Aa bail mujhe maar.", "--json", "--top-n", "3")
    _, two, _ = run(capsys, "recover", "Aa bail mujhe maar.", "--json", "--top-n", "3")
    assert one == two
    data = json.loads(one)
    assert len(data["hypotheses"]) == 3
    top = data["hypotheses"][0]
    assert top["target_word"] == "बैल" and top["target_roman"] in ("bail", "bael")


def test_recover_romanize(capsys):
    _, out, _ = run(capsys, "recover", "Aa bail mujhe maar.", "--romanize")
    top = next(line for line in out.splitlines() if line.startswith(" 1."))
    assert "bail -> bael" in top or "bail -> bail" in top


def test_evaluate(tmp_path, capsys):
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "evaluate", str(GOLD), "--json-out", str(report))
    assert code == 0
    assert "top-5 4/7" in out
    assert "pun3         skipped" in out
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["recovered_topn"] == 4 and data["skipped"] == ["pun3", "pun4"]


def _config_with(tmp_path, **overrides):
    text = (DESK / "desk.conf").read_text(encoding="utf-8")
    lines = []
    for line in text.splitlines():
        key = line.split("=", 1)[0].strip()
        if key in overrides:
            line = f"{key} = {overrides[key]}"
        elif "=" in line and not line.startswith("#"):
            k, v = (s.strip() for s in line.split("=", 1))
            if k.endswith(("_lexicon", "_list", "_dict", "_map", "_lm")):
                line = f"{k} = {(DESK / v).resolve()}"
        lines.append(line)
    p = tmp_path / "alt.conf"
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return p


def test_evaluate_missing_lm(tmp_path, capsys):
    conf = _config_with(tmp_path, hindi_lm=tmp_path / "gone.bgm")
    code, _, err = run(capsys, "evaluate", str(GOLD), "--config", str(conf))
    assert code != 0 and "gone.bgm" in err


def test_evaluate_only_intra_word(tmp_path, capsys):
    gold = tmp_path / "g.jsonl"
    gold.write_text(json.dumps({"id": "w", "text": "Rajnitea?", "pun": "Rajnitea",
                                "targets": ["rajneeti"], "category": "intra_word"}) + "\n",
                    encoding="utf-8")
    code, out, _ = run(capsys, "evaluate", str(gold), "--json")
    data = json.loads(out)
    assert code == 0 and data["skipped"] == ["w"] and data["total"] == 0


def test_env_config(tmp_path, monkeypatch, capsys):
    conf = _config_with(tmp_path, top_n=2)
    monkeypatch.setenv(ENV_VAR, str(conf))
    _, out, _ = run(capsys, "recover", "Grand Salaam", "--json")
    assert len(json.loads(out)["hypotheses"]) == 2


def test_bad_gold(tmp_path, capsys):
    gold = tmp_path / "g.jsonl"
    gold.write_text('{"id": "x"}\n', encoding="utf-8")
    code, _, err = run(capsys, "evaluate", str(gold))
    assert code != 0 and "'x'" in err


def test_bundled_resources_rebuild_identically(tmp_path, capsys):
    """The shipped lexicon files and models come out of the CLI unchanged."""
    out = tmp_path / "lex"
    assert run(capsys, "build-lexicon", str(DESK / "english_corpus.txt.gz"), str(out))[0] == 0
    for name in ("english_words.txt", "named_entities.txt"):
        assert (out / name).read_bytes() == (DESK / name).read_bytes()
    for lang in ("english", "hindi"):
        model = tmp_path / f"{lang}.bgm"
        assert run(capsys, "train-lm", str(DESK / f"{lang}_corpus.txt.gz"), lang,
                   str(model))[0] == 0
        assert model.read_bytes() == (DESK / f"{lang}.bgm").read_bytes()
