import json
import random
from dataclasses import replace

import pytest

from punrecover import langmodel as lm
from punrecover.lexicon import LanguageTag, Lexicon, TaggedToken
from punrecover.recovery import (
    ENGLISH,
    HINDI,
    Classification,
    PunCandidate,
    Reason,
    Settings,
    context_words,
    identify_candidates,
    recover,
)
from punrecover.text import Token

T = LanguageTag


def tagged(*pairs):
    return [TaggedToken(Token(w, w, i), t) for i, (w, t) in enumerate(pairs)]


def test_boundary_candidates():
    cands = identify_candidates(tagged(("grand", T.ENGLISH), ("salaam", T.HINDI)))
    assert [(c.index, c.reasons) for c in cands] == [
        (0, (Reason.LANGUAGE_BOUNDARY,)), (1, (Reason.LANGUAGE_BOUNDARY,))]


def test_monolingual_has_no_candidates():
    assert identify_candidates(tagged(("the", T.ENGLISH), ("cat", T.ENGLISH))) == []


def test_ambiguous_two_analyses():
    seq = tagged(("phir", T.HINDI), ("zeal", T.AMBIGUOUS), ("hai", T.HINDI), ("x", T.HINDI))
    [c] = identify_candidates(seq)
    assert c.index == 1 and c.reasons == (Reason.AMBIGUOUS_WORD,)
    assert c.analyses == (T.ENGLISH, T.HINDI)


def test_transparent_tokens_at_boundaries():
    seq = tagged(("greece", T.NAMED_ENTITY), ("eu", T.OOV), ("ro", T.HINDI),
                 ("mat", T.HINDI), ("wow", T.OOV), ("yes", T.ENGLISH))
    got = {c.index: c.reasons for c in identify_candidates(seq)}
    assert got[0] == (Reason.NAMED_ENTITY,)
    assert got[1] == (Reason.OOV,)
    assert got[3] == (Reason.LANGUAGE_BOUNDARY,)
    assert got[5] == (Reason.LANGUAGE_BOUNDARY,)
    assert 2 not in got


def _random_sequence(rng):
    return tagged(*[(f"w{i}", rng.choice(list(T))) for i in range(rng.randint(1, 12))])


def test_candidate_invariants_random():
    rng = random.Random(3)
    for _ in range(300):
        seq = _random_sequence(rng)
        for c in identify_candidates(seq):
            assert c.reasons
            assert (len(c.analyses) == 2) == (Reason.AMBIGUOUS_WORD in c.reasons)


@pytest.fixture
def toy_models():
    en = lm.train(["the dog ran", "the cat ran", "a dog sat", "the dog sat"], ENGLISH,
                  min_count=1)
    hi = lm.train(["दिल है", "दिल से", "मेरा दिल है", "यह है"], HINDI, min_count=1)
    return {ENGLISH: en, HINDI: hi}


@pytest.fixture
def toy_lex():
    return Lexicon(frozenset({"the", "dog", "cat", "ran", "sat", "a", "hai"}),
                   {"hai": frozenset({"है"}), "dil": frozenset({"दिल"})})


def test_context_sentence_start(toy_models, toy_lex):
    seq = tagged(("zzz", T.OOV), ("dog", T.ENGLISH))
    cws = context_words(seq, PunCandidate(0, (Reason.OOV,), (T.OOV,)), toy_models, 50, toy_lex)
    left = {(c.language, c.word) for c in cws if c.side == "left"}
    assert left == ({(ENGLISH, c.word) for c in toy_models[ENGLISH].followers(lm.BOS, 50)}
                    | {(HINDI, c.word) for c in toy_models[HINDI].followers(lm.BOS, 50)})
    right = [c for c in cws if c.side == "right"]
    assert {c.language for c in right} == {ENGLISH}
    assert {"the", "a"} <= {c.word for c in right}


def test_context_ambiguous_neighbor_queries_both(toy_models, toy_lex):
    seq = tagged(("hai", T.AMBIGUOUS), ("zzz", T.OOV))
    cws = context_words(seq, PunCandidate(1, (Reason.OOV,), (T.OOV,)), toy_models, 50, toy_lex)
    left = [c for c in cws if c.side == "left"]
    en = {c.word for c in toy_models[ENGLISH].followers("hai", 50)}
    hi = {c.word for c in toy_models[HINDI].followers("है", 50)}
    assert {c.word for c in left if c.language == ENGLISH} == en
    assert {c.word for c in left if c.language == HINDI} == hi
    # sides are looked up independently and never intersected
    assert {c.side for c in cws} == {"left", "right"}


def test_doodh_context_has_good(desk):
    res = recover("Doodh Morning!", desk)
    seq = res.tagged
    c = next(c for c in res.candidates if c.index == 0)
    cws = context_words(seq, c, desk.models, 200, desk.lexicon)
    assert any(w.word == "good" and w.side == "right" and w.language == ENGLISH for w in cws)


@pytest.mark.parametrize("text, pun, target", [
    ("Grand Salaam", "salaam", "slam"),
    ("Phir bhi zeal hai Hindustani", "zeal", "दिल"),
    ("Aa bail mujhe maar", "bail", "बैल"),
    ("Doodh Morning!", "doodh", "good"),
])
def test_recover_examples(desk, desk_config, text, pun, target):
    top = recover(text, desk, desk_config.settings()).hypotheses[0]
    assert (top.pun_word, top.target_word) == (pun, target)


def test_recover_empty(desk):
    r = recover("", desk)
    assert r.hypotheses == [] and r.classification is Classification.INTRA_SENTENTIAL
    r = recover("grand prix", desk)
    assert r.candidates == [] and r.hypotheses == []


@pytest.mark.parametrize("text, flagged", [
    ("Rajnitea?", True),
    ("Facebhukh with Amul, Mark", True),
    ("Fast food ho ya sulu food.", False),
    ("Grand Salaam", False),
])
def test_intra_word_flag(desk, desk_config, text, flagged):
    r = recover(text, desk, desk_config.settings())
    assert (r.classification is Classification.SUSPECTED_INTRA_WORD) == flagged
    assert r.hypotheses  # reported, still ranked


def test_hypothesis_soundness_and_order(desk):
    settings = Settings(top_n=50)  # plain distance ranking
    r = recover("Phir bhi zeal hai Hindustani", desk, settings)
    by_index = {c.index: c for c in r.candidates}
    for h in r.hypotheses:
        cws = context_words(r.tagged, by_index[h.pun_index], desk.models, settings.context_k,
                            desk.lexicon)
        assert (h.target_word, h.target_language, h.side) in {
            (c.word, c.language, c.side) for c in cws}
        assert 0.0 <= h.distance <= 1.0
    keys = [h.sort_key() for h in r.hypotheses]
    assert keys == sorted(keys)
    for i in {h.pun_index for h in r.hypotheses}:
        ds = [h.distance for h in r.hypotheses if h.pun_index == i]
        assert ds == sorted(ds)


def test_targets_cross_languages(desk):
    r = recover("Grand Salaam", desk, Settings(top_n=100))
    for h in r.hypotheses:
        analysis_lang = {T.ENGLISH: ENGLISH, T.HINDI: HINDI}.get(h.analysis)
        assert h.target_language != analysis_lang
        assert h.target_word != h.pun_word


def test_deterministic_json(desk, desk_config):
    one = json.dumps(recover("Greece, EU ro mat.", desk, desk_config.settings()).to_dict(
        desk.lexicon), sort_keys=True, ensure_ascii=False)
    two = json.dumps(recover("Greece, EU ro mat.", desk, desk_config.settings()).to_dict(
        desk.lexicon), sort_keys=True, ensure_ascii=False)
    assert one == two


def test_blend_weight_changes_score_only(desk):
    plain = recover("Grand Salaam", desk, Settings())
    blended = recover("Grand Salaam", desk, replace(Settings(), lm_blend_weight=0.05))
    h = blended.hypotheses[0]
    assert h.score == pytest.approx(h.distance - 0.05 * h.lm_log_prob)
    assert plain.hypotheses[0].score == plain.hypotheses[0].distance
