"""Pun location candidates, context lookup, and phonetic ranking of targets."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .langmodel import BOS, EOS, UNK, BigramModel, ContextWord
from .lexicon import LanguageTag, Lexicon, TaggedToken, tag_tokens
from .phonetics import (
    DEFAULT_COSTS,
    CostModel,
    NotInDictionary,
    PhoneticForm,
    TransliterationError,
    devanagari_to_wx,
    english_to_wx,
    min_phonetic_distance,
    orthographic_distance,
    wx_to_roman,
)
from .text import tokenize


class Reason(str, enum.Enum):
    LANGUAGE_BOUNDARY = "LanguageBoundary"
    NAMED_ENTITY = "NamedEntity"
    OOV = "OOV"
    AMBIGUOUS_WORD = "AmbiguousWord"


class Classification(str, enum.Enum):
    INTRA_SENTENTIAL = "IntraSentential"
    SUSPECTED_INTRA_WORD = "SuspectedIntraWord"


ENGLISH, HINDI = "english", "hindi"
_RESOLVED = {LanguageTag.ENGLISH: ENGLISH, LanguageTag.HINDI: HINDI}


@dataclass(frozen=True)
class PunCandidate:
    index: int
    reasons: tuple[Reason, ...]
    analyses: tuple[LanguageTag, ...]


@dataclass(frozen=True)
class TargetHypothesis:
    pun_index: int
    pun_word: str
    target_word: str
    target_language: str
    side: str
    lm_log_prob: float
    distance: float
    score: float
    analysis: LanguageTag

    def sort_key(self):
        return (self.score, -self.lm_log_prob, self.target_word, self.pun_index,
                self.target_language, self.side, self.analysis.value)


@dataclass
class RecoveryResult:
    input: str
    tagged: list[TaggedToken]
    candidates: list[PunCandidate]
    hypotheses: list[TargetHypothesis]
    classification: Classification

    def to_dict(self, lexicon: Lexicon | None = None) -> dict:
        """JSON-ready view; with a lexicon, Hindi targets gain a roman form."""
        hyps = []
        for h in self.hypotheses:
            d = {
                "pun_index": h.pun_index,
                "pun_word": h.pun_word,
                "target_word": h.target_word,
                "target_language": h.target_language,
                "side": h.side,
                "lm_log_prob": _json_float(h.lm_log_prob),
                "distance": _json_float(h.distance),
                "score": _json_float(h.score),
                "analysis": h.analysis.value,
            }
            if lexicon is not None:
                d["target_roman"] = romanize(h.target_word, h.target_language, lexicon)
            hyps.append(d)
        return {
            "input": self.input,
            "tagged": [
                {"index": t.token.index, "surface": t.token.surface, "norm": t.token.norm,
                 "tag": t.tag.value}
                for t in self.tagged
            ],
            "candidates": [
                {"index": c.index, "reasons": [r.value for r in c.reasons],
                 "analyses": [a.value for a in c.analyses]}
                for c in self.candidates
            ],
            "hypotheses": hyps,
            "classification": self.classification.value,
        }


def _json_float(x: float) -> float | None:
    return round(x, 6) if math.isfinite(x) else None


@dataclass
class Resources:
    lexicon: Lexicon
    models: Mapping[str, BigramModel]
    pron_dict: Mapping[str, list[tuple[str, ...]]]
    pmap: Mapping[str, tuple[str, ...]]
    _forms: dict = field(default_factory=dict, repr=False)

    def english_forms(self, word: str) -> tuple[PhoneticForm, ...]:
        key = (ENGLISH, word)
        if key not in self._forms:
            try:
                self._forms[key] = tuple(english_to_wx(word, self.pron_dict, self.pmap))
            except NotInDictionary:
                self._forms[key] = ()
        return self._forms[key]

    def hindi_forms(self, devanagari: str) -> tuple[PhoneticForm, ...]:
        key = (HINDI, devanagari)
        if key not in self._forms:
            try:
                self._forms[key] = (devanagari_to_wx(devanagari),)
            except TransliterationError:
                self._forms[key] = ()
        return self._forms[key]


@dataclass(frozen=True)
class Settings:
    costs: CostModel = DEFAULT_COSTS
    context_k: int = 200
    top_n: int = 5
    intra_word_threshold: float = 0.45
    lm_blend_weight: float = 0.0


def romanize(word: str, language: str, lexicon: Lexicon) -> str:
    if language != HINDI:
        return word
    keys = lexicon.romanizations(word)
    if keys:
        return keys[0]
    try:
        return wx_to_roman(devanagari_to_wx(word))
    except TransliterationError:
        return word


# --- candidate locations ------------------------------------------------------


def identify_candidates(tagged: Sequence[TaggedToken]) -> list[PunCandidate]:
    reasons: dict[int, set[Reason]] = {}
    resolved = [(t.token.index, _RESOLVED[t.tag]) for t in tagged if t.tag in _RESOLVED]
    for (i, li), (j, lj) in zip(resolved, resolved[1:]):
        if li != lj:
            reasons.setdefault(i, set()).add(Reason.LANGUAGE_BOUNDARY)
            reasons.setdefault(j, set()).add(Reason.LANGUAGE_BOUNDARY)
    own = {LanguageTag.NAMED_ENTITY: Reason.NAMED_ENTITY, LanguageTag.OOV: Reason.OOV,
           LanguageTag.AMBIGUOUS: Reason.AMBIGUOUS_WORD}
    tags = {}
    for t in tagged:
        tags[t.token.index] = t.tag
        if t.tag in own:
            reasons.setdefault(t.token.index, set()).add(own[t.tag])
    out = []
    for i in sorted(reasons):
        if tags[i] is LanguageTag.AMBIGUOUS:
            analyses = (LanguageTag.ENGLISH, LanguageTag.HINDI)
        else:
            analyses = (tags[i],)
        rs = tuple(r for r in Reason if r in reasons[i])
        out.append(PunCandidate(i, rs, analyses))
    return out


# --- context lookup -----------------------------------------------------------


def _queries(neighbor: TaggedToken | None, marker: str, lexicon: Lexicon):
    """(language, lm word) pairs to look a neighbor up with."""
    if neighbor is None:
        return [(ENGLISH, marker), (HINDI, marker)]
    word, tag_ = neighbor.token.norm, neighbor.tag
    pairs = []
    if tag_ in (LanguageTag.ENGLISH, LanguageTag.AMBIGUOUS, LanguageTag.NAMED_ENTITY,
                LanguageTag.OOV):
        pairs.append((ENGLISH, word))
    if tag_ in (LanguageTag.HINDI, LanguageTag.AMBIGUOUS):
        pairs.extend((HINDI, sp) for sp in sorted(lexicon.hindi_spellings(word)))
    elif tag_ in (LanguageTag.NAMED_ENTITY, LanguageTag.OOV):
        pairs.append((HINDI, UNK))
    return pairs


def context_words(
    tagged: Sequence[TaggedToken],
    candidate: PunCandidate,
    models: Mapping[str, BigramModel],
    k: int,
    lexicon: Lexicon,
) -> list[ContextWord]:
    """Words the LMs allow at the candidate's slot, left and right kept apart.

    Left context: followers of the preceding word (or ``<s>``). Right context:
    predecessors of the next word (or ``</s>``). Each neighbor is queried in
    the LM of its own language; both LMs when its language is unresolved.
    """
    i = candidate.index
    pos = {t.token.index: t for t in tagged}
    best: dict[tuple[str, str, str], ContextWord] = {}
    for lang, w in _queries(pos.get(i - 1), BOS, lexicon):
        for cw in models[lang].followers(w, k):
            _keep_best(best, cw)
    for lang, w in _queries(pos.get(i + 1), EOS, lexicon):
        for cw in models[lang].predecessors(w, k):
            _keep_best(best, cw)
    return sorted(best.values(), key=lambda c: (c.side, c.language, -c.log_prob, c.word))


def _keep_best(best: dict, cw: ContextWord) -> None:
    key = (cw.side, cw.language, cw.word)
    if key not in best or cw.log_prob > best[key].log_prob:
        best[key] = cw


# --- phonetic ranking ---------------------------------------------------------


def _pun_forms(token_norm: str, analysis: LanguageTag, res: Resources):
    if analysis is LanguageTag.HINDI:
        spellings = sorted(res.lexicon.hindi_spellings(token_norm))
        return tuple(f for sp in spellings for f in res.hindi_forms(sp))
    if analysis in (LanguageTag.ENGLISH, LanguageTag.NAMED_ENTITY):
        return res.english_forms(token_norm)
    return ()


def _allowed_targets(analysis: LanguageTag) -> tuple[str, ...]:
    # the target sits in the other language from the pun word
    if analysis is LanguageTag.ENGLISH:
        return (HINDI,)
    if analysis is LanguageTag.HINDI:
        return (ENGLISH,)
    return (ENGLISH, HINDI)


def target_distance(
    pun_norm: str, pun_forms: Sequence[PhoneticForm], cw: ContextWord, res: Resources,
    costs: CostModel,
) -> float | None:
    if cw.language == HINDI:
        forms = res.hindi_forms(cw.word)
        romans: Iterable[str] = res.lexicon.romanizations(cw.word) or [
            wx_to_roman(f) for f in forms
        ]
    else:
        forms = res.english_forms(cw.word)
        romans = [cw.word]
    if pun_forms and forms:
        return min_phonetic_distance(pun_forms, forms, costs)
    romans = [r for r in romans if r]
    if not romans:
        return None
    return min(orthographic_distance(pun_norm, r, costs) for r in romans)


def score_candidate(
    tagged: Sequence[TaggedToken],
    candidate: PunCandidate,
    res: Resources,
    settings: Settings,
) -> list[TargetHypothesis]:
    token = next(t.token for t in tagged if t.token.index == candidate.index)
    context = context_words(tagged, candidate, res.models, settings.context_k, res.lexicon)
    hyps: list[TargetHypothesis] = []
    for analysis in candidate.analyses:
        pun_forms = _pun_forms(token.norm, analysis, res)
        allowed = _allowed_targets(analysis)
        for cw in context:
            if cw.language not in allowed or cw.word == token.norm:
                continue
            d = target_distance(token.norm, pun_forms, cw, res, settings.costs)
            if d is None:
                continue
            score = d
            if settings.lm_blend_weight and math.isfinite(cw.log_prob):
                score = d - settings.lm_blend_weight * cw.log_prob
            hyps.append(TargetHypothesis(
                candidate.index, token.norm, cw.word, cw.language, cw.side,
                cw.log_prob, d, score, analysis,
            ))
    return hyps


def rank(hypotheses: Iterable[TargetHypothesis], n: int | None = None) -> list[TargetHypothesis]:
    """Best hypothesis per (location, target), then a total order."""
    best: dict[tuple, TargetHypothesis] = {}
    for h in hypotheses:
        key = (h.pun_index, h.target_language, h.target_word)
        if key not in best or h.sort_key() < best[key].sort_key():
            best[key] = h
    out = sorted(best.values(), key=TargetHypothesis.sort_key)
    return out if n is None else out[:n]


def recover(
    text: str, res: Resources, settings: Settings = Settings(), n: int | None = None
) -> RecoveryResult:
    """Tag, locate, look up context, and rank pun targets for one text."""
    n = settings.top_n if n is None else n
    tagged = tag_tokens(tokenize(text), res.lexicon)
    if not tagged:
        return RecoveryResult(text, [], [], [], Classification.INTRA_SENTENTIAL)
    candidates = identify_candidates(tagged)
    scored = [h for c in candidates for h in score_candidate(tagged, c, res, settings)]
    hypotheses = rank(scored, n)
    classification = Classification.INTRA_SENTENTIAL
    # a portmanteau lives inside the OOV token: nothing in context sounds like it
    oov = {c.index for c in candidates if Reason.OOV in c.reasons}
    if oov:
        best = min((h.distance for h in scored if h.pun_index in oov), default=math.inf)
        if best > settings.intra_word_threshold:
            classification = Classification.SUSPECTED_INTRA_WORD
    return RecoveryResult(text, tagged, candidates, hypotheses, classification)
