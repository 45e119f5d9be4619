"""Gold-set scoring of recovery output, with automatic failure classes."""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .langmodel import BOS, EOS
from .phonetics import orthographic_distance
from .recovery import (
    ENGLISH,
    HINDI,
    Resources,
    Settings,
    TargetHypothesis,
    recover,
)
from .text import has_devanagari, normalize_devanagari, normalize_word, tokenize
from .util import open_text

log = logging.getLogger(__name__)

INTRA_SENTENTIAL, INTRA_WORD = "intra_sentential", "intra_word"


class FailureClass(str, enum.Enum):
    MULTI_WORD_TARGET = "MultiWordTarget"
    ABBREVIATION_PUN = "AbbreviationPun"
    MISSING_BIGRAM = "MissingBigram"
    LOCATION_MISS = "LocationMiss"
    DISTANCE_MISS = "DistanceMiss"
    OTHER = "Other"


class GoldFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GoldRecord:
    id: str
    text: str
    pun: int | str
    targets: tuple[str, ...]
    category: str
    notes: str | None = None


def load_gold(path: str | Path) -> list[GoldRecord]:
    records: list[GoldRecord] = []
    seen: set[str] = set()
    with open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise GoldFormatError(f"{path}:{lineno}: invalid JSON: {e}") from None
            records.append(_record(obj, f"{path}:{lineno}"))
            if records[-1].id in seen:
                raise GoldFormatError(f"{path}:{lineno}: duplicate id {records[-1].id!r}")
            seen.add(records[-1].id)
    return records


def _record(obj, where: str) -> GoldRecord:
    if not isinstance(obj, dict):
        raise GoldFormatError(f"{where}: record must be a JSON object")
    rid = obj.get("id")

    def bad(fieldname: str, why: str):
        return GoldFormatError(f"{where}: record {rid!r}: field {fieldname!r} {why}")

    if not isinstance(rid, str) or not rid:
        raise bad("id", "must be a non-empty string")
    if not isinstance(obj.get("text"), str):
        raise bad("text", "must be a string")
    pun = obj.get("pun")
    if isinstance(pun, bool) or not isinstance(pun, (int, str)) or pun == "":
        raise bad("pun", "must be a token index or a surface string")
    targets = obj.get("targets")
    if (not isinstance(targets, list) or not targets
            or not all(isinstance(t, str) and t.strip() for t in targets)):
        raise bad("targets", "must be a non-empty list of strings")
    if obj.get("category") not in (INTRA_SENTENTIAL, INTRA_WORD):
        raise bad("category", f"must be {INTRA_SENTENTIAL!r} or {INTRA_WORD!r}")
    notes = obj.get("notes")
    if notes is not None and not isinstance(notes, str):
        raise bad("notes", "must be a string")
    return GoldRecord(rid, obj["text"], pun, tuple(targets), obj["category"], notes)


# --- matching -----------------------------------------------------------------


def gold_locations(record: GoldRecord) -> set[int]:
    tokens = tokenize(record.text)
    if isinstance(record.pun, int):
        return {record.pun}
    wanted = {t.norm for t in tokenize(record.pun)}
    return {t.index for t in tokens if t.norm in wanted}


def target_matches(hyp: TargetHypothesis, targets: Iterable[str], res: Resources) -> bool:
    """Case-folded, Hindi romanized by reverse lookup, orthographic classes at 0."""
    if hyp.target_language == HINDI:
        romans = set(res.lexicon.romanizations(hyp.target_word))
    else:
        romans = {hyp.target_word}
    for gold in targets:
        if has_devanagari(gold):
            if normalize_devanagari(gold) == hyp.target_word:
                return True
            continue
        g = normalize_word(gold)
        if not g or len(gold.split()) > 1:
            continue
        if hyp.target_language == ENGLISH and g == hyp.target_word:
            return True
        if hyp.target_language == HINDI and hyp.target_word in res.lexicon.hindi_spellings(g):
            return True
        if any(orthographic_distance(g, r) == 0.0 for r in romans):
            return True
    return False


def _gold_bigram_attested(record: GoldRecord, res: Resources) -> bool:
    tokens = tokenize(record.text)
    by_index = {t.index: t.norm for t in tokens}
    lex = res.lexicon
    for loc in gold_locations(record):
        left = by_index.get(loc - 1)
        right = by_index.get(loc + 1)
        for gold in record.targets:
            if has_devanagari(gold):
                en_forms, hi_forms = set(), {normalize_devanagari(gold)}
            else:
                g = normalize_word(gold)
                en_forms, hi_forms = {g}, set(lex.hindi_spellings(g))
            en_left = {BOS} if left is None else {left}
            en_right = {EOS} if right is None else {right}
            hi_left = {BOS} if left is None else set(lex.hindi_spellings(left))
            hi_right = {EOS} if right is None else set(lex.hindi_spellings(right))
            en, hi = res.models[ENGLISH], res.models[HINDI]
            if any(en.has_bigram(a, t) for a in en_left for t in en_forms):
                return True
            if any(en.has_bigram(t, b) for b in en_right for t in en_forms):
                return True
            if any(hi.has_bigram(a, t) for a in hi_left for t in hi_forms):
                return True
            if any(hi.has_bigram(t, b) for b in hi_right for t in hi_forms):
                return True
    return False


def _is_abbreviation(record: GoldRecord) -> bool:
    if not isinstance(record.pun, str):
        tokens = tokenize(record.text)
        surface = next((t.surface for t in tokens if t.index == record.pun), "")
    else:
        surface = record.pun.strip()
    return bool(surface) and surface.isupper() and len(surface) <= 4


def classify_failure(
    record: GoldRecord, hypotheses: Sequence[TargetHypothesis], res: Resources
) -> FailureClass:
    if any(len(t.split()) > 1 for t in record.targets):
        return FailureClass.MULTI_WORD_TARGET
    if _is_abbreviation(record):
        return FailureClass.ABBREVIATION_PUN
    if not _gold_bigram_attested(record, res):
        return FailureClass.MISSING_BIGRAM
    locations = gold_locations(record)
    if any(h.pun_index in locations for h in hypotheses):
        return FailureClass.DISTANCE_MISS
    return FailureClass.LOCATION_MISS


# --- report -------------------------------------------------------------------


@dataclass
class ItemResult:
    id: str
    matched: bool
    rank: int | None
    lenient_rank: int | None
    failure_class: FailureClass | None
    top: str | None = None


@dataclass
class EvalReport:
    n: int
    total: int = 0
    recovered_top1: int = 0
    recovered_topn: int = 0
    lenient_top1: int = 0
    lenient_topn: int = 0
    per_item: list[ItemResult] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def _ratio(self, count: int) -> float:
        return count / self.total if self.total else 0.0

    @property
    def accuracy_top1(self) -> float:
        return self._ratio(self.recovered_top1)

    @property
    def accuracy_topn(self) -> float:
        return self._ratio(self.recovered_topn)

    def item(self, rid: str) -> ItemResult:
        return next(i for i in self.per_item if i.id == rid)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "recovered_top1": self.recovered_top1,
            "recovered_topn": self.recovered_topn,
            "accuracy_top1": round(self.accuracy_top1, 6),
            "accuracy_topn": round(self.accuracy_topn, 6),
            "lenient_top1": self.lenient_top1,
            "lenient_topn": self.lenient_topn,
            "lenient_accuracy_top1": round(self._ratio(self.lenient_top1), 6),
            "lenient_accuracy_topn": round(self._ratio(self.lenient_topn), 6),
            "per_item": [
                {"id": i.id, "matched": i.matched, "rank": i.rank,
                 "lenient_rank": i.lenient_rank,
                 "failure_class": i.failure_class.value if i.failure_class else None,
                 "top": i.top}
                for i in self.per_item
            ],
            "skipped": self.skipped,
        }

    def render(self) -> str:
        lines = [f"{'id':<12} {'ok':<4} {'rank':>4} {'len.':>4}  {'failure':<16} top hypothesis"]
        for i in self.per_item:
            lines.append(
                f"{i.id:<12} {'yes' if i.matched else 'no':<4} {_dash(i.rank):>4} "
                f"{_dash(i.lenient_rank):>4}  {i.failure_class.value if i.failure_class else '-':<16}"
                f" {i.top or '-'}"
            )
        for rid in self.skipped:
            lines.append(f"{rid:<12} skipped (intra-word, not scored)")
        lines.append(
            f"strict:  top-1 {self.recovered_top1}/{self.total} ({self.accuracy_top1:.1%})  "
            f"top-{self.n} {self.recovered_topn}/{self.total} ({self.accuracy_topn:.1%})"
        )
        lines.append(
            f"lenient: top-1 {self.lenient_top1}/{self.total}  "
            f"top-{self.n} {self.lenient_topn}/{self.total}"
        )
        return "\n".join(lines)


def _dash(x: int | None) -> str:
    return "-" if x is None else str(x)


def evaluate(
    gold: Sequence[GoldRecord], res: Resources, settings: Settings = Settings(), n: int = 5
) -> EvalReport:
    if n < 1:
        raise ValueError("n must be at least 1")
    report = EvalReport(n=n)
    for record in sorted(gold, key=lambda r: r.id):
        if record.category == INTRA_WORD:
            report.skipped.append(record.id)
            continue
        report.total += 1
        try:
            result = recover(record.text, res, settings, n=n)
        except Exception:
            log.exception("recovery failed for %s", record.id)
            report.per_item.append(ItemResult(record.id, False, None, None, FailureClass.OTHER))
            continue
        hyps = result.hypotheses
        locations = gold_locations(record)
        rank = lenient = None
        for r, h in enumerate(hyps, 1):
            if target_matches(h, record.targets, res):
                if lenient is None:
                    lenient = r
                if rank is None and h.pun_index in locations:
                    rank = r
        matched = rank is not None
        report.recovered_top1 += rank == 1
        report.recovered_topn += matched
        report.lenient_top1 += lenient == 1
        report.lenient_topn += lenient is not None
        failure = None if matched else classify_failure(record, hyps, res)
        top = None
        if hyps:
            top = f"{hyps[0].pun_word} -> {hyps[0].target_word} ({hyps[0].distance:.3f})"
        report.per_item.append(ItemResult(record.id, matched, rank, lenient, failure, top))
    return report
