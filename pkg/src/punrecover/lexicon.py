"""Dictionary-backed language identification over five tags."""

from __future__ import annotations

import enum
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .text import Token, normalize_devanagari, normalize_word, tokenize
from .util import open_text


class LanguageTag(str, enum.Enum):
    ENGLISH = "English"
    HINDI = "Hindi"
    NAMED_ENTITY = "NamedEntity"
    OOV = "OOV"
    AMBIGUOUS = "Ambiguous"


class LexiconError(ValueError):
    pass


_LONG_VOWELS = (("aa", "a"), ("ee", "i"), ("oo", "u"))


def collapse_vowels(word: str) -> str:
    """Spelling-variant key used when an exact Hindi lookup misses."""
    for long, short in _LONG_VOWELS:
        word = word.replace(long, short)
    return word


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: LanguageTag


@dataclass
class Lexicon:
    english_words: frozenset[str] = frozenset()
    hindi_map: Mapping[str, frozenset[str]] = field(default_factory=dict)
    named_entities: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        collapsed: dict[str, set[str]] = defaultdict(set)
        reverse: dict[str, set[str]] = defaultdict(set)
        for roman, spellings in self.hindi_map.items():
            collapsed[collapse_vowels(roman)].update(spellings)
            for dev in spellings:
                reverse[dev].add(roman)
        self._collapsed = {k: frozenset(v) for k, v in collapsed.items()}
        self._reverse = {k: tuple(sorted(v)) for k, v in reverse.items()}

    def hindi_spellings(self, word: str) -> frozenset[str]:
        """Devanagari spellings for a romanized word; empty if unknown."""
        hit = self.hindi_map.get(word)
        if hit:
            return hit
        return self._collapsed.get(collapse_vowels(word), frozenset())

    def is_hindi(self, word: str) -> bool:
        return bool(self.hindi_spellings(word))

    def is_english(self, word: str) -> bool:
        return word in self.english_words

    def romanizations(self, devanagari: str) -> tuple[str, ...]:
        """Roman keys that map to a Devanagari spelling, sorted."""
        return self._reverse.get(devanagari, ())


def tag(token: Token | str, lex: Lexicon) -> LanguageTag:
    word = token.norm if isinstance(token, Token) else token
    en = lex.is_english(word)
    hi = lex.is_hindi(word)
    if en and hi:
        return LanguageTag.AMBIGUOUS
    if en:
        return LanguageTag.ENGLISH
    if hi:
        return LanguageTag.HINDI
    if word in lex.named_entities:
        return LanguageTag.NAMED_ENTITY
    return LanguageTag.OOV


def tag_tokens(tokens: Iterable[Token], lex: Lexicon) -> list[TaggedToken]:
    return [TaggedToken(t, tag(t, lex)) for t in tokens]


def _content_lines(path: Path) -> Iterable[tuple[int, str]]:
    try:
        fh = open_text(path)
    except FileNotFoundError:
        raise LexiconError(f"lexicon file not found: {path}") from None
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def _load_wordlist(path: Path) -> frozenset[str]:
    out = set()
    for lineno, line in _content_lines(path):
        word = normalize_word(line)
        if not word or len(line.split()) != 1:
            raise LexiconError(f"{path}:{lineno}: expected a single word, got {line!r}")
        out.add(word)
    return frozenset(out)


def load_hindi_map(path: str | Path) -> dict[str, frozenset[str]]:
    path = Path(path)
    acc: dict[str, set[str]] = defaultdict(set)
    for lineno, line in _content_lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{path}:{lineno}: expected roman<TAB>devanagari")
        roman, dev = normalize_word(parts[0]), normalize_devanagari(parts[1])
        if not roman or not dev:
            raise LexiconError(f"{path}:{lineno}: empty field")
        acc[roman].add(dev)
    return {k: frozenset(v) for k, v in acc.items()}


def load_lexicon(english_path, hindi_path, ne_path) -> Lexicon:
    return Lexicon(
        english_words=_load_wordlist(Path(english_path)),
        hindi_map=load_hindi_map(hindi_path),
        named_entities=_load_wordlist(Path(ne_path)),
    )


_CAPITALIZED = re.compile(r"^[A-Z][a-z]")


def _looks_like_name(surface: str) -> bool:
    # "Delhi" or an acronym such as "EU"; a lone "I" is not a name
    return bool(_CAPITALIZED.match(surface)) or (len(surface) > 1 and surface.isupper())


def build_english_lexicon(
    sentences: Iterable[str], min_count: int = 2, ne_min_sentences: int = 2
) -> tuple[list[str], list[str]]:
    """Extract (wordlist, named entities) from a one-sentence-per-line corpus.

    A word is kept when its corpus count reaches ``min_count``. A word is an
    NE candidate when it appears capitalized in a non-initial position in at
    least ``ne_min_sentences`` distinct sentences.
    """
    counts: Counter[str] = Counter()
    ne_sentences: Counter[str] = Counter()
    for line in sentences:
        toks = tokenize(line)
        counts.update(t.norm for t in toks)
        ne_sentences.update({t.norm for t in toks[1:] if _looks_like_name(t.surface)})
    wordlist = sorted(w for w, c in counts.items() if c >= min_count)
    nes = sorted(w for w, c in ne_sentences.items() if c >= ne_min_sentences)
    return wordlist, nes
