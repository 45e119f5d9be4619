"""Tokenization and normalization for romanized and Devanagari text."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

# Hyphen-like characters inside a token split it in two.
_SPLIT = re.compile(r"[\s\-‐-―−]+")

_DEVANAGARI_PUNCT = {"।", "॥", "॰"}  # danda, double danda, abbreviation sign


@dataclass(frozen=True)
class Token:
    surface: str
    norm: str
    index: int


def _is_word_char(ch: str) -> bool:
    # letters, combining marks (Devanagari vowel signs) and digits
    return unicodedata.category(ch)[0] in "LMN"


def normalize_word(s: str) -> str:
    """NFC, lowercase, and drop every non-word character."""
    s = unicodedata.normalize("NFC", s).lower()
    return "".join(ch for ch in s if _is_word_char(ch))


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    for chunk in _SPLIT.split(unicodedata.normalize("NFC", text)):
        start, end = 0, len(chunk)
        while start < end and not _is_word_char(chunk[start]):
            start += 1
        while end > start and not _is_word_char(chunk[end - 1]):
            end -= 1
        surface = chunk[start:end]
        norm = normalize_word(surface)
        if norm:
            tokens.append(Token(surface, norm, len(tokens)))
    return tokens


def words(text: str) -> list[str]:
    """Normalized forms only; the shape corpora are counted in."""
    return [t.norm for t in tokenize(text)]


def normalize_devanagari(s: str) -> str:
    s = unicodedata.normalize("NFC", s)
    s = "".join(ch for ch in s if ch not in _DEVANAGARI_PUNCT)
    return s.strip()


def has_latin(s: str) -> bool:
    return any("a" <= ch <= "z" or "A" <= ch <= "Z" for ch in s)


def has_devanagari(s: str) -> bool:
    return any("ऀ" <= ch <= "ॿ" for ch in s)
