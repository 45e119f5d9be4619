"""Interpolated Kneser-Ney bigram models with a compact binary format.

For a history ``h`` with ``c(h.)`` bigram tokens starting at it::

    P(w | h) = max(c(h, w) - D, 0) / c(h.) + lambda(h) * P_cont(w)
    lambda(h) = D * N1+(h .) / c(h.)
    P_cont(w) = N1+(. w) / N1+(. .)

A history never seen as a left context falls back to ``P_cont(w)``.
"""

from __future__ import annotations

import heapq
import logging
import math
import struct
import zlib
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .text import has_devanagari, has_latin, normalize_devanagari, words
from .util import atomic_write_bytes

log = logging.getLogger(__name__)

BOS, EOS, UNK = "<s>", "</s>", "<unk>"
MARKERS = (BOS, EOS, UNK)
LANGUAGES = ("english", "hindi")

MAGIC = b"PRBG"
FORMAT_VERSION = 1


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class ContextWord:
    word: str
    log_prob: float
    side: str  # "left": drawn from the left neighbor's followers; "right": mirror
    language: str = ""


class BigramModel:
    """Immutable after construction; all queries are read-only."""

    def __init__(
        self,
        language: str,
        unigram_count: dict[str, int],
        bigram_count: dict[tuple[str, str], int],
        discount: float = 0.75,
        min_count: int = 2,
    ):
        if not 0.0 < discount < 1.0:
            raise ModelError(f"discount must lie in (0, 1), got {discount}")
        self.language = language
        self.discount = discount
        self.min_count = min_count
        self.unigram_count = dict(unigram_count)
        self.bigram_count = dict(bigram_count)
        self.vocab = frozenset(self.unigram_count) | set(MARKERS)

        self._succ: dict[str, dict[str, int]] = defaultdict(dict)
        self._pred: dict[str, dict[str, int]] = defaultdict(dict)
        for (w1, w2), c in self.bigram_count.items():
            self._succ[w1][w2] = c
            self._pred[w2][w1] = c
        self.context_count = {w: sum(d.values()) for w, d in self._succ.items()}
        self.follower_count = {w: len(d) for w, d in self._succ.items()}
        self.continuation_count = {w: len(d) for w, d in self._pred.items()}
        self.total_bigram_types = len(self.bigram_count)

        eligible = sorted(w for w in self.vocab if w not in MARKERS)
        self._eligible = eligible
        # non-successors of a history rank by P_cont; non-predecessors of a
        # word rank by lambda; both orders are fixed, so precompute them
        self._by_cont = sorted(eligible, key=lambda w: (-self.continuation_count.get(w, 0), w))
        self._by_lambda = sorted(eligible, key=lambda w: (-self._lambda(w), w))

    def map_word(self, w: str) -> str:
        return w if w in self.vocab else UNK

    def p_cont(self, w: str) -> float:
        if not self.total_bigram_types:
            return 0.0
        return self.continuation_count.get(w, 0) / self.total_bigram_types

    def _lambda(self, h: str) -> float:
        n = self.context_count.get(h, 0)
        if not n:
            return 1.0
        return self.discount * self.follower_count[h] / n

    def prob(self, prev: str, w: str) -> float:
        prev, w = self.map_word(prev), self.map_word(w)
        n = self.context_count.get(prev, 0)
        if not n:
            return self.p_cont(w)
        c = self._succ[prev].get(w, 0)
        return max(c - self.discount, 0.0) / n + self._lambda(prev) * self.p_cont(w)

    def has_bigram(self, w1: str, w2: str) -> bool:
        """Attested in training data with both words in the vocabulary."""
        return w1 in self.vocab and w2 in self.vocab and (w1, w2) in self.bigram_count

    def followers(self, prev: str, k: int) -> list[ContextWord]:
        """Top-k words most likely to follow ``prev``."""
        prev = self.map_word(prev)
        seen = [w for w in self._succ.get(prev, ()) if w not in MARKERS]
        pool = set(seen)
        pool.update(self._by_cont[: k + len(seen)])
        scored = ((self.prob(prev, w), w) for w in pool)
        return _rank(scored, k, "left", self.language)

    def predecessors(self, nxt: str, k: int) -> list[ContextWord]:
        """Top-k words ``w`` maximizing P(nxt | w), not renormalized over w."""
        nxt = self.map_word(nxt)
        seen = [w for w in self._pred.get(nxt, ()) if w not in MARKERS]
        pool = set(seen)
        # with P_cont(nxt) == 0 every backoff score ties at zero
        order = self._by_lambda if self.p_cont(nxt) > 0 else self._eligible
        pool.update(order[: k + len(seen)])
        scored = ((self.prob(w, nxt), w) for w in pool)
        return _rank(scored, k, "right", self.language)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigramModel):
            return NotImplemented
        return (
            self.language == other.language
            and self.discount == other.discount
            and self.min_count == other.min_count
            and self.unigram_count == other.unigram_count
            and self.bigram_count == other.bigram_count
        )

    def __repr__(self) -> str:
        return (
            f"BigramModel({self.language!r}, vocab={len(self.vocab)}, "
            f"bigram_types={self.total_bigram_types}, D={self.discount})"
        )


def _rank(scored: Iterable[tuple[float, str]], k: int, side: str, language: str) -> list[ContextWord]:
    best = heapq.nsmallest(k, scored, key=lambda pw: (-pw[0], pw[1]))
    return [ContextWord(w, math.log(p) if p > 0 else -math.inf, side, language) for p, w in best]


def sentence_words(line: str, language: str) -> list[str] | None:
    """Normalized words of one corpus line, or None if the script is wrong."""
    if language == "hindi":
        if has_latin(line):
            return None
        line = normalize_devanagari(line)
    elif has_devanagari(line):
        return None
    return words(line)


def train(
    sentences: Iterable[str], language: str, discount: float = 0.75, min_count: int = 2
) -> BigramModel:
    if language not in LANGUAGES:
        raise ModelError(f"unknown language {language!r}; expected one of {LANGUAGES}")
    corpus: list[list[str]] = []
    for lineno, line in enumerate(sentences, 1):
        if not line.strip():
            continue
        ws = sentence_words(line, language)
        if ws is None:
            log.warning("line %d: mixed script for %s model, skipped", lineno, language)
            continue
        if ws:
            corpus.append(ws)
    if not corpus:
        raise ModelError("empty training corpus")

    raw = Counter(w for s in corpus for w in s)
    keep = {w for w, c in raw.items() if c >= min_count}
    unigrams: Counter[str] = Counter()
    bigrams: Counter[tuple[str, str]] = Counter()
    for s in corpus:
        padded = [BOS] + [w if w in keep else UNK for w in s] + [EOS]
        unigrams.update(padded)
        bigrams.update(zip(padded, padded[1:]))
    return BigramModel(language, dict(unigrams), dict(bigrams), discount, min_count)


# --- persistence -----------------------------------------------------------
#
# MAGIC(4) VERSION(1) BODY_LEN(u32 LE) BODY CRC32(u32 LE, over all prior bytes)
# BODY: language(str) discount(f64 LE) min_count(varint)
#       n_vocab(varint) then n_vocab strings, markers first, then sorted words
#       n_vocab unigram counts(varint)
#       n_bigrams(varint) then (id1, id2, count) varint triples sorted by ids
# str: varint byte length + UTF-8 bytes


def _put_varint(out: bytearray, n: int) -> None:
    if n < 0:
        raise ModelError("negative varint")
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def varint(self) -> int:
        shift = n = 0
        while True:
            if self.pos >= len(self.data):
                raise ModelError("truncated model body")
            b = self.data[self.pos]
            self.pos += 1
            n |= (b & 0x7F) << shift
            if not b & 0x80:
                return n
            shift += 7

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise ModelError("truncated model body")
        chunk = self.data[self.pos : self.pos + size]
        self.pos += size
        return chunk

    def string(self) -> str:
        return self.take(self.varint()).decode("utf-8")


def to_bytes(model: BigramModel) -> bytes:
    body = bytearray()
    lang = model.language.encode("utf-8")
    _put_varint(body, len(lang))
    body += lang
    body += struct.pack("<d", model.discount)
    _put_varint(body, model.min_count)

    vocab = list(MARKERS) + sorted(model.vocab - set(MARKERS))
    ids = {w: i for i, w in enumerate(vocab)}
    _put_varint(body, len(vocab))
    for w in vocab:
        b = w.encode("utf-8")
        _put_varint(body, len(b))
        body += b
    for w in vocab:
        _put_varint(body, model.unigram_count.get(w, 0))
    triples = sorted((ids[a], ids[b], c) for (a, b), c in model.bigram_count.items())
    _put_varint(body, len(triples))
    for a, b, c in triples:
        _put_varint(body, a)
        _put_varint(body, b)
        _put_varint(body, c)

    head = MAGIC + bytes([FORMAT_VERSION]) + struct.pack("<I", len(body))
    payload = head + bytes(body)
    return payload + struct.pack("<I", zlib.crc32(payload))


def from_bytes(data: bytes) -> BigramModel:
    if len(data) < 13 or data[:4] != MAGIC:
        raise ModelError("not a bigram model file (bad magic)")
    if data[4] != FORMAT_VERSION:
        raise ModelError(f"unsupported model format version {data[4]}")
    (body_len,) = struct.unpack_from("<I", data, 5)
    if len(data) != 9 + body_len + 4:
        raise ModelError("model file length mismatch (truncated or padded)")
    (crc,) = struct.unpack_from("<I", data, 9 + body_len)
    if zlib.crc32(data[: 9 + body_len]) != crc:
        raise ModelError("model file checksum mismatch")

    r = _Reader(data[9 : 9 + body_len])
    language = r.string()
    (discount,) = struct.unpack("<d", r.take(8))
    min_count = r.varint()
    vocab = [r.string() for _ in range(r.varint())]
    unigrams = {}
    for w in vocab:
        c = r.varint()
        if c:
            unigrams[w] = c
    bigrams = {}
    for _ in range(r.varint()):
        a, b, c = r.varint(), r.varint(), r.varint()
        bigrams[(vocab[a], vocab[b])] = c
    if r.pos != len(r.data):
        raise ModelError("trailing bytes in model body")
    return BigramModel(language, unigrams, bigrams, discount, min_count)


def save(model: BigramModel, path: str | Path) -> None:
    atomic_write_bytes(path, to_bytes(model))


def load(path: str | Path) -> BigramModel:
    try:
        data = Path(path).read_bytes()
    except FileNotFoundError:
        raise ModelError(f"model file not found: {path}") from None
    return from_bytes(data)
