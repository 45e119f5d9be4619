"""WX phonetic forms and the feature-weighted edit distances over them.

Hindi words reach WX through their Devanagari spelling; English words through
a CMU-style pronouncing dictionary and a phoneme-to-WX table. Words with no
phonetic transcription are compared orthographically in Roman script.
"""

from __future__ import annotations

import enum
import unicodedata
from collections import defaultdict
from dataclasses import dataclass, fields
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .util import open_text

# --- WX inventory -------------------------------------------------------------

VOWELS = frozenset("a A i I u U q Q e E o O".split())
LONG_SHORT = {"A": "a", "I": "i", "U": "u", "Q": "q"}
ASPIRATED = {"K": "k", "G": "g", "C": "c", "J": "j", "T": "t", "D": "d",
             "W": "w", "X": "x", "P": "p", "B": "b"}
_BASE_CONSONANTS = "k K g G f c C j J F t T d D N w W x X n p P b B m y r l v S R s h".split()
NUKTA_UNITS = frozenset("kZ KZ gZ jZ dZ DZ PZ yZ".split())
MODIFIERS = frozenset("M z H".split())  # anusvara, chandrabindu, visarga
CONSONANTS = frozenset(_BASE_CONSONANTS) | NUKTA_UNITS
INVENTORY = VOWELS | CONSONANTS | MODIFIERS

# manner+voicing classes; two consonants in one class differ by place only
_CONSONANT_CLASSES = {
    "voiceless stop": "k t w p kZ",
    "voiced stop": "g d x b",
    "voiceless affricate": "c",
    "voiced affricate": "j",
    "nasal": "f F N n m M z",
    "voiceless fricative": "S R s PZ KZ",
    "voiced fricative": "jZ gZ",
    "liquid": "r l dZ DZ",
    "glide": "y v yZ",
    "glottal": "h H",
}
_MANNER = {u: name for name, units in _CONSONANT_CLASSES.items() for u in units.split()}

_INDEPENDENT_VOWELS = {
    "अ": "a", "आ": "A", "इ": "i", "ई": "I", "उ": "u", "ऊ": "U", "ऋ": "q", "ॠ": "Q",
    "ए": "e", "ऐ": "E", "ओ": "o", "औ": "O", "ऑ": "O", "ऍ": "E", "ऎ": "e", "ऒ": "o",
}
_VOWEL_SIGNS = {
    "ा": "A", "ि": "i", "ी": "I", "ु": "u", "ू": "U", "ृ": "q", "ॄ": "Q",
    "े": "e", "ै": "E", "ो": "o", "ौ": "O", "ॉ": "O", "ॅ": "E", "ॆ": "e", "ॊ": "o",
}
_CONSONANT_CHARS = dict(zip(
    "क ख ग घ ङ च छ ज झ ञ ट ठ ड ढ ण त थ द ध न प फ ब भ म य र ल व श ष स ह".split(),
    _BASE_CONSONANTS,
))
_CONSONANT_CHARS.update({"ळ": "l", "ऩ": "n", "ऱ": "r", "ऴ": "l"})
_SIGNS = {"ं": "M", "ँ": "z", "ः": "H"}
_NUKTA, _VIRAMA = "़", "्"
_SILENT = {"ऽ", "‌", "‍"}  # avagraha, ZWNJ, ZWJ


class Source(str, enum.Enum):
    DEVANAGARI = "FromDevanagari"
    CMUDICT = "FromCmuDict"


@dataclass(frozen=True)
class PhoneticForm:
    units: tuple[str, ...]
    source: Source

    def __post_init__(self):
        if not self.units:
            raise ValueError("empty phonetic form")
        bad = [u for u in self.units if u not in INVENTORY]
        if bad:
            raise ValueError(f"units outside the WX inventory: {bad}")

    def __str__(self) -> str:
        return " ".join(self.units)


class TransliterationError(ValueError):
    pass


class NotInDictionary(LookupError):
    pass


def devanagari_to_wx(word: str) -> PhoneticForm:
    """Transliterate one Devanagari word into WX units.

    Consonants carry an inherent schwa unless a vowel sign or virama follows
    (a nukta attaches to its consonant first). The word-final inherent schwa
    is dropped unless it is the word's only vowel.
    """
    word = unicodedata.normalize("NFC", word)
    units: list[str] = []
    pending = None  # consonant still waiting to learn whether it takes a schwa

    def flush(schwa: bool):
        nonlocal pending
        if pending is not None:
            units.append(pending)
            if schwa:
                units.append("a")
            pending = None

    for ch in word:
        if ch in _CONSONANT_CHARS:
            flush(schwa=True)
            pending = _CONSONANT_CHARS[ch]
        elif ch == _NUKTA:
            if pending is None:
                raise TransliterationError(f"nukta without a consonant in {word!r}")
            if pending[0] + "Z" in NUKTA_UNITS:
                pending = pending[0] + "Z"
        elif ch == _VIRAMA:
            flush(schwa=False)
        elif ch in _VOWEL_SIGNS:
            flush(schwa=False)
            units.append(_VOWEL_SIGNS[ch])
        elif ch in _INDEPENDENT_VOWELS or ch in _SIGNS:
            flush(schwa=True)
            units.append(_INDEPENDENT_VOWELS.get(ch) or _SIGNS[ch])
        elif ch in _SILENT:
            continue
        else:
            name = unicodedata.name(ch, f"U+{ord(ch):04X}")
            raise TransliterationError(f"cannot transliterate {ch!r} ({name}) in {word!r}")
    if pending is not None:
        flush(schwa=not any(u in VOWELS for u in units))
    if not units:
        raise TransliterationError(f"no transliterable characters in {word!r}")
    return PhoneticForm(tuple(units), Source.DEVANAGARI)


# --- roman rendering of WX, used to seed lookups and for display -------------

_ROMAN = {
    "a": "a", "A": "aa", "i": "i", "I": "ee", "u": "u", "U": "oo", "q": "ri", "Q": "ri",
    "e": "e", "E": "ai", "o": "o", "O": "au",
    "k": "k", "K": "kh", "g": "g", "G": "gh", "f": "n", "c": "ch", "C": "chh", "j": "j",
    "J": "jh", "F": "n", "t": "t", "T": "th", "d": "d", "D": "dh", "N": "n", "w": "t",
    "W": "th", "x": "d", "X": "dh", "n": "n", "p": "p", "P": "ph", "b": "b", "B": "bh",
    "m": "m", "y": "y", "r": "r", "l": "l", "v": "v", "S": "sh", "R": "sh", "s": "s",
    "h": "h", "kZ": "q", "KZ": "kh", "gZ": "g", "jZ": "z", "dZ": "r", "DZ": "rh",
    "PZ": "f", "yZ": "y", "M": "n", "z": "n", "H": "h",
}


def wx_to_roman(form: PhoneticForm | Sequence[str]) -> str:
    """Casual Hinglish spelling of a WX form (``[x, U, X]`` -> ``doodh``)."""
    units = form.units if isinstance(form, PhoneticForm) else tuple(form)
    out = []
    for i, u in enumerate(units):
        nxt = units[i + 1] if i + 1 < len(units) else None
        if u in ("M", "z") and nxt in ("p", "P", "b", "B", "m"):
            out.append("m")
        else:
            out.append(_ROMAN[u])
    return "".join(out)


# --- English via a pronouncing dictionary --------------------------------------

CMU_PHONEMES = frozenset(
    "AA AE AH AO AW AY B CH D DH EH ER EY F G HH IH IY JH K L M N NG OW OY P R S SH "
    "T TH UH UW V W Y Z ZH".split()
)


def load_phoneme_map(path: str | Path) -> dict[str, tuple[str, ...]]:
    pmap: dict[str, tuple[str, ...]] = {}
    with open_text(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected PHONEME<TAB>WX_UNITS")
            phone, units = parts[0].strip(), tuple(parts[1].split())
            if phone not in CMU_PHONEMES:
                raise ValueError(f"{path}:{lineno}: unknown CMU phoneme {phone!r}")
            bad = [u for u in units if u not in INVENTORY]
            if not units or bad:
                raise ValueError(f"{path}:{lineno}: bad WX units {parts[1]!r}")
            pmap[phone] = units
    missing = CMU_PHONEMES - pmap.keys()
    if missing:
        raise ValueError(f"{path}: phoneme map lacks {sorted(missing)}")
    return pmap


def load_pron_dict(path: str | Path) -> dict[str, list[tuple[str, ...]]]:
    """Read cmudict plain text: ``WORD  PH1 PH2``, ``WORD(2)`` variants, ``;;;`` comments."""
    prons: dict[str, list[tuple[str, ...]]] = defaultdict(list)
    with open_text(path) as fh:
        for line in fh:
            if not line.strip() or line.startswith(";;;"):
                continue
            head, *phones = line.split()
            word = head.lower()
            if word.endswith(")") and "(" in word:
                word = word[: word.index("(")]
            phones = tuple(p.rstrip("012") for p in phones)
            if phones and phones not in prons[word]:
                prons[word].append(phones)
    return dict(prons)


def english_to_wx(
    word: str, pron_dict: Mapping[str, list[tuple[str, ...]]], pmap: Mapping[str, tuple[str, ...]]
) -> list[PhoneticForm]:
    variants = pron_dict.get(word.lower())
    if not variants:
        raise NotInDictionary(word)
    forms: list[PhoneticForm] = []
    for phones in variants:
        units = tuple(u for p in phones for u in pmap[p])
        form = PhoneticForm(units, Source.CMUDICT)
        if form not in forms:
            forms.append(form)
    return forms


# --- distances -----------------------------------------------------------------


@dataclass(frozen=True)
class CostModel:
    vowel_sub: float = 0.5
    consonant_sub: float = 1.0
    aspiration_pair_sub: float = 0.25
    vowel_length_sub: float = 0.25
    manner_class_sub: float = 0.5
    insert_delete: float = 1.0
    rhyme_bonus: float = 0.8
    onset_bonus: float = 0.9

    def __post_init__(self):
        chain = (self.aspiration_pair_sub, self.vowel_length_sub, self.vowel_sub,
                 self.consonant_sub, self.insert_delete)
        if not 0 < chain[0] or any(a > b for a, b in zip(chain, chain[1:])):
            raise ValueError(
                "costs must satisfy 0 < aspiration_pair_sub <= vowel_length_sub"
                " <= vowel_sub <= consonant_sub <= insert_delete"
            )
        if not self.aspiration_pair_sub <= self.manner_class_sub <= self.consonant_sub:
            raise ValueError("manner_class_sub must lie in [aspiration_pair_sub, consonant_sub]")
        for m in (self.rhyme_bonus, self.onset_bonus):
            if not 0 < m <= 1:
                raise ValueError("bonus multipliers must lie in (0, 1]")

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]


DEFAULT_COSTS = CostModel()


def _plain(u: str) -> str:
    """Strip nukta and aspiration: ``PZ`` -> ``p``, ``X`` -> ``x``."""
    u = u[0]
    return ASPIRATED.get(u, u)


def unit_sub_cost(a: str, b: str, costs: CostModel = DEFAULT_COSTS) -> float:
    if a == b:
        return 0.0
    va, vb = a in VOWELS, b in VOWELS
    if va and vb:
        if LONG_SHORT.get(a, a) == LONG_SHORT.get(b, b):
            return costs.vowel_length_sub
        return costs.vowel_sub
    if va or vb:
        return costs.consonant_sub
    pa, pb = _plain(a), _plain(b)
    if pa == pb:
        return costs.aspiration_pair_sub
    ma, mb = _MANNER.get(a, _MANNER.get(pa)), _MANNER.get(b, _MANNER.get(pb))
    if ma is not None and ma == mb:
        return costs.manner_class_sub
    return costs.consonant_sub


def edit_distance(
    a: Sequence[str], b: Sequence[str], sub: Callable[[str, str], float], indel: float
) -> float:
    """Weighted Levenshtein over unit sequences with a flat indel price."""
    n, m = len(a), len(b)
    prev = [j * indel for j in range(m + 1)]
    for i in range(1, n + 1):
        cur = [i * indel] + [0.0] * m
        ai = a[i - 1]
        for j in range(1, m + 1):
            cur[j] = min(prev[j] + indel, cur[j - 1] + indel, prev[j - 1] + sub(ai, b[j - 1]))
        prev = cur
    return prev[m]


def _normalize(raw: float, a: Sequence[str], b: Sequence[str], costs: CostModel) -> float:
    d = raw / (costs.insert_delete * max(len(a), len(b)))
    if a[-1] == b[-1]:
        d *= costs.rhyme_bonus
    if a[0] == b[0]:
        d *= costs.onset_bonus
    return min(max(d, 0.0), 1.0)


def unit_distance(a: Sequence[str], b: Sequence[str], costs: CostModel = DEFAULT_COSTS) -> float:
    raw = edit_distance(
        a, b, lambda x, y: unit_sub_cost(x, y, costs), costs.insert_delete
    )
    return _normalize(raw, a, b, costs)


def phonetic_distance(a: PhoneticForm, b: PhoneticForm, costs: CostModel = DEFAULT_COSTS) -> float:
    return _cached_unit_distance(a.units, b.units, costs)


@lru_cache(maxsize=1 << 18)
def _cached_unit_distance(a: tuple[str, ...], b: tuple[str, ...], costs: CostModel) -> float:
    return unit_distance(a, b, costs)


def min_phonetic_distance(
    xs: Iterable[PhoneticForm], ys: Iterable[PhoneticForm], costs: CostModel = DEFAULT_COSTS
) -> float:
    """Distance between two variant sets: the closest pair wins."""
    ys = list(ys)
    return min(phonetic_distance(x, y, costs) for x in xs for y in ys)


# --- orthographic fallback -----------------------------------------------------

_ROMAN_VOWELS = frozenset("aeiou")
_DIGRAPHS = ("kh", "gh", "ch", "jh", "th", "dh", "ph", "bh", "sh")


def roman_units(word: str) -> tuple[str, ...]:
    """Canonical letter units for orthographic comparison.

    ``ee``/``y`` -> ``i``, ``oo`` -> ``u``, ``w`` -> ``v``, ``q`` and hard ``c``
    -> ``k``; doubled letters collapse; consonant+h digraphs become one unit.
    """
    s = word.lower().replace("ee", "i").replace("oo", "u")
    s = s.replace("w", "v").replace("y", "i").replace("q", "k")
    s = "".join("k" if ch == "c" and s[i + 1 : i + 2] in ("a", "o", "u") else ch
                for i, ch in enumerate(s))
    collapsed = []
    for ch in s:
        if not collapsed or collapsed[-1] != ch:
            collapsed.append(ch)
    s = "".join(collapsed)
    units: list[str] = []
    i = 0
    while i < len(s):
        if s[i : i + 2] in _DIGRAPHS:
            units.append(s[i : i + 2])
            i += 2
        else:
            units.append(s[i])
            i += 1
    return tuple(units)


def roman_sub_cost(a: str, b: str, costs: CostModel = DEFAULT_COSTS) -> float:
    if a == b:
        return 0.0
    va, vb = a in _ROMAN_VOWELS, b in _ROMAN_VOWELS
    if va and vb:
        return costs.vowel_sub
    if va or vb:
        return costs.consonant_sub
    if a[0] == b[0] and "h" in (a[1:], b[1:]):
        return costs.aspiration_pair_sub
    return costs.consonant_sub


def orthographic_distance(a: str, b: str, costs: CostModel = DEFAULT_COSTS) -> float:
    return _cached_orthographic(a, b, costs)


@lru_cache(maxsize=1 << 18)
def _cached_orthographic(a: str, b: str, costs: CostModel) -> float:
    ua, ub = roman_units(a), roman_units(b)
    if not ua or not ub:
        raise ValueError("orthographic distance needs non-empty strings")
    raw = edit_distance(
        ua, ub, lambda x, y: roman_sub_cost(x, y, costs), costs.insert_delete
    )
    return _normalize(raw, ua, ub, costs)
