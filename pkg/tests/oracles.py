"""Slow, independently written reference implementations used by the tests."""

from __future__ import annotations

import random

# --- Kneser-Ney -----------------------------------------------------------------


def kn_oracle(sentences, discount=0.75, min_count=2):
    """Return (vocab, prob) with prob(h, w) computed by naive loops."""
    toks = [s.split() for s in sentences if s.split()]
    freq = {}
    for s in toks:
        for w in s:
            freq[w] = freq.get(w, 0) + 1
    events = []  # every bigram token, duplicates included
    for s in toks:
        seq = ["<s>"] + [w if freq[w] >= min_count else "<unk>" for w in s] + ["</s>"]
        for i in range(len(seq) - 1):
            events.append((seq[i], seq[i + 1]))
    types = sorted(set(events))
    vocab = sorted({w for pair in events for w in pair} | {"<s>", "</s>", "<unk>"})

    def pcont(w):
        return len([1 for (a, b) in types if b == w]) / len(types)

    def prob(h, w):
        if h not in vocab:
            h = "<unk>"
        if w not in vocab:
            w = "<unk>"
        ctx = len([1 for (a, b) in events if a == h])
        if ctx == 0:
            return pcont(w)
        c = len([1 for e in events if e == (h, w)])
        fol = len([1 for (a, b) in types if a == h])
        return max(c - discount, 0) / ctx + (discount * fol / ctx) * pcont(w)

    return vocab, prob


def random_toy_corpus(rng: random.Random, max_sentences=20, max_vocab=15):
    size = rng.randint(1, max_vocab)
    vocab = [f"w{i}" for i in range(size)]
    return [" ".join(rng.choices(vocab, k=rng.randint(1, 6)))
            for _ in range(rng.randint(1, max_sentences))]


# --- edit distance --------------------------------------------------------------

_VOWEL = set("a A i I u U q Q e E o O".split())
_LONG = {"A": "a", "I": "i", "U": "u", "Q": "q"}
_ASP = {"K": "k", "G": "g", "C": "c", "J": "j", "T": "t", "D": "d",
        "W": "w", "X": "x", "P": "p", "B": "b"}
_CLASSES = [
    "k K t T w W p P kZ", "g G d D x X b B", "c C", "j J",
    "f F N n m M z", "S R s PZ KZ", "jZ gZ", "r l dZ DZ", "y v yZ", "h H",
]


def oracle_sub(a, b, costs):
    if a == b:
        return 0.0
    if a in _VOWEL and b in _VOWEL:
        return costs.vowel_length_sub if _LONG.get(a, a) == _LONG.get(b, b) else costs.vowel_sub
    if a in _VOWEL or b in _VOWEL:
        return costs.consonant_sub
    base_a, base_b = _ASP.get(a[0], a[0]), _ASP.get(b[0], b[0])
    if base_a == base_b:
        return costs.aspiration_pair_sub
    return costs.manner_class_sub if _same_manner(a, b) else costs.consonant_sub


def _same_manner(a, b):
    for cls in _CLASSES:
        units = cls.split()
        if a in units and b in units:
            return True
    return False


def all_scripts_cost(a, b, costs):
    """Minimum over every edit script, enumerated without memoization."""
    best = [float("inf")]

    def walk(i, j, acc):
        if acc >= best[0]:
            return
        if i == len(a) and j == len(b):
            best[0] = acc
            return
        if i < len(a) and j < len(b):
            walk(i + 1, j + 1, acc + oracle_sub(a[i], b[j], costs))
        if i < len(a):
            walk(i + 1, j, acc + costs.insert_delete)
        if j < len(b):
            walk(i, j + 1, acc + costs.insert_delete)

    walk(0, 0, 0.0)
    return best[0]


def oracle_distance(a, b, costs):
    d = all_scripts_cost(a, b, costs) / (costs.insert_delete * max(len(a), len(b)))
    if a[-1] == b[-1]:
        d *= costs.rhyme_bonus
    if a[0] == b[0]:
        d *= costs.onset_bonus
    return min(max(d, 0.0), 1.0)
