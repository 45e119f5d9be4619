#!/usr/bin/env python3
"""Regenerate the bundled desk-scale resources under src/punrecover/data/desk.

Full-size news corpora and transliteration lists are not redistributable,
so this script synthesizes small stand-ins of the same shape:

* English and Hindi corpora: sentences of filler words drawn from wordfreq
  unigram frequencies, with curated collocations spliced in so that common
  bigrams carry real structure.
* Hindi roman->Devanagari map: each Hindi vocabulary word romanized through
  its WX form, plus a few spelling variants and hand-listed irregulars.
* A pronouncing-dictionary subset: cmudict entries for all English words used.

The derived files (wordlist, NE list, both LMs) are then built with the
package's own code, exactly like the CLI does.

Needs ``pip install wordfreq cmudict``. Deterministic for a fixed seed.
"""

from __future__ import annotations

import argparse
import random
import re
import sys
from itertools import product
from pathlib import Path

import cmudict
import wordfreq

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from punrecover import langmodel  # noqa: E402
from punrecover.lexicon import build_english_lexicon  # noqa: E402
from punrecover.phonetics import TransliterationError, devanagari_to_wx, wx_to_roman  # noqa: E402
from punrecover.text import normalize_devanagari  # noqa: E402
from punrecover.util import atomic_write_text, open_text  # noqa: E402

OUT = ROOT / "src" / "punrecover" / "data" / "desk"

# (phrase, weight); weight ~ expected occurrences in the English corpus
ENGLISH_PHRASES = """
good morning 60 | this morning 40 | every morning 25 | early morning 20 | sunday morning 12
monday morning 10 | tomorrow morning 10 | yesterday morning 10 | one morning 8 | the morning 30
morning walk 8 | morning news 6 | morning tea 6 | good night 30 | good luck 30 | good food 20
grand slam 25 | grand prix 15 | grand total 12 | grand finale 12 | grand opening 10
grand jury 8 | grand master 8 | grand old party 8 | grand plan 6 | grand celebration 6
grand prize 6 | grand canyon 6 | grand stand 5 | grand alliance 6 | grand welcome 6
fast food 30 | junk food 20 | street food 20 | food court 10 | indian food 15 | food safety 10
we are proud of you 15 | proud of you 20 | we are proud 15 | we are happy 10 | we are ready 10
prime minister 60 | chief minister 40 | finance minister 20 | world cup 40 | test match 25
cricket team 25 | high court 30 | supreme court 40 | social media 30 | thank you 40
happy birthday 20 | new year 30 | last year 40 | next week 30 | last week 30 | next year 30
on bail 20 | granted bail 15 | bail plea 15 | out on bail 12 | bail application 10
with zeal 12 | great zeal 10 | zeal and enthusiasm 12 | religious zeal 8 | missionary zeal 6
slow down 20 | slow motion 12 | go slow 10 | slow pace 12 | slow progress 10 | slow poison 6
fast track 15 | breaking news 20 | ice cream 20 | tea party 8 | summer holiday 10
come on 20 | hit me 8 | hold on 12 | cheer up 8 | let us go 10 | no problem 20
film industry 15 | box office 20 | big screen 10 | love story 12 | title track 8
stock market 20 | real estate 15 | interest rate 15 | bank account 15 | credit card 20
press conference 20 | general election 20 | state government 30 | central government 30
police station 20 | railway station 20 | bus stand 10 | traffic jam 12 | road accident 12
climate change 15 | global warming 12 | heavy rain 15 | cold wave 10 | hot summer 10
human rights 15 | young people 15 | old man 15 | little girl 12 | school children 12
milk and honey 6 | a glass of milk 8 | hot milk 6 | milk price 6 | dairy farmers 6
mark my words 8 | hall of fame 8 | man of the match 15 | once upon a time 10
"""

HINDI_PHRASES = """
आ बैल मुझे मार 12 | फिर भी दिल है हिंदुस्तानी 12 | दिल है 30 | दिल से 40 | मेरा दिल 30
दिल की बात 25 | दिल ही दिल में 10 | दिल तो बच्चा है 8 | यूं रो मत 10 | रो मत 20 | मत रो 15
यूं ही 25 | दूध पीना 10 | दूध और 15 | गाय का दूध 10 | दूध की 10 | बैल गाड़ी 10 | बैल को 6
सलाम करते हैं 10 | सलाम है 8 | जेल में 15 | खेल में 15 | मिल गया 20 | मिल कर 15
बहुत अच्छा 30 | क्या बात है 25 | हम लोग 25 | चाय पीना 10 | ठंडा पानी 10 | फिर मिलेंगे 10
भारत माता की जय 10 | जय हिंद 15 | यह देश 20 | फिर भी 40 | भी है 30 | हो या 20 | या फिर 20
आ गया 20 | आ रहा है 20 | आ जाओ 15 | बैल ने 5 | मुझे मार 8 | मुझे पता है 15 | मार दिया 10
सुबह सुबह 10 | शुभ प्रभात 6 | अच्छा दिन 10 | अच्छे दिन 15 | रात को 20 | दिन भर 15
हिंदुस्तानी है 8 | हम हिंदुस्तानी 8 | दिल दिया 6 | दिल टूट गया 6 | दिल की धड़कन 6
"""

# romanizations people actually type that WX-derived spellings don't produce
HINDI_IRREGULAR = """
hai है | hain हैं | main मैं | main में | mein में | me में | nahi नहीं | nahin नहीं
kya क्या | woh वो | woh वह | wo वो | yeh यह | ye ये | hum हम | tum तुम | aap आप
bhi भी | phir फिर | fir फिर | dil दिल | doodh दूध | dudh दूध | bail बैल | bael बैल
salaam सलाम | salam सलाम | yun यूं | yunhi यूं | ro रो | mat मत | mujhe मुझे | maar मार
aa आ | ya या | ho हो | hindustani हिंदुस्तानी | kar कर | ki की | ka का | ke के
"""

NAMES = ("India Delhi Mumbai Greece Europe EU Amul Mark Modi Sachin Kolkata Chennai "
         "Bengaluru Pakistan China America London Paris Tokyo Rahul Sonia Virat Dhoni "
         "Rajni Facebook Twitter Google Apple UN BJP Congress Hindustan Bollywood "
         "Wimbledon Federer Nadal Serena Asia Africa Australia Kerala Punjab Bihar").split()

# bigrams deliberately kept out so the missing-bigram failure is exercised
BLOCKED = {("slow", "food"), ("ya", "slow")}


def parse_weighted(block: str) -> list[tuple[list[str], int]]:
    out = []
    for item in re.split(r"[|\n]", block):
        item = item.strip()
        if item:
            *ws, weight = item.split()
            out.append((ws, int(weight)))
    return out


def english_vocab(pron: dict, size: int) -> tuple[list[str], list[float]]:
    vocab = [w for w in wordfreq.top_n_list("en", size * 3)
             if re.fullmatch(r"[a-z]+", w) and w in pron][:size]
    return vocab, [wordfreq.word_frequency(w, "en") for w in vocab]


def hindi_vocab(size: int) -> tuple[list[str], list[float]]:
    vocab = []
    for w in wordfreq.top_n_list("hi", size * 3):
        w = normalize_devanagari(w)
        if not w or not all("ऀ" <= ch <= "ॿ" for ch in w):
            continue
        try:
            devanagari_to_wx(w)
        except TransliterationError:
            continue
        if w not in vocab:
            vocab.append(w)
        if len(vocab) == size:
            break
    return vocab, [wordfreq.word_frequency(w, "hi") for w in vocab]


def make_sentences(rng, vocab, weights, phrases, n, *, english: bool):
    phrase_words = [p for p, _ in phrases]
    phrase_weights = [w for _, w in phrases]
    total_weight = sum(phrase_weights)
    lines = []
    while len(lines) < n:
        length = rng.randint(4, 12)
        words = rng.choices(vocab, weights, k=length)
        # every phrase occurs about `weight` times in expectation
        if rng.random() < total_weight / n:
            phrase = rng.choices(phrase_words, phrase_weights)[0]
            pos = rng.randint(0, len(words))
            words[pos:pos] = phrase
        if english and rng.random() < 0.2:
            words.insert(rng.randint(1, len(words)), rng.choice(NAMES))
        lowered = [w.lower() for w in words]
        if any(b in BLOCKED for b in zip(lowered, lowered[1:])):
            continue
        if english:
            words[0] = words[0][:1].upper() + words[0][1:] if words[0] not in NAMES else words[0]
            lines.append(" ".join(words) + ".")
        else:
            lines.append(" ".join(words) + " ।")
    return lines


_VARIANTS = (("aa", "a"), ("ee", "i"), ("oo", "u"), ("ai", "ae"), ("v", "w"), ("au", "o"))


def romanizations(dev: str, limit: int = 4) -> list[str]:
    base = wx_to_roman(devanagari_to_wx(dev))
    options = [base]
    for long, short in _VARIANTS:
        if long in base:
            options += [o.replace(long, short) for o in options]
        options = list(dict.fromkeys(options))
    return options[:limit]


def write_lines(path: Path, lines) -> None:
    atomic_write_text(path, "".join(line + "\n" for line in lines))
    print(f"wrote {path.name} ({len(lines)} lines)")


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sentences", type=int, default=24000)
    ap.add_argument("--vocab", type=int, default=9000)
    ap.add_argument("--seed", type=int, default=2018)
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    out = args.out
    out.mkdir(parents=True, exist_ok=True)

    cmu = cmudict.dict()
    en_vocab, en_w = english_vocab(cmu, args.vocab)
    en_lines = make_sentences(rng, en_vocab, en_w, parse_weighted(ENGLISH_PHRASES),
                              args.sentences, english=True)
    write_lines(out / "english_corpus.txt.gz", en_lines)

    hi_vocab, hi_w = hindi_vocab(args.vocab)
    hi_lines = make_sentences(rng, hi_vocab, hi_w, parse_weighted(HINDI_PHRASES),
                              args.sentences, english=False)
    write_lines(out / "hindi_corpus.txt.gz", hi_lines)

    pairs = set()
    hi_words = set(hi_vocab) | {w for p, _ in parse_weighted(HINDI_PHRASES) for w in p}
    for dev in sorted(hi_words):
        pairs.update((r, dev) for r in romanizations(dev))
    for item in HINDI_IRREGULAR.replace("\n", "|").split("|"):
        if item.strip():
            roman, dev = item.split()
            pairs.add((roman, dev))
    write_lines(out / "hindi_dict.tsv",
                ["# roman<TAB>devanagari, generated by scripts/make_desk_resources.py"]
                + [f"{r}\t{d}" for r, d in sorted(pairs)])

    with open_text(out / "english_corpus.txt.gz") as fh:
        wordlist, nes = build_english_lexicon(fh)
    write_lines(out / "english_words.txt", wordlist)
    write_lines(out / "named_entities.txt", nes)

    want = set(wordlist) | {w for p, _ in parse_weighted(ENGLISH_PHRASES) for w in p}
    dict_lines = [";;; subset of the CMU Pronouncing Dictionary (BSD license)"]
    for w in sorted(want):
        for i, phones in enumerate(cmu.get(w, [])):
            head = w if i == 0 else f"{w}({i + 1})"
            dict_lines.append(f"{head} {' '.join(phones)}")
    write_lines(out / "cmudict-desk.dict", dict_lines)

    for lang in langmodel.LANGUAGES:
        with open_text(out / f"{lang}_corpus.txt.gz") as fh:
            model = langmodel.train(fh, lang)
        langmodel.save(model, out / f"{lang}.bgm")
        print(f"wrote {lang}.bgm: {model!r}")


if __name__ == "__main__":
    main()
