"""punrecover command line: build-lexicon, train-lm, recover, evaluate."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import langmodel
from .config import ConfigError, load_config, load_resources
from .evaluation import GoldFormatError, evaluate, load_gold
from .lexicon import LexiconError, build_english_lexicon
from .recovery import recover, romanize
from .util import atomic_write_text, open_text


def dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="key=value config file (default: $PUNRECOVER_CONFIG "
                                    "or the bundled desk config)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--top-n", type=int, help="hypotheses to report")
    p.add_argument("--context-k", type=int, help="context words per side")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="punrecover", parents=[common],
                                     description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-lexicon", parents=[common],
                       help="English wordlist + NE list from a corpus")
    p.add_argument("corpus")
    p.add_argument("out_dir")
    p.add_argument("--min-count", type=int, default=2)
    p.add_argument("--ne-min-sentences", type=int, default=2)

    p = sub.add_parser("train-lm", parents=[common], help="train a Kneser-Ney bigram model")
    p.add_argument("corpus")
    p.add_argument("language", choices=langmodel.LANGUAGES)
    p.add_argument("out")
    p.add_argument("--discount", type=float, help="KN discount (default from config)")
    p.add_argument("--min-count", type=int, default=2)

    p = sub.add_parser("recover", parents=[common], help="recover the target of one pun")
    p.add_argument("text")
    p.add_argument("--romanize", action="store_true", help="print Hindi targets in Roman")

    p = sub.add_parser("evaluate", parents=[common], help="score a gold JSONL dataset")
    p.add_argument("gold")
    p.add_argument("--json-out", help="also write the JSON report to this file")
    return parser


def _config(args):
    cfg = load_config(args.config)
    return cfg.with_overrides(top_n=args.top_n, context_k=args.context_k)


def cmd_build_lexicon(args) -> int:
    out = Path(args.out_dir)
    with open_text(args.corpus) as fh:
        wordlist, nes = build_english_lexicon(fh, args.min_count, args.ne_min_sentences)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out / "english_words.txt", "".join(w + "\n" for w in wordlist))
    atomic_write_text(out / "named_entities.txt", "".join(w + "\n" for w in nes))
    if args.json:
        print(dump_json({"english_words": len(wordlist), "named_entities": len(nes)}))
    else:
        print(f"english words: {len(wordlist)}\nnamed entities: {len(nes)}")
    return 0


def cmd_train_lm(args) -> int:
    discount = args.discount
    if discount is None:
        discount = load_config(args.config).kn_discount if args.config else 0.75
    with open_text(args.corpus) as fh:
        model = langmodel.train(fh, args.language, discount, args.min_count)
    langmodel.save(model, args.out)
    stats = {"vocab": len(model.vocab), "bigram_types": model.total_bigram_types}
    if args.json:
        print(dump_json(stats))
    else:
        print(f"vocab size: {stats['vocab']}\nbigram types: {stats['bigram_types']}")
    return 0


def cmd_recover(args) -> int:
    cfg = _config(args)
    res = load_resources(cfg)
    result = recover(args.text, res, cfg.settings())
    if args.json:
        print(dump_json(result.to_dict(res.lexicon)))
        return 0

    def show(word, lang):
        return romanize(word, lang, res.lexicon) if args.romanize else word

    print("tokens:     " + " ".join(f"{t.token.norm}/{t.tag.value}" for t in result.tagged))
    for c in result.candidates:
        print(f"candidate:  {c.index} {result.tagged[c.index].token.norm} "
              f"[{', '.join(r.value for r in c.reasons)}]")
    print(f"class:      {result.classification.value}")
    for r, h in enumerate(result.hypotheses, 1):
        print(f"{r:>2}. {h.pun_word} -> {show(h.target_word, h.target_language)} "
              f"({h.target_language}, {h.side} context) distance={h.distance:.6f} "
              f"logp={h.lm_log_prob:.6f}")
    return 0


def cmd_evaluate(args) -> int:
    cfg = _config(args)
    res = load_resources(cfg)
    gold = load_gold(args.gold)
    report = evaluate(gold, res, cfg.settings(), n=cfg.top_n)
    data = dump_json(report.to_dict())
    print(data if args.json else report.render())
    if args.json_out:
        atomic_write_text(args.json_out, data + "\n")
    return 0


COMMANDS = {
    "build-lexicon": cmd_build_lexicon,
    "train-lm": cmd_train_lm,
    "recover": cmd_recover,
    "evaluate": cmd_evaluate,
}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (OSError, ConfigError, LexiconError, GoldFormatError, langmodel.ModelError) as e:
        print(f"punrecover: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
