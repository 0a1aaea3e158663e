#!/usr/bin/env python3
"""End-to-end study on a CoNLL corpus: extract triples, score them against a
gold file when one is given, and report phenomenon frequencies.

Defaults run the bundled 8-sentence demo corpus against its gold triples:

    python3 scripts/run_corpus_study.py
    python3 scripts/run_corpus_study.py --corpus my.conllu --dialect conllu --gold my_gold.tsv
"""

import argparse
import sys
from pathlib import Path

from zhtriples import (RuleConfig, extract_corpus, format_eval_text,
                       format_stats_text, parse_conll, phenomenon_stats,
                       read_triples_tsv, score, triples_to_tsv)

REPO_ROOT = Path(__file__).resolve().parents[1]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--corpus", default=str(REPO_ROOT / "data" / "demo.conllu"),
                        help="CoNLL file with parsed sentences")
    parser.add_argument("--dialect", choices=("conllx", "conllu"), default="conllu")
    parser.add_argument("--gold", default=str(REPO_ROOT / "data" / "demo_gold.tsv"),
                        help="gold triples TSV ('' skips scoring)")
    parser.add_argument("--rules", help="rules config overriding the defaults")
    parser.add_argument("--match", choices=("exact", "head-only"), default="exact")
    args = parser.parse_args(argv)

    cfg = RuleConfig.from_file(args.rules) if args.rules else RuleConfig()
    text = Path(args.corpus).read_text(encoding="utf-8")
    trees = parse_conll(text, args.dialect)
    triples = extract_corpus(trees, cfg)

    print(f"corpus: {args.corpus} ({len(trees)} sentences)")
    print()
    print("== triples ==")
    sys.stdout.write(triples_to_tsv(triples))

    if args.gold:
        gold = read_triples_tsv(Path(args.gold).read_text(encoding="utf-8"))
        print()
        print(f"== scores vs {args.gold} ({args.match}) ==")
        sys.stdout.write(format_eval_text(score(triples, gold, match=args.match)))

    print()
    print("== phenomenon frequencies ==")
    sys.stdout.write(format_stats_text(phenomenon_stats(triples)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
