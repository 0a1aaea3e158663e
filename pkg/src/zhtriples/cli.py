"""Command line front end: extract, eval, stats, validate.

Commands read --input (default stdin) and write --output (default stdout),
so they compose in pipelines. Exit codes: 0 success, 1 invalid data
(unparseable sentence, malformed triple row, failed validation), 2 usage
problems (bad flags, unreadable files, broken rules config). Diagnostics and
trace lines go to stderr and never interleave with data output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .deptree import DIALECTS, ConllParseError, parse_conll, validate
from .evalstats import (MATCH_POLICIES, TripleFormatError, eval_report_dict,
                        format_eval_text, format_stats_text, phenomenon_stats,
                        read_triples_tsv, score, stats_report_dict)
from .extractor import (CorpusExtractionError, extract_corpus,
                        triples_to_jsonl, triples_to_tsv)
from .rules import ConfigError, RuleConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zhtriples",
        description="Rule-based relation triple extraction over pre-parsed "
                    "Chinese dependency trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p):
        p.add_argument("--input", help="input file (default: stdin)")
        p.add_argument("--output", help="output file (default: stdout)")

    p = sub.add_parser("extract", help="extract triples from CoNLL input")
    io_flags(p)
    p.add_argument("--dialect", choices=DIALECTS, default="conllx",
                   help="CoNLL column convention of the input (never sniffed)")
    p.add_argument("--emit", choices=("tsv", "json"), default="tsv",
                   help="triple output format")
    p.add_argument("--rules", help="rules config file overriding the defaults")
    p.add_argument("--trace", action="store_true",
                   help="per-predicate decision log on stderr")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads; output is identical to a serial run")

    p = sub.add_parser("eval", help="score predicted triples against gold")
    io_flags(p)
    p.add_argument("--gold", required=True, help="gold triples TSV")
    p.add_argument("--match", choices=MATCH_POLICIES, default="exact",
                   help="exact keys or argument-head-only comparison")
    p.add_argument("--emit", choices=("text", "json"), default="text")

    p = sub.add_parser("stats", help="phenomenon frequency report for a triples file")
    io_flags(p)
    p.add_argument("--emit", choices=("text", "json"), default="text")

    p = sub.add_parser("validate", help="check tree well-formedness")
    io_flags(p)
    p.add_argument("--dialect", choices=DIALECTS, default="conllx",
                   help="CoNLL column convention of the input (never sniffed)")
    return parser


def _read_input(args) -> str:
    if args.input:
        with open(args.input, encoding="utf-8") as handle:
            return handle.read()
    return sys.stdin.read()


def _write_output(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _fail(message: str, code: int) -> int:
    print(f"zhtriples: {message}", file=sys.stderr)
    return code


def run_extract(args) -> int:
    try:
        cfg = RuleConfig.from_file(args.rules) if args.rules else RuleConfig()
    except (ConfigError, OSError) as err:
        return _fail(f"rules: {err}", 2)
    try:
        text = _read_input(args)
    except OSError as err:
        return _fail(str(err), 2)
    try:
        trees = parse_conll(text, args.dialect, strict=False)
    except ConllParseError as err:
        return _fail(str(err), 1)

    sink = (lambda line: print(line, file=sys.stderr)) if args.trace else None
    code = 0
    try:
        triples = extract_corpus(trees, cfg, jobs=max(args.jobs, 1), trace=sink)
    except CorpusExtractionError as err:
        triples = err.triples
        for sentence_id, message in err.errors:
            print(f"zhtriples: {message}", file=sys.stderr)
        code = 1
    emit = triples_to_tsv if args.emit == "tsv" else triples_to_jsonl
    try:
        _write_output(args, emit(triples))
    except OSError as err:
        return _fail(str(err), 2)
    return code


def run_eval(args) -> int:
    try:
        predicted_text = _read_input(args)
        with open(args.gold, encoding="utf-8") as handle:
            gold_text = handle.read()
    except OSError as err:
        return _fail(str(err), 2)
    try:
        predicted = read_triples_tsv(predicted_text)
    except TripleFormatError as err:
        return _fail(f"predictions: {err}", 1)
    try:
        gold = read_triples_tsv(gold_text)
    except TripleFormatError as err:
        return _fail(f"gold: {err}", 1)
    report = score(predicted, gold, match=args.match)
    if args.emit == "json":
        out = json.dumps(eval_report_dict(report), ensure_ascii=False, indent=2) + "\n"
    else:
        out = format_eval_text(report)
    try:
        _write_output(args, out)
    except OSError as err:
        return _fail(str(err), 2)
    return 0


def run_stats(args) -> int:
    try:
        text = _read_input(args)
    except OSError as err:
        return _fail(str(err), 2)
    try:
        rows = read_triples_tsv(text)
        report = phenomenon_stats(rows)
    except (TripleFormatError, ValueError) as err:
        return _fail(str(err), 1)
    if args.emit == "json":
        out = json.dumps(stats_report_dict(report), ensure_ascii=False, indent=2) + "\n"
    else:
        out = format_stats_text(report)
    try:
        _write_output(args, out)
    except OSError as err:
        return _fail(str(err), 2)
    return 0


def run_validate(args) -> int:
    try:
        text = _read_input(args)
    except OSError as err:
        return _fail(str(err), 2)
    try:
        trees = parse_conll(text, args.dialect, strict=False)
    except ConllParseError as err:
        return _fail(str(err), 1)
    lines = []
    errors = 0
    for tree in trees:
        for diag in validate(tree):
            lines.append(f"{tree.sentence_id}: {diag.message}")
            errors += 1
    lines.append(f"{len(trees)} sentences, {errors} errors")
    try:
        _write_output(args, "\n".join(lines) + "\n")
    except OSError as err:
        return _fail(str(err), 2)
    return 0 if errors == 0 else 1


_RUNNERS = {
    "extract": run_extract,
    "eval": run_eval,
    "stats": run_stats,
    "validate": run_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _RUNNERS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
