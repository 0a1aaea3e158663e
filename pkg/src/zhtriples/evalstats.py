"""Scoring against gold triples and phenomenon frequency statistics.

Matching is exact on normalized keys: sentence id, arg1, relation and arg2
joined by a unit separator, with runs of whitespace collapsed. The
phenomenon column never enters a key. A looser head-only policy compares
only the last token of each argument (nominal phrases here are head-final).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .rules import CLVC, EXTENDED_CLVC, IV_LEFT, IV_RIGHT, NMC, SVO

_UNIT_SEP = "\x1f"
_WS = re.compile(r"\s+")

MATCH_POLICIES = ("exact", "head-only")


def _clean(text: str) -> str:
    return _WS.sub(" ", text.strip())


def _head_token(text: str) -> str:
    cleaned = _clean(text)
    return cleaned.rsplit(" ", 1)[-1] if cleaned else cleaned


def normalize_triple(triple) -> str:
    """Whitespace-insensitive identity key of a triple, phenomenon excluded."""
    return _UNIT_SEP.join((_clean(triple.sentence_id), _clean(triple.arg1),
                           _clean(triple.relation), _clean(triple.arg2)))


def _head_only_key(triple) -> str:
    return _UNIT_SEP.join((_clean(triple.sentence_id), _head_token(triple.arg1),
                           _clean(triple.relation), _head_token(triple.arg2)))


class TripleFormatError(ValueError):
    """A triples TSV line that cannot be used; carries its line number."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class TripleRow:
    """One row of a triples TSV (predictions and gold share the format)."""

    sentence_id: str
    arg1: str
    relation: str
    arg2: str
    phenomenon: str  # full tag, possibly with a +NMC suffix

    @property
    def base_phenomenon(self) -> str:
        return self.phenomenon.split("+", 1)[0]

    @property
    def nmc_flagged(self) -> bool:
        return "+NMC" in self.phenomenon


def read_triples_tsv(text: str) -> list[TripleRow]:
    """Parse a 5-column triples file; blank and ``#`` lines are skipped."""
    rows: list[TripleRow] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 5:
            raise TripleFormatError(
                f"expected 5 tab-separated columns, got {len(cols)}", lineno)
        if any(not col.strip() for col in cols):
            raise TripleFormatError("empty column", lineno)
        rows.append(TripleRow(*cols))
    return rows


@dataclass(frozen=True)
class Scores:
    true_positives: int
    predicted: int
    gold: int
    precision: float
    recall: float
    f1: float


def _scores(tp: int, predicted: int, gold: int) -> Scores:
    precision = tp / predicted if predicted else 0.0
    recall = tp / gold if gold else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall else 0.0)
    return Scores(tp, predicted, gold, precision, recall, f1)


@dataclass(frozen=True)
class EvalReport:
    true_positives: int
    predicted: int
    gold: int
    precision: float
    recall: float
    f1: float
    per_phenomenon: dict[str, Scores] = field(default_factory=dict)


def score(predicted, gold, match: str = "exact") -> EvalReport:
    """Score predictions against gold rows. Duplicate keys count once on
    either side. The per-phenomenon breakdown attributes matched triples to
    the gold row's tag; unmatched predictions keep their own tag."""
    if match not in MATCH_POLICIES:
        raise ValueError(f"unknown match policy {match!r}, expected one of {MATCH_POLICIES}")
    keyfn = normalize_triple if match == "exact" else _head_only_key

    pred_tags: dict[str, str] = {}
    for item in predicted:
        pred_tags.setdefault(keyfn(item), _tag_of(item))
    gold_tags: dict[str, str] = {}
    for item in gold:
        gold_tags.setdefault(keyfn(item), _tag_of(item))

    matched = set(pred_tags) & set(gold_tags)
    overall = _scores(len(matched), len(pred_tags), len(gold_tags))

    counts: dict[str, dict[str, int]] = {}

    def bump(tag: str, what: str):
        counts.setdefault(tag, {"tp": 0, "predicted": 0, "gold": 0})[what] += 1

    for key, tag in gold_tags.items():
        bump(tag, "gold")
        if key in matched:
            bump(tag, "tp")
    for key, tag in pred_tags.items():
        bump(gold_tags[key] if key in matched else tag, "predicted")

    per_phenomenon = {tag: _scores(c["tp"], c["predicted"], c["gold"])
                      for tag, c in sorted(counts.items())}
    return EvalReport(overall.true_positives, overall.predicted, overall.gold,
                      overall.precision, overall.recall, overall.f1,
                      per_phenomenon)


def _tag_of(item) -> str:
    tag = getattr(item, "tag", None)
    return tag if tag is not None else item.phenomenon


def _base_and_flag(item) -> tuple[str, bool]:
    base = getattr(item, "base_phenomenon", None)
    if base is None:
        base = item.phenomenon
    return base, item.nmc_flagged


def _pct(count: int, total: int) -> float:
    if total == 0:
        return 0.0
    ratio = Decimal(count * 100) / Decimal(total)
    return float(ratio.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class StatsReport:
    """Frequency of each syntactic phenomenon in a triple collection.

    The five counts partition the triples: anything carrying an NMC
    conversion lands in the nmc bucket regardless of its base tag, the rest
    are bucketed by tag with both IV directions pooled. The combined figure
    adds the NMC, pooled-CLVC and IV percentages.
    """

    total_triples: int
    nmc: int
    clvc: int
    extended_clvc: int
    iv: int
    svo: int
    pct_nmc: float
    pct_clvc: float
    pct_extended_clvc: float
    pct_iv: float
    pct_svo: float
    pct_clvc_family: float
    pct_combined: float


def phenomenon_stats(triples) -> StatsReport:
    """Count and percentage per phenomenon bucket; works on extractor
    triples and on TSV rows alike."""
    buckets = {"nmc": 0, "clvc": 0, "extended_clvc": 0, "iv": 0, "svo": 0}
    for item in triples:
        base, flagged = _base_and_flag(item)
        if flagged or base == NMC:
            buckets["nmc"] += 1
        elif base == CLVC:
            buckets["clvc"] += 1
        elif base == EXTENDED_CLVC:
            buckets["extended_clvc"] += 1
        elif base in (IV_LEFT, IV_RIGHT):
            buckets["iv"] += 1
        elif base == SVO:
            buckets["svo"] += 1
        else:
            raise ValueError(f"unknown phenomenon tag {base!r}")
    total = sum(buckets.values())
    pct_nmc = _pct(buckets["nmc"], total)
    pct_clvc_family = _pct(buckets["clvc"] + buckets["extended_clvc"], total)
    pct_iv = _pct(buckets["iv"], total)
    return StatsReport(
        total_triples=total,
        nmc=buckets["nmc"], clvc=buckets["clvc"],
        extended_clvc=buckets["extended_clvc"],
        iv=buckets["iv"], svo=buckets["svo"],
        pct_nmc=pct_nmc,
        pct_clvc=_pct(buckets["clvc"], total),
        pct_extended_clvc=_pct(buckets["extended_clvc"], total),
        pct_iv=pct_iv,
        pct_svo=_pct(buckets["svo"], total),
        pct_clvc_family=pct_clvc_family,
        pct_combined=round(pct_nmc + pct_clvc_family + pct_iv, 2))


def format_eval_text(report: EvalReport) -> str:
    lines = [
        f"precision {report.precision:.4f} recall {report.recall:.4f} f1 {report.f1:.4f}",
        f"true positives {report.true_positives}  predicted {report.predicted}  gold {report.gold}",
    ]
    if report.per_phenomenon:
        lines.append("")
        lines.append(f"{'phenomenon':<22}{'tp':>5}{'pred':>6}{'gold':>6}"
                     f"{'precision':>11}{'recall':>9}{'f1':>9}")
        for tag, s in report.per_phenomenon.items():
            lines.append(f"{tag:<22}{s.true_positives:>5}{s.predicted:>6}{s.gold:>6}"
                         f"{s.precision:>11.4f}{s.recall:>9.4f}{s.f1:>9.4f}")
    return "\n".join(lines) + "\n"


def format_stats_text(report: StatsReport) -> str:
    rows = [
        ("NMC", report.nmc, report.pct_nmc),
        ("CLVC", report.clvc, report.pct_clvc),
        ("EXTENDED_CLVC", report.extended_clvc, report.pct_extended_clvc),
        ("IV", report.iv, report.pct_iv),
        ("SVO (plain)", report.svo, report.pct_svo),
    ]
    lines = [f"total triples {report.total_triples}"]
    for name, count, pct in rows:
        lines.append(f"{name:<22}{count:>6}  {pct:>6.2f}%")
    family = report.clvc + report.extended_clvc
    lines.append(f"{'CLVC + EXTENDED_CLVC':<22}{family:>6}  {report.pct_clvc_family:>6.2f}%")
    lines.append(f"{'combined phenomena':<22}{'':>6}  {report.pct_combined:>6.2f}%")
    return "\n".join(lines) + "\n"


def eval_report_dict(report: EvalReport) -> dict:
    return {
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "true_positives": report.true_positives,
        "predicted": report.predicted,
        "gold": report.gold,
        "per_phenomenon": {
            tag: {"true_positives": s.true_positives, "predicted": s.predicted,
                  "gold": s.gold, "precision": s.precision, "recall": s.recall,
                  "f1": s.f1}
            for tag, s in report.per_phenomenon.items()},
    }


def stats_report_dict(report: StatsReport) -> dict:
    return {
        "total_triples": report.total_triples,
        "counts": {"nmc": report.nmc, "clvc": report.clvc,
                   "extended_clvc": report.extended_clvc,
                   "iv": report.iv, "svo": report.svo},
        "percentages": {"nmc": report.pct_nmc, "clvc": report.pct_clvc,
                        "extended_clvc": report.pct_extended_clvc,
                        "iv": report.pct_iv, "svo": report.pct_svo,
                        "clvc_family": report.pct_clvc_family,
                        "combined": report.pct_combined},
    }
