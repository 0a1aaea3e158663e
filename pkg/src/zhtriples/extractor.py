"""Turn pattern matches into rendered (arg1, relation, arg2) triples.

Per predicate the patterns take precedence in the order CLVC (including
EXTENDED_CLVC), then IV, then SVO: a light-verb configuration suppresses the
plain SVO reading of the same predicate, so 建立 外交 关系 never degrades to a
bare 建立. Arguments are rendered from the tree:

* entity-bearing heads keep the bare form (汉普斯特德, not its modifiers);
* common-noun heads carrying an entity attribute are replaced by that entity
  (奥巴马 总统 -> 奥巴马), flagged per argument as an NMC conversion;
* other common-noun heads expand to their attribute phrase, sorted by token
  index and joined with single spaces (美国 职业 篮球 运动员).

Relations always start with the predicate form: SVO keeps the bare verb,
CLVC appends the direct-object phrase (the preposition is left out), IV
appends the preposition, verb first regardless of surface order.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .deptree import DepTree, subtree_tokens, validate
from .rules import (CLVC, EXTENDED_CLVC, IV_LEFT, IV_RIGHT, SVO, PatternMatch,
                    RuleConfig, detect_nmc, find_predicates, is_entity_bearing,
                    match_clvc, match_iv, match_svo, prep_object_pairs,
                    resolve_subject, _dependents)


class ExtractionError(ValueError):
    """A single sentence could not be processed."""

    def __init__(self, sentence_id, diagnostics):
        detail = "; ".join(str(d) for d in diagnostics)
        super().__init__(f"invalid sentence {sentence_id}: {detail}")
        self.sentence_id = sentence_id
        self.diagnostics = list(diagnostics)


class CorpusExtractionError(ValueError):
    """Some sentences failed; the valid ones' triples are still carried."""

    def __init__(self, errors, triples):
        ids = ", ".join(sentence_id for sentence_id, _ in errors)
        super().__init__(f"{len(errors)} invalid sentence(s): {ids}")
        self.errors = list(errors)    # (sentence_id, message) pairs
        self.triples = list(triples)  # from the sentences that did parse


@dataclass(frozen=True)
class Triple:
    sentence_id: str
    arg1: str
    relation: str
    arg2: str
    phenomenon: str
    arg1_nmc: bool
    arg2_nmc: bool
    predicate_index: int
    arg1_indices: tuple[int, ...]
    arg2_indices: tuple[int, ...]

    @property
    def nmc_flagged(self) -> bool:
        return self.arg1_nmc or self.arg2_nmc

    @property
    def tag(self) -> str:
        """Phenomenon tag as written to TSV, with the NMC flag as a suffix."""
        return self.phenomenon + ("+NMC" if self.nmc_flagged else "")


def _attribute_span(tree: DepTree, node: int, cfg: RuleConfig) -> list[int]:
    # The head plus the full subtrees of its attribute dependents; keeps
    # function words like 的 that sit inside a modifier phrase.
    indices = {node}
    for mod in _dependents(tree, node, cfg.attribute):
        indices.update(subtree_tokens(tree, mod))
    return sorted(indices)


def _render_phrase(tree: DepTree, node: int, cfg: RuleConfig) -> tuple[str, tuple[int, ...]]:
    if is_entity_bearing(tree.token(node), cfg):
        indices: list[int] = [node]
    else:
        indices = _attribute_span(tree, node, cfg)
    return " ".join(tree.token(i).form for i in indices), tuple(indices)


def _convert_argument(tree: DepTree, node: int, cfg: RuleConfig) -> tuple[str, tuple[int, ...], bool]:
    pseudo = detect_nmc(tree, node, cfg)
    if pseudo is not None:
        node = pseudo.entity
    text, indices = _render_phrase(tree, node, cfg)
    return text, indices, pseudo is not None


def convert_pseudo_entity(tree: DepTree, arg_node: int, cfg: RuleConfig) -> tuple[str, list[int]]:
    """Render an argument head, substituting the entity modifier when the
    head is a pseudo-entity. Idempotent: re-converting the rendered head
    (the entity) changes nothing, since entities never re-convert."""
    text, indices, _ = _convert_argument(tree, arg_node, cfg)
    return text, list(indices)


def render_relation(tree: DepTree, match: PatternMatch, cfg: RuleConfig) -> str:
    """Relation string for a match; always starts with the predicate form."""
    pred_form = tree.token(match.predicate).form
    if match.phenomenon == SVO:
        return pred_form
    if match.phenomenon in (CLVC, EXTENDED_CLVC):
        dobj_text, _ = _render_phrase(tree, match.direct_object, cfg)
        return f"{pred_form} {dobj_text}"
    if match.phenomenon in (IV_LEFT, IV_RIGHT):
        # Verb first even when the preposition precedes it in the sentence.
        return f"{pred_form} {tree.token(match.preposition).form}"
    raise ValueError(f"cannot render relation for phenomenon {match.phenomenon!r}")


def _no_match_reason(tree: DepTree, pred: int, cfg: RuleConfig) -> str:
    reasons = []
    if not (prep_object_pairs(tree, pred, cfg, cfg.prep_adverbial)
            or prep_object_pairs(tree, pred, cfg, cfg.prep_complement)):
        reasons.append("no prepositional pair")
    if not _dependents(tree, pred, cfg.subject):
        reasons.append("no subject")
    if not _dependents(tree, pred, cfg.direct_object):
        reasons.append("no direct object")
    return ", ".join(reasons) or "no qualifying configuration"


def extract_sentence(tree: DepTree, cfg: RuleConfig,
                     trace: list[str] | None = None) -> list[Triple]:
    """All triples of one sentence, deterministically ordered by
    (predicate index, phenomenon, arg2 indices). Raises
    :class:`ExtractionError` when the tree fails validation."""
    diags = validate(tree)
    if diags:
        raise ExtractionError(tree.sentence_id, diags)

    def note(pred: int, text: str):
        if trace is not None:
            form = tree.token(pred).form
            trace.append(f"{tree.sentence_id}: {form}@{pred}: {text}")

    triples: list[Triple] = []
    for pred in find_predicates(tree, cfg):
        matches = match_clvc(tree, pred, cfg)
        if matches:
            # A subject plus the nominal object means the plain SVO reading
            # existed and is being suppressed in favor of the fuller relation.
            suppressed = bool(_dependents(tree, pred, cfg.subject))
            note(pred, f"{matches[0].phenomenon} x{len(matches)}"
                 + (" (SVO suppressed)" if suppressed else ""))
        else:
            matches = match_iv(tree, pred, cfg)
            if matches:
                note(pred, " + ".join(m.phenomenon for m in matches))
            else:
                svo = match_svo(tree, pred, cfg)
                matches = [svo] if svo else []
                note(pred, "SVO" if svo else
                     f"no pattern ({_no_match_reason(tree, pred, cfg)})")

        for match in matches:
            subject = match.subject
            if subject is None:
                subject = resolve_subject(tree, pred, cfg)
            if subject is None:
                note(pred, f"{match.phenomenon} dropped (no subject)")
                continue
            arg1, arg1_indices, arg1_nmc = _convert_argument(tree, subject, cfg)
            arg2_node = (match.direct_object if match.phenomenon == SVO
                         else match.prep_object)
            arg2, arg2_indices, arg2_nmc = _convert_argument(tree, arg2_node, cfg)
            triples.append(Triple(
                sentence_id=tree.sentence_id,
                arg1=arg1, relation=render_relation(tree, match, cfg), arg2=arg2,
                phenomenon=match.phenomenon,
                arg1_nmc=arg1_nmc, arg2_nmc=arg2_nmc,
                predicate_index=pred,
                arg1_indices=arg1_indices, arg2_indices=arg2_indices))

    triples.sort(key=lambda t: (t.predicate_index, t.phenomenon, t.arg2_indices))
    return triples


def extract_corpus(trees: list[DepTree], cfg: RuleConfig, jobs: int = 1,
                   trace: Callable[[str], None] | None = None) -> list[Triple]:
    """Extract every sentence, in input order. With ``jobs`` > 1 sentences
    are sharded across worker threads; results (and trace lines) are
    reassembled in input order, so output is identical to a serial run.
    Raises :class:`CorpusExtractionError` carrying both the per-sentence
    errors and the triples of the sentences that succeeded."""

    def worker(tree: DepTree):
        lines: list[str] | None = [] if trace is not None else None
        try:
            return extract_sentence(tree, cfg, trace=lines), None, lines
        except ExtractionError as err:
            return [], (tree.sentence_id, str(err)), lines

    if jobs > 1 and len(trees) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, trees))
    else:
        results = [worker(tree) for tree in trees]

    triples: list[Triple] = []
    errors: list[tuple[str, str]] = []
    for sentence_triples, error, lines in results:
        if trace is not None:
            for line in lines or ():
                trace(line)
        triples.extend(sentence_triples)
        if error is not None:
            errors.append(error)
    if errors:
        raise CorpusExtractionError(errors, triples)
    return triples


def triples_to_tsv(triples: list[Triple]) -> str:
    """One line per triple: sentence_id, arg1, relation, arg2, phenomenon
    tag (NMC conversions marked by a +NMC suffix on the tag)."""
    rows = ["\t".join((t.sentence_id, t.arg1, t.relation, t.arg2, t.tag))
            for t in triples]
    return "\n".join(rows) + "\n" if rows else ""


def triples_to_jsonl(triples: list[Triple]) -> str:
    """One JSON object per line with the full triple record."""
    rows = [json.dumps({
        "sentence_id": t.sentence_id,
        "arg1": t.arg1,
        "relation": t.relation,
        "arg2": t.arg2,
        "phenomenon": t.phenomenon,
        "arg1_nmc": t.arg1_nmc,
        "arg2_nmc": t.arg2_nmc,
        "predicate_index": t.predicate_index,
        "arg1_indices": list(t.arg1_indices),
        "arg2_indices": list(t.arg2_indices),
    }, ensure_ascii=False) for t in triples]
    return "\n".join(rows) + "\n" if rows else ""
