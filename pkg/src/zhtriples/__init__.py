"""Rule-based open relation extraction over pre-parsed Chinese dependency trees."""

from .deptree import (ConllParseError, DepTree, Diagnostic, Token, parse_conll,
                      serialize_conll, subtree_tokens, validate)
from .evalstats import (EvalReport, Scores, StatsReport, TripleFormatError,
                        TripleRow, eval_report_dict, format_eval_text,
                        format_stats_text, normalize_triple, phenomenon_stats,
                        read_triples_tsv, score, stats_report_dict)
from .extractor import (CorpusExtractionError, ExtractionError, Triple,
                        convert_pseudo_entity, extract_corpus, extract_sentence,
                        render_relation, triples_to_jsonl, triples_to_tsv)
from .rules import (CLVC, EXTENDED_CLVC, IV_LEFT, IV_RIGHT, NMC, PHENOMENA, SVO,
                    ConfigError, PatternMatch, PseudoEntity, RuleConfig,
                    detect_nmc, find_predicates, is_entity_bearing, match_clvc,
                    match_iv, match_svo, prep_object_pairs, resolve_subject)

__version__ = "0.1.0"

__all__ = [
    "CLVC", "EXTENDED_CLVC", "IV_LEFT", "IV_RIGHT", "NMC", "PHENOMENA", "SVO",
    "ConfigError", "ConllParseError", "CorpusExtractionError", "DepTree",
    "Diagnostic", "EvalReport", "ExtractionError", "PatternMatch",
    "PseudoEntity", "RuleConfig", "Scores", "StatsReport", "Token", "Triple",
    "TripleFormatError", "TripleRow", "convert_pseudo_entity", "detect_nmc",
    "eval_report_dict", "extract_corpus", "extract_sentence",
    "find_predicates", "format_eval_text", "format_stats_text",
    "is_entity_bearing", "match_clvc", "match_iv", "match_svo",
    "normalize_triple", "parse_conll", "phenomenon_stats", "prep_object_pairs",
    "read_triples_tsv", "render_relation", "resolve_subject", "score",
    "serialize_conll", "stats_report_dict", "subtree_tokens",
    "triples_to_jsonl", "triples_to_tsv", "validate",
]
