"""Shared test scaffolding: tree builders, random tree generation, and a
brute-force re-statement of the matcher contracts used as an oracle.

The oracle deliberately avoids the library's helper functions: it scans all
token combinations and checks the label constraints literally, so agreement
with the matchers is meaningful.
"""

from __future__ import annotations

from hypothesis import strategies as st

from zhtriples import DepTree, RuleConfig, Token

DEFAULT_CFG = RuleConfig()

POS_TAGS = ["v", "v", "v", "n", "n", "n", "nh", "ns", "ni", "nt", "nt", "nz",
            "p", "p", "p", "wp", "u", "d", "m", "r"]
DEPRELS = ["SBV", "SBV", "VOB", "VOB", "VOB", "ADV", "ADV", "ADV", "CMP", "CMP",
           "POB", "POB", "POB", "ATT", "ATT", "COO", "WP", "RAD", "LAD"]
NER_TAGS = [None] * 12 + ["Nh", "Ns", "Ni", "O"]
VOCAB = ["是", "建立", "达成", "进行", "举行", "看望", "出生", "访问", "离开",
         "报道", "在", "与", "于", "对", "中国", "北京", "巴拿马", "总统",
         "主席", "警方", "关系", "协议", "师生", "学校", "记者", "公司",
         "城市", "他", "的", "了", "昨天", "去年"]


def build_tree(sentence_id, rows) -> DepTree:
    """rows: (form, pos, head, deprel) or (form, pos, head, deprel, ner)."""
    tokens = []
    for i, row in enumerate(rows, start=1):
        form, pos, head, deprel = row[:4]
        ner = row[4] if len(row) > 4 else None
        tokens.append(Token(i, form, pos, head, deprel, ner))
    return DepTree(sentence_id, tuple(tokens))


def random_tree(rng, ident: str, max_tokens: int = 10) -> DepTree:
    """A uniformly shaped random valid tree with label/POS frequencies biased
    so the patterns actually fire now and then."""
    n = rng.randint(1, max_tokens)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = {order[0]: 0}
    for k in range(1, n):
        heads[order[k]] = rng.choice(order[:k])
    tokens = []
    for i in range(1, n + 1):
        deprel = "HED" if heads[i] == 0 else rng.choice(DEPRELS)
        tokens.append(Token(i, rng.choice(VOCAB), rng.choice(POS_TAGS),
                            heads[i], deprel, rng.choice(NER_TAGS)))
    return DepTree(ident, tuple(tokens))


@st.composite
def dep_trees(draw, max_tokens: int = 8) -> DepTree:
    """Hypothesis strategy for valid trees over the same tag inventory."""
    n = draw(st.integers(min_value=1, max_value=max_tokens))
    order = draw(st.permutations(list(range(1, n + 1))))
    heads = {order[0]: 0}
    for k in range(1, n):
        heads[order[k]] = order[draw(st.integers(0, k - 1))]
    tokens = []
    for i in range(1, n + 1):
        deprel = "HED" if heads[i] == 0 else draw(st.sampled_from(DEPRELS))
        tokens.append(Token(i, draw(st.sampled_from(VOCAB)),
                            draw(st.sampled_from(POS_TAGS)), heads[i], deprel,
                            draw(st.sampled_from(NER_TAGS))))
    return DepTree(f"s{draw(st.integers(1, 99))}", tuple(tokens))


# ---------------------------------------------------------------------------
# Brute-force oracle


def _tok(tree, index):
    return tree.tokens[index - 1]


def oracle_entity_bearing(tok, cfg) -> bool:
    if tok.ner is not None and tok.ner not in ("", "O"):
        return True
    return tok.pos in cfg.entity_pos


def oracle_dependents(tree, head, deprel):
    return [t.index for t in tree.tokens if t.head == head and t.deprel == deprel]


def oracle_nearest(indices, anchor):
    best = None
    for i in indices:
        key = (abs(i - anchor), i)
        if best is None or key < best:
            best = key
    return best[1]


def oracle_pairs(tree, pred, cfg, attach_label):
    pairs = []
    for prep in tree.tokens:
        if prep.head != pred or prep.deprel != attach_label:
            continue
        for obj in tree.tokens:
            if (obj.head == prep.index and obj.deprel == cfg.prep_object
                    and obj.pos not in cfg.temporal_pos):
                pairs.append((prep.index, obj.index))
    return sorted(pairs)


def oracle_predicates(tree, cfg):
    return [t.index for t in tree.tokens if t.pos in cfg.verb_pos]


def _oracle_nominal_objects(tree, pred, cfg):
    return [i for i in oracle_dependents(tree, pred, cfg.direct_object)
            if _tok(tree, i).pos in cfg.noun_pos]


def oracle_clvc(tree, pred, cfg):
    """Expected match_clvc output as (tag, pred, dobj, prep, pobj) tuples."""
    nominals = _oracle_nominal_objects(tree, pred, cfg)
    pairs = oracle_pairs(tree, pred, cfg, cfg.prep_adverbial)
    if not nominals or not pairs:
        return []
    tag = "CLVC" if _tok(tree, pred).form in cfg.light_verbs else "EXTENDED_CLVC"
    dobj = oracle_nearest(nominals, pred)
    return [(tag, pred, dobj, prep, obj) for prep, obj in pairs]


def oracle_iv(tree, pred, cfg):
    """Expected match_iv output as (tag, pred, None, prep, pobj) tuples."""
    if _oracle_nominal_objects(tree, pred, cfg):
        return []
    left = oracle_pairs(tree, pred, cfg, cfg.prep_adverbial)
    right = oracle_pairs(tree, pred, cfg, cfg.prep_complement)
    return ([("IV_LEFT", pred, None, prep, obj) for prep, obj in left]
            + [("IV_RIGHT", pred, None, prep, obj) for prep, obj in right])


def oracle_svo(tree, pred, cfg):
    """Expected match_svo output as (tag, pred, subject, dobj) or None."""
    subjects = oracle_dependents(tree, pred, cfg.subject)
    objects = oracle_dependents(tree, pred, cfg.direct_object)
    if not subjects or not objects:
        return None
    if (oracle_pairs(tree, pred, cfg, cfg.prep_adverbial)
            or oracle_pairs(tree, pred, cfg, cfg.prep_complement)):
        return None
    return ("SVO", pred, oracle_nearest(subjects, pred),
            oracle_nearest(objects, pred))


def clvc_tuples(matches):
    return sorted((m.phenomenon, m.predicate, m.direct_object,
                   m.preposition, m.prep_object) for m in matches)


def iv_tuples(matches):
    return sorted((m.phenomenon, m.predicate, m.direct_object,
                   m.preposition, m.prep_object) for m in matches)


def svo_tuple(match):
    if match is None:
        return None
    return (match.phenomenon, match.predicate, match.subject,
            match.direct_object)


def compare_matchers_with_oracle(tree, cfg):
    """Return a list of human-readable mismatch descriptions (empty = agree)."""
    from zhtriples import match_clvc, match_iv, match_svo

    mismatches = []
    for pred in oracle_predicates(tree, cfg):
        got_clvc = clvc_tuples(match_clvc(tree, pred, cfg))
        want_clvc = sorted(oracle_clvc(tree, pred, cfg))
        if got_clvc != want_clvc:
            mismatches.append(f"clvc pred {pred}: {got_clvc} != {want_clvc}")
        got_iv = iv_tuples(match_iv(tree, pred, cfg))
        want_iv = sorted(oracle_iv(tree, pred, cfg))
        if got_iv != want_iv:
            mismatches.append(f"iv pred {pred}: {got_iv} != {want_iv}")
        got_svo = svo_tuple(match_svo(tree, pred, cfg))
        want_svo = oracle_svo(tree, pred, cfg)
        if got_svo != want_svo:
            mismatches.append(f"svo pred {pred}: {got_svo} != {want_svo}")
    return mismatches
