"""Predicate-centered matchers for Chinese dependency configurations.

Every matcher looks at one verbal token of one tree and is pure:

* ``match_svo``: plain subject verb object, fired only when no qualifying
  prepositional object hangs off the predicate.
* ``match_clvc``: verb with a nominal direct object plus a preposition
  attached as adverbial whose own object supplies the second argument.
  Tagged CLVC when the verb is in the light-verb lexicon, EXTENDED_CLVC
  otherwise; the triple shape is identical either way.
* ``match_iv``: verb without a nominal direct object whose second argument
  arrives through a preposition: attached as adverbial when the phrase sits
  left of the verb (IV_LEFT), as complement when it sits right (IV_RIGHT).
* ``detect_nmc``: common-noun head carrying an entity-bearing attribute
  modifier, e.g. 奥巴马 总统; the modifier later replaces the head when
  arguments are rendered.

Prepositional objects with a temporal POS never count as arguments. All
selections are deterministic: nearest to the governing token first, then
leftmost.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deptree import DepTree, Token

SVO = "SVO"
NMC = "NMC"
CLVC = "CLVC"
EXTENDED_CLVC = "EXTENDED_CLVC"
IV_LEFT = "IV_LEFT"
IV_RIGHT = "IV_RIGHT"
PHENOMENA = (SVO, NMC, CLVC, EXTENDED_CLVC, IV_LEFT, IV_RIGHT)

# Role names, in the order they appear in a rules file.
ROLES = ("subject", "direct_object", "prep_adverbial", "prep_complement",
         "prep_object", "attribute", "coordination", "root")
_SET_KEYS = ("verb_pos", "noun_pos", "entity_pos", "temporal_pos", "light_verbs")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RuleConfig:
    """Label and lexicon configuration, defaulting to LTP conventions.

    The two prepositional attachment roles may share a label (some schemes
    use one relation for both); every other pair must stay distinct, and
    entity POS tags must be a subset of the noun POS tags.
    """

    subject: str = "SBV"
    direct_object: str = "VOB"
    prep_adverbial: str = "ADV"
    prep_complement: str = "CMP"
    prep_object: str = "POB"
    attribute: str = "ATT"
    coordination: str = "COO"
    root: str = "HED"
    verb_pos: frozenset[str] = frozenset({"v"})
    noun_pos: frozenset[str] = frozenset({"n", "nh", "ns", "ni", "nz"})
    entity_pos: frozenset[str] = frozenset({"nh", "ns", "ni"})
    temporal_pos: frozenset[str] = frozenset({"nt"})
    light_verbs: frozenset[str] = frozenset({"是", "建立", "达成", "进行", "举行"})

    def __post_init__(self):
        labels = [(role, getattr(self, role)) for role in ROLES]
        for role, label in labels:
            if not label:
                raise ConfigError(f"empty label for role {role!r}")
        for i, (role_a, label_a) in enumerate(labels):
            for role_b, label_b in labels[i + 1:]:
                if label_a == label_b and {role_a, role_b} != {"prep_adverbial",
                                                               "prep_complement"}:
                    raise ConfigError(
                        f"roles {role_a!r} and {role_b!r} share label {label_a!r}")
        stray = self.entity_pos - self.noun_pos
        if stray:
            raise ConfigError(
                f"entity_pos tags {sorted(stray)} missing from noun_pos")

    @property
    def label_map(self) -> dict[str, str]:
        return {role: getattr(self, role) for role in ROLES}

    @classmethod
    def from_text(cls, text: str) -> "RuleConfig":
        """Parse a ``key = value`` rules file body; lists are comma separated,
        ``#`` starts a comment, unknown keys are an error."""
        kwargs: dict[str, object] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key in ROLES:
                kwargs[key] = value
            elif key in _SET_KEYS:
                kwargs[key] = frozenset(
                    item.strip() for item in value.split(",") if item.strip())
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path) -> "RuleConfig":
        with open(path, encoding="utf-8") as handle:
            return cls.from_text(handle.read())


@dataclass(frozen=True)
class PatternMatch:
    """One fired pattern. Fields that a pattern does not use stay None
    (SVO has no preposition; CLVC and IV carry no subject, the extractor
    resolves one)."""

    phenomenon: str
    predicate: int
    subject: int | None = None
    direct_object: int | None = None
    preposition: int | None = None
    prep_object: int | None = None


@dataclass(frozen=True)
class PseudoEntity:
    """A common-noun head standing in for the entity that modifies it."""

    head_word: int
    entity: int


def is_entity_bearing(token: Token, cfg: RuleConfig) -> bool:
    """NER beats POS; the BIO outside tag O (and empty) counts as untagged."""
    if token.ner and token.ner != "O":
        return True
    return token.pos in cfg.entity_pos


def find_predicates(tree: DepTree, cfg: RuleConfig) -> list[int]:
    return [tok.index for tok in tree if tok.pos in cfg.verb_pos]


def _dependents(tree: DepTree, head: int, deprel: str) -> list[int]:
    return [i for i in tree.children(head) if tree.token(i).deprel == deprel]


def _nearest(indices: list[int], anchor: int) -> int:
    return min(indices, key=lambda i: (abs(i - anchor), i))


def prep_object_pairs(tree: DepTree, pred: int, cfg: RuleConfig,
                      attach_label: str) -> list[tuple[int, int]]:
    """(preposition, object) index pairs where the preposition hangs off
    ``pred`` via ``attach_label`` and governs a non-temporal prep object."""
    pairs = []
    for prep in _dependents(tree, pred, attach_label):
        for obj in _dependents(tree, prep, cfg.prep_object):
            if tree.token(obj).pos not in cfg.temporal_pos:
                pairs.append((prep, obj))
    return pairs


def _nominal_objects(tree: DepTree, pred: int, cfg: RuleConfig) -> list[int]:
    return [i for i in _dependents(tree, pred, cfg.direct_object)
            if tree.token(i).pos in cfg.noun_pos]


def match_svo(tree: DepTree, pred: int, cfg: RuleConfig) -> PatternMatch | None:
    """Subject and direct object on the predicate, and no qualifying
    prepositional pair (those belong to the CLVC and IV patterns)."""
    subjects = _dependents(tree, pred, cfg.subject)
    objects = _dependents(tree, pred, cfg.direct_object)
    if not subjects or not objects:
        return None
    if (prep_object_pairs(tree, pred, cfg, cfg.prep_adverbial)
            or prep_object_pairs(tree, pred, cfg, cfg.prep_complement)):
        return None
    return PatternMatch(SVO, pred,
                        subject=_nearest(subjects, pred),
                        direct_object=_nearest(objects, pred))


def match_clvc(tree: DepTree, pred: int, cfg: RuleConfig) -> list[PatternMatch]:
    """One match per adverbial prepositional pair when the predicate also
    carries a nominal direct object. The light-verb lexicon only decides the
    tag (CLVC vs EXTENDED_CLVC), never whether the pattern fires."""
    nominals = _nominal_objects(tree, pred, cfg)
    if not nominals:
        return []
    pairs = prep_object_pairs(tree, pred, cfg, cfg.prep_adverbial)
    if not pairs:
        return []
    tag = CLVC if tree.token(pred).form in cfg.light_verbs else EXTENDED_CLVC
    dobj = _nearest(nominals, pred)
    return [PatternMatch(tag, pred, direct_object=dobj, preposition=p, prep_object=e)
            for p, e in pairs]


def match_iv(tree: DepTree, pred: int, cfg: RuleConfig) -> list[PatternMatch]:
    """Prepositional argument of a verb with no nominal direct object.
    Adverbial attachment means the phrase precedes the verb (IV_LEFT),
    complement attachment means it follows (IV_RIGHT)."""
    if _nominal_objects(tree, pred, cfg):
        return []
    left = prep_object_pairs(tree, pred, cfg, cfg.prep_adverbial)
    right = prep_object_pairs(tree, pred, cfg, cfg.prep_complement)
    return ([PatternMatch(IV_LEFT, pred, preposition=p, prep_object=e)
             for p, e in left]
            + [PatternMatch(IV_RIGHT, pred, preposition=p, prep_object=e)
               for p, e in right])


def detect_nmc(tree: DepTree, node: int, cfg: RuleConfig) -> PseudoEntity | None:
    """A common-noun head with an entity-bearing attribute dependent.
    Entity-bearing heads are already entities and never qualify."""
    tok = tree.token(node)
    if tok.pos not in cfg.noun_pos or is_entity_bearing(tok, cfg):
        return None
    modifiers = [i for i in _dependents(tree, node, cfg.attribute)
                 if is_entity_bearing(tree.token(i), cfg)]
    if not modifiers:
        return None
    return PseudoEntity(head_word=node, entity=_nearest(modifiers, node))


def resolve_subject(tree: DepTree, pred: int, cfg: RuleConfig) -> int | None:
    """The predicate's own subject dependent, or one inherited by climbing
    coordination edges (covers verbs conjoined to a clause that holds the
    shared subject). None when the chain runs out."""
    node = pred
    for _ in range(len(tree)):
        subjects = _dependents(tree, node, cfg.subject)
        if subjects:
            return _nearest(subjects, node)
        tok = tree.token(node)
        if tok.deprel != cfg.coordination or not 1 <= tok.head <= len(tree):
            return None
        node = tok.head
    return None
