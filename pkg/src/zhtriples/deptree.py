"""Dependency tree data model with CoNLL-style reading, writing and checking.

Input is always pre-segmented and pre-parsed: one token per line, tab
separated columns, blank line between sentences. Two column conventions are
supported and must be selected explicitly, never guessed from the data:

* ``conllx``: FORM in column 2, POS in column 4, HEAD in column 7, DEPREL in
  column 8.
* ``conllu``: same column positions, but multiword ``N-M`` and empty-node
  ``N.M`` id lines are skipped.

An optional named-entity tag rides in column 10 as a ``NE=...`` entry
(``|``-separated MISC style). ``# sent_id = ...`` comment lines name the
sentence in either dialect; without one, sentences get their 1-based ordinal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

DIALECTS = ("conllx", "conllu")

# 0-based column positions shared by both dialects.
_COL_ID, _COL_FORM, _COL_POS, _COL_HEAD, _COL_DEPREL, _COL_MISC = 0, 1, 3, 6, 7, 9

_CONLLU_SKIP_ID = re.compile(r"^\d+-\d+$|^\d+\.\d+$")


class ConllParseError(ValueError):
    """Unusable input; carries the sentence id and 1-based line it came from."""

    def __init__(self, message, sentence_id=None, line=None):
        where = ""
        if sentence_id is not None:
            where = f" (sentence {sentence_id}"
            where += f", line {line})" if line is not None else ")"
        super().__init__(message + where)
        self.sentence_id = sentence_id
        self.line = line


@dataclass(frozen=True)
class Token:
    """One token of a dependency tree.

    ``index`` is the 1-based position in the sentence and always mirrors the
    token's position in ``DepTree.tokens``. ``head`` is the index of the
    governing token, 0 for the root. ``ner`` holds the named-entity tag from
    the input, or None when absent.
    """

    index: int
    form: str
    pos: str
    head: int
    deprel: str
    ner: str | None = None


@dataclass(frozen=True)
class Diagnostic:
    """One well-formedness violation found by :func:`validate`."""

    invariant: str  # short code: self-loop, cycle, multiple-roots, ...
    index: int      # offending token index, 0 for whole-tree problems
    message: str

    def __str__(self):
        return self.message


@dataclass(frozen=True)
class DepTree:
    """A parsed sentence. Immutable; construction does not check invariants
    (that is :func:`validate`'s job, and the CLI must be able to diagnose
    broken trees rather than refuse to hold them)."""

    sentence_id: str
    tokens: tuple[Token, ...]

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def token(self, index: int) -> Token:
        if not 1 <= index <= len(self.tokens):
            raise ValueError(f"token index {index} out of range 1..{len(self.tokens)}")
        return self.tokens[index - 1]

    @cached_property
    def _child_index(self) -> dict[int, tuple[int, ...]]:
        kids: dict[int, list[int]] = {i: [] for i in range(len(self.tokens) + 1)}
        for pos, tok in enumerate(self.tokens, start=1):
            if 0 <= tok.head <= len(self.tokens) and tok.head != pos:
                kids[tok.head].append(pos)
        return {h: tuple(c) for h, c in kids.items()}

    def children(self, index: int) -> tuple[int, ...]:
        """Indices of the direct dependents of ``index`` (0 = the roots),
        ascending. Out-of-range and self-referencing heads contribute none."""
        if not 0 <= index <= len(self.tokens):
            raise ValueError(f"token index {index} out of range 0..{len(self.tokens)}")
        return self._child_index[index]

    @property
    def root_index(self) -> int | None:
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.head == 0:
                return pos
        return None


def validate(tree: DepTree) -> list[Diagnostic]:
    """Check the tree invariants and return every violation found.

    Checked: token indices mirror positions, forms are non-empty, heads are
    in range and not self-referencing, exactly one root exists, and the head
    relation is acyclic. An empty list means the tree is well formed.
    """
    diags: list[Diagnostic] = []
    n = len(tree.tokens)
    for pos, tok in enumerate(tree.tokens, start=1):
        if tok.index != pos:
            diags.append(Diagnostic(
                "index-mismatch", pos,
                f"token at position {pos} carries index {tok.index}"))
        if not tok.form:
            diags.append(Diagnostic("empty-form", pos, f"empty form at token {pos}"))
        if tok.head < 0:
            diags.append(Diagnostic(
                "negative-head", pos, f"negative head {tok.head} at token {pos}"))
        elif tok.head == pos:
            diags.append(Diagnostic("self-loop", pos, f"self-loop at token {pos}"))
        elif tok.head > n:
            diags.append(Diagnostic(
                "head-out-of-range", pos,
                f"head {tok.head} out of range at token {pos} (sentence has {n} tokens)"))

    roots = [pos for pos, tok in enumerate(tree.tokens, start=1) if tok.head == 0]
    if not roots and n > 0:
        diags.append(Diagnostic("no-root", 0, "no root token (no head = 0)"))
    for extra in roots[1:]:
        diags.append(Diagnostic(
            "multiple-roots", extra,
            f"multiple roots: token {extra} also has head 0 (first root at token {roots[0]})"))

    # Cycle sweep. Self-loops and out-of-range heads terminate a walk; they
    # are already reported above and must not cascade into cycle reports.
    state = [0] * (n + 1)  # 0 unvisited, 1 on current path, 2 settled
    for start in range(1, n + 1):
        if state[start]:
            continue
        path: list[int] = []
        node = start
        while True:
            if node == 0 or not 1 <= node <= n or state[node] == 2:
                break
            if state[node] == 1:
                cycle = path[path.index(node):]
                diags.append(Diagnostic(
                    "cycle", min(cycle),
                    "cycle among tokens " + ", ".join(str(i) for i in sorted(cycle))))
                break
            state[node] = 1
            path.append(node)
            head = tree.tokens[node - 1].head
            if head == node or head < 0 or head > n:
                break
            node = head
        for visited in path:
            state[visited] = 2
    return diags


def subtree_tokens(tree: DepTree, node: int) -> list[int]:
    """Indices of ``node`` and everything it transitively governs, ascending."""
    if not 1 <= node <= len(tree.tokens):
        raise ValueError(f"token index {node} out of range 1..{len(tree.tokens)}")
    seen = {node}
    stack = [node]
    while stack:
        for child in tree.children(stack.pop()):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return sorted(seen)


def _ner_from_misc(misc: str) -> str | None:
    for part in misc.split("|"):
        if part.startswith("NE="):
            value = part[3:]
            return value if value not in ("", "_") else None
    return None


def _sent_id_from_comment(line: str) -> str | None:
    body = line.lstrip("#").strip()
    if body.startswith("sent_id") and "=" in body:
        return body.split("=", 1)[1].strip() or None
    return None


def parse_conll(text: str, dialect: str = "conllx", strict: bool = True) -> list[DepTree]:
    """Parse blank-line-separated CoNLL blocks into trees.

    With ``strict`` (the default) any tree failing :func:`validate` raises
    :class:`ConllParseError` naming the sentence and line; ``strict=False``
    returns such trees for later diagnosis. Malformed lines (bad column
    count, non-numeric ids or heads) always raise.
    """
    if dialect not in DIALECTS:
        raise ValueError(f"unknown dialect {dialect!r}, expected one of {DIALECTS}")

    trees: list[DepTree] = []
    block: list[tuple[int, str]] = []  # (line number, raw line)
    pending_id: str | None = None

    def flush(pending: str | None) -> str | None:
        nonlocal block
        if not block:
            return pending
        ordinal = len(trees) + 1
        sentence_id = pending if pending is not None else str(ordinal)
        tokens: list[Token] = []
        token_lines: list[int] = []
        for lineno, raw in block:
            cols = raw.split("\t")
            if len(cols) < 8:
                raise ConllParseError(
                    f"expected at least 8 tab-separated columns, got {len(cols)}",
                    sentence_id, lineno)
            if dialect == "conllu" and _CONLLU_SKIP_ID.match(cols[_COL_ID]):
                continue
            try:
                index = int(cols[_COL_ID])
            except ValueError:
                raise ConllParseError(
                    f"malformed token id {cols[_COL_ID]!r}", sentence_id, lineno) from None
            if index != len(tokens) + 1:
                raise ConllParseError(
                    f"token id {index} out of sequence (expected {len(tokens) + 1})",
                    sentence_id, lineno)
            try:
                head = int(cols[_COL_HEAD])
            except ValueError:
                raise ConllParseError(
                    f"non-numeric head {cols[_COL_HEAD]!r}", sentence_id, lineno) from None
            ner = _ner_from_misc(cols[_COL_MISC]) if len(cols) > _COL_MISC else None
            tokens.append(Token(index, cols[_COL_FORM], cols[_COL_POS],
                                head, cols[_COL_DEPREL], ner))
            token_lines.append(lineno)
        block = []
        if not tokens:
            return pending  # comment-only block, keep the id for the next one
        tree = DepTree(sentence_id, tuple(tokens))
        if strict:
            diags = validate(tree)
            if diags:
                first = diags[0]
                lineno = (token_lines[first.index - 1]
                          if 1 <= first.index <= len(token_lines) else token_lines[0])
                raise ConllParseError(first.message, sentence_id, lineno)
        trees.append(tree)
        return None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            pending_id = flush(pending_id)
            continue
        if line.startswith("#"):
            found = _sent_id_from_comment(line)
            if found is not None:
                pending_id = found
            continue
        block.append((lineno, line))
    flush(pending_id)
    return trees


def serialize_conll(trees: list[DepTree], dialect: str = "conllx") -> str:
    """Render trees back to text. ``parse_conll(serialize_conll(ts), d)``
    reproduces form, pos, head, deprel and ner exactly; conllu additionally
    keeps the sentence id (conllx has no comment lines to carry it)."""
    if dialect not in DIALECTS:
        raise ValueError(f"unknown dialect {dialect!r}, expected one of {DIALECTS}")
    lines: list[str] = []
    for tree in trees:
        if dialect == "conllu":
            lines.append(f"# sent_id = {tree.sentence_id}")
        for tok in tree:
            misc = f"NE={tok.ner}" if tok.ner else "_"
            if dialect == "conllx":
                cols = (str(tok.index), tok.form, "_", tok.pos, tok.pos, "_",
                        str(tok.head), tok.deprel, "_", misc)
            else:
                cols = (str(tok.index), tok.form, "_", tok.pos, "_", "_",
                        str(tok.head), tok.deprel, "_", misc)
            lines.append("\t".join(cols))
        lines.append("")
    return "\n".join(lines) + "\n" if lines else ""
