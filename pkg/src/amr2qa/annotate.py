"""Sentence annotations from CoNLL-U and concept-to-token alignment.

The toolkit never runs a tagger or parser itself; it consumes CoNLL-U
produced by any UD pipeline (tokens, lemmas, POS, dependency heads) and
offers the three queries question generation needs: which token realizes an
AMR concept, what tense that token carries, and which contiguous span the
token's dependency subtree covers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .penman import strip_sense
from .preprocess import CondensedNode, preorder


class ConlluError(ValueError):
    """Base for annotation ingestion failures."""

    def __init__(self, message: str, line: int | None = None,
                 sentence_id: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if sentence_id is not None:
            where.append(f"sentence {sentence_id!r}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)
        self.line = line
        self.sentence_id = sentence_id


class BadColumnCount(ConlluError):
    pass


class NonIntegerHead(ConlluError):
    pass


class HeadOutOfRange(ConlluError):
    pass


class CyclicTree(ConlluError):
    pass


@dataclass(frozen=True)
class Token:
    """One CoNLL-U word line. ``head`` is the 1-based index of the governor,
    0 for the sentence root."""

    index: int
    surface: str
    lemma: str
    upos: str
    xpos: str
    feats: dict
    head: int
    deprel: str
    space_after: bool = True


@dataclass
class SentenceAnnotation:
    sentence_id: str
    text: str
    tokens: list[Token]
    _children: dict[int, list[Token]] = field(default=None, repr=False, compare=False)

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]

    def children_of(self, index: int) -> list[Token]:
        if self._children is None:
            table: dict[int, list[Token]] = {}
            for token in self.tokens:
                table.setdefault(token.head, []).append(token)
            self._children = table
        return self._children.get(index, [])

    def surface_slice(self, start: int, end: int) -> str:
        """Sentence text for token indices [start, end], both inclusive,
        following SpaceAfter."""
        parts = []
        for token in self.tokens[start - 1:end]:
            parts.append(token.surface)
            if token.space_after and token.index != end:
                parts.append(" ")
        return "".join(parts)


def _parse_feats(column: str) -> dict:
    if column in ("_", ""):
        return {}
    out = {}
    for item in column.split("|"):
        key, _, value = item.partition("=")
        out[key] = value
    return out


def _reconstruct_text(tokens: list[Token]) -> str:
    parts = []
    for token in tokens:
        parts.append(token.surface)
        if token.space_after:
            parts.append(" ")
    return "".join(parts).strip()


def _check_tree(tokens: list[Token], lines: list[int], sentence_id: str):
    indices = {token.index for token in tokens}
    for token, line in zip(tokens, lines):
        if token.head != 0 and token.head not in indices:
            raise HeadOutOfRange(f"head {token.head} points outside the sentence",
                                 line=line, sentence_id=sentence_id)
    by_index = {token.index: token for token in tokens}
    for token in tokens:
        # follow the head chain; more steps than tokens means a loop
        current = token
        for _ in range(len(tokens) + 1):
            if current.head == 0:
                break
            current = by_index[current.head]
        else:
            raise CyclicTree("dependency heads form a cycle",
                             sentence_id=sentence_id)


def parse_conllu(text: str) -> list[SentenceAnnotation]:
    """Read CoNLL-U blocks into :class:`SentenceAnnotation` objects.

    Multiword-token ranges (``1-2``) and empty nodes (``1.1``) are skipped.
    ``# sent_id`` and ``# text`` comments are captured; a block without
    ``# text`` gets its text rebuilt from surfaces and SpaceAfter. Blocks
    without ``# sent_id`` are numbered by position, starting at 1.
    """
    sentences: list[SentenceAnnotation] = []
    tokens: list[Token] = []
    token_lines: list[int] = []
    sent_id: str | None = None
    sent_text: str | None = None

    def flush():
        nonlocal tokens, token_lines, sent_id, sent_text
        if not tokens and sent_id is None and sent_text is None:
            return
        identifier = sent_id if sent_id is not None else str(len(sentences) + 1)
        _check_tree(tokens, token_lines, identifier)
        text_value = sent_text if sent_text is not None else _reconstruct_text(tokens)
        sentences.append(SentenceAnnotation(identifier, text_value, tokens))
        tokens, token_lines, sent_id, sent_text = [], [], None, None

    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition("=")
            if sep:
                key = key.strip()
                if key == "sent_id":
                    sent_id = value.strip()
                elif key == "text":
                    sent_text = value.strip()
            continue
        columns = line.split("\t")
        if len(columns) != 10:
            raise BadColumnCount(f"expected 10 columns, found {len(columns)}",
                                 line=line_no)
        identifier = columns[0]
        if "-" in identifier or "." in identifier:
            continue  # multiword range or empty node
        try:
            index = int(identifier)
        except ValueError:
            raise BadColumnCount(f"token id {identifier!r} is not an integer",
                                 line=line_no) from None
        try:
            head = int(columns[6])
        except ValueError:
            raise NonIntegerHead(f"head {columns[6]!r} is not an integer",
                                 line=line_no) from None
        misc = columns[9]
        space_after = "SpaceAfter=No" not in misc
        tokens.append(Token(index=index, surface=columns[1], lemma=columns[2],
                            upos=columns[3], xpos=columns[4],
                            feats=_parse_feats(columns[5]), head=head,
                            deprel=columns[7], space_after=space_after))
        token_lines.append(line_no)
    flush()
    return sentences


class Alignment:
    """Mapping from condensed-tree positions to 1-based token spans.

    Single-word alignments are ``(i, i)``; multi-word concepts map to a
    contiguous range. Nodes without a matching token are absent.
    """

    def __init__(self, spans: dict[CondensedNode, tuple[int, int]]):
        self._spans = dict(spans)

    def span(self, node: CondensedNode) -> tuple[int, int] | None:
        return self._spans.get(node)

    def __contains__(self, node: CondensedNode) -> bool:
        return node in self._spans

    def __len__(self) -> int:
        return len(self._spans)

    def items(self):
        return self._spans.items()


def align_concepts(tree: CondensedNode, ann: SentenceAnnotation) -> Alignment:
    """Match each condensed node to sentence tokens.

    The node's concept text (sense suffix stripped, lowercased) is compared
    against token lemmas for single words, or against consecutive token
    surfaces/lemmas for multi-word concepts. Scanning is left to right and a
    token is consumed by at most one node; the first unused match wins.
    Abstract concepts with no surface realization stay unaligned. Reentrant
    references inherit the span of their definition.
    """
    spans: dict[CondensedNode, tuple[int, int]] = {}
    used: set[int] = set()
    definitions: dict[str, CondensedNode] = {}

    for node in preorder(tree):
        if node.is_reference:
            continue
        if node.variable is not None:
            definitions[node.variable] = node
        words = [w.lower() for w in strip_sense(node.concept_text).split()]
        if not words:
            continue
        if len(words) == 1:
            for token in ann.tokens:
                if token.index in used:
                    continue
                if token.lemma.lower() == words[0]:
                    spans[node] = (token.index, token.index)
                    used.add(token.index)
                    break
        else:
            for start in range(len(ann.tokens) - len(words) + 1):
                window = ann.tokens[start:start + len(words)]
                if any(token.index in used for token in window):
                    continue
                if all(token.surface.lower() == word or token.lemma.lower() == word
                       for token, word in zip(window, words)):
                    spans[node] = (window[0].index, window[-1].index)
                    used.update(token.index for token in window)
                    break

    for node in preorder(tree):
        if node.is_reference:
            definition = definitions.get(node.variable)
            if definition is not None and definition in spans:
                spans[node] = spans[definition]

    return Alignment(spans)


PAST = "past"
PRESENT = "present"
FUTURE = "future"


def infer_tense(ann: SentenceAnnotation, token_index: int) -> str:
    """Tense tag for one token: past from morphology (FEATS Tense=Past or
    XPOS VBD/VBN), future from an auxiliary child "will"/"shall", otherwise
    present. Total: any token yields one of the three tags."""
    token = ann.token(token_index)
    if token.feats.get("Tense") == "Past" or token.xpos in ("VBD", "VBN"):
        return PAST
    for child in ann.children_of(token_index):
        if child.surface.lower() in ("will", "shall") \
                or child.lemma.lower() in ("will", "shall"):
            return FUTURE
    return PRESENT


def subtree_span(ann: SentenceAnnotation, token_index: int) -> tuple[int, int]:
    """Range [leftmost, rightmost] of the tokens dominated by ``token_index``
    (itself included). The dominated set may be discontiguous for
    non-projective trees; the enclosing range is returned because answers
    must be contiguous sentence spans."""
    seen = {token_index}
    queue = [token_index]
    while queue:
        current = queue.pop()
        for child in ann.children_of(current):
            if child.index in seen:
                raise CyclicTree("dependency heads form a cycle",
                                 sentence_id=ann.sentence_id)
            seen.add(child.index)
            queue.append(child.index)
    return (min(seen), max(seen))


def range_head(ann: SentenceAnnotation, span: tuple[int, int]) -> int:
    """Index of the token inside ``span`` whose head lies outside it, i.e.
    the dependency root of the slice. The sentence root (head 0) counts as
    externally headed. For ranges that are not dependency constituents more
    than one token can qualify; the leftmost wins."""
    start, end = span
    for index in range(start, end + 1):
        head = ann.token(index).head
        if head < start or head > end:
            return index
    return start
