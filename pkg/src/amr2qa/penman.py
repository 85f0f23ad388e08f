"""Parser and serializer for AMR graphs written in PENMAN notation.

An AMR is a rooted, labeled graph. The PENMAN string form nests each node as
``(variable / concept :relation value ...)`` where a value is another node, a
constant (number, quoted string, ``-``, ``+``, bare symbol) or a bare variable
reference (reentrancy). This module keeps the spanning tree induced by the
nesting: child order is source order, inverse relations (``:ARG0-of``) are not
normalized, and reentrant references stay distinct tree positions that resolve
to the single defining occurrence of their variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

CORE_RELATIONS = frozenset({"ARG0", "ARG1", "ARG2", "ARG3", "ARG4", "ARG5"})

# relations that end in "-of" without being inverses
_NON_INVERSE_OF = frozenset({"consist-of", "prep-out-of", "prep-on-behalf-of"})

# exactly two digits after the last hyphen, preceded by a real lemma char,
# so "break-01" and "have-degree-91" have senses but "run-100" does not
_SENSE_RE = re.compile(r"^(.*[^\d-])-(\d{2})$")
_STRICT_VAR_RE = re.compile(r"^[a-z][0-9]*$")
_ALIGN_RE = re.compile(r"~[^\s()~:]*")


class PenmanError(ValueError):
    """Base class for all parse failures; carries a source offset."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EmptyInput(PenmanError):
    pass


class UnbalancedParens(PenmanError):
    pass


class DuplicateVariableDefinition(PenmanError):
    pass


class DanglingVariableReference(PenmanError):
    pass


class MalformedGraph(PenmanError):
    """Structural errors other than the dedicated classes above."""


@dataclass(frozen=True)
class Concept:
    """Label on an AMR node: a frame (``break-01``), a word, or a constant."""

    label: str
    sense: str | None = None
    is_constant: bool = False
    quoted: bool = False  # constant came from a quoted string

    @property
    def lemma(self) -> str:
        """Label with the 2-digit sense suffix removed, if any."""
        return self.label[: -(len(self.sense) + 1)] if self.sense else self.label

    @staticmethod
    def from_label(label: str) -> "Concept":
        m = _SENSE_RE.match(label)
        if m:
            return Concept(label=label, sense=m.group(2))
        return Concept(label=label)


def strip_sense(label: str) -> str:
    """Remove a trailing 2-digit sense suffix: "break-01" -> "break"."""
    m = _SENSE_RE.match(label)
    return m.group(1) if m else label


@dataclass(frozen=True)
class Relation:
    """Edge label without the leading colon, e.g. ``ARG1``, ``location``."""

    name: str

    @property
    def is_inverse(self) -> bool:
        return self.name.endswith("-of") and self.name not in _NON_INVERSE_OF

    @property
    def base(self) -> str:
        """Relation name with a trailing ``-of`` stripped."""
        return self.name[:-3] if self.is_inverse else self.name

    @property
    def is_core(self) -> bool:
        return self.base in CORE_RELATIONS

    def __str__(self) -> str:
        return ":" + self.name


@dataclass(eq=False)
class AmrNode:
    """One occurrence of a variable (or constant) in the PENMAN tree.

    Exactly one occurrence per variable carries the concept definition; other
    occurrences are reentrant references with ``concept`` unset. Constants
    have no variable.
    """

    variable: str | None
    concept: Concept | None
    children: list[tuple[Relation, "AmrNode"]] = field(default_factory=list)
    is_reentrant_ref: bool = False
    absorbed: tuple[Concept, ...] = ()  # concepts merged in by preprocessing

    @property
    def is_constant(self) -> bool:
        return self.concept is not None and self.concept.is_constant


class AmrGraph:
    """Rooted AMR graph plus the spanning tree from the PENMAN nesting."""

    def __init__(self, root: AmrNode):
        self.root = root
        self.nodes: dict[str, AmrNode] = {}
        for node in self.walk():
            if node.variable is not None and not node.is_reentrant_ref:
                self.nodes[node.variable] = node

    def walk(self):
        """Yield every tree occurrence in depth-first pre-order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(child for _, child in reversed(node.children))

    def concept_of(self, variable: str) -> Concept | None:
        node = self.nodes.get(variable)
        return node.concept if node is not None else None


def _constant_text(concept: Concept) -> str:
    if concept.quoted:
        return '"%s"' % concept.label.replace('"', '\\"')
    return concept.label


def to_triples(graph: AmrGraph) -> list[tuple[str, str, str]]:
    """Logical-triple view: one ``instance`` triple per concept definition in
    pre-order, then one triple per edge in pre-order. Constant targets render
    in their source form (quotes kept)."""
    instances = []
    edges = []

    def visit(node: AmrNode):
        if node.variable is not None and not node.is_reentrant_ref:
            instances.append((node.variable, "instance", node.concept.label))
        for rel, child in node.children:
            target = child.variable if child.variable is not None else _constant_text(child.concept)
            edges.append((node.variable, rel.name, target))
            visit(child)

    visit(graph.root)
    return instances + edges


class _Lexer:
    """Tokenizer that strips ``~`` alignment markers and ``#`` comment lines."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.length = len(text)

    def _skip_space(self):
        while self.pos < self.length:
            ch = self.text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "#":
                # metadata/comment line embedded in the graph block
                nl = self.text.find("\n", self.pos)
                self.pos = self.length if nl < 0 else nl + 1
            elif ch == "~":
                m = _ALIGN_RE.match(self.text, self.pos)
                self.pos = m.end() if m and m.end() > self.pos else self.pos + 1
            else:
                return

    def next(self) -> tuple[str, str, int]:
        """Return (kind, value, offset); kind EOF at end of input."""
        self._skip_space()
        if self.pos >= self.length:
            return ("EOF", "", self.pos)
        start = self.pos
        ch = self.text[start]
        if ch in "()/":
            self.pos += 1
            kind = {"(": "LPAREN", ")": "RPAREN", "/": "SLASH"}[ch]
            return (kind, ch, start)
        if ch == '"':
            return self._string(start)
        if ch == ":":
            self.pos += 1
            value = self._atom_text()
            if not value:
                raise MalformedGraph("relation name missing after ':'", start)
            return ("REL", value, start)
        value = self._atom_text()
        if not value:
            # isolated junk character such as a stray quote terminator
            self.pos += 1
            raise MalformedGraph(f"unexpected character {ch!r}", start)
        return ("ATOM", value, start)

    def _string(self, start: int) -> tuple[str, str, int]:
        self.pos += 1
        out = []
        while self.pos < self.length:
            ch = self.text[self.pos]
            if ch == "\\" and self.pos + 1 < self.length:
                out.append(self.text[self.pos + 1])
                self.pos += 2
                continue
            if ch == '"':
                self.pos += 1
                return ("STRING", "".join(out), start)
            out.append(ch)
            self.pos += 1
        raise MalformedGraph("unterminated string literal", start)

    def _atom_text(self) -> str:
        start = self.pos
        while self.pos < self.length:
            ch = self.text[self.pos]
            if ch.isspace() or ch in '()/:"~#':
                break
            self.pos += 1
        return self.text[start:self.pos]


class _PendingRef:
    """Bare atom in value position, classified after the full parse."""

    __slots__ = ("text", "offset")

    def __init__(self, text: str, offset: int):
        self.text = text
        self.offset = offset


class _Parser:
    def __init__(self, text: str):
        self.lexer = _Lexer(text)
        self.token = self.lexer.next()
        self.defined: dict[str, AmrNode] = {}
        self.pending: list[tuple[AmrNode, int, _PendingRef]] = []

    def advance(self):
        self.token = self.lexer.next()

    def expect(self, kind: str, what: str):
        if self.token[0] != kind:
            raise MalformedGraph(f"expected {what}, found {self.token[1]!r}", self.token[2])
        value = self.token
        self.advance()
        return value

    def parse(self) -> AmrGraph:
        if self.token[0] == "EOF":
            raise EmptyInput("empty input", self.token[2])
        if self.token[0] == "RPAREN":
            raise UnbalancedParens("unmatched ')'", self.token[2])
        if self.token[0] != "LPAREN":
            raise MalformedGraph("graph must start with '('", self.token[2])
        root = self.node()
        if self.token[0] != "EOF":
            if self.token[0] == "RPAREN":
                raise UnbalancedParens("unmatched ')'", self.token[2])
            raise MalformedGraph("trailing content after graph", self.token[2])
        self.resolve()
        return AmrGraph(root)

    def node(self) -> AmrNode:
        self.expect("LPAREN", "'('")
        kind, var, offset = self.token
        if kind != "ATOM":
            raise MalformedGraph("expected a variable name after '('", offset)
        self.advance()
        if var in self.defined:
            raise DuplicateVariableDefinition(f"variable {var!r} defined twice", offset)
        if self.token[0] != "SLASH":
            raise MalformedGraph(f"expected '/' and a concept for variable {var!r}", self.token[2])
        self.advance()
        kind, label, offset = self.token
        if kind == "ATOM":
            concept = Concept.from_label(label)
        elif kind == "STRING":
            concept = Concept(label=label, quoted=True)
        else:
            raise MalformedGraph(f"expected a concept for variable {var!r}", offset)
        self.advance()
        node = AmrNode(variable=var, concept=concept)
        self.defined[var] = node
        while self.token[0] == "REL":
            relation = Relation(self.token[1])
            self.advance()
            node.children.append((relation, self.value(node)))
        if self.token[0] == "EOF":
            raise UnbalancedParens("unclosed '('", self.token[2])
        self.expect("RPAREN", "')'")
        return node

    def value(self, parent: AmrNode) -> AmrNode:
        kind, text, offset = self.token
        if kind == "LPAREN":
            return self.node()
        if kind == "STRING":
            self.advance()
            return AmrNode(variable=None, concept=Concept(label=text, is_constant=True, quoted=True))
        if kind == "ATOM":
            self.advance()
            placeholder = AmrNode(variable=None, concept=None)
            self.pending.append((parent, len(parent.children), _PendingRef(text, offset)))
            return placeholder
        raise MalformedGraph(f"expected a value, found {text!r}", offset)

    def resolve(self):
        """Classify bare atoms: reentrant reference vs constant.

        An atom is a reference when its text names a defined variable. A
        strictly variable-shaped atom (letter plus digits) that is never
        defined is a dangling reference; everything else (numbers, ``-``,
        ``+``, words like ``imperative``) is a constant.
        """
        for parent, child_index, ref in self.pending:
            relation, _ = parent.children[child_index]
            if ref.text in self.defined:
                node = AmrNode(variable=ref.text, concept=None, is_reentrant_ref=True)
            elif _STRICT_VAR_RE.match(ref.text):
                raise DanglingVariableReference(
                    f"reference to undefined variable {ref.text!r}", ref.offset)
            else:
                node = AmrNode(variable=None,
                               concept=Concept(label=ref.text, is_constant=True))
            parent.children[child_index] = (relation, node)


def parse_penman(text: str) -> AmrGraph:
    """Parse one PENMAN expression into an :class:`AmrGraph`.

    Whitespace, newlines, ``~`` alignment markers and ``#`` comment lines are
    tolerated. Raises a :class:`PenmanError` subclass (never anything else)
    on malformed input.
    """
    try:
        return _Parser(text).parse()
    except RecursionError:
        raise MalformedGraph("graph nesting too deep", 0) from None


def _render(node: AmrNode, out: list[str]):
    if node.is_reentrant_ref:
        out.append(node.variable)
        return
    if node.variable is None:
        out.append(_constant_text(node.concept))
        return
    out.append("(")
    out.append(node.variable)
    out.append(" / ")
    out.append(_constant_text(node.concept))
    for rel, child in node.children:
        out.append(" :" + rel.name + " ")
        _render(child, out)
    out.append(")")


def serialize_penman(graph: AmrGraph) -> str:
    """Canonical single-line PENMAN. ``parse_penman(serialize_penman(g))`` is
    isomorphic to ``g``: same triples, same child order."""
    out: list[str] = []
    _render(graph.root, out)
    return "".join(out)
