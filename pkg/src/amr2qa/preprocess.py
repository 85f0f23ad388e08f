"""Preprocessing passes that turn a parsed AMR graph into a condensed tree.

Three passes run in a fixed order: drop ignored relations, condense entity
subgraphs (``:quant``/``:unit`` pairs, date fields) into single multi-word
concepts, then merge constant ``:op`` children into their owner. Dropping
runs first so nothing is condensed into a subtree that is about to go away.
The result is a tree of :class:`CondensedNode`, the unit that question
generation traverses.
"""

from __future__ import annotations

import calendar
import re
from dataclasses import dataclass, field

from .penman import AmrGraph, AmrNode, Concept, Relation

DEFAULT_ENTITY_CONCEPTS = frozenset({
    "date-entity",
    "temporal-quantity",
    "distance-entity",
    "area-entity",
    "volume-entity",
})

DEFAULT_IGNORED_RELATIONS = frozenset({
    "polarity",
    "wiki",
    "polite",
    "polite-of",
    "mode",
})

# absorption order is fixed so condensed text is deterministic
_DATE_FIELD_ORDER = ("day", "month", "year", "weekday", "time")
_QUANTITY_FIELD_ORDER = ("quant", "unit")

_OP_RE = re.compile(r"^op(\d+)$")


@dataclass
class PreprocessConfig:
    """Knobs for the preprocessing passes; defaults follow the toolkit's
    standard behavior."""

    entity_concepts: frozenset[str] = DEFAULT_ENTITY_CONCEPTS
    ignored_relations: frozenset[str] = DEFAULT_IGNORED_RELATIONS
    sense_suffix_stripping: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> "PreprocessConfig":
        """Build a config from parsed JSON; absent keys keep defaults."""
        kwargs = {}
        if "entity_concepts" in data:
            kwargs["entity_concepts"] = frozenset(data["entity_concepts"])
        if "ignored_relations" in data:
            kwargs["ignored_relations"] = frozenset(data["ignored_relations"])
        if "sense_suffix_stripping" in data:
            kwargs["sense_suffix_stripping"] = bool(data["sense_suffix_stripping"])
        return cls(**kwargs)


@dataclass(eq=False)
class CondensedNode:
    """One position in the preprocessed tree.

    ``concept_text`` may be multi-word after condensation ("1 year",
    "Barack Obama"). ``source_concepts`` lists the node's own original
    concept first, then every concept folded into it. Reentrant references
    keep their own tree position with ``is_reference`` set and share the
    definition's text.
    """

    variable: str | None
    concept_text: str
    source_concepts: tuple[Concept, ...]
    relation_to_parent: Relation | None
    children: list["CondensedNode"] = field(default_factory=list)
    is_reference: bool = False
    parent: "CondensedNode | None" = None


def _copy_node(node: AmrNode) -> AmrNode:
    clone = AmrNode(variable=node.variable, concept=node.concept,
                    is_reentrant_ref=node.is_reentrant_ref, absorbed=node.absorbed)
    clone.children = [(rel, _copy_node(child)) for rel, child in node.children]
    return clone


def _is_leaf_value(node: AmrNode, referenced: frozenset[str]) -> bool:
    """True for nodes whose concept can be absorbed as plain text: constants
    and childless concept-bearing nodes. References are never absorbed, and
    neither is a definition some other position still refers to."""
    if node.is_reentrant_ref:
        return False
    if node.variable is not None and node.variable in referenced:
        return False
    return node.concept is not None and not node.children


def _referenced_variables(root: AmrNode) -> frozenset[str]:
    out = set()
    stack = [root]
    while stack:
        node = stack.pop()
        if node.is_reentrant_ref:
            out.add(node.variable)
        stack.extend(child for _, child in node.children)
    return frozenset(out)


def _month_name(value: str) -> str:
    try:
        number = int(value)
    except ValueError:
        return value
    if 1 <= number <= 12:
        return calendar.month_name[number]
    return value


def drop_ignored(graph: AmrGraph, config: PreprocessConfig) -> AmrGraph:
    """Remove edges whose relation is ignored, along with subtrees reachable
    only through them. If a dropped subtree held the definition of a variable
    still referenced elsewhere, the first surviving reference is promoted to
    carry the definition, so no reference dangles."""
    dropped_defs: dict[str, AmrNode] = {}

    def record_defs(node: AmrNode):
        if node.variable is not None and not node.is_reentrant_ref:
            dropped_defs[node.variable] = node
        for _, child in node.children:
            record_defs(child)

    def prune(node: AmrNode):
        kept = []
        for rel, child in node.children:
            if rel.name in config.ignored_relations:
                prune(child)  # clean the subtree in case it gets promoted
                record_defs(child)
            else:
                prune(child)
                kept.append((rel, child))
        node.children = kept

    root = _copy_node(graph.root)
    prune(root)

    # promote references whose definitions were dropped, first position wins
    while True:
        defined = set()
        stack = [root]
        order = []
        while stack:
            node = stack.pop()
            order.append(node)
            if node.variable is not None and not node.is_reentrant_ref:
                defined.add(node.variable)
            stack.extend(child for _, child in reversed(node.children))
        promoted = False
        for node in order:
            if node.is_reentrant_ref and node.variable not in defined \
                    and node.variable in dropped_defs:
                definition = dropped_defs.pop(node.variable)
                node.concept = definition.concept
                node.children = definition.children
                node.absorbed = definition.absorbed
                node.is_reentrant_ref = False
                promoted = True
                break
        if not promoted:
            return AmrGraph(root)


def condense_entities(graph: AmrGraph, config: PreprocessConfig) -> AmrGraph:
    """Replace entity nodes (date-entity, temporal-quantity, ...) by a single
    concept whose text joins their absorbable children in a fixed field
    order. Children that cannot be absorbed stay attached."""
    referenced = _referenced_variables(graph.root)

    def visit(node: AmrNode):
        for _, child in node.children:
            visit(child)
        if node.is_reentrant_ref or node.concept is None or node.concept.is_constant:
            return
        if node.concept.label not in config.entity_concepts:
            return
        is_date = node.concept.label == "date-entity"
        order = _DATE_FIELD_ORDER if is_date else _QUANTITY_FIELD_ORDER
        by_field: dict[str, list[tuple[int, AmrNode]]] = {}
        for index, (rel, child) in enumerate(node.children):
            if rel.name in order and _is_leaf_value(child, referenced):
                by_field.setdefault(rel.name, []).append((index, child))
        if not by_field:
            return
        parts = []
        absorbed_concepts = []
        absorbed_indices = set()
        for name in order:
            for index, child in by_field.get(name, ()):
                text = child.concept.label
                if is_date and name == "month":
                    text = _month_name(text)
                parts.append(text)
                absorbed_concepts.append(child.concept)
                absorbed_indices.add(index)
        base = node.absorbed if node.absorbed else (node.concept,)
        node.absorbed = base + tuple(absorbed_concepts)
        node.concept = Concept(label=" ".join(parts))
        node.children = [pair for index, pair in enumerate(node.children)
                         if index not in absorbed_indices]

    root = _copy_node(graph.root)
    visit(root)
    return AmrGraph(root)


def merge_ops(graph: AmrGraph) -> AmrGraph:
    """Join constant ``:opN`` children (numeric order) into their owner's
    concept text. Only constants merge; ``:op`` children that are concept
    nodes, as under conjunctions, stay separate. A merged ``name`` node then
    replaces its parent's ``:name`` edge, so the parent carries the proper
    noun directly."""
    referenced = _referenced_variables(graph.root)

    def merge_node(node: AmrNode):
        ops = []
        for index, (rel, child) in enumerate(node.children):
            m = _OP_RE.match(rel.name)
            if m and child.is_constant:
                ops.append((int(m.group(1)), index, child))
        if not ops:
            return
        ops.sort(key=lambda item: (item[0], item[1]))
        joined = " ".join(child.concept.label for _, _, child in ops)
        merged_indices = {index for _, index, _ in ops}
        base = node.absorbed if node.absorbed else (node.concept,)
        node.absorbed = base + tuple(child.concept for _, _, child in ops)
        node.concept = Concept(label=joined)
        node.children = [pair for index, pair in enumerate(node.children)
                         if index not in merged_indices]

    def hoist_names(node: AmrNode):
        for _, child in node.children:
            hoist_names(child)
        for index, (rel, child) in enumerate(node.children):
            if rel.name != "name" or child.is_reentrant_ref or not child.absorbed:
                continue
            if child.absorbed[0].label != "name":
                continue
            if child.variable is not None and child.variable in referenced:
                continue
            base = node.absorbed if node.absorbed else (node.concept,)
            node.absorbed = base + child.absorbed
            node.concept = child.concept
            # keep any leftover structure the name node still had
            node.children = (node.children[:index] + child.children
                             + node.children[index + 1:])
            break

    def visit(node: AmrNode):
        for _, child in node.children:
            visit(child)
        merge_node(node)

    root = _copy_node(graph.root)
    visit(root)
    hoist_names(root)
    return AmrGraph(root)


def _concept_text(node: AmrNode, config: PreprocessConfig) -> str:
    if node.absorbed:
        return node.concept.label  # already synthesized
    if config.sense_suffix_stripping:
        return node.concept.lemma
    return node.concept.label


def preprocess(graph: AmrGraph, config: PreprocessConfig | None = None) -> CondensedNode:
    """Full pipeline: drop ignored edges, condense entities, merge ops, and
    build the condensed tree. Reentrant references resolve to their
    definition's text but remain distinct positions."""
    config = config or PreprocessConfig()
    done = merge_ops(condense_entities(drop_ignored(graph, config), config))

    texts: dict[str, str] = {}
    sources: dict[str, tuple[Concept, ...]] = {}
    for node in done.walk():
        if node.variable is not None and not node.is_reentrant_ref:
            texts[node.variable] = _concept_text(node, config)
            sources[node.variable] = node.absorbed if node.absorbed else (node.concept,)

    def build(node: AmrNode, relation: Relation | None,
              parent: CondensedNode | None) -> CondensedNode:
        if node.is_reentrant_ref:
            return CondensedNode(variable=node.variable,
                                 concept_text=texts[node.variable],
                                 source_concepts=sources[node.variable],
                                 relation_to_parent=relation,
                                 is_reference=True, parent=parent)
        out = CondensedNode(variable=node.variable,
                            concept_text=_concept_text(node, config),
                            source_concepts=node.absorbed if node.absorbed else (node.concept,),
                            relation_to_parent=relation, parent=parent)
        for rel, child in node.children:
            out.children.append(build(child, rel, out))
        return out

    return build(done.root, None, None)


def preorder(tree: CondensedNode) -> list[CondensedNode]:
    """Depth-first pre-order: root first, parents before children, siblings
    in source order."""
    out = []
    stack = [tree]
    while stack:
        node = stack.pop()
        out.append(node)
        stack.extend(reversed(node.children))
    return out


def format_tree(tree: CondensedNode) -> str:
    """Stable plain-text rendering, one node per line, used for golden-file
    comparison and CLI inspection."""
    lines = []

    def visit(node: CondensedNode, depth: int):
        head = f":{node.relation_to_parent.name} " if node.relation_to_parent else ""
        var = f" [{node.variable}]" if node.variable is not None else ""
        ref = " (ref)" if node.is_reference else ""
        lines.append(f"{'  ' * depth}{head}{node.concept_text}{var}{ref}")
        for child in node.children:
            visit(child, depth + 1)

    visit(tree, 0)
    return "\n".join(lines) + "\n"
