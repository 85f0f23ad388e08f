"""Question generation.

Every non-root condensed node is inspected together with the relation to its
parent. For core roles the parent predicate picks the thematic role; for
non-core relations the relation name keys the template lookup directly.
Blank 0 is always the predicate-side word: the parent's aligned surface
form, or its concept lemma (sense stripped) when unaligned. Extra blanks
take the node's aligned surface form, or its concept text when unaligned.

Inverse relations (``:ARG0-of`` etc.) swap the two ends: the child carries
the predicate and supplies blank 0, the parent is the entity asked about,
and the base relation keys the lookup. The predicate-argument fact is the
same either way round; only the graph orientation differs.

Tense comes from the predicate-side aligned token (unaligned predicates
default to present). Candidates are scored for fluency and the argmax wins,
with ties going to the earlier template in resource order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .agen import SENSE, Answer, span_text
from .annotate import (
    PRESENT,
    Alignment,
    SentenceAnnotation,
    infer_tense,
    range_head,
)
from .corpus import QaPair
from .penman import Concept, strip_sense
from .preprocess import CondensedNode
from .templates import Template, TemplateStore, select_templates

SENSE_TEMPLATE_ID = "verb-sense"
SENSE_RELATION = "sense"

_BLANK_RE = re.compile(r"\{(\d+)\}")


class ArityMismatch(ValueError):
    pass


@dataclass
class QuestionCandidate:
    """A filled template for one tree position.

    ``node_ref`` is the position that triggered generation; ``entity_ref``
    is the node the answer comes from (the parent when the relation was
    inverse). ``score`` is attached by :func:`best_question`.
    """

    template_id: str
    filled_text: str
    fill_words: tuple[str, ...]
    node_ref: CondensedNode
    entity_ref: CondensedNode
    relation: str
    score: object | None = None


def fill_template(template: Template, fills: list[str]) -> str:
    """Blanks replaced in index order; spacing and the terminal question
    mark come from the pattern itself."""
    if len(fills) != template.blank_count:
        raise ArityMismatch(
            f"template {template.id} has {template.blank_count} blanks, "
            f"got {len(fills)} fills")

    def replace(match: re.Match) -> str:
        index = int(match.group(1))
        if index >= len(fills):
            raise ArityMismatch(f"no fill for blank {{{index}}}")
        return fills[index]

    return _BLANK_RE.sub(replace, template.pattern)


def _guess_pos(node: CondensedNode) -> str:
    """Coarse POS for an unaligned fill: predicates pattern as verbs,
    numbers as numerals, everything else as nouns."""
    if node.source_concepts and node.source_concepts[0].sense:
        return "VERB"
    try:
        float(node.concept_text)
        return "NUM"
    except ValueError:
        return "NOUN"


def _fill_info(node: CondensedNode, ann: SentenceAnnotation,
               alignment: Alignment) -> tuple[str, str, int | None]:
    """(surface text, POS, aligned head index) for one fill."""
    if node in alignment:
        span = alignment.span(node)
        head = range_head(ann, span)
        return span_text(ann, span), ann.token(head).upos, head
    return strip_sense(node.concept_text), _guess_pos(node), None


def generate_candidates(node: CondensedNode, parent: CondensedNode,
                        store: TemplateStore, ann: SentenceAnnotation,
                        alignment: Alignment) -> list[QuestionCandidate]:
    """All templates for the node's relation, filled. Empty when the
    relation has no templates, the role cannot be resolved, or every
    template fails a POS constraint; callers count such skips."""
    relation = node.relation_to_parent
    if relation is None:
        return []
    if relation.is_inverse:
        supplier, entity = node, parent
    else:
        supplier, entity = parent, node
    base = relation.base
    predicate = supplier.source_concepts[0] if supplier.source_concepts else None
    fill0, pos0, head = _fill_info(supplier, ann, alignment)
    tense = infer_tense(ann, head) if head is not None else PRESENT

    candidates: list[QuestionCandidate] = []
    entity_info: tuple[str, str, int | None] | None = None
    for template in select_templates(store, base, predicate, tense, pos0):
        fills = [fill0]
        if template.blank_count > 1:
            if entity_info is None:
                entity_info = _fill_info(entity, ann, alignment)
            entity_text, entity_pos, _ = entity_info
            if any(entity_pos not in template.blank_pos[i]
                   for i in range(1, template.blank_count)):
                continue
            fills.extend([entity_text] * (template.blank_count - 1))
        candidates.append(QuestionCandidate(
            template_id=template.id,
            filled_text=fill_template(template, fills),
            fill_words=tuple(fills),
            node_ref=node,
            entity_ref=entity,
            relation=relation.name,
        ))
    return candidates


def best_question(candidates: list[QuestionCandidate],
                  scorer) -> QuestionCandidate | None:
    """Argmax of scorer over candidate texts; the earlier candidate wins
    ties, so template resource order is the tie-break."""
    best: QuestionCandidate | None = None
    for candidate in candidates:
        result = scorer.score(candidate.filled_text)
        if best is None or result.value > best.score.value:
            candidate.score = result
            best = candidate
    return best


def sense_question(node: CondensedNode, ann: SentenceAnnotation,
                   alignment: Alignment) -> QaPair | None:
    """Predicate-sense question for a definition node whose concept carries
    a sense suffix and which is aligned to a verb token. The answer keeps
    the full label (e.g. ``break-01``): the suffix is the payload here."""
    if node.is_reference or not node.source_concepts:
        return None
    own = node.source_concepts[0]
    if not own.sense or node not in alignment:
        return None
    span = alignment.span(node)
    if ann.token(range_head(ann, span)).upos != "VERB":
        return None
    surface = span_text(ann, span)
    answer = Answer(kind=SENSE, text=own.label, span=None,
                    source_node=node.variable or "")
    return QaPair(sentence_id=ann.sentence_id,
                  question=f"What is the sense of {surface} ?",
                  answer=answer,
                  relation=SENSE_RELATION,
                  node=node.variable or "",
                  template_id=SENSE_TEMPLATE_ID)
