"""End-to-end generation: read, pair, preprocess, align, generate, answer,
write.

Sentences are independent units of work, so generation fans out over a
bounded thread pool; results are collected in input order, which makes the
output file byte-identical regardless of worker count. A failure inside one
sentence (malformed graph, missing annotation, any generation error) is
logged and counted, never fatal. Errors before processing starts (unreadable
files, bad template resources, count mismatches) do abort.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .agen import extract_answer
from .annotate import SentenceAnnotation, align_concepts, parse_conllu
from .corpus import (
    CountMismatch,
    QaPair,
    RawBlock,
    UnresolvedId,
    ZeroSentences,
    parse_block,
    split_blocks,
    write_dataset,
)
from .preprocess import PreprocessConfig, preorder, preprocess
from .qgen import best_question, generate_candidates, sense_question
from .scorer import make_scorer
from .templates import (
    TemplateStore,
    bundled_mapping_path,
    bundled_template_path,
    load_store,
)

logger = logging.getLogger("amr2qa")


@dataclass
class RunConfig:
    amr_path: str
    conllu_path: str
    output_path: str
    template_path: str | None = None   # None = bundled pack
    mapping_path: str | None = None
    scorer: str = "baseline"
    scorer_url: str | None = None
    scorer_timeout: float = 5.0
    pairing: str = "by-order"
    workers: int = 1
    preprocess: PreprocessConfig | None = None


@dataclass
class RunReport:
    """Run accounting. Every non-root condensed node of every processed
    sentence lands in exactly one bucket: a primary question, skipped with
    no usable template, or skipped as a duplicate. Sense questions are
    emitted on top of that."""

    sentences_processed: int = 0
    sentences_failed: int = 0
    questions_emitted: int = 0
    sense_questions: int = 0
    non_root_nodes: int = 0
    skipped_no_template: int = 0
    skipped_duplicate: int = 0
    scorer_fallbacks: int = 0
    wall_time_seconds: float = 0.0

    @property
    def primary_questions(self) -> int:
        return self.questions_emitted - self.sense_questions

    def lines(self) -> list[str]:
        return [
            f"sentences processed   {self.sentences_processed}",
            f"sentences failed      {self.sentences_failed}",
            f"questions emitted     {self.questions_emitted}",
            f"  sense questions     {self.sense_questions}",
            f"non-root nodes        {self.non_root_nodes}",
            f"  skipped no-template {self.skipped_no_template}",
            f"  skipped duplicate   {self.skipped_duplicate}",
            f"scorer fallbacks      {self.scorer_fallbacks}",
            f"wall time             {self.wall_time_seconds:.2f}s",
        ]


@dataclass
class _SentenceResult:
    pairs: list[QaPair] = field(default_factory=list)
    non_root: int = 0
    no_template: int = 0
    duplicate: int = 0
    sense: int = 0
    error: str | None = None


def process_sentence(entry, ann: SentenceAnnotation, store: TemplateStore,
                     scorer, preprocess_config: PreprocessConfig | None = None
                     ) -> _SentenceResult:
    """QA pairs for one (graph, annotation) pair.

    Primary questions come from non-root nodes in traversal order, then
    sense questions from predicate definitions. Within a sentence no two
    pairs share (question text, answer text); later duplicates are skipped.
    """
    tree = preprocess(entry.graph, preprocess_config)
    alignment = align_concepts(tree, ann)
    nodes = preorder(tree)
    result = _SentenceResult()
    seen: set[tuple[str, str]] = set()

    for node in nodes[1:]:
        result.non_root += 1
        candidates = generate_candidates(node, node.parent, store, ann,
                                         alignment)
        if not candidates:
            result.no_template += 1
            continue
        best = best_question(candidates, scorer)
        answer = extract_answer(best.entity_ref, ann, alignment)
        key = (best.filled_text, answer.text)
        if key in seen:
            result.duplicate += 1
            continue
        seen.add(key)
        result.pairs.append(QaPair(
            sentence_id=entry.id,
            question=best.filled_text,
            answer=answer,
            relation=best.relation,
            node=node.variable or "",
            template_id=best.template_id,
            score=best.score.value,
            scorer_id=best.score.scorer_id,
        ))

    for node in nodes:
        pair = sense_question(node, ann, alignment)
        if pair is None:
            continue
        key = (pair.question, pair.answer.text)
        if key in seen:
            continue
        seen.add(key)
        scored = scorer.score(pair.question)
        result.pairs.append(replace(pair, sentence_id=entry.id,
                                    score=scored.value,
                                    scorer_id=scored.scorer_id))
        result.sense += 1
    return result


def _pair_blocks(blocks: list[RawBlock], annotations, strategy):
    """(block, annotation-or-None) work items. A missing by-id annotation
    becomes a per-sentence failure downstream; count and uniqueness problems
    abort up front because silent misalignment would corrupt every pair."""
    if strategy == "by-order":
        if len(blocks) != len(annotations):
            raise CountMismatch(f"{len(blocks)} graph blocks vs "
                                f"{len(annotations)} annotations")
        return list(zip(blocks, annotations))
    if strategy == "by-id":
        index = {}
        for ann in annotations:
            if ann.sentence_id in index:
                raise UnresolvedId(
                    f"annotation id {ann.sentence_id!r} is not unique")
            index[ann.sentence_id] = ann
        return [(raw, index.get(raw.id if raw.id is not None
                                else str(raw.position)))
                for raw in blocks]
    raise ValueError(f"unknown pairing strategy {strategy!r}")


def run_generate(config: RunConfig) -> RunReport:
    started = time.perf_counter()
    if config.workers < 1:
        raise ValueError("worker count must be >= 1")

    store = load_store(config.template_path or bundled_template_path(),
                       config.mapping_path or bundled_mapping_path())
    scorer = make_scorer(config.scorer, config.scorer_url,
                         timeout=config.scorer_timeout)

    with open(config.amr_path, encoding="utf-8") as handle:
        blocks = split_blocks(handle.read())
    if not blocks:
        raise ZeroSentences("no sentences in the AMR corpus")
    with open(config.conllu_path, encoding="utf-8") as handle:
        annotations = parse_conllu(handle.read())
    tasks = _pair_blocks(blocks, annotations, config.pairing)

    def work(task) -> _SentenceResult:
        raw, ann = task
        label = raw.id or str(raw.position)
        if ann is None:
            return _SentenceResult(error=f"no annotation with id {label!r}")
        try:
            entry = parse_block(raw)
            return process_sentence(entry, ann, store, scorer,
                                    config.preprocess)
        except Exception as exc:   # per-sentence skip policy
            return _SentenceResult(error=f"sentence {label!r}: {exc}")

    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        results = list(pool.map(work, tasks))

    report = RunReport()
    pairs: list[QaPair] = []
    for result in results:
        if result.error is not None:
            report.sentences_failed += 1
            logger.warning("skipped: %s", result.error)
            continue
        report.sentences_processed += 1
        report.non_root_nodes += result.non_root
        report.skipped_no_template += result.no_template
        report.skipped_duplicate += result.duplicate
        report.sense_questions += result.sense
        report.questions_emitted += len(result.pairs)
        pairs.extend(result.pairs)

    write_dataset(pairs, config.output_path)
    report.scorer_fallbacks = getattr(scorer, "fallback_calls", 0)
    report.wall_time_seconds = time.perf_counter() - started
    return report
