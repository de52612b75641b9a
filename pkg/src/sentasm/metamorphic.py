"""Turn derivation trees into task-specific metamorphic test suites.

MRC: selected paragraph sentences are rebuilt from the least-varied leaves of
synonym-mutated trees; the paragraph keeps its meaning so the gold answer
stays the oracle.  SA: every tree edge adds one polar component to its parent,
a directional expectation on the label probabilities.  SSM: every
ancestor/descendant pair on a tree path differs in detail, so a similarity
model must not call the pair duplicates.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .assembly import (
    DerivationTree,
    build_derivation_tree,
    minimal_variation_leaves,
    synonym_mutator,
    tree_paths,
)
from .disassembly import disassemble
from .ingest import MRC, SA, SSM, Corpus, LoadError, MrcSeed
from .mutation import MutationLimits, MutationResources
from .rendering import detokenize, token_char_spans


@dataclass(frozen=True)
class MrcTest:
    id: str
    paragraph: str
    question: str
    gold_answers: tuple[str, ...]
    seed_id: str
    leaf_ids: tuple[str, ...]
    task: str = MRC


@dataclass(frozen=True)
class SaTest:
    id: str
    parent_text: str
    child_text: str
    adjunct_text: str
    slot_index: int
    tree_id: str
    child_id: str
    task: str = SA


@dataclass(frozen=True)
class SsmTest:
    id: str
    text_a: str
    text_b: str
    level_a: int
    level_b: int
    tree_id: str
    node_a: str
    node_b: str
    task: str = SSM


GeneratedTest = Union[MrcTest, SaTest, SsmTest]


@dataclass
class MrcGenConfig:
    rng_seed: int = 0
    sentences_per_seed: int = 4
    leaf_k: int = 4
    beam: Optional[int] = 4
    max_tests: int = 256
    limits: MutationLimits = field(default_factory=MutationLimits)


_WORD_RE = re.compile(r"[a-z]+")


def _question_words(question: str) -> frozenset[str]:
    return frozenset(_WORD_RE.findall(question.lower()))


def _excluded_indices(template, seed: MrcSeed, sentence_id: str) -> dict[int, frozenset[int]]:
    """Per-slot token indices that must not be mutated for this seed."""
    question_words = _question_words(seed.question)
    spans = token_char_spans([t.form for t in template.seed_tokens])
    out: dict[int, frozenset[int]] = {}
    for slot in template.slots:
        excluded: set[int] = set()
        if sentence_id == seed.answer_sentence_id:
            a_start, a_end = seed.answer_span
            s_start = spans[slot.span[0]][0]
            s_end = spans[slot.span[1] - 1][1]
            if s_start < a_end and a_start < s_end:
                excluded.update(range(len(slot.tokens)))
        for i, tok in enumerate(slot.tokens):
            if tok.lemma.lower() in question_words or tok.form.lower() in question_words:
                excluded.add(i)
        if excluded:
            out[slot.slot_index] = frozenset(excluded)
    return out


def _paragraph_regions(context: str, texts: Sequence[str]) -> list[tuple[int, int]]:
    regions = []
    cursor = 0
    for text in texts:
        idx = context.find(text, cursor)
        if idx < 0:
            raise LoadError(f"sentence text {text[:40]!r} not found in paragraph")
        regions.append((idx, idx + len(text)))
        cursor = idx + len(text)
    return regions


def gen_mrc_tests(
    seed: MrcSeed,
    corpus: Corpus,
    resources: MutationResources,
    cfg: MrcGenConfig,
) -> list[MrcTest]:
    """Paragraph reconstructions under the semantics-invariance relation."""
    rng = random.Random(f"{cfg.rng_seed}:{seed.id}")
    texts = [corpus[sid].text for sid in seed.sentence_ids]
    regions = _paragraph_regions(seed.context, texts)
    k = min(cfg.sentences_per_seed, len(seed.sentence_ids))
    positions = sorted(rng.sample(range(len(seed.sentence_ids)), k))

    leaf_sets = []
    for pos in positions:
        sid = seed.sentence_ids[pos]
        sentence = corpus[sid]
        template = disassemble(sentence)
        mutator = synonym_mutator(
            resources, cfg.limits, exclude_for_slot=_excluded_indices(template, seed, sid)
        )
        tree = build_derivation_tree(template, mutator, beam_size=cfg.beam)
        leaf_sets.append(minimal_variation_leaves(tree, cfg.leaf_k))

    tests: list[MrcTest] = []
    for combo in itertools.product(*leaf_sets):
        if len(tests) >= cfg.max_tests:
            break
        paragraph = seed.context
        for pos, leaf in sorted(zip(positions, combo), reverse=True):
            start, end = regions[pos]
            paragraph = paragraph[:start] + leaf.text + paragraph[end:]
        if paragraph == seed.context:
            continue  # all-original reconstruction is a no-op
        tests.append(
            MrcTest(
                id=f"{seed.id}/{len(tests)}",
                paragraph=paragraph,
                question=seed.question,
                gold_answers=tuple(seed.gold_answers),
                seed_id=seed.id,
                leaf_ids=tuple(leaf.id for leaf in combo),
            )
        )
    return tests


def gen_sa_tests(tree: DerivationTree) -> list[SaTest]:
    """One directional-expectation test per derivation edge."""
    tests = []
    for n, (parent, child) in enumerate(tree.edges()):
        variant = child.filled[-1]
        tests.append(
            SaTest(
                id=f"{tree.template.source_id}/sa-{n}",
                parent_text=parent.text,
                child_text=child.text,
                adjunct_text=detokenize(variant.forms),
                slot_index=variant.slot_index,
                tree_id=tree.template.source_id,
                child_id=child.id,
            )
        )
    return tests


def sa_probes(tests: Iterable[SaTest]) -> list[str]:
    """Distinct inserted adjunct texts, probed standalone to label them."""
    return sorted({t.adjunct_text for t in tests})


def gen_ssm_tests(tree: DerivationTree, stopwords: frozenset[str] = frozenset()) -> list[SsmTest]:
    """All derivation-related sentence pairs, deduplicated across paths."""
    seen: set[tuple[str, str]] = set()
    tests: list[SsmTest] = []
    for path in tree_paths(tree):
        for i in range(len(path)):
            for j in range(i + 1, len(path)):
                a, b = path[i], path[j]
                key = (a.text, b.text)
                if key in seen:
                    continue
                inserted = [t for v in b.filled[len(a.filled) :] for t in v.tokens]
                if len(inserted) == 1 and inserted[0].form.lower() in stopwords:
                    continue  # a lone stopword adds no semantic detail
                seen.add(key)
                tests.append(
                    SsmTest(
                        id=f"{tree.template.source_id}/ssm-{len(tests)}",
                        text_a=a.text,
                        text_b=b.text,
                        level_a=a.level,
                        level_b=b.level,
                        tree_id=tree.template.source_id,
                        node_a=a.id,
                        node_b=b.id,
                    )
                )
    return tests


# ---------------------------------------------------------------------------
# Suite serialization (JSONL, one test per line)


def to_suite_record(test: GeneratedTest) -> dict:
    if isinstance(test, MrcTest):
        return {
            "id": test.id,
            "task": MRC,
            "paragraph": test.paragraph,
            "question": test.question,
            "gold_answers": list(test.gold_answers),
            "seed_id": test.seed_id,
            "leaf_ids": list(test.leaf_ids),
        }
    if isinstance(test, SaTest):
        return {
            "id": test.id,
            "task": SA,
            "parent_text": test.parent_text,
            "child_text": test.child_text,
            "adjunct_text": test.adjunct_text,
            "slot": test.slot_index,
            "tree_id": test.tree_id,
            "child_id": test.child_id,
        }
    if isinstance(test, SsmTest):
        return {
            "id": test.id,
            "task": SSM,
            "text_a": test.text_a,
            "text_b": test.text_b,
            "level_a": test.level_a,
            "level_b": test.level_b,
            "tree_id": test.tree_id,
            "node_a": test.node_a,
            "node_b": test.node_b,
        }
    raise TypeError(f"not a generated test: {test!r}")


def from_suite_record(rec: dict) -> GeneratedTest:
    task = rec.get("task")
    if task == MRC:
        return MrcTest(
            id=rec["id"],
            paragraph=rec["paragraph"],
            question=rec["question"],
            gold_answers=tuple(rec["gold_answers"]),
            seed_id=rec.get("seed_id", ""),
            leaf_ids=tuple(rec.get("leaf_ids", ())),
        )
    if task == SA:
        return SaTest(
            id=rec["id"],
            parent_text=rec["parent_text"],
            child_text=rec["child_text"],
            adjunct_text=rec["adjunct_text"],
            slot_index=rec["slot"],
            tree_id=rec.get("tree_id", ""),
            child_id=rec.get("child_id", ""),
        )
    if task == SSM:
        return SsmTest(
            id=rec["id"],
            text_a=rec["text_a"],
            text_b=rec["text_b"],
            level_a=rec["level_a"],
            level_b=rec["level_b"],
            tree_id=rec.get("tree_id", ""),
            node_a=rec.get("node_a", ""),
            node_b=rec.get("node_b", ""),
        )
    raise LoadError(f"suite record with unknown task {task!r}")


def write_suite(path: Union[str, Path], tests: Iterable[GeneratedTest]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for test in tests:
            fh.write(json.dumps(to_suite_record(test), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_suite(path: Union[str, Path]) -> list[GeneratedTest]:
    tests = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                tests.append(from_suite_record(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise LoadError(f"line {lineno}: bad suite record ({exc})") from None
    return tests
