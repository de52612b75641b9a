"""Derivation-tree assembly: insert adjunct variants slot by slot.

Level i of the tree holds sentences with the first i slots filled; each child
extends its parent by one variant of the next adjunct.  Optional beam pruning
keeps the per-level population bounded, scored by the running mean of variant
similarities so the least-drifted sentences survive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Optional, Sequence

from .disassembly import Adjunct, DerivationTemplate, render_base, render_filled
from .mutation import (
    AdjunctVariant,
    MutationLimits,
    MutationResources,
    MutationStats,
    MLM,
    SYNONYM,
    mutate_adjunct,
    original_variant,
)

# mutator: (slot, parent node) -> variant list, original first
Mutator = Callable[[Adjunct, "DerivationNode"], Sequence[AdjunctVariant]]


@dataclass(frozen=True)
class DerivationNode:
    id: str
    level: int
    text: str
    filled: tuple[AdjunctVariant, ...]
    parent: Optional[str]
    path_score: float

    @property
    def last_similarity(self) -> float:
        return self.filled[-1].similarity if self.filled else 1.0


@dataclass
class DerivationTree:
    template: DerivationTemplate
    levels: list[list[DerivationNode]]
    beam_size: Optional[int] = None

    @property
    def root(self) -> DerivationNode:
        return self.levels[0][0]

    def nodes(self) -> Iterator[DerivationNode]:
        for level in self.levels:
            yield from level

    def node_count(self) -> int:
        return sum(len(level) for level in self.levels)

    def sentences(self) -> list[str]:
        return [node.text for node in self.nodes()]

    def by_id(self) -> dict[str, DerivationNode]:
        return {node.id: node for node in self.nodes()}

    def edges(self) -> list[tuple[DerivationNode, DerivationNode]]:
        index = self.by_id()
        out = []
        for level in self.levels[1:]:
            for child in level:
                out.append((index[child.parent], child))
        return out


def _fills(variants: Sequence[AdjunctVariant]) -> dict[int, tuple[str, ...]]:
    return {v.slot_index: v.forms for v in variants}


def _score(variants: Sequence[AdjunctVariant]) -> float:
    if not variants:
        return 1.0
    return sum(v.similarity for v in variants) / len(variants)


def make_root(template: DerivationTemplate) -> DerivationNode:
    return DerivationNode(
        id=f"{template.source_id}:r",
        level=0,
        text=render_base(template),
        filled=(),
        parent=None,
        path_score=1.0,
    )


def assemble_step(
    template: DerivationTemplate,
    prev_level: Sequence[DerivationNode],
    slot_index: int,
    variants_for: Mapping[str, Sequence[AdjunctVariant]],
) -> list[DerivationNode]:
    """Extend every previous-level node by every variant of slot ``slot_index``."""
    children: list[DerivationNode] = []
    for parent in prev_level:
        variants = variants_for[parent.id]
        if not variants:
            raise ValueError(f"node {parent.id} has no variants for slot {slot_index}")
        for pos, variant in enumerate(variants):
            if variant.slot_index != slot_index:
                raise ValueError(
                    f"variant for slot {variant.slot_index} offered at slot {slot_index}"
                )
            filled = parent.filled + (variant,)
            children.append(
                DerivationNode(
                    id=f"{parent.id}.{pos}",
                    level=parent.level + 1,
                    text=render_filled(template, _fills(filled)),
                    filled=filled,
                    parent=parent.id,
                    path_score=_score(filled),
                )
            )
    return children


def beam_prune(level: Sequence[DerivationNode], beam_size: int) -> list[DerivationNode]:
    """Keep the ``beam_size`` best nodes by path score, deterministically."""
    if beam_size < 1:
        raise ValueError("beam size must be >= 1")
    ranked = sorted(level, key=lambda n: (-n.path_score, -n.last_similarity, n.text))
    return ranked[:beam_size]


def build_derivation_tree(
    template: DerivationTemplate,
    mutator: Mutator,
    beam_size: Optional[int] = None,
) -> DerivationTree:
    root = make_root(template)
    levels = [[root]]
    for slot in template.slots:
        variants_for = {p.id: list(mutator(slot, p)) for p in levels[-1]}
        children = assemble_step(template, levels[-1], slot.slot_index, variants_for)
        if beam_size is not None:
            children = beam_prune(children, beam_size)
        levels.append(children)
    return DerivationTree(template=template, levels=levels, beam_size=beam_size)


def tree_paths(tree: DerivationTree) -> list[list[DerivationNode]]:
    """Root-to-leaf node sequences, one per fully assembled leaf."""
    index = tree.by_id()
    paths = []
    for leaf in tree.levels[-1]:
        path = [leaf]
        while path[-1].parent is not None:
            path.append(index[path[-1].parent])
        paths.append(list(reversed(path)))
    return paths


def minimal_variation_leaves(tree: DerivationTree, k: Optional[int] = None) -> list[DerivationNode]:
    """Fully assembled leaves ranked by least variation (highest path score)."""
    ranked = sorted(tree.levels[-1], key=lambda n: (-n.path_score, n.text))
    return ranked[:k] if k is not None else ranked


# ---------------------------------------------------------------------------
# Mutator factories


def original_only_mutator() -> Mutator:
    def mutator(slot: Adjunct, parent: DerivationNode) -> Sequence[AdjunctVariant]:
        return [original_variant(slot)]

    return mutator


def synonym_mutator(
    resources: MutationResources,
    limits: MutationLimits,
    exclude_for_slot: Optional[Mapping[int, frozenset[int]]] = None,
) -> Mutator:
    """Context-free mutation: one variant set per slot, shared by all parents."""
    cache: dict[int, list[AdjunctVariant]] = {}

    def mutator(slot: Adjunct, parent: DerivationNode) -> Sequence[AdjunctVariant]:
        if slot.slot_index not in cache:
            exclude = frozenset()
            if exclude_for_slot is not None:
                exclude = exclude_for_slot.get(slot.slot_index, frozenset())
            cache[slot.slot_index] = mutate_adjunct(
                slot, SYNONYM, resources, limits, exclude=exclude
            )
        return cache[slot.slot_index]

    return mutator


def mlm_mutator(
    template: DerivationTemplate,
    resources: MutationResources,
    limits: MutationLimits,
    stats: Optional[MutationStats] = None,
) -> Mutator:
    """Context-dependent mutation: re-mask the adjunct inside each parent."""
    mask_token = resources.mlm_client.mask_token if resources.mlm_client else "[MASK]"

    def mutator(slot: Adjunct, parent: DerivationNode) -> Sequence[AdjunctVariant]:
        def masked_context(mask_index: int) -> str:
            forms = list(slot.tokens[i].form for i in range(len(slot.tokens)))
            forms[mask_index] = mask_token
            fills = _fills(parent.filled)
            fills[slot.slot_index] = tuple(forms)
            return render_filled(template, fills)

        return mutate_adjunct(
            slot, MLM, resources, limits, masked_context=masked_context, stats=stats
        )

    return mutator


# ---------------------------------------------------------------------------
# Tree dump (JSONL records)


def tree_records(tree: DerivationTree) -> Iterator[dict]:
    for node in tree.nodes():
        yield {
            "tree_id": tree.template.source_id,
            "node_id": node.id,
            "level": node.level,
            "parent": node.parent,
            "text": node.text,
            "score": node.path_score,
            "variants": [
                {
                    "slot": v.slot_index,
                    "word": v.substitute,
                    "provenance": v.provenance,
                    "similarity": v.similarity,
                }
                for v in node.filled
            ],
        }
