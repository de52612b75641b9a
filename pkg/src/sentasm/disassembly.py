"""Sentence disassembly: split a parsed sentence into a derivation template.

Adjunct candidates come from two views of the sentence.  Dependency subtrees
supply adjectives, adverbs, case-marked prepositional phrases, and verbal
modifiers; maximal SBAR constituents supply subordinate clauses.  Compression
labels then arbitrate: a candidate whose retained-token count exceeds half its
width is grammatically important and stays in the basic structure, everything
else is removed and becomes a numbered insertion slot.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence

from .ingest import ConstituencyNode, ParsedSentence, Token
from .rendering import capitalize_first, detokenize

ADJ, ADV, PP, VP, CLAUSE = "ADJ", "ADV", "PP", "VP", "CLAUSE"

# Exact deprel -> candidate kind.  Subtyped relations (obl:agent, acl:relcl)
# are deliberately not matched: passive agents are core arguments, and
# relative clauses are picked up as SBAR constituents instead.
_DEP_KINDS = {
    "amod": ADJ,
    "advmod": ADV,
    "nmod": PP,
    "obl": PP,
    "acl": VP,
    "xcomp": VP,
    "advcl": VP,
}
_PP_RELS = ("nmod", "obl")
_PROTECTED_RELS = ("nsubj", "obj", "cop")


@dataclass(frozen=True)
class AdjunctCandidate:
    start: int
    end: int
    kind: str
    source: str  # "dependency" | "constituency"
    attention_weight: int = -1

    @property
    def width(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Adjunct:
    slot_index: int
    tokens: tuple[Token, ...]
    kind: str
    leading_comma: bool
    trailing_comma: bool
    anchor: int  # base-token index the slot inserts after; -1 = sentence-initial
    span: tuple[int, int]  # token span in the seed sentence

    @property
    def text(self) -> str:
        return detokenize(t.form for t in self.tokens)


@dataclass(frozen=True)
class DerivationTemplate:
    source_id: str
    base_tokens: tuple[Token, ...]
    slots: tuple[Adjunct, ...]
    seed_tokens: tuple[Token, ...]
    degenerate: bool = False


class DisassemblyError(ValueError):
    pass


def _children(sentence: ParsedSentence) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in sentence.tokens]
    for tok in sentence.tokens:
        if tok.head >= 0:
            kids[tok.head].append(tok.index)
    return kids


def _subtree_span(sentence: ParsedSentence, head: int, kids: list[list[int]]) -> Optional[tuple[int, int]]:
    stack, seen = [head], set()
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        stack.extend(kids[i])
    lo, hi = min(seen), max(seen)
    if len(seen) != hi - lo + 1:
        return None  # non-projective subtree; not a removable span
    return lo, hi + 1


def _protected_indices(sentence: ParsedSentence) -> frozenset[int]:
    root = sentence.root_index
    protected = {root}
    for tok in sentence.tokens:
        if tok.head == root and tok.base_deprel in _PROTECTED_RELS:
            protected.add(tok.index)
    return frozenset(protected)


def _guard_determiner(sentence: ParsedSentence, start: int, end: int) -> int:
    # Keep a determiner together with its head: if removing [start, end) would
    # strand a DET whose head is inside the span, pull the DET into the span.
    while start > 0:
        prev = sentence.tokens[start - 1]
        if prev.upos == "DET" and start <= prev.head < end:
            start -= 1
        else:
            break
    return start


def _maximal_sbars(tree: ConstituencyNode) -> list[ConstituencyNode]:
    found: list[ConstituencyNode] = []

    def walk(node: ConstituencyNode) -> None:
        if node.label == "SBAR":
            found.append(node)
            return
        for child in node.children:
            walk(child)

    walk(tree)
    return found


def candidate_spans(sentence: ParsedSentence) -> list[AdjunctCandidate]:
    """Collect disjoint adjunct candidates from dependency and constituency."""
    n = len(sentence.tokens)
    protected = _protected_indices(sentence)
    kids = _children(sentence)
    raw: list[AdjunctCandidate] = []

    for tok in sentence.tokens:
        kind = _DEP_KINDS.get(tok.deprel)
        if kind is None:
            continue
        if tok.deprel in _PP_RELS and not any(
            sentence.tokens[c].base_deprel == "case" for c in kids[tok.index]
        ):
            continue
        span = _subtree_span(sentence, tok.index, kids)
        if span is None:
            continue
        start = _guard_determiner(sentence, span[0], span[1])
        raw.append(AdjunctCandidate(start, span[1], kind, "dependency"))

    if sentence.tree is not None:
        for node in _maximal_sbars(sentence.tree):
            start = _guard_determiner(sentence, node.start, node.end)
            raw.append(AdjunctCandidate(start, node.end, CLAUSE, "constituency"))

    raw = [
        c
        for c in raw
        if 0 <= c.start < c.end <= n and not any(c.start <= p < c.end for p in protected)
    ]

    # Outermost-first overlap resolution; constituency wins on identical spans.
    raw.sort(key=lambda c: (-(c.end - c.start), c.start, c.source != "constituency"))
    kept: list[AdjunctCandidate] = []
    for cand in raw:
        if not any(cand.start < k.end and k.start < cand.end for k in kept):
            kept.append(cand)
    kept.sort(key=lambda c: c.start)
    return kept


def attention_weight(candidate: AdjunctCandidate, labels: Sequence[int]) -> int:
    """Count of retain labels (1s) inside the candidate span."""
    return sum(labels[candidate.start : candidate.end])


def classify_candidates(
    candidates: Iterable[AdjunctCandidate], labels: Sequence[int]
) -> tuple[list[AdjunctCandidate], list[AdjunctCandidate]]:
    """Split candidates into (adjuncts, retained) by the half-width rule."""
    adjuncts: list[AdjunctCandidate] = []
    retained: list[AdjunctCandidate] = []
    for cand in sorted(candidates, key=lambda c: (-(c.end - c.start), c.start)):
        if any(a.start <= cand.start and cand.end <= a.end for a in adjuncts):
            continue  # nested inside something already removed
        weighted = replace(cand, attention_weight=attention_weight(cand, labels))
        if 2 * weighted.attention_weight > weighted.width:
            retained.append(weighted)
        else:
            adjuncts.append(weighted)
    adjuncts.sort(key=lambda c: c.start)
    retained.sort(key=lambda c: c.start)
    return adjuncts, retained


def _build_template(
    sentence: ParsedSentence, adjunct_cands: Sequence[AdjunctCandidate]
) -> DerivationTemplate:
    tokens = sentence.tokens
    seed = tuple(tokens)
    removed: set[int] = set()
    pieces: list[tuple[AdjunctCandidate, bool, bool]] = []

    for cand in sorted(adjunct_cands, key=lambda c: c.start):
        leading = trailing = False
        if cand.start == 0:
            if cand.end < len(tokens) and tokens[cand.end].form == "," and cand.end not in removed:
                trailing = True
        else:
            before = cand.start - 1
            if tokens[before].form == "," and before not in removed:
                leading = True
            if cand.end < len(tokens) and tokens[cand.end].form == "," and cand.end not in removed:
                trailing = True
        removed.update(range(cand.start, cand.end))
        if leading:
            removed.add(cand.start - 1)
        if trailing:
            removed.add(cand.end)
        pieces.append((cand, leading, trailing))

    base = tuple(t for t in tokens if t.index not in removed)
    if not base or sentence.root_index in removed:
        return DerivationTemplate(
            source_id=sentence.id,
            base_tokens=seed,
            slots=(),
            seed_tokens=seed,
            degenerate=True,
        )

    base_positions = {t.index: i for i, t in enumerate(base)}
    slots: list[Adjunct] = []
    for slot_index, (cand, leading, trailing) in enumerate(pieces, start=1):
        anchor = -1
        for seed_idx in range(cand.start - 1, -1, -1):
            if seed_idx in base_positions:
                anchor = base_positions[seed_idx]
                break
        slots.append(
            Adjunct(
                slot_index=slot_index,
                tokens=tuple(tokens[cand.start : cand.end]),
                kind=cand.kind,
                leading_comma=leading,
                trailing_comma=trailing,
                anchor=anchor,
                span=(cand.start, cand.end),
            )
        )

    return DerivationTemplate(
        source_id=sentence.id,
        base_tokens=base,
        slots=tuple(slots),
        seed_tokens=seed,
    )


def disassemble(sentence: ParsedSentence) -> DerivationTemplate:
    """Split a fully loaded sentence into its derivation template."""
    if sentence.labels is None:
        raise DisassemblyError(f"sentence {sentence.id!r} has no compression labels")
    if sentence.tree is None:
        raise DisassemblyError(f"sentence {sentence.id!r} has no constituency tree")
    adjuncts, _ = classify_candidates(candidate_spans(sentence), sentence.labels)
    return _build_template(sentence, adjuncts)


# ---------------------------------------------------------------------------
# Rendering


def _emit(template: DerivationTemplate, forms_for: Mapping[int, Sequence[str]]) -> list[str]:
    parts: list[str] = []

    def emit_slot(slot: Adjunct) -> None:
        forms = forms_for.get(slot.slot_index)
        if forms is None:
            return
        if slot.leading_comma:
            parts.append(",")
        parts.extend(forms)
        if slot.trailing_comma:
            parts.append(",")

    for slot in template.slots:
        if slot.anchor == -1:
            emit_slot(slot)
    for i, tok in enumerate(template.base_tokens):
        parts.append(tok.form)
        for slot in template.slots:
            if slot.anchor == i:
                emit_slot(slot)
    return parts


def render_filled(template: DerivationTemplate, fills: Mapping[int, Sequence[str]]) -> str:
    """Render the base with the given slots filled by surface-form sequences."""
    return capitalize_first(detokenize(_emit(template, fills)))


def render_base(template: DerivationTemplate) -> str:
    """The basic sentence structure as detokenized text."""
    return render_filled(template, {})


def render_all_originals(template: DerivationTemplate) -> str:
    """Reinsert every original adjunct; must reproduce the seed text."""
    fills = {s.slot_index: [t.form for t in s.tokens] for s in template.slots}
    return render_filled(template, fills)


def render_template(template: DerivationTemplate) -> str:
    """Display form with numbered slot markers, e.g. ``[1], ... [2].``"""
    fills = {s.slot_index: [f"[{s.slot_index}]"] for s in template.slots}
    return render_filled(template, fills)
