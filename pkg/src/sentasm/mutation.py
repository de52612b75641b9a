"""Adjunct mutation: single-word variants via synonyms or masked prediction.

Every mutation replaces exactly one content word of an adjunct.  Synonym
substitution is context-free: lexicon lookup by (lemma, UPOS), re-inflected to
the original word's morphology.  Masked prediction is context-dependent: the
adjunct is inserted into the parent sentence with one word masked and a
fill-mask service proposes replacements.  Both paths score candidates by
cosine similarity to the original word, which later drives beam pruning.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
import requests

from .disassembly import Adjunct
from .inflect import Inflector
from .ingest import EmbeddingTable, Lexicon, Token

ORIGINAL, SYNONYM, MLM = "original", "synonym", "mlm"
STRATEGIES = (SYNONYM, MLM)

_CONTENT_UPOS = frozenset({"NOUN", "VERB", "ADJ", "ADV"})


class MlmError(RuntimeError):
    """The fill-mask service failed or answered off-protocol."""


@dataclass(frozen=True)
class AdjunctVariant:
    slot_index: int
    tokens: tuple[Token, ...]
    substituted_index: Optional[int]
    substitute: Optional[str]
    provenance: str
    similarity: float

    @property
    def is_original(self) -> bool:
        return self.provenance == ORIGINAL

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


@dataclass
class MutationLimits:
    per_word: int = 3
    per_adjunct: int = 8
    mlm_top_k: int = 5


@dataclass
class MutationStats:
    mlm_requests: int = 0
    mlm_skipped: int = 0


@dataclass
class MutationResources:
    lexicon: Lexicon = field(default_factory=Lexicon)
    embeddings: EmbeddingTable = field(default_factory=EmbeddingTable)
    stopwords: frozenset[str] = frozenset()
    inflector: Inflector = field(default_factory=Inflector)
    mlm_client: Optional["MlmClient"] = None


class MlmClient:
    """Client for the fill-mask wire protocol."""

    def __init__(
        self,
        base_url: str,
        mask_token: str = "[MASK]",
        timeout: float = 10.0,
        session: Optional[requests.Session] = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.mask_token = mask_token
        self.timeout = timeout
        self.session = session or requests.Session()

    def fill(self, text: str, top_k: int) -> list[tuple[str, float]]:
        payload = {"text": text, "mask_token": self.mask_token, "top_k": top_k}
        try:
            resp = self.session.post(
                f"{self.base_url}/fill-mask", json=payload, timeout=self.timeout
            )
            resp.raise_for_status()
            body = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise MlmError(f"fill-mask request failed: {exc}") from exc
        candidates = body.get("candidates")
        if not isinstance(candidates, list):
            raise MlmError("fill-mask response missing 'candidates' list")
        out: list[tuple[str, float]] = []
        prev = float("inf")
        for item in candidates:
            try:
                token, score = item["token"], float(item["score"])
            except (KeyError, TypeError, ValueError):
                raise MlmError(f"malformed fill-mask candidate: {item!r}") from None
            if score > prev:
                raise MlmError("fill-mask scores are not descending")
            prev = score
            out.append((token, score))
        return out


def eligible_words(adjunct: Adjunct, stopwords: frozenset[str]) -> list[int]:
    """Indices of adjunct tokens that may be substituted."""
    return [
        i
        for i, tok in enumerate(adjunct.tokens)
        if tok.upos in _CONTENT_UPOS and tok.form.lower() not in stopwords
    ]


def synonym_candidates(token: Token, lexicon: Lexicon, inflector: Inflector) -> list[str]:
    """Lexicon synonyms re-inflected to the token's morphological features."""
    feats = dict(token.feats)
    out: list[str] = []
    for syn in lexicon.synonyms(token.lemma, token.upos):
        inflected = inflector.inflect(syn, token.upos, feats)
        if inflected is None:
            continue
        if inflected == token.form.lower() or inflected in out:
            continue
        out.append(inflected)
    return out


def mlm_candidates(
    client: MlmClient,
    masked_text: str,
    original_word: str,
    stopwords: frozenset[str],
    top_k: int,
) -> list[str]:
    """Filtered fill-mask proposals for one masked adjunct position."""
    original = original_word.lower()
    out: list[str] = []
    for token, _score in client.fill(masked_text, top_k):
        word = token.strip()
        if not word.isalpha():
            continue  # punctuation and subword fragments
        lowered = word.lower()
        if lowered == original or lowered in stopwords or lowered in out:
            continue
        out.append(lowered)
        if len(out) >= top_k:
            break
    return out


def similarity_score(original: str, substitute: str, embeddings: EmbeddingTable) -> float:
    """Cosine similarity between word vectors; 0 for out-of-vocabulary words."""
    if original.lower() == substitute.lower():
        return 1.0
    va, vb = embeddings.get(original), embeddings.get(substitute)
    if va is None or vb is None:
        return 0.0
    denom = float(np.linalg.norm(va) * np.linalg.norm(vb))
    if denom == 0.0:
        return 0.0
    return float(np.dot(va, vb) / denom)


def original_variant(adjunct: Adjunct) -> AdjunctVariant:
    return AdjunctVariant(
        slot_index=adjunct.slot_index,
        tokens=adjunct.tokens,
        substituted_index=None,
        substitute=None,
        provenance=ORIGINAL,
        similarity=1.0,
    )


def _substituted(adjunct: Adjunct, index: int, word: str, provenance: str, sim: float) -> AdjunctVariant:
    old = adjunct.tokens[index]
    new_tok = replace(old, form=word, lemma=word.lower())
    tokens = adjunct.tokens[:index] + (new_tok,) + adjunct.tokens[index + 1 :]
    return AdjunctVariant(
        slot_index=adjunct.slot_index,
        tokens=tokens,
        substituted_index=index,
        substitute=word,
        provenance=provenance,
        similarity=sim,
    )


def mutate_adjunct(
    adjunct: Adjunct,
    strategy: str,
    resources: MutationResources,
    limits: MutationLimits,
    masked_context: Optional[Callable[[int], str]] = None,
    exclude: frozenset[int] = frozenset(),
    stats: Optional[MutationStats] = None,
) -> list[AdjunctVariant]:
    """All variants of one adjunct: the original first, then substitutions.

    ``masked_context`` renders the parent-level sentence with the adjunct
    inserted and position ``i`` masked (required for the mlm strategy).
    ``exclude`` suppresses substitution at the given token indices.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown mutation strategy {strategy!r}")
    picked: list[AdjunctVariant] = []
    seen: set[tuple[int, str]] = set()
    for idx in eligible_words(adjunct, resources.stopwords):
        if idx in exclude:
            continue
        tok = adjunct.tokens[idx]
        if strategy == SYNONYM:
            words = synonym_candidates(tok, resources.lexicon, resources.inflector)
        else:
            if resources.mlm_client is None or masked_context is None:
                words = []
            else:
                if stats is not None:
                    stats.mlm_requests += 1
                try:
                    words = mlm_candidates(
                        resources.mlm_client,
                        masked_context(idx),
                        tok.form,
                        resources.stopwords,
                        limits.mlm_top_k,
                    )
                except MlmError:
                    if stats is not None:
                        stats.mlm_skipped += 1
                    words = []
        scored = sorted(
            ((similarity_score(tok.form, w, resources.embeddings), w) for w in words),
            key=lambda p: (-p[0], p[1]),
        )
        for sim, word in scored[: limits.per_word]:
            key = (idx, word.lower())
            if key in seen:
                continue
            seen.add(key)
            prov = SYNONYM if strategy == SYNONYM else MLM
            picked.append(_substituted(adjunct, idx, word, prov, sim))
    picked.sort(key=lambda v: (-v.similarity, v.substituted_index, v.substitute))
    return [original_variant(adjunct)] + picked[: max(limits.per_adjunct - 1, 0)]
