"""Corpus and lexical-resource loading.

Parse artifacts arrive in three files joined on the ``sent_id`` string:
CoNLL-U dependency analyses, one-per-line PTB bracket trees, and JSONL
compression labels.  Seed datasets and lexical resources (synonym lexicon,
word embeddings, stopword list) have their own flat formats.  Everything is
validated on load; the resulting corpus is treated as immutable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

import numpy as np

UPOS_TAGS = frozenset(
    "ADJ ADP ADV AUX CCONJ DET INTJ NOUN NUM PART PRON PROPN PUNCT SCONJ SYM VERB X".split()
)

MRC, SA, SSM = "mrc", "sa", "ssm"
TASKS = (MRC, SA, SSM)


class LoadError(ValueError):
    """A corpus or resource file failed validation."""


@dataclass(frozen=True)
class Token:
    index: int
    form: str
    lemma: str
    upos: str
    feats: tuple[tuple[str, str], ...] = ()
    head: int = -1
    deprel: str = "dep"

    def feat(self, key: str) -> Optional[str]:
        for k, v in self.feats:
            if k == key:
                return v
        return None

    @property
    def base_deprel(self) -> str:
        return self.deprel.split(":", 1)[0]


@dataclass
class ConstituencyNode:
    label: str
    start: int
    end: int
    children: list["ConstituencyNode"] = field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def iter_nodes(self) -> Iterator["ConstituencyNode"]:
        yield self
        for child in self.children:
            yield from child.iter_nodes()


@dataclass
class ParsedSentence:
    id: str
    tokens: list[Token]
    tree: Optional[ConstituencyNode] = None
    labels: Optional[list[int]] = None

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def root_index(self) -> int:
        for tok in self.tokens:
            if tok.head == -1:
                return tok.index
        raise LoadError(f"sentence {self.id!r} has no root token")

    @property
    def text(self) -> str:
        from .rendering import capitalize_first, detokenize

        return capitalize_first(detokenize(t.form for t in self.tokens))


@dataclass
class Corpus:
    sentences: dict[str, ParsedSentence] = field(default_factory=dict)

    def __getitem__(self, sent_id: str) -> ParsedSentence:
        try:
            return self.sentences[sent_id]
        except KeyError:
            raise LoadError(f"unknown sentence id {sent_id!r}") from None

    def __contains__(self, sent_id: str) -> bool:
        return sent_id in self.sentences

    def __iter__(self) -> Iterator[ParsedSentence]:
        return iter(self.sentences.values())

    def __len__(self) -> int:
        return len(self.sentences)


@dataclass
class MrcSeed:
    id: str
    sentence_ids: list[str]
    context: str
    question: str
    gold_answers: list[str]
    answer_sentence_id: str
    answer_span: tuple[int, int]  # char offsets within the answer-bearing sentence
    task: str = MRC


@dataclass
class SaSeed:
    id: str
    sentence_id: str
    gold_label: Optional[str] = None
    task: str = SA


@dataclass
class SsmSeed:
    id: str
    sentence_id_a: str
    sentence_id_b: str
    gold_duplicate: Optional[int] = None
    task: str = SSM


SeedTest = Union[MrcSeed, SaSeed, SsmSeed]


@dataclass
class Lexicon:
    entries: dict[tuple[str, str], list[str]] = field(default_factory=dict)
    skipped_rows: int = 0

    def synonyms(self, lemma: str, upos: str) -> list[str]:
        return self.entries.get((lemma.lower(), upos), [])


@dataclass
class EmbeddingTable:
    vectors: dict[str, np.ndarray] = field(default_factory=dict)
    dim: int = 0

    def get(self, word: str) -> Optional[np.ndarray]:
        return self.vectors.get(word.lower())


# ---------------------------------------------------------------------------
# CoNLL-U


_SENT_ID_RE = re.compile(r"^#\s*sent_id\s*=\s*(\S+)\s*$")


def _parse_feats(raw: str, lineno: int) -> tuple[tuple[str, str], ...]:
    if raw == "_" or not raw:
        return ()
    feats = []
    for part in raw.split("|"):
        if "=" not in part:
            raise LoadError(f"line {lineno}: malformed FEATS entry {part!r}")
        k, v = part.split("=", 1)
        feats.append((k, v))
    return tuple(feats)


def load_conllu(path: Union[str, Path]) -> list[ParsedSentence]:
    """Read a CoNLL-U file into ParsedSentences (no trees or labels yet)."""
    sentences: list[ParsedSentence] = []
    seen_ids: set[str] = set()
    sent_id: Optional[str] = None
    rows: list[tuple[int, list[str]]] = []

    def flush(lineno: int) -> None:
        nonlocal sent_id, rows
        if not rows:
            sent_id = None
            return
        if sent_id is None:
            raise LoadError(f"line {rows[0][0]}: sentence block without a sent_id comment")
        if sent_id in seen_ids:
            raise LoadError(f"line {rows[0][0]}: duplicate sent_id {sent_id!r}")
        seen_ids.add(sent_id)
        tokens: list[Token] = []
        for offset, (ln, cols) in enumerate(rows):
            tok_id = cols[0]
            if "-" in tok_id or "." in tok_id:
                raise LoadError(f"line {ln}: multi-word token ranges are not supported ({tok_id})")
            try:
                tok_num, head = int(tok_id), int(cols[6])
            except ValueError:
                raise LoadError(f"line {ln}: ID and HEAD must be integers") from None
            if tok_num != offset + 1:
                raise LoadError(f"line {ln}: token ids must be consecutive from 1")
            upos = cols[3]
            if upos not in UPOS_TAGS:
                raise LoadError(f"line {ln}: unknown UPOS tag {upos!r}")
            tokens.append(
                Token(
                    index=offset,
                    form=cols[1],
                    lemma=cols[2],
                    upos=upos,
                    feats=_parse_feats(cols[5], ln),
                    head=head - 1,
                    deprel=cols[7],
                )
            )
        n = len(tokens)
        roots = [t for t in tokens if t.head == -1]
        if len(roots) != 1:
            raise LoadError(f"line {rows[0][0]}: sentence {sent_id!r} must have exactly one root")
        for t, (ln, _) in zip(tokens, rows):
            if t.head != -1 and not (0 <= t.head < n):
                raise LoadError(f"line {ln}: dangling head index {t.head + 1}")
            if t.head == t.index:
                raise LoadError(f"line {ln}: token heads itself")
        sentences.append(ParsedSentence(id=sent_id, tokens=tokens))
        sent_id = None
        rows = []

    lineno = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                flush(lineno)
                continue
            if line.startswith("#"):
                m = _SENT_ID_RE.match(line)
                if m:
                    sent_id = m.group(1)
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise LoadError(f"line {lineno}: expected 10 tab-separated columns, got {len(cols)}")
            rows.append((lineno, cols))
        flush(lineno)
    return sentences


def serialize_conllu(sentences: Iterable[ParsedSentence]) -> str:
    """Render sentences back to CoNLL-U text (round-trips with load_conllu)."""
    blocks = []
    for sent in sentences:
        lines = [f"# sent_id = {sent.id}"]
        for tok in sent.tokens:
            feats = "|".join(f"{k}={v}" for k, v in tok.feats) or "_"
            lines.append(
                "\t".join(
                    [
                        str(tok.index + 1),
                        tok.form,
                        tok.lemma,
                        tok.upos,
                        "_",
                        feats,
                        str(tok.head + 1),
                        tok.deprel,
                        "_",
                        "_",
                    ]
                )
            )
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


# ---------------------------------------------------------------------------
# PTB bracket trees


def parse_ptb(text: str, lineno: int = 0) -> ConstituencyNode:
    """Parse one PTB bracket tree.

    A pre-terminal whose content is bare words becomes a single leaf; words
    are space-joined, so entity-merged tokens like ``(NNP May 3)`` stay one
    token, matching the CoNLL-U side.
    """
    pos = 0
    counter = [0]

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_node() -> ConstituencyNode:
        nonlocal pos
        skip_ws()
        if pos >= len(text) or text[pos] != "(":
            raise LoadError(f"line {lineno}: expected '(' at position {pos}")
        pos += 1
        skip_ws()
        label_start = pos
        while pos < len(text) and not text[pos].isspace() and text[pos] not in "()":
            pos += 1
        label = text[label_start:pos]
        if not label:
            raise LoadError(f"line {lineno}: node without a label at position {pos}")
        children: list[ConstituencyNode] = []
        words: list[str] = []
        while True:
            skip_ws()
            if pos >= len(text):
                raise LoadError(f"line {lineno}: unbalanced parentheses")
            if text[pos] == ")":
                pos += 1
                break
            if text[pos] == "(":
                if words:
                    raise LoadError(f"line {lineno}: mixed words and subtrees under {label!r}")
                children.append(parse_node())
            else:
                word_start = pos
                while pos < len(text) and not text[pos].isspace() and text[pos] not in "()":
                    pos += 1
                words.append(text[word_start:pos])
        if words:
            start = counter[0]
            counter[0] += 1
            return ConstituencyNode(label=label, start=start, end=counter[0])
        if not children:
            raise LoadError(f"line {lineno}: empty constituent {label!r}")
        return ConstituencyNode(
            label=label, start=children[0].start, end=children[-1].end, children=children
        )

    root = parse_node()
    skip_ws()
    if pos != len(text):
        raise LoadError(f"line {lineno}: trailing text after tree")
    return root


def load_constituency(path: Union[str, Path]) -> dict[str, ConstituencyNode]:
    """Read one ``id<TAB>bracket-tree`` per line."""
    trees: dict[str, ConstituencyNode] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise LoadError(f"line {lineno}: expected 'id<TAB>tree'")
            sent_id, raw = line.split("\t", 1)
            if sent_id in trees:
                raise LoadError(f"line {lineno}: duplicate tree for sentence {sent_id!r}")
            trees[sent_id] = parse_ptb(raw, lineno)
    return trees


# ---------------------------------------------------------------------------
# Compression labels


def load_compression_labels(path: Union[str, Path]) -> dict[str, list[int]]:
    """Read JSONL ``{"id": ..., "labels": [0|1, ...]}`` records."""
    labels: dict[str, list[int]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise LoadError(f"line {lineno}: invalid JSON ({exc})") from None
            if not isinstance(rec, dict) or "id" not in rec or "labels" not in rec:
                raise LoadError(f"line {lineno}: record needs 'id' and 'labels'")
            seq = rec["labels"]
            if not all(isinstance(v, int) and v in (0, 1) for v in seq):
                raise LoadError(f"line {lineno}: labels must be 0 or 1")
            if rec["id"] in labels:
                raise LoadError(f"line {lineno}: duplicate labels for sentence {rec['id']!r}")
            labels[rec["id"]] = list(seq)
    return labels


# ---------------------------------------------------------------------------
# Corpus assembly


def attach_trees(corpus: Corpus, trees: dict[str, ConstituencyNode]) -> None:
    for sent_id, tree in trees.items():
        sent = corpus[sent_id]
        if tree.end - tree.start != len(sent.tokens) or tree.start != 0:
            raise LoadError(
                f"sentence {sent_id!r}: tree covers {tree.end - tree.start} tokens, "
                f"CoNLL-U has {len(sent.tokens)}"
            )
        sent.tree = tree


def attach_labels(corpus: Corpus, labels: dict[str, list[int]]) -> None:
    for sent_id, seq in labels.items():
        sent = corpus[sent_id]
        if len(seq) != len(sent.tokens):
            raise LoadError(
                f"sentence {sent_id!r}: {len(seq)} labels for {len(sent.tokens)} tokens"
            )
        sent.labels = list(seq)


def build_corpus(
    conllu_path: Union[str, Path],
    trees_path: Optional[Union[str, Path]] = None,
    labels_path: Optional[Union[str, Path]] = None,
) -> Corpus:
    corpus = Corpus({s.id: s for s in load_conllu(conllu_path)})
    if trees_path is not None:
        attach_trees(corpus, load_constituency(trees_path))
    if labels_path is not None:
        attach_labels(corpus, load_compression_labels(labels_path))
    return corpus


# ---------------------------------------------------------------------------
# Seed datasets


def _sentence_regions(context: str, texts: list[str], seed_id: str) -> list[tuple[int, int]]:
    regions = []
    cursor = 0
    for text in texts:
        idx = context.find(text, cursor)
        if idx < 0:
            raise LoadError(
                f"seed {seed_id!r}: sentence text {text[:40]!r}... not found in context"
            )
        regions.append((idx, idx + len(text)))
        cursor = idx + len(text)
    return regions


def load_mrc_seeds(path: Union[str, Path], corpus: Corpus) -> list[MrcSeed]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    seeds: list[MrcSeed] = []
    for article in doc.get("data", []):
        for para in article.get("paragraphs", []):
            context = para["context"]
            sentence_ids = list(para["sentences"])
            texts = [corpus[sid].text for sid in sentence_ids]
            for qa in para.get("qas", []):
                qa_id = qa["id"]
                regions = _sentence_regions(context, texts, qa_id)
                answers = [a["text"] for a in qa["answers"]]
                if not answers:
                    raise LoadError(f"seed {qa_id!r}: no gold answers")
                first = qa["answers"][0]
                start = first.get("answer_start", context.find(first["text"]))
                if start < 0 or context[start : start + len(first["text"])] != first["text"]:
                    raise LoadError(
                        f"seed {qa_id!r}: answer {first['text']!r} not found in paragraph"
                    )
                end = start + len(first["text"])
                holder = None
                for sid, (rs, re_) in zip(sentence_ids, regions):
                    if rs <= start and end <= re_:
                        holder = (sid, (start - rs, end - rs))
                        break
                if holder is None:
                    raise LoadError(
                        f"seed {qa_id!r}: answer span crosses sentence boundaries"
                    )
                seeds.append(
                    MrcSeed(
                        id=qa_id,
                        sentence_ids=sentence_ids,
                        context=context,
                        question=qa["question"],
                        gold_answers=answers,
                        answer_sentence_id=holder[0],
                        answer_span=holder[1],
                    )
                )
    return seeds


SA_LABELS = ("positive", "negative")


def load_sa_seeds(path: Union[str, Path], corpus: Corpus) -> list[SaSeed]:
    seeds = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) not in (1, 2):
                raise LoadError(f"line {lineno}: expected 'sentence_id[<TAB>label]'")
            sid = cols[0]
            corpus[sid]
            label = None
            if len(cols) == 2 and cols[1]:
                if cols[1] not in SA_LABELS:
                    raise LoadError(f"line {lineno}: unknown label token {cols[1]!r}")
                label = cols[1]
            seeds.append(SaSeed(id=f"sa-{lineno}", sentence_id=sid, gold_label=label))
    return seeds


def load_ssm_seeds(path: Union[str, Path], corpus: Corpus) -> list[SsmSeed]:
    seeds = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) not in (2, 3):
                raise LoadError(f"line {lineno}: expected 'id_a<TAB>id_b[<TAB>is_duplicate]'")
            corpus[cols[0]], corpus[cols[1]]
            dup = None
            if len(cols) == 3 and cols[2]:
                if cols[2] not in ("0", "1"):
                    raise LoadError(f"line {lineno}: unknown duplicate flag {cols[2]!r}")
                dup = int(cols[2])
            seeds.append(
                SsmSeed(id=f"ssm-{lineno}", sentence_id_a=cols[0], sentence_id_b=cols[1], gold_duplicate=dup)
            )
    return seeds


def load_seed_dataset(task: str, path: Union[str, Path], corpus: Corpus) -> list[SeedTest]:
    if task == MRC:
        return load_mrc_seeds(path, corpus)
    if task == SA:
        return load_sa_seeds(path, corpus)
    if task == SSM:
        return load_ssm_seeds(path, corpus)
    raise LoadError(f"unknown task {task!r}")


# ---------------------------------------------------------------------------
# Lexical resources


def load_lexicon(path: Union[str, Path]) -> Lexicon:
    """Read TSV ``lemma<TAB>upos<TAB>syn1,syn2,...`` rows."""
    lex = Lexicon()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise LoadError(f"line {lineno}: expected 3 tab-separated columns")
            lemma, upos, raw = cols[0].lower(), cols[1], cols[2]
            syns = [s.strip().lower() for s in raw.split(",") if s.strip()]
            syns = [s for s in syns if s != lemma]
            if not syns:
                lex.skipped_rows += 1
                continue
            lex.entries.setdefault((lemma, upos), []).extend(
                s for s in syns if s not in lex.entries.get((lemma, upos), [])
            )
    return lex


def load_embeddings(path: Union[str, Path]) -> EmbeddingTable:
    """Read whitespace-separated ``word v1 ... vd`` rows."""
    table = EmbeddingTable()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            word, values = parts[0].lower(), parts[1:]
            vec = np.asarray([float(v) for v in values], dtype=np.float64)
            if not np.all(np.isfinite(vec)):
                raise LoadError(f"line {lineno}: non-finite embedding value")
            if table.dim == 0:
                table.dim = vec.shape[0]
            elif vec.shape[0] != table.dim:
                raise LoadError(
                    f"line {lineno}: embedding dimension {vec.shape[0]} != {table.dim}"
                )
            table.vectors[word] = vec
    return table


def load_stopwords(path: Union[str, Path]) -> frozenset[str]:
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip().lower()
            if word:
                words.add(word)
    return frozenset(words)
