"""Heuristic English analysis: tokenizer, tagger, and parser stand-ins.

These are fallbacks for environments without real NLP models.  They aim for
structurally valid output (one root, consistent heads, balanced trees, one
shared tokenization) rather than linguistic accuracy; the generated artifacts
are declared stand-ins, not reconstructions of any published toolchain.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

_CLITIC_RE = re.compile(r"(n't|'s|'re|'ve|'ll|'d|'m)$", re.IGNORECASE)
_PUNCT = set(",.;:!?()[]\"")

DETS = {"the", "a", "an", "this", "that", "these", "those", "another", "each", "every", "some"}
PRONOUNS = {
    "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us", "them",
    "his", "my", "your", "their", "its", "who", "whom", "everyone", "someone",
    "anything", "something", "myself",
}
ADPS = {
    "in", "on", "at", "by", "of", "to", "from", "with", "for", "as", "over",
    "under", "into", "about", "after", "before", "between", "during", "through",
}
AUXES = {
    "is", "am", "are", "was", "were", "be", "been", "being", "did", "do", "does",
    "can", "could", "will", "would", "shall", "should", "may", "might", "must",
    "has", "have", "had",
}
CCONJ = {"and", "or", "but", "nor"}
SCONJ = {"because", "although", "while", "if", "since", "unless", "whether", "that"}
ADVS = {"very", "quite", "not", "too", "also", "here", "there", "why", "how", "when", "where", "soon", "never", "always"}
COMMON_VERBS = {
    "run", "ran", "like", "likes", "liked", "make", "made", "take", "took", "see",
    "saw", "go", "went", "say", "said", "get", "got", "know", "knew", "think",
    "thought", "want", "wants", "wanted", "give", "gave", "use", "used", "find",
    "found", "work", "worked", "call", "called", "ask", "asked", "start",
    "started", "purge", "delete", "chase", "chased", "watch", "watched", "visit",
    "visited", "ravage", "ravaged", "sing", "sang", "wait", "waited", "sleep",
    "slept", "paint", "painted", "clean", "cleaned", "fix", "fixed", "carry",
    "carried", "follow", "followed", "push", "pushed", "admire", "admired",
}

_PTB_TAG = {
    "NOUN": "NN",
    "PROPN": "NNP",
    "VERB": "VB",
    "AUX": "MD",
    "ADJ": "JJ",
    "ADV": "RB",
    "ADP": "IN",
    "DET": "DT",
    "PRON": "PRP",
    "NUM": "CD",
    "CCONJ": "CC",
    "SCONJ": "IN",
    "PART": "RP",
    "PUNCT": ".",
    "INTJ": "UH",
    "SYM": "SYM",
    "X": "XX",
}


@dataclass
class Word:
    form: str
    upos: str = "X"
    head: int = 0  # 1-based; 0 = root
    deprel: str = "dep"

    @property
    def lemma(self) -> str:
        return self.form.lower()


@dataclass
class Analysis:
    words: list[Word] = field(default_factory=list)
    tree: str = ""
    labels: list[int] = field(default_factory=list)


def tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    for chunk in text.split():
        parts: list[str] = []
        # strip leading punctuation
        while chunk and chunk[0] in _PUNCT:
            parts.append(chunk[0])
            chunk = chunk[1:]
        trailing: list[str] = []
        while chunk and chunk[-1] in _PUNCT:
            trailing.insert(0, chunk[-1])
            chunk = chunk[:-1]
        if chunk:
            m = _CLITIC_RE.search(chunk)
            if m and m.start() > 0:
                parts.extend([chunk[: m.start()], chunk[m.start() :]])
            else:
                parts.append(chunk)
        tokens.extend(parts + trailing)
    return tokens


def tag(tokens: list[str]) -> list[str]:
    tags: list[str] = []
    for i, tok in enumerate(tokens):
        lower = tok.lower()
        if all(ch in _PUNCT for ch in tok):
            tags.append("PUNCT")
        elif tok.replace(".", "", 1).replace(",", "").isdigit():
            tags.append("NUM")
        elif lower in DETS:
            tags.append("DET")
        elif lower in PRONOUNS or lower.startswith("'"):
            tags.append("AUX" if lower in ("'s", "'re", "'m", "'ve") else "PRON")
        elif lower in AUXES:
            tags.append("AUX")
        elif lower in ADPS:
            tags.append("ADP")
        elif lower in CCONJ:
            tags.append("CCONJ")
        elif lower in SCONJ:
            tags.append("SCONJ")
        elif lower in ADVS or (lower.endswith("ly") and len(lower) > 3):
            tags.append("ADV")
        elif lower in COMMON_VERBS:
            tags.append("VERB")
        elif i > 0 and tok[0].isupper():
            tags.append("PROPN")
        elif lower.endswith(("ed", "ing")) and len(lower) > 4:
            tags.append("VERB")
        else:
            tags.append("NOUN")
    # a capitalized sentence-initial word before a verb is usually a nominal
    return tags


_NOMINAL = ("NOUN", "PROPN", "PRON", "NUM")


def parse(tokens: list[str]) -> list[Word]:
    """Attach every token to a single root with shallow UD-flavored relations."""
    tags = tag(tokens)
    words = [Word(form=t, upos=g) for t, g in zip(tokens, tags)]
    n = len(words)
    if n == 0:
        return words

    root = next((i for i, w in enumerate(words) if w.upos == "VERB"), None)
    copular = False
    if root is None:
        aux = next((i for i, w in enumerate(words) if w.upos == "AUX"), None)
        if aux is not None:
            nominal = next(
                (i for i in range(aux + 1, n) if words[i].upos in ("NOUN", "PROPN", "ADJ")),
                None,
            )
            if nominal is not None:
                root, copular = nominal, True
            else:
                root = aux
        else:
            root = next((i for i, w in enumerate(words) if w.upos in _NOMINAL), 0)
    words[root].head = 0
    words[root].deprel = "root"

    def next_nominal(start: int) -> int | None:
        for j in range(start, n):
            if words[j].upos in ("NOUN", "PROPN"):
                return j
        return None

    subj_done = obj_done = False
    for i, w in enumerate(words):
        if i == root:
            continue
        if w.upos == "PUNCT":
            w.head, w.deprel = root + 1, "punct"
        elif w.upos == "DET":
            target = next_nominal(i + 1)
            w.head = (target + 1) if target is not None else root + 1
            w.deprel = "det"
        elif w.upos == "ADJ":
            target = next_nominal(i + 1)
            w.head = (target + 1) if target is not None else root + 1
            w.deprel = "amod"
        elif w.upos == "ADP":
            target = next_nominal(i + 1)
            w.head = (target + 1) if target is not None else root + 1
            w.deprel = "case"
        elif w.upos == "AUX":
            w.head = root + 1
            w.deprel = "cop" if copular else "aux"
        elif w.upos == "ADV":
            w.head = root + 1
            w.deprel = "advmod"
        elif w.upos in ("CCONJ", "SCONJ"):
            w.head = root + 1
            w.deprel = "mark" if w.upos == "SCONJ" else "cc"
        elif w.upos in _NOMINAL:
            has_case = i > 0 and words[i - 1].upos == "ADP"
            nxt = next_nominal(i + 1)
            if nxt is not None and nxt == i + 1:
                w.head, w.deprel = nxt + 1, "compound"
            elif has_case:
                w.head, w.deprel = root + 1, "obl"
            elif i < root and not subj_done:
                w.head, w.deprel = root + 1, "nsubj"
                subj_done = True
            elif i > root and not obj_done:
                w.head, w.deprel = root + 1, "obj"
                obj_done = True
            else:
                w.head, w.deprel = root + 1, "dep"
        else:
            w.head = root + 1
            w.deprel = "dep"
        if w.head == i + 1:  # never self-attach
            w.head = root + 1 if i != root else 0
    return words


def bracket_tree(words: list[Word]) -> str:
    """A shallow constituency stand-in: NP/PP grouping under one S."""
    parts: list[str] = []
    i = 0
    n = len(words)

    def leaf(j: int) -> str:
        return f"({_PTB_TAG.get(words[j].upos, 'XX')} {words[j].form})"

    while i < n:
        w = words[i]
        if w.upos == "ADP" and i + 1 < n and words[i + 1].upos in ("DET", "ADJ", "NOUN", "PROPN", "NUM"):
            j = i + 1
            np = []
            while j < n and words[j].upos in ("DET", "ADJ", "NOUN", "PROPN", "NUM"):
                np.append(leaf(j))
                j += 1
            parts.append(f"(PP {leaf(i)} (NP {' '.join(np)}))")
            i = j
        elif w.upos in ("DET", "ADJ", "NOUN", "PROPN", "NUM"):
            j = i
            np = []
            while j < n and words[j].upos in ("DET", "ADJ", "NOUN", "PROPN", "NUM"):
                np.append(leaf(j))
                j += 1
            parts.append(f"(NP {' '.join(np)})" if len(np) > 1 else np[0])
            i = j
        else:
            parts.append(leaf(i))
            i += 1
    return f"(S {' '.join(parts)})"


def compression_labels(words: list[Word]) -> list[int]:
    keep = {"nsubj", "obj", "cop"}
    return [1 if (w.deprel == "root" or w.deprel in keep) else 0 for w in words]


def analyze(text: str) -> Analysis:
    words = parse(tokenize(text))
    return Analysis(words=words, tree=bracket_tree(words), labels=compression_labels(words))
