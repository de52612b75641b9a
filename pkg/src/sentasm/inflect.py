"""Rule-based English inflection used to refine synonym substitutions.

Regular suffixing covers plural -s/-es, past -ed/-d, gerund -ing, and
comparative/superlative -er/-est, with the usual e-drop, y-to-i, and
final-consonant doubling adjustments.  Irregular verbs come from a bundled
table; a verb listed there without forms is known-irregular and any synonym
needing an irregular slot is rejected rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources as importlib_resources
from typing import Mapping, Optional

_VOWELS = "aeiou"

_IRREGULAR_NOUNS = {
    "man": "men",
    "woman": "women",
    "child": "children",
    "person": "people",
    "foot": "feet",
    "tooth": "teeth",
    "mouse": "mice",
    "goose": "geese",
    "ox": "oxen",
    "sheep": "sheep",
    "deer": "deer",
    "fish": "fish",
    "life": "lives",
    "leaf": "leaves",
    "wife": "wives",
    "knife": "knives",
}

_IRREGULAR_ADJS = {
    "good": ("better", "best"),
    "bad": ("worse", "worst"),
    "far": ("farther", "farthest"),
    "little": ("less", "least"),
    "many": ("more", "most"),
    "much": ("more", "most"),
}

_THIRD_PERSON_SPECIAL = {"have": "has", "be": "is", "do": "does", "go": "goes"}


def _syllable_count(word: str) -> int:
    count, prev_vowel = 0, False
    for ch in word:
        is_vowel = ch in _VOWELS or ch == "y"
        if is_vowel and not prev_vowel:
            count += 1
        prev_vowel = is_vowel
    return max(count, 1)


def _doubles_final(word: str) -> bool:
    if len(word) < 3 or _syllable_count(word) != 1:
        return False
    a, b, c = word[-3], word[-2], word[-1]
    return c not in _VOWELS + "wxy" and b in _VOWELS and a not in _VOWELS


def _add_s(word: str) -> str:
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if word.endswith("y") and len(word) > 1 and word[-2] not in _VOWELS:
        return word[:-1] + "ies"
    return word + "s"


def _add_ed(word: str) -> str:
    if word.endswith("e"):
        return word + "d"
    if word.endswith("y") and len(word) > 1 and word[-2] not in _VOWELS:
        return word[:-1] + "ied"
    if _doubles_final(word):
        return word + word[-1] + "ed"
    return word + "ed"


def _add_ing(word: str) -> str:
    if word.endswith("ie"):
        return word[:-2] + "ying"
    if word.endswith("e") and not word.endswith("ee"):
        return word[:-1] + "ing"
    if _doubles_final(word):
        return word + word[-1] + "ing"
    return word + "ing"


def _add_er_est(word: str, suffix: str) -> str:
    if word.endswith("e"):
        return word + suffix[1:]
    if word.endswith("y") and len(word) > 1 and word[-2] not in _VOWELS:
        return word[:-1] + "i" + suffix
    if _doubles_final(word):
        return word + word[-1] + suffix
    return word + suffix


@dataclass
class Inflector:
    # lemma -> (past, past_participle); None marks a known-irregular form we
    # cannot produce, so the candidate is dropped instead of over-regularized.
    irregular_verbs: dict[str, tuple[Optional[str], Optional[str]]] = field(default_factory=dict)

    @classmethod
    def from_table(cls, text: str) -> "Inflector":
        table: dict[str, tuple[Optional[str], Optional[str]]] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ValueError(f"irregular-verb row needs 3 columns: {line!r}")
            lemma, past, part = cols
            table[lemma] = (None if past == "-" else past, None if part == "-" else part)
        return cls(table)

    @classmethod
    def default(cls) -> "Inflector":
        text = importlib_resources.files("sentasm.data").joinpath("irregular_verbs.tsv").read_text()
        return cls.from_table(text)

    def noun(self, lemma: str, feats: Mapping[str, str]) -> Optional[str]:
        if feats.get("Number") == "Plur":
            return _IRREGULAR_NOUNS.get(lemma, _add_s(lemma))
        return lemma

    def verb(self, lemma: str, feats: Mapping[str, str]) -> Optional[str]:
        tense = feats.get("Tense")
        form = feats.get("VerbForm")
        irregular = self.irregular_verbs.get(lemma)
        if tense == "Past" and form == "Part":
            if irregular is not None:
                return irregular[1]
            return _add_ed(lemma)
        if tense == "Past":
            if irregular is not None:
                return irregular[0]
            return _add_ed(lemma)
        if form == "Ger" or (tense == "Pres" and form == "Part"):
            return _add_ing(lemma)
        if tense == "Pres" and feats.get("Person") == "3" and feats.get("Number") == "Sing":
            return _THIRD_PERSON_SPECIAL.get(lemma, _add_s(lemma))
        return lemma

    def adjective(self, lemma: str, feats: Mapping[str, str]) -> Optional[str]:
        degree = feats.get("Degree")
        if degree == "Cmp":
            special = _IRREGULAR_ADJS.get(lemma)
            return special[0] if special else _add_er_est(lemma, "er")
        if degree == "Sup":
            special = _IRREGULAR_ADJS.get(lemma)
            return special[1] if special else _add_er_est(lemma, "est")
        return lemma

    def inflect(self, lemma: str, upos: str, feats: Mapping[str, str]) -> Optional[str]:
        """Shape ``lemma`` to carry the original token's features.

        Returns None when the required form is unknown (blocklisted
        irregular), signalling the caller to drop the candidate.
        """
        if upos == "NOUN":
            return self.noun(lemma, feats)
        if upos == "VERB":
            return self.verb(lemma, feats)
        if upos == "ADJ":
            return self.adjective(lemma, feats)
        return lemma
