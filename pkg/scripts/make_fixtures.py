#!/usr/bin/env python3
"""Generate the frozen fixture corpus under tests/fixtures/.

Every sentence is described once (tokens + bracket tree + retain labels) and
emitted to the three artifact files with one shared tokenization.  The script
validates its own output by loading it through the package and checking the
disassembly round trip, so the committed fixtures are known-good.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from sentasm.disassembly import disassemble, render_all_originals  # noqa: E402
from sentasm.ingest import build_corpus  # noqa: E402

FIX = ROOT / "tests" / "fixtures"


@dataclass
class T:
    form: str
    lemma: str
    upos: str
    head: int  # 1-based; 0 = root
    deprel: str
    feats: str = "_"


@dataclass
class S:
    id: str
    tokens: list[T]
    tree: str
    keep: set[int]  # 1-based indices labeled 1 (retain)


SENTS: list[S] = []


def add(sent_id: str, tokens: list[T], tree: str, keep: set[int]) -> None:
    for existing in SENTS:
        if existing.id == sent_id:
            raise SystemExit(f"duplicate sentence id {sent_id}")
    SENTS.append(S(sent_id, tokens, tree, keep))


# ---------------------------------------------------------------------------
# Special sentences (hand parsed)

add(
    "fire1",
    [
        T("On", "on", "ADP", 2, "case"),
        T("May 3", "May 3", "PROPN", 7, "obl"),
        T(",", ",", "PUNCT", 7, "punct"),
        T("downtown", "downtown", "NOUN", 5, "compound", "Number=Sing"),
        T("Jacksonville", "Jacksonville", "PROPN", 7, "nsubj:pass"),
        T("was", "be", "AUX", 7, "aux:pass", "Tense=Past"),
        T("ravaged", "ravage", "VERB", 0, "root", "Tense=Past|VerbForm=Part"),
        T("by", "by", "ADP", 10, "case"),
        T("a", "a", "DET", 10, "det"),
        T("fire", "fire", "NOUN", 7, "obl:agent", "Number=Sing"),
        T("that", "that", "PRON", 12, "nsubj"),
        T("started", "start", "VERB", 10, "acl:relcl", "Tense=Past"),
        T("as", "as", "ADP", 16, "case"),
        T("a", "a", "DET", 16, "det"),
        T("kitchen", "kitchen", "NOUN", 16, "compound", "Number=Sing"),
        T("fire", "fire", "NOUN", 12, "obl", "Number=Sing"),
        T(".", ".", "PUNCT", 7, "punct"),
    ],
    "(S (PP (IN On) (NP (NNP May 3))) (, ,) (NP (NN downtown) (NNP Jacksonville)) "
    "(VP (VBD was) (VP (VBN ravaged) (PP (IN by) (NP (NP (DT a) (NN fire)) "
    "(SBAR (WHNP (WDT that)) (S (VP (VBD started) (PP (IN as) "
    "(NP (DT a) (NN kitchen) (NN fire)))))))))) (. .))",
    {4, 5, 6, 7, 8, 9, 10},
)

add(
    "girl1",
    [
        T("I", "I", "PRON", 2, "nsubj"),
        T("like", "like", "VERB", 0, "root", "Tense=Pres"),
        T("that", "that", "DET", 5, "det"),
        T("pretty", "pretty", "ADJ", 5, "amod", "Degree=Pos"),
        T("girl", "girl", "NOUN", 2, "obj", "Number=Sing"),
    ],
    "(S (NP (PRP I)) (VP (VBP like) (NP (DT that) (JJ pretty) (NN girl))))",
    {1, 2, 3, 5},
)

add(
    "way1",
    [
        T("Stated", "state", "VERB", 10, "advcl", "Tense=Past|VerbForm=Part"),
        T("another", "another", "DET", 3, "det"),
        T("way", "way", "NOUN", 1, "obj", "Number=Sing"),
        T(",", ",", "PUNCT", 10, "punct"),
        T("the", "the", "DET", 6, "det"),
        T("instance", "instance", "NOUN", 10, "nsubj", "Number=Sing"),
        T("is", "be", "AUX", 10, "cop", "Number=Sing|Person=3|Tense=Pres"),
        T("a", "a", "DET", 10, "det"),
        T("particular", "particular", "ADJ", 10, "amod", "Degree=Pos"),
        T("input", "input", "NOUN", 0, "root", "Number=Sing"),
        T("to", "to", "ADP", 13, "case"),
        T("the", "the", "DET", 13, "det"),
        T("problem", "problem", "NOUN", 10, "nmod", "Number=Sing"),
        T(".", ".", "PUNCT", 10, "punct"),
    ],
    "(S (S (VP (VBN Stated) (NP (DT another) (NN way)))) (, ,) (NP (DT the) (NN instance)) "
    "(VP (VBZ is) (NP (NP (DT a) (JJ particular) (NN input)) (PP (TO to) "
    "(NP (DT the) (NN problem))))) (. .))",
    {5, 6, 7, 8, 9, 10, 11, 12, 13, 14},
)

add(
    "sol1",
    [
        T("The", "the", "DET", 2, "det"),
        T("solution", "solution", "NOUN", 5, "nsubj", "Number=Sing"),
        T("is", "be", "AUX", 5, "cop", "Number=Sing|Person=3|Tense=Pres"),
        T("the", "the", "DET", 5, "det"),
        T("output", "output", "NOUN", 0, "root", "Number=Sing"),
        T("corresponding", "correspond", "VERB", 5, "acl", "Tense=Pres|VerbForm=Part"),
        T("to", "to", "ADP", 10, "case"),
        T("the", "the", "DET", 10, "det"),
        T("given", "given", "ADJ", 10, "amod", "Degree=Pos"),
        T("input", "input", "NOUN", 6, "obl", "Number=Sing"),
        T(".", ".", "PUNCT", 5, "punct"),
    ],
    "(S (NP (DT The) (NN solution)) (VP (VBZ is) (NP (NP (DT the) (NN output)) "
    "(VP (VBG corresponding) (PP (TO to) (NP (DT the) (JJ given) (NN input)))))) (. .))",
    {1, 2, 3, 4, 5, 11},
)

add(
    "trump1",
    [
        T("Why", "why", "ADV", 4, "advmod"),
        T("did", "do", "AUX", 4, "aux", "Tense=Past"),
        T("Trump", "Trump", "PROPN", 4, "nsubj"),
        T("purge", "purge", "VERB", 0, "root", "VerbForm=Inf"),
        T("members", "member", "NOUN", 4, "obj", "Number=Plur"),
        T("of", "of", "ADP", 8, "case"),
        T("his", "his", "PRON", 8, "nmod:poss"),
        T("cabinet", "cabinet", "NOUN", 5, "nmod", "Number=Sing"),
        T("?", "?", "PUNCT", 4, "punct"),
    ],
    "(SBARQ (WHADVP (WRB Why)) (SQ (VBD did) (NP (NNP Trump)) (VP (VB purge) "
    "(NP (NP (NNS members)) (PP (IN of) (NP (PRP$ his) (NN cabinet)))))) (. ?))",
    {1, 2, 3, 4, 5, 9},
)

add(
    "tv1",
    [
        T("A", "a", "DET", 3, "det"),
        T("tv", "tv", "ADJ", 3, "amod", "Degree=Pos"),
        T("movie", "movie", "NOUN", 0, "root", "Number=Sing"),
    ],
    "(NP (DT A) (JJ tv) (NN movie))",
    {1, 3},
)

add(
    "attempt1",
    [
        T("It", "it", "PRON", 5, "nsubj"),
        T("'s", "be", "AUX", 5, "cop", "Number=Sing|Person=3|Tense=Pres"),
        T("a", "a", "DET", 5, "det"),
        T("brave", "brave", "ADJ", 5, "amod", "Degree=Pos"),
        T("attempt", "attempt", "NOUN", 0, "root", "Number=Sing"),
        T(".", ".", "PUNCT", 5, "punct"),
    ],
    "(S (NP (PRP It)) (VP (VBZ 's) (NP (DT a) (JJ brave) (NN attempt))) (. .))",
    {1, 2, 3, 5, 6},
)


# ---------------------------------------------------------------------------
# Pattern families

ADJ_BANK = ["old", "young", "quick", "quiet", "bright", "small", "happy", "tired", "clever", "gentle"]
NOUN_BANK = ["dog", "cat", "farmer", "teacher", "student", "bird", "neighbor", "painter", "singer", "guard"]
OBJ_BANK = ["ball", "letter", "song", "wagon", "basket", "painting", "report", "ladder", "garden", "fence"]
PLACE_BANK = ["park", "yard", "street", "library", "market", "village", "harbor", "field"]
VERB_BANK = [
    ("chased", "chase"),
    ("watched", "watch"),
    ("painted", "paint"),
    ("visited", "visit"),
    ("followed", "follow"),
    ("carried", "carry"),
    ("pushed", "push"),
    ("cleaned", "clean"),
    ("fixed", "fix"),
    ("admired", "admire"),
]
IVERB_BANK = [
    ("slept", "sleep"),
    ("smiled", "smile"),
    ("waited", "wait"),
    ("barked", "bark"),
    ("laughed", "laugh"),
    ("stumbled", "stumble"),
]
ADV_BANK = ["quickly", "quietly", "slowly", "gently", "loudly", "carefully"]
DAY_BANK = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday"]
MONTH_BANK = ["January", "March", "June"]


def pa(i: int) -> None:
    """The ADJ NOUN VERB a ADJ2 OBJ in the PLACE."""
    adj = ADJ_BANK[i % len(ADJ_BANK)]
    noun = NOUN_BANK[i % len(NOUN_BANK)]
    verb, vlemma = VERB_BANK[i % len(VERB_BANK)]
    adj2 = ADJ_BANK[(i + 3) % len(ADJ_BANK)]
    obj = OBJ_BANK[i % len(OBJ_BANK)]
    place = PLACE_BANK[i % len(PLACE_BANK)]
    keep = {1, 3, 4, 5, 7, 11}
    if i % 3 == 0:
        keep.add(2)  # retain the subject adjective
    if i % 3 == 1:
        keep.update({8, 9, 10})  # retain the locative phrase
    add(
        f"pa{i}",
        [
            T("The", "the", "DET", 3, "det"),
            T(adj, adj, "ADJ", 3, "amod", "Degree=Pos"),
            T(noun, noun, "NOUN", 4, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("a", "a", "DET", 7, "det"),
            T(adj2, adj2, "ADJ", 7, "amod", "Degree=Pos"),
            T(obj, obj, "NOUN", 4, "obj", "Number=Sing"),
            T("in", "in", "ADP", 10, "case"),
            T("the", "the", "DET", 10, "det"),
            T(place, place, "NOUN", 4, "obl", "Number=Sing"),
            T(".", ".", "PUNCT", 4, "punct"),
        ],
        f"(S (NP (DT The) (JJ {adj}) (NN {noun})) (VP (VBD {verb}) "
        f"(NP (DT a) (JJ {adj2}) (NN {obj})) (PP (IN in) (NP (DT the) (NN {place})))) (. .))",
        keep,
    )


def pb(i: int) -> None:
    """On DAY, the NOUN VERB the OBJ."""
    day = DAY_BANK[i % len(DAY_BANK)]
    noun = NOUN_BANK[(i + 1) % len(NOUN_BANK)]
    verb, vlemma = VERB_BANK[(i + 2) % len(VERB_BANK)]
    obj = OBJ_BANK[(i + 4) % len(OBJ_BANK)]
    add(
        f"pb{i}",
        [
            T("On", "on", "ADP", 2, "case"),
            T(day, day, "PROPN", 6, "obl"),
            T(",", ",", "PUNCT", 6, "punct"),
            T("the", "the", "DET", 5, "det"),
            T(noun, noun, "NOUN", 6, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("the", "the", "DET", 8, "det"),
            T(obj, obj, "NOUN", 6, "obj", "Number=Sing"),
            T(".", ".", "PUNCT", 6, "punct"),
        ],
        f"(S (PP (IN On) (NP (NNP {day}))) (, ,) (NP (DT the) (NN {noun})) "
        f"(VP (VBD {verb}) (NP (DT the) (NN {obj}))) (. .))",
        {4, 5, 6, 7, 8, 9},
    )


def pc(i: int) -> None:
    """The NOUN VERB ADV."""
    noun = NOUN_BANK[(i + 2) % len(NOUN_BANK)]
    verb, vlemma = IVERB_BANK[i % len(IVERB_BANK)]
    adv = ADV_BANK[i % len(ADV_BANK)]
    add(
        f"pc{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 3, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T(adv, adv, "ADV", 3, "advmod"),
            T(".", ".", "PUNCT", 3, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (VBD {verb}) (ADVP (RB {adv}))) (. .))",
        {1, 2, 3, 5},
    )


def pd(i: int) -> None:
    """The NOUN VERB the OBJ that VERB2 the OBJ2."""
    noun = NOUN_BANK[(i + 3) % len(NOUN_BANK)]
    verb, vlemma = VERB_BANK[(i + 1) % len(VERB_BANK)]
    obj = OBJ_BANK[(i + 2) % len(OBJ_BANK)]
    verb2, v2lemma = VERB_BANK[(i + 5) % len(VERB_BANK)]
    obj2 = OBJ_BANK[(i + 6) % len(OBJ_BANK)]
    keep = {1, 2, 3, 4, 5, 10}
    if i % 3 == 2:
        keep.update({6, 7, 8, 9})  # retain the relative clause
    add(
        f"pd{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 3, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("the", "the", "DET", 5, "det"),
            T(obj, obj, "NOUN", 3, "obj", "Number=Sing"),
            T("that", "that", "PRON", 7, "nsubj"),
            T(verb2, v2lemma, "VERB", 5, "acl:relcl", "Tense=Past"),
            T("the", "the", "DET", 9, "det"),
            T(obj2, obj2, "NOUN", 7, "obj", "Number=Sing"),
            T(".", ".", "PUNCT", 3, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (VBD {verb}) (NP (NP (DT the) (NN {obj})) "
        f"(SBAR (WHNP (WDT that)) (S (VP (VBD {verb2}) (NP (DT the) (NN {obj2}))))))) (. .))",
        keep,
    )


def pe(i: int) -> None:
    """The NOUN agreed to VERB the OBJ."""
    noun = NOUN_BANK[(i + 4) % len(NOUN_BANK)]
    main = ["agreed", "refused", "promised", "declined"][i % 4]
    main_lemma = {"agreed": "agree", "refused": "refuse", "promised": "promise", "declined": "decline"}[main]
    verb2, v2lemma = VERB_BANK[(i + 7) % len(VERB_BANK)]
    v2base = v2lemma
    obj = OBJ_BANK[(i + 1) % len(OBJ_BANK)]
    add(
        f"pe{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 3, "nsubj", "Number=Sing"),
            T(main, main_lemma, "VERB", 0, "root", "Tense=Past"),
            T("to", "to", "PART", 5, "mark"),
            T(v2base, v2lemma, "VERB", 3, "xcomp", "VerbForm=Inf"),
            T("the", "the", "DET", 7, "det"),
            T(obj, obj, "NOUN", 5, "obj", "Number=Sing"),
            T(".", ".", "PUNCT", 3, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (VBD {main}) (S (VP (TO to) (VP (VB {v2base}) "
        f"(NP (DT the) (NN {obj})))))) (. .))",
        {1, 2, 3, 8},
    )


def pf(i: int) -> None:
    """The NOUN VERB because the NOUN2 VERB2."""
    noun = NOUN_BANK[(i + 5) % len(NOUN_BANK)]
    verb, vlemma = IVERB_BANK[(i + 1) % len(IVERB_BANK)]
    noun2 = NOUN_BANK[(i + 8) % len(NOUN_BANK)]
    verb2, v2lemma = IVERB_BANK[(i + 3) % len(IVERB_BANK)]
    add(
        f"pf{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 3, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("because", "because", "SCONJ", 7, "mark"),
            T("the", "the", "DET", 6, "det"),
            T(noun2, noun2, "NOUN", 7, "nsubj", "Number=Sing"),
            T(verb2, v2lemma, "VERB", 3, "advcl", "Tense=Past"),
            T(".", ".", "PUNCT", 3, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (VBD {verb}) (SBAR (IN because) "
        f"(S (NP (DT the) (NN {noun2})) (VP (VBD {verb2}))))) (. .))",
        {1, 2, 3, 8},
    )


def pg(i: int) -> None:
    """On DAY, the NOUN VERB the OBJ that VERB2."""
    day = DAY_BANK[(i + 2) % len(DAY_BANK)]
    noun = NOUN_BANK[(i + 6) % len(NOUN_BANK)]
    verb, vlemma = VERB_BANK[(i + 3) % len(VERB_BANK)]
    obj = OBJ_BANK[(i + 5) % len(OBJ_BANK)]
    verb2, v2lemma = IVERB_BANK[(i + 2) % len(IVERB_BANK)]
    add(
        f"pg{i}",
        [
            T("On", "on", "ADP", 2, "case"),
            T(day, day, "PROPN", 6, "obl"),
            T(",", ",", "PUNCT", 6, "punct"),
            T("the", "the", "DET", 5, "det"),
            T(noun, noun, "NOUN", 6, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("the", "the", "DET", 8, "det"),
            T(obj, obj, "NOUN", 6, "obj", "Number=Sing"),
            T("that", "that", "PRON", 10, "nsubj"),
            T(verb2, v2lemma, "VERB", 8, "acl:relcl", "Tense=Past"),
            T(".", ".", "PUNCT", 6, "punct"),
        ],
        f"(S (PP (IN On) (NP (NNP {day}))) (, ,) (NP (DT the) (NN {noun})) "
        f"(VP (VBD {verb}) (NP (NP (DT the) (NN {obj})) (SBAR (WHNP (WDT that)) "
        f"(S (VP (VBD {verb2})))))) (. .))",
        {4, 5, 6, 7, 8, 11},
    )


def ph(i: int) -> None:
    """The NOUN was VERBed by the NOUN2 ADV."""
    noun = OBJ_BANK[(i + 3) % len(OBJ_BANK)]
    verb, vlemma = VERB_BANK[(i + 6) % len(VERB_BANK)]
    noun2 = NOUN_BANK[(i + 7) % len(NOUN_BANK)]
    adv = ADV_BANK[(i + 2) % len(ADV_BANK)]
    add(
        f"ph{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 4, "nsubj:pass", "Number=Sing"),
            T("was", "be", "AUX", 4, "aux:pass", "Tense=Past"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past|VerbForm=Part"),
            T("by", "by", "ADP", 7, "case"),
            T("the", "the", "DET", 7, "det"),
            T(noun2, noun2, "NOUN", 4, "obl:agent", "Number=Sing"),
            T(adv, adv, "ADV", 4, "advmod"),
            T(".", ".", "PUNCT", 4, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (VBD was) (VP (VBN {verb}) (PP (IN by) "
        f"(NP (DT the) (NN {noun2}))) (ADVP (RB {adv})))) (. .))",
        {1, 2, 3, 4, 5, 6, 7, 9},
    )


def pi(i: int) -> None:
    """The NOUN said that the NOUN2 VERB2.  (complement clause, retained)"""
    noun = NOUN_BANK[(i + 1) % len(NOUN_BANK)]
    noun2 = NOUN_BANK[(i + 4) % len(NOUN_BANK)]
    verb2, v2lemma = IVERB_BANK[(i + 4) % len(IVERB_BANK)]
    add(
        f"pi{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 3, "nsubj", "Number=Sing"),
            T("said", "say", "VERB", 0, "root", "Tense=Past"),
            T("that", "that", "SCONJ", 7, "mark"),
            T("the", "the", "DET", 6, "det"),
            T(noun2, noun2, "NOUN", 7, "nsubj", "Number=Sing"),
            T(verb2, v2lemma, "VERB", 3, "ccomp", "Tense=Past"),
            T(".", ".", "PUNCT", 3, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (VBD said) (SBAR (IN that) "
        f"(S (NP (DT the) (NN {noun2})) (VP (VBD {verb2}))))) (. .))",
        {1, 2, 3, 4, 5, 6, 7, 8},
    )


def pj(i: int) -> None:
    """NOUNS VERB.  (no adjuncts)"""
    noun = ["Dogs", "Birds", "Students"][i % 3]
    lemma = {"Dogs": "dog", "Birds": "bird", "Students": "student"}[noun]
    verb = ["run", "sing", "wait"][i % 3]
    add(
        f"pj{i}",
        [
            T(noun, lemma, "NOUN", 2, "nsubj", "Number=Plur"),
            T(verb, verb, "VERB", 0, "root", "Tense=Pres"),
            T(".", ".", "PUNCT", 2, "punct"),
        ],
        f"(S (NP (NNS {noun})) (VP (VBP {verb})) (. .))",
        {1, 2, 3},
    )


def pk(i: int) -> None:
    """How can I VERB my OBJ in the PLACE?"""
    verb, vlemma = [("clean", "clean"), ("fix", "fix"), ("paint", "paint")][i % 3]
    obj = OBJ_BANK[(i + 7) % len(OBJ_BANK)]
    place = PLACE_BANK[(i + 3) % len(PLACE_BANK)]
    add(
        f"pk{i}",
        [
            T("How", "how", "ADV", 4, "advmod"),
            T("can", "can", "AUX", 4, "aux"),
            T("I", "I", "PRON", 4, "nsubj"),
            T(verb, vlemma, "VERB", 0, "root", "VerbForm=Inf"),
            T("my", "my", "PRON", 6, "nmod:poss"),
            T(obj, obj, "NOUN", 4, "obj", "Number=Sing"),
            T("in", "in", "ADP", 9, "case"),
            T("the", "the", "DET", 9, "det"),
            T(place, place, "NOUN", 4, "obl", "Number=Sing"),
            T("?", "?", "PUNCT", 4, "punct"),
        ],
        f"(SBARQ (WHADVP (WRB How)) (SQ (MD can) (NP (PRP I)) (VP (VB {verb}) "
        f"(NP (PRP$ my) (NN {obj})) (PP (IN in) (NP (DT the) (NN {place}))))) (. ?))",
        {1, 2, 3, 4, 5, 6, 10},
    )


def pl(i: int) -> None:
    """The NOUN, in MONTH, VERB the OBJ.  (double comma absorption)"""
    noun = NOUN_BANK[(i + 8) % len(NOUN_BANK)]
    month = MONTH_BANK[i % len(MONTH_BANK)]
    verb, vlemma = VERB_BANK[(i + 8) % len(VERB_BANK)]
    obj = OBJ_BANK[(i + 9) % len(OBJ_BANK)]
    add(
        f"pl{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 7, "nsubj", "Number=Sing"),
            T(",", ",", "PUNCT", 7, "punct"),
            T("in", "in", "ADP", 5, "case"),
            T(month, month, "PROPN", 7, "obl"),
            T(",", ",", "PUNCT", 7, "punct"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("the", "the", "DET", 9, "det"),
            T(obj, obj, "NOUN", 7, "obj", "Number=Sing"),
            T(".", ".", "PUNCT", 7, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (, ,) (PP (IN in) (NP (NNP {month}))) (, ,) "
        f"(VP (VBD {verb}) (NP (DT the) (NN {obj}))) (. .))",
        {1, 2, 7, 8, 9, 10},
    )


def pm(i: int) -> None:
    """On DAY, ADV, the NOUN VERB.  (two sentence-initial slots)"""
    day = DAY_BANK[(i + 4) % len(DAY_BANK)]
    adv = ADV_BANK[(i + 4) % len(ADV_BANK)]
    noun = NOUN_BANK[(i + 9) % len(NOUN_BANK)]
    verb, vlemma = IVERB_BANK[(i + 5) % len(IVERB_BANK)]
    add(
        f"pm{i}",
        [
            T("On", "on", "ADP", 2, "case"),
            T(day, day, "PROPN", 8, "obl"),
            T(",", ",", "PUNCT", 8, "punct"),
            T(adv, adv, "ADV", 8, "advmod"),
            T(",", ",", "PUNCT", 8, "punct"),
            T("the", "the", "DET", 7, "det"),
            T(noun, noun, "NOUN", 8, "nsubj", "Number=Sing"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T(".", ".", "PUNCT", 8, "punct"),
        ],
        f"(S (PP (IN On) (NP (NNP {day}))) (, ,) (ADVP (RB {adv})) (, ,) "
        f"(NP (DT the) (NN {noun})) (VP (VBD {verb})) (. .))",
        {6, 7, 8, 9},
    )


def pn(i: int) -> None:
    """The NOUN ADV VERB the OBJ."""
    noun = NOUN_BANK[(i + 2) % len(NOUN_BANK)]
    adv = ADV_BANK[(i + 1) % len(ADV_BANK)]
    verb, vlemma = VERB_BANK[(i + 4) % len(VERB_BANK)]
    obj = OBJ_BANK[(i + 3) % len(OBJ_BANK)]
    add(
        f"pn{i}",
        [
            T("The", "the", "DET", 2, "det"),
            T(noun, noun, "NOUN", 4, "nsubj", "Number=Sing"),
            T(adv, adv, "ADV", 4, "advmod"),
            T(verb, vlemma, "VERB", 0, "root", "Tense=Past"),
            T("the", "the", "DET", 6, "det"),
            T(obj, obj, "NOUN", 4, "obj", "Number=Sing"),
            T(".", ".", "PUNCT", 4, "punct"),
        ],
        f"(S (NP (DT The) (NN {noun})) (VP (ADVP (RB {adv})) (VBD {verb}) "
        f"(NP (DT the) (NN {obj}))) (. .))",
        {1, 2, 4, 5, 6, 7},
    )


for i in range(8):
    pa(i)
for i in range(6):
    pb(i)
for i in range(6):
    pc(i)
for i in range(5):
    pd(i)
for i in range(4):
    pe(i)
for i in range(4):
    pf(i)
for i in range(4):
    pg(i)
for i in range(4):
    ph(i)
for i in range(3):
    pi(i)
for i in range(3):
    pj(i)
for i in range(3):
    pk(i)
for i in range(3):
    pl(i)
for i in range(3):
    pm(i)
for i in range(4):
    pn(i)


# ---------------------------------------------------------------------------
# Lexical resources

LEXICON: dict[tuple[str, str], list[str]] = {
    ("dog", "NOUN"): ["hound", "puppy"],
    ("cat", "NOUN"): ["kitten"],
    ("farmer", "NOUN"): ["grower"],
    ("teacher", "NOUN"): ["instructor", "educator"],
    ("student", "NOUN"): ["pupil", "learner"],
    ("bird", "NOUN"): ["fowl"],
    ("neighbor", "NOUN"): ["resident"],
    ("letter", "NOUN"): ["note"],
    ("song", "NOUN"): ["tune", "melody"],
    ("ball", "NOUN"): ["sphere"],
    ("wagon", "NOUN"): ["cart"],
    ("basket", "NOUN"): ["hamper"],
    ("painting", "NOUN"): ["picture"],
    ("report", "NOUN"): ["summary"],
    ("fence", "NOUN"): ["railing"],
    ("fire", "NOUN"): ["blaze", "conflagration"],
    ("way", "NOUN"): ["manner"],
    ("kitchen", "NOUN"): ["galley"],
    ("movie", "NOUN"): ["film"],
    ("attempt", "NOUN"): ["effort"],
    ("cabinet", "NOUN"): ["council"],
    ("member", "NOUN"): ["associate"],
    ("desk", "NOUN"): ["table"],
    ("chase", "VERB"): ["pursue"],
    ("watch", "VERB"): ["observe"],
    ("paint", "VERB"): ["decorate"],
    ("visit", "VERB"): ["tour"],
    ("follow", "VERB"): ["trail"],
    ("carry", "VERB"): ["haul"],
    ("push", "VERB"): ["shove"],
    ("clean", "VERB"): ["scrub"],
    ("fix", "VERB"): ["repair", "mend"],
    ("admire", "VERB"): ["praise"],
    ("start", "VERB"): ["begin", "commence"],
    ("purge", "VERB"): ["oust"],
    ("sleep", "VERB"): ["doze"],
    ("smile", "VERB"): ["grin"],
    ("wait", "VERB"): ["linger"],
    ("bark", "VERB"): ["yelp"],
    ("laugh", "VERB"): ["chuckle"],
    ("stumble", "VERB"): ["trip"],
    ("old", "ADJ"): ["ancient", "aged"],
    ("young", "ADJ"): ["youthful"],
    ("quick", "ADJ"): ["fast", "rapid"],
    ("quiet", "ADJ"): ["silent", "calm"],
    ("bright", "ADJ"): ["brilliant"],
    ("small", "ADJ"): ["little", "tiny"],
    ("happy", "ADJ"): ["glad", "cheerful"],
    ("tired", "ADJ"): ["weary"],
    ("clever", "ADJ"): ["smart"],
    ("gentle", "ADJ"): ["mild"],
    ("brave", "ADJ"): ["bold", "courageous"],
    ("pretty", "ADJ"): ["lovely", "beautiful"],
    ("quickly", "ADV"): ["rapidly", "swiftly"],
    ("quietly", "ADV"): ["silently", "softly"],
    ("slowly", "ADV"): ["gradually"],
    ("gently", "ADV"): ["tenderly"],
    ("loudly", "ADV"): ["noisily"],
    ("carefully", "ADV"): ["cautiously"],
}


def write_corpus() -> None:
    corpus_dir = FIX / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    conllu_lines = []
    tree_lines = []
    label_lines = []
    for s in SENTS:
        conllu_lines.append(f"# sent_id = {s.id}")
        for n, t in enumerate(s.tokens, start=1):
            conllu_lines.append(
                f"{n}\t{t.form}\t{t.lemma}\t{t.upos}\t_\t{t.feats}\t{t.head}\t{t.deprel}\t_\t_"
            )
        conllu_lines.append("")
        tree_lines.append(f"{s.id}\t{s.tree}")
        labels = [1 if n in s.keep else 0 for n in range(1, len(s.tokens) + 1)]
        label_lines.append(json.dumps({"id": s.id, "labels": labels}))
    (corpus_dir / "sentences.conllu").write_text("\n".join(conllu_lines) + "\n")
    (corpus_dir / "trees.ptb").write_text("\n".join(tree_lines) + "\n")
    (corpus_dir / "labels.jsonl").write_text("\n".join(label_lines) + "\n")


def write_resources() -> None:
    res = FIX / "resources"
    res.mkdir(parents=True, exist_ok=True)
    lex_lines = [f"{lemma}\t{upos}\t{','.join(syns)}" for (lemma, upos), syns in LEXICON.items()]
    (res / "lexicon.tsv").write_text("\n".join(lex_lines) + "\n")

    rng = np.random.default_rng(20240511)
    vectors: dict[str, np.ndarray] = {}

    def base_vec() -> np.ndarray:
        v = rng.normal(size=16)
        return v / np.linalg.norm(v)

    for (lemma, _upos), syns in LEXICON.items():
        if lemma not in vectors:
            vectors[lemma] = base_vec()
        anchor = vectors[lemma]
        for rank, syn in enumerate(syns):
            if syn not in vectors:
                noise = rng.normal(size=16) * (0.25 + 0.15 * rank)
                v = anchor + noise
                vectors[syn] = v / np.linalg.norm(v)
    # inflected surface forms share the lemma vector direction with tiny noise
    extra = [
        "blazes",
        "manner",
        "pursued",
        "observed",
        "decorated",
        "toured",
        "trailed",
        "hauled",
        "shoved",
        "scrubbed",
        "repaired",
        "mended",
        "praised",
        "began",
        "commenced",
        "ousted",
        "dozed",
        "grinned",
        "lingered",
        "yelped",
        "chuckled",
        "tripped",
        "hounds",
        "films",
        "tv",
        "horror",
        "new",
        "garage",
    ]
    for word in extra:
        if word not in vectors:
            vectors[word] = base_vec()
    emb_lines = [
        word + " " + " ".join(f"{x:.6f}" for x in vec) for word, vec in sorted(vectors.items())
    ]
    (res / "embeddings.txt").write_text("\n".join(emb_lines) + "\n")

    (res / "embeddings_2d.txt").write_text("east 1 0\nnorth 0 1\nslant 1 1\n")

    stopwords = [
        "a", "an", "the", "this", "that", "these", "those", "she", "he", "it", "i",
        "we", "they", "you", "on", "in", "at", "of", "to", "by", "for", "with",
        "and", "or", "but", "as", "is", "was", "are", "were", "be", "been", "did",
        "do", "does", "can", "could", "will", "would", "my", "his", "her", "its",
        "their", "not", "no", "why", "how", "what", "when", "where", "who",
    ]
    (res / "stopwords.txt").write_text("\n".join(stopwords) + "\n")


def write_seeds(corpus) -> None:
    seeds = FIX / "seeds"
    seeds.mkdir(parents=True, exist_ok=True)

    way_text = corpus["way1"].text
    sol_text = corpus["sol1"].text
    context1 = f"{way_text} {sol_text}"
    answer = "instance"
    mrc = {
        "version": "fixture-1",
        "data": [
            {
                "title": "complexity",
                "paragraphs": [
                    {
                        "context": context1,
                        "sentences": ["way1", "sol1"],
                        "qas": [
                            {
                                "id": "q-instance",
                                "question": "What is another name for any given measure of input associated with a problem?",
                                "answers": [
                                    {"text": answer, "answer_start": context1.find(answer)}
                                ],
                            }
                        ],
                    }
                ],
            },
            {
                "title": "village",
                "paragraphs": [
                    {
                        "context": " ".join(corpus[sid].text for sid in ["pb0", "pa1", "pc0", "pd0", "pn0"]),
                        "sentences": ["pb0", "pa1", "pc0", "pd0", "pn0"],
                        "qas": [
                            {
                                "id": "q-village",
                                "question": f"Who {corpus['pb0'].tokens[5].form} the {corpus['pb0'].tokens[7].form}?",
                                "answers": [{"text": corpus["pb0"].tokens[4].form}],
                            }
                        ],
                    }
                ],
            },
            {
                "title": "cartesian",
                "paragraphs": [
                    {
                        # four sentences whose trees each yield >= 4 leaves
                        "context": " ".join(corpus[sid].text for sid in ["pa1", "pa2", "pa4", "pa5"]),
                        "sentences": ["pa1", "pa2", "pa4", "pa5"],
                        "qas": [
                            {
                                "id": "q-cartesian",
                                "question": "Who appears in this passage?",
                                "answers": [{"text": corpus["pa2"].tokens[2].form}],
                            }
                        ],
                    }
                ],
            },
        ],
    }
    (seeds / "mrc.json").write_text(json.dumps(mrc, indent=2) + "\n")

    sa_ids = ["tv1", "attempt1", "pc0", "pc1", "pc2", "pn1"]
    (seeds / "sa.tsv").write_text(
        "\n".join(f"{sid}\tpositive" if n % 2 == 0 else f"{sid}\tnegative" for n, sid in enumerate(sa_ids))
        + "\n"
    )

    ssm_rows = [("trump1", "pk0", 0), ("pk1", "pk2", 0), ("pd1", "pg1", 0)]
    (seeds / "ssm.tsv").write_text("\n".join(f"{a}\t{b}\t{d}" for a, b, d in ssm_rows) + "\n")

    e2e_ids = [s.id for s in SENTS if s.id.startswith(("pa", "pb", "pc", "pd"))][:20]
    rows = [f"{e2e_ids[i]}\t{e2e_ids[(i + 1) % len(e2e_ids)]}\t0" for i in range(20)]
    (seeds / "ssm_e2e.tsv").write_text("\n".join(rows) + "\n")


def validate() -> None:
    corpus = build_corpus(
        FIX / "corpus" / "sentences.conllu",
        FIX / "corpus" / "trees.ptb",
        FIX / "corpus" / "labels.jsonl",
    )
    assert len(corpus) == len(SENTS), (len(corpus), len(SENTS))
    failures = []
    for sentence in corpus:
        template = disassemble(sentence)
        if template.degenerate:
            failures.append((sentence.id, "degenerate"))
            continue
        rebuilt = render_all_originals(template)
        if rebuilt != sentence.text:
            failures.append((sentence.id, f"{rebuilt!r} != {sentence.text!r}"))
    if failures:
        for sid, why in failures:
            print(f"ROUND-TRIP FAILURE {sid}: {why}")
        raise SystemExit(1)

    from sentasm.disassembly import render_base, render_template

    fire = disassemble(corpus["fire1"])
    assert render_template(fire) == "[1], Downtown Jacksonville was ravaged by a fire [2].", render_template(fire)
    assert render_base(fire) == "Downtown Jacksonville was ravaged by a fire.", render_base(fire)
    assert [s.text for s in fire.slots] == ["On May 3", "that started as a kitchen fire"]
    print(f"validated {len(corpus)} sentences (round trip + worked example)")


def main() -> None:
    write_corpus()
    write_resources()
    corpus = build_corpus(
        FIX / "corpus" / "sentences.conllu",
        FIX / "corpus" / "trees.ptb",
        FIX / "corpus" / "labels.jsonl",
    )
    write_seeds(corpus)
    validate()


if __name__ == "__main__":
    main()
