"""Detokenization helpers shared by template rendering and assembly."""

from __future__ import annotations

from typing import Iterable

# Tokens that attach to the preceding word without a space.
_NO_SPACE_BEFORE = {",", ".", ";", ":", "!", "?", ")", "]", "%", "...", "''"}
# Tokens that attach to the following word without a space.
_NO_SPACE_AFTER = {"(", "[", "``", "$"}

_CLITICS = ("'s", "'re", "'ve", "'ll", "'d", "'m", "n't")


def _glues_left(tok: str) -> bool:
    return tok in _NO_SPACE_BEFORE or tok.startswith(_CLITICS)


def detokenize(forms: Iterable[str]) -> str:
    """Join token surface forms with conventional English spacing."""
    out: list[str] = []
    glue_next = False
    for form in forms:
        if not out or glue_next or _glues_left(form):
            out.append(form)
        else:
            out.append(" " + form)
        glue_next = form in _NO_SPACE_AFTER
    return "".join(out)


def capitalize_first(text: str) -> str:
    """Upper-case the first alphabetic character of ``text``."""
    for i, ch in enumerate(text):
        if ch.isalpha():
            return text[:i] + ch.upper() + text[i + 1 :]
    return text


def token_char_spans(forms: Iterable[str]) -> list[tuple[int, int]]:
    """Character span of each token in ``detokenize(forms)``."""
    spans: list[tuple[int, int]] = []
    length = 0
    glue_next = False
    for i, form in enumerate(forms):
        start = length if (i == 0 or glue_next or _glues_left(form)) else length + 1
        spans.append((start, start + len(form)))
        length = start + len(form)
        glue_next = form in _NO_SPACE_AFTER
    return spans
