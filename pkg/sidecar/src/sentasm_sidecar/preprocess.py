"""Convert raw sentences into the three parse-artifact files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .analyze import analyze


class PreprocessError(ValueError):
    pass


@dataclass
class PreprocessJob:
    input_path: Union[str, Path]
    conllu_path: Union[str, Path]
    trees_path: Union[str, Path]
    labels_path: Union[str, Path]


def read_sentences(path: Union[str, Path]) -> list[tuple[str, str]]:
    """Read ``id<TAB>sentence`` rows; ids must be unique."""
    rows: list[tuple[str, str]] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise PreprocessError(f"line {lineno}: expected 'id<TAB>sentence'")
            sent_id, text = line.split("\t", 1)
            if sent_id in seen:
                raise PreprocessError(f"line {lineno}: id collision for {sent_id!r}")
            seen.add(sent_id)
            rows.append((sent_id, text))
    return rows


def preprocess(job: PreprocessJob) -> int:
    """Emit CoNLL-U, bracket trees, and compression labels; returns the count."""
    rows = read_sentences(job.input_path)
    conllu_blocks: list[str] = []
    tree_lines: list[str] = []
    label_lines: list[str] = []
    for sent_id, text in rows:
        result = analyze(text)
        if not result.words:
            continue
        lines = [f"# sent_id = {sent_id}"]
        for n, w in enumerate(result.words, start=1):
            lines.append(
                "\t".join(
                    [str(n), w.form, w.lemma, w.upos, "_", "_", str(w.head), w.deprel, "_", "_"]
                )
            )
        conllu_blocks.append("\n".join(lines))
        tree_lines.append(f"{sent_id}\t{result.tree}")
        label_lines.append(json.dumps({"id": sent_id, "labels": result.labels}))
    Path(job.conllu_path).write_text("\n\n".join(conllu_blocks) + ("\n" if conllu_blocks else ""))
    Path(job.trees_path).write_text("\n".join(tree_lines) + ("\n" if tree_lines else ""))
    Path(job.labels_path).write_text("\n".join(label_lines) + ("\n" if label_lines else ""))
    return len(conllu_blocks)
