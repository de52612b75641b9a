"""JSON Schemas for the JSONL artifacts and wire payloads.

Shared by the test suite and by protocol-conformance checks against external
services; every record the pipeline writes validates against one of these.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import jsonschema

_SLOT = {
    "type": "object",
    "required": ["slot", "text", "kind", "weight", "anchor"],
    "properties": {
        "slot": {"type": "integer", "minimum": 1},
        "text": {"type": "string"},
        "kind": {"enum": ["ADJ", "ADV", "PP", "VP", "CLAUSE"]},
        "weight": {"type": "integer", "minimum": 0},
        "anchor": {"type": "integer", "minimum": -1},
    },
}

TEMPLATE_RECORD = {
    "type": "object",
    "required": ["id", "base", "template", "degenerate", "slots"],
    "properties": {
        "id": {"type": "string"},
        "base": {"type": "string"},
        "template": {"type": "string"},
        "degenerate": {"type": "boolean"},
        "slots": {"type": "array", "items": _SLOT},
    },
}

TREE_NODE_RECORD = {
    "type": "object",
    "required": ["tree_id", "node_id", "level", "parent", "text", "score", "variants"],
    "properties": {
        "tree_id": {"type": "string"},
        "node_id": {"type": "string"},
        "level": {"type": "integer", "minimum": 0},
        "parent": {"type": ["string", "null"]},
        "text": {"type": "string"},
        "score": {"type": "number"},
        "variants": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["slot", "word", "provenance", "similarity"],
                "properties": {
                    "slot": {"type": "integer", "minimum": 1},
                    "word": {"type": ["string", "null"]},
                    "provenance": {"enum": ["original", "synonym", "mlm"]},
                    "similarity": {"type": "number", "minimum": -1.0, "maximum": 1.0},
                },
            },
        },
    },
}

MRC_TEST_RECORD = {
    "type": "object",
    "required": ["id", "task", "paragraph", "question", "gold_answers"],
    "properties": {
        "id": {"type": "string"},
        "task": {"const": "mrc"},
        "paragraph": {"type": "string"},
        "question": {"type": "string"},
        "gold_answers": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "seed_id": {"type": "string"},
        "leaf_ids": {"type": "array", "items": {"type": "string"}},
    },
}

SA_TEST_RECORD = {
    "type": "object",
    "required": ["id", "task", "parent_text", "child_text", "adjunct_text", "slot"],
    "properties": {
        "id": {"type": "string"},
        "task": {"const": "sa"},
        "parent_text": {"type": "string"},
        "child_text": {"type": "string"},
        "adjunct_text": {"type": "string"},
        "slot": {"type": "integer", "minimum": 1},
        "tree_id": {"type": "string"},
        "child_id": {"type": "string"},
    },
}

SSM_TEST_RECORD = {
    "type": "object",
    "required": ["id", "task", "text_a", "text_b", "level_a", "level_b"],
    "properties": {
        "id": {"type": "string"},
        "task": {"const": "ssm"},
        "text_a": {"type": "string"},
        "text_b": {"type": "string"},
        "level_a": {"type": "integer", "minimum": 0},
        "level_b": {"type": "integer", "minimum": 1},
        "tree_id": {"type": "string"},
        "node_a": {"type": "string"},
        "node_b": {"type": "string"},
    },
}

BUG_REPORT_RECORD = {
    "type": "object",
    "required": ["id", "task", "mr", "inputs", "model_outputs", "evidence", "verdict"],
    "properties": {
        "id": {"type": "string"},
        "task": {"enum": ["mrc", "sa", "ssm"]},
        "mr": {"enum": ["SemInv", "DirExp", "SemVar"]},
        "inputs": {"type": "object"},
        "model_outputs": {"type": "object"},
        "evidence": {"type": "object"},
        "verdict": {"enum": ["unlabeled", "TP", "FP"]},
    },
}

FILL_MASK_REQUEST = {
    "type": "object",
    "required": ["text", "mask_token", "top_k"],
    "properties": {
        "text": {"type": "string"},
        "mask_token": {"type": "string"},
        "top_k": {"type": "integer", "minimum": 1},
    },
}

FILL_MASK_RESPONSE = {
    "type": "object",
    "required": ["candidates"],
    "properties": {
        "candidates": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["token", "score"],
                "properties": {
                    "token": {"type": "string"},
                    "score": {"type": "number", "minimum": 0.0, "maximum": 1.0},
                },
            },
        }
    },
}

MRC_REQUEST = {
    "type": "object",
    "required": ["paragraph", "question"],
    "properties": {"paragraph": {"type": "string"}, "question": {"type": "string"}},
}
MRC_RESPONSE = {
    "type": "object",
    "required": ["answer"],
    "properties": {"answer": {"type": "string"}},
}

SA_REQUEST = {
    "type": "object",
    "required": ["text"],
    "properties": {"text": {"type": "string"}},
}
SA_RESPONSE = {
    "type": "object",
    "required": ["label", "probs"],
    "properties": {
        "label": {"enum": ["positive", "negative"]},
        "probs": {
            "type": "object",
            "required": ["positive", "negative"],
            "properties": {
                "positive": {"type": "number", "minimum": 0.0, "maximum": 1.0},
                "negative": {"type": "number", "minimum": 0.0, "maximum": 1.0},
            },
        },
    },
}

SSM_REQUEST = {
    "type": "object",
    "required": ["text_a", "text_b"],
    "properties": {"text_a": {"type": "string"}, "text_b": {"type": "string"}},
}
SSM_RESPONSE = {
    "type": "object",
    "required": ["duplicate"],
    "properties": {"duplicate": {"enum": [0, 1]}},
}

TEST_RECORD_FOR_TASK = {
    "mrc": MRC_TEST_RECORD,
    "sa": SA_TEST_RECORD,
    "ssm": SSM_TEST_RECORD,
}


def validate(instance: dict, schema: dict) -> None:
    jsonschema.validate(instance=instance, schema=schema)


def validate_jsonl(path: Union[str, Path], schema: dict) -> int:
    """Validate every record of a JSONL file; returns the record count."""
    count = 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            validate(json.loads(line), schema)
            count += 1
    return count
