"""HTTP services speaking the engine's fill-mask and model wire protocols.

The heuristic backends are deliberately small: a frequency-list fill-mask, a
polarity-lexicon sentiment scorer, an overlap-based reader, and a Jaccard
similarity matcher.  Real models can be plugged in by name; a load failure is
a startup error, never a silent fallback.
"""

from __future__ import annotations

import math
import re
from typing import Callable

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .analyze import tokenize

_WORD_RE = re.compile(r"[a-z]+")


class ModelLoadError(RuntimeError):
    pass


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": message})


# ---------------------------------------------------------------------------
# Fill-mask

_COMMON_WORDS = [
    "new", "good", "small", "large", "great", "old", "young", "local", "public",
    "special", "strange", "famous", "quiet", "major", "recent", "gentle",
]


def heuristic_fill_mask(text: str, mask_token: str, top_k: int) -> list[tuple[str, float]]:
    context = {w.lower() for w in tokenize(text.replace(mask_token, " "))}
    candidates = [w for w in _COMMON_WORDS if w not in context][:top_k]
    total = sum(1.0 / (rank + 1) for rank in range(len(candidates)))
    return [
        (word, round((1.0 / (rank + 1)) / total, 6)) if total else (word, 0.0)
        for rank, word in enumerate(candidates)
    ]


def load_fill_mask(model: str) -> Callable[[str, str, int], list[tuple[str, float]]]:
    if model == "heuristic":
        return heuristic_fill_mask
    try:
        from transformers import pipeline

        pipe = pipeline("fill-mask", model=model)
    except Exception as exc:  # import, download, or weight failure
        raise ModelLoadError(f"cannot load fill-mask model {model!r}: {exc}") from exc

    def run(text: str, mask_token: str, top_k: int) -> list[tuple[str, float]]:
        canonical = text.replace(mask_token, pipe.tokenizer.mask_token)
        out = pipe(canonical, top_k=top_k)
        return [(item["token_str"].strip(), float(item["score"])) for item in out]

    return run


def fill_mask_app(model: str = "heuristic") -> FastAPI:
    backend = load_fill_mask(model)
    app = FastAPI(title="fill-mask sidecar")

    @app.post("/fill-mask")
    async def fill_mask(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return _bad_request("body is not JSON")
        text = payload.get("text")
        mask_token = payload.get("mask_token")
        top_k = payload.get("top_k")
        if not isinstance(text, str) or not isinstance(mask_token, str) or not isinstance(top_k, int):
            return _bad_request("expected {text: str, mask_token: str, top_k: int}")
        if top_k < 1:
            return _bad_request("top_k must be >= 1")
        if mask_token not in text:
            return _bad_request("mask_token does not occur in text")
        candidates = backend(text, mask_token, top_k)
        return {"candidates": [{"token": t, "score": s} for t, s in candidates]}

    return app


# ---------------------------------------------------------------------------
# Task models

_POSITIVE = {
    "good", "great", "excellent", "brave", "pretty", "lovely", "happy", "glad",
    "bright", "cheerful", "wonderful", "best", "like", "love", "nice", "fine",
}
_NEGATIVE = {
    "bad", "terrible", "awful", "sad", "ugly", "angry", "worse", "worst",
    "hate", "boring", "tired", "moldy", "trite", "wrong", "poor",
}


def sa_predict(text: str) -> dict:
    words = [w.lower() for w in tokenize(text)]
    score = sum(w in _POSITIVE for w in words) - sum(w in _NEGATIVE for w in words)
    p_pos = 1.0 / (1.0 + math.exp(-score))
    probs = {"positive": p_pos, "negative": 1.0 - p_pos}
    return {"label": max(probs, key=lambda k: probs[k]), "probs": probs}


def mrc_predict(paragraph: str, question: str) -> dict:
    q_words = set(_WORD_RE.findall(question.lower()))
    sentences = re.split(r"(?<=[.!?])\s+", paragraph) or [paragraph]
    best = max(sentences, key=lambda s: len(q_words & set(_WORD_RE.findall(s.lower()))))
    content = [w for w in _WORD_RE.findall(best.lower()) if w not in q_words and len(w) > 2]
    return {"answer": content[0] if content else best.strip()}


def ssm_predict(text_a: str, text_b: str) -> dict:
    a = {w.lower() for w in tokenize(text_a)}
    b = {w.lower() for w in tokenize(text_b)}
    union = a | b
    jaccard = (len(a & b) / len(union)) if union else 1.0
    return {"duplicate": 1 if jaccard >= 0.8 else 0}


def model_app(task: str, model: str = "heuristic") -> FastAPI:
    if task not in ("mrc", "sa", "ssm"):
        raise ModelLoadError(f"unknown task {task!r}")
    if model != "heuristic":
        raise ModelLoadError(f"no loadable model {model!r} for task {task!r}")
    app = FastAPI(title=f"{task} sidecar")

    @app.post("/predict")
    async def predict(request: Request):
        try:
            payload = await request.json()
        except Exception:
            return _bad_request("body is not JSON")
        if task == "mrc":
            if not isinstance(payload.get("paragraph"), str) or not isinstance(payload.get("question"), str):
                return _bad_request("expected {paragraph: str, question: str}")
            return mrc_predict(payload["paragraph"], payload["question"])
        if task == "sa":
            if not isinstance(payload.get("text"), str):
                return _bad_request("expected {text: str}")
            return sa_predict(payload["text"])
        if not isinstance(payload.get("text_a"), str) or not isinstance(payload.get("text_b"), str):
            return _bad_request("expected {text_a: str, text_b: str}")
        return ssm_predict(payload["text_a"], payload["text_b"])

    return app
