"""Execute generated suites against model endpoints and report MR violations.

Each task speaks a small JSON-over-HTTP protocol.  A violation produces a
BugReport; after human verdicts are attached, precision is the fraction of
reports confirmed as true positives.  Transport failures never count as bugs,
they are tallied as unexecuted tests.
"""

from __future__ import annotations

import csv
import json
import re
import string
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import requests

from .ingest import MRC, SA, SSM, LoadError
from .metamorphic import GeneratedTest, MrcTest, SaTest, SsmTest

SEM_INV, DIR_EXP, SEM_VAR = "SemInv", "DirExp", "SemVar"
_MR_FOR_TASK = {MRC: SEM_INV, SA: DIR_EXP, SSM: SEM_VAR}

UNLABELED, TP, FP = "unlabeled", "TP", "FP"


class TransportError(RuntimeError):
    """A model request failed after retries."""

    def __init__(self, message: str, connection_refused: bool = False):
        super().__init__(message)
        self.connection_refused = connection_refused


class ProtocolError(TransportError):
    """The model answered, but off-protocol."""


class EndpointUnreachable(RuntimeError):
    pass


@dataclass
class ModelEndpoint:
    task: str
    base_url: str
    timeout: float = 10.0
    max_in_flight: int = 4
    retries: int = 0
    backoff: float = 0.1


@dataclass(frozen=True)
class SaPrediction:
    label: str
    probs: dict[str, float]


@dataclass
class BugReport:
    id: str
    task: str
    mr: str
    inputs: dict
    model_outputs: dict
    evidence: dict
    verdict: str = UNLABELED


@dataclass
class RunStats:
    executed: int = 0
    unexecuted: int = 0
    violations: int = 0
    wall_time: float = 0.0


@dataclass
class PrecisionResult:
    total_reports: int
    true_positives: int
    precision: Optional[float]


_ARTICLE_RE = re.compile(r"\b(a|an|the)\b")
_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


def normalize_answer(text: str) -> str:
    """SQuAD-style normalization: case, articles, punctuation, whitespace."""
    text = text.lower()
    text = _ARTICLE_RE.sub(" ", text)
    text = text.translate(_PUNCT_TABLE)
    return " ".join(text.split())


class ModelClient:
    def __init__(self, endpoint: ModelEndpoint, session: Optional[requests.Session] = None):
        self.endpoint = endpoint
        self.session = session or requests.Session()

    def predict(self, payload: dict) -> dict:
        url = f"{self.endpoint.base_url.rstrip('/')}/predict"
        last: Optional[Exception] = None
        refused = False
        for attempt in range(self.endpoint.retries + 1):
            try:
                resp = self.session.post(url, json=payload, timeout=self.endpoint.timeout)
                resp.raise_for_status()
                return resp.json()
            except requests.ConnectionError as exc:
                last, refused = exc, True
            except (requests.RequestException, ValueError) as exc:
                last, refused = exc, False
            if attempt < self.endpoint.retries:
                time.sleep(self.endpoint.backoff * (attempt + 1))
        raise TransportError(f"model request failed: {last}", connection_refused=refused)

    def sa_predict(self, text: str) -> SaPrediction:
        body = self.predict({"text": text})
        try:
            label = body["label"]
            probs = {k: float(v) for k, v in body["probs"].items()}
        except (KeyError, TypeError, ValueError):
            raise ProtocolError(f"malformed SA response: {body!r}") from None
        if label not in ("positive", "negative") or set(probs) != {"positive", "negative"}:
            raise ProtocolError(f"SA response off-protocol: {body!r}")
        if abs(sum(probs.values()) - 1.0) > 1e-6:
            raise ProtocolError(f"SA probabilities do not sum to 1: {probs!r}")
        if max(probs, key=lambda k: probs[k]) != label:
            raise ProtocolError(f"SA label disagrees with argmax: {body!r}")
        return SaPrediction(label=label, probs=probs)


def _opposite(label: str) -> str:
    return "negative" if label == "positive" else "positive"


def run_mrc(test: MrcTest, client: ModelClient) -> Optional[BugReport]:
    """Semantics invariance: the answer must still match a gold answer."""
    body = client.predict({"paragraph": test.paragraph, "question": test.question})
    if "answer" not in body or not isinstance(body["answer"], str):
        raise ProtocolError(f"malformed MRC response: {body!r}")
    prediction = body["answer"]
    normalized = normalize_answer(prediction)
    golds = [normalize_answer(g) for g in test.gold_answers]
    if normalized in golds:
        return None
    return BugReport(
        id=test.id,
        task=MRC,
        mr=SEM_INV,
        inputs={"paragraph": test.paragraph, "question": test.question},
        model_outputs={"answer": prediction},
        evidence={"prediction": prediction, "gold_answers": list(test.gold_answers)},
    )


def run_sa(
    test: SaTest,
    client: ModelClient,
    threshold: float = 0.1,
    cache: Optional[dict[str, SaPrediction]] = None,
) -> Optional[BugReport]:
    """Directional expectation: inserting a polar component must not raise the
    opposite polarity's probability by more than the change threshold."""
    if not test.adjunct_text.strip() or test.child_text == test.parent_text:
        return None

    def lookup(text: str) -> SaPrediction:
        if cache is not None and text in cache:
            return cache[text]
        pred = client.sa_predict(text)
        if cache is not None:
            cache[text] = pred
        return pred

    component = lookup(test.adjunct_text)
    parent = lookup(test.parent_text)
    child = lookup(test.child_text)
    opposite = _opposite(component.label)
    delta = child.probs[opposite] - parent.probs[opposite]
    if delta <= threshold:
        return None
    return BugReport(
        id=test.id,
        task=SA,
        mr=DIR_EXP,
        inputs={
            "parent_text": test.parent_text,
            "child_text": test.child_text,
            "adjunct_text": test.adjunct_text,
        },
        model_outputs={
            "component_label": component.label,
            "parent_probs": parent.probs,
            "child_probs": child.probs,
        },
        evidence={
            "component_label": component.label,
            "opposite_label": opposite,
            "delta": delta,
            "threshold": threshold,
        },
    )


def run_ssm(test: SsmTest, client: ModelClient) -> Optional[BugReport]:
    """Semantics variance: a derivation pair must not be judged duplicate."""
    if test.text_a == test.text_b:
        raise ValueError(f"test {test.id}: identical texts violate the pair invariant")
    body = client.predict({"text_a": test.text_a, "text_b": test.text_b})
    if body.get("duplicate") not in (0, 1):
        raise ProtocolError(f"malformed SSM response: {body!r}")
    if body["duplicate"] == 0:
        return None
    return BugReport(
        id=test.id,
        task=SSM,
        mr=SEM_VAR,
        inputs={"text_a": test.text_a, "text_b": test.text_b},
        model_outputs={"duplicate": 1},
        evidence={"text_a": test.text_a, "text_b": test.text_b, "duplicate": 1},
    )


def run_mrc_pairwise(tests: Sequence[MrcTest], client: ModelClient) -> list[BugReport]:
    """Answer-consistency mode for paragraphs lacking gold answers.

    Reconstructions of one seed must agree with each other; a test whose
    normalized answer departs from its group's consensus is a violation.
    """
    groups: dict[str, list[tuple[MrcTest, str]]] = {}
    for test in sorted(tests, key=lambda t: t.id):
        body = client.predict({"paragraph": test.paragraph, "question": test.question})
        if "answer" not in body or not isinstance(body["answer"], str):
            raise ProtocolError(f"malformed MRC response: {body!r}")
        groups.setdefault(test.seed_id, []).append((test, body["answer"]))
    reports: list[BugReport] = []
    for seed_id, members in groups.items():
        counts: dict[str, int] = {}
        for _test, answer in members:
            key = normalize_answer(answer)
            counts[key] = counts.get(key, 0) + 1
        consensus = min(counts, key=lambda k: (-counts[k], k))
        for test, answer in members:
            if normalize_answer(answer) == consensus:
                continue
            reports.append(
                BugReport(
                    id=test.id,
                    task=MRC,
                    mr=SEM_INV,
                    inputs={"paragraph": test.paragraph, "question": test.question},
                    model_outputs={"answer": answer},
                    evidence={
                        "prediction": answer,
                        "consensus": consensus,
                        "seed_id": seed_id,
                    },
                )
            )
    return reports


def _run_one(
    test: GeneratedTest,
    client: ModelClient,
    threshold: float,
    cache: Optional[dict[str, SaPrediction]],
) -> Optional[BugReport]:
    if isinstance(test, MrcTest):
        return run_mrc(test, client)
    if isinstance(test, SaTest):
        return run_sa(test, client, threshold=threshold, cache=cache)
    if isinstance(test, SsmTest):
        return run_ssm(test, client)
    raise TypeError(f"not a generated test: {test!r}")


def run_suite(
    tests: Sequence[GeneratedTest],
    endpoint: ModelEndpoint,
    threshold: float = 0.1,
    session: Optional[requests.Session] = None,
) -> tuple[list[BugReport], RunStats]:
    """Execute a suite with bounded in-flight requests.

    Report order is deterministic (sorted by test id).  A connection refusal
    before any request succeeds aborts the run; later transport failures mark
    individual tests unexecuted.
    """
    for test in tests:
        if test.task != endpoint.task:
            raise ValueError(f"test {test.id} is {test.task!r}, endpoint is {endpoint.task!r}")
    client = ModelClient(endpoint, session=session)
    cache: dict[str, SaPrediction] = {}
    stats = RunStats()
    started = time.monotonic()
    reports: list[BugReport] = []
    ordered = sorted(tests, key=lambda t: t.id)

    if ordered:
        # Preflight: run the first test synchronously to detect a dead endpoint.
        first = ordered[0]
        try:
            report = _run_one(first, client, threshold, cache)
            stats.executed += 1
            if report is not None:
                reports.append(report)
        except TransportError as exc:
            if exc.connection_refused:
                raise EndpointUnreachable(
                    f"endpoint {endpoint.base_url} unreachable: {exc}"
                ) from exc
            stats.unexecuted += 1

    def work(test: GeneratedTest) -> tuple[str, Optional[BugReport], Optional[str]]:
        try:
            return test.id, _run_one(test, client, threshold, cache), None
        except TransportError as exc:
            return test.id, None, str(exc)

    rest = ordered[1:]
    if rest:
        # The SA cache may be raced by workers; a lost race only repeats a
        # request, the scripted mapping text -> prediction stays the same.
        workers = max(1, endpoint.max_in_flight)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for _test_id, report, error in pool.map(work, rest):
                if error is not None:
                    stats.unexecuted += 1
                else:
                    stats.executed += 1
                    if report is not None:
                        reports.append(report)

    reports.sort(key=lambda r: r.id)
    stats.violations = len(reports)
    stats.wall_time = time.monotonic() - started
    return reports, stats


# ---------------------------------------------------------------------------
# Reports and precision


def report_to_record(report: BugReport) -> dict:
    return {
        "id": report.id,
        "task": report.task,
        "mr": report.mr,
        "inputs": report.inputs,
        "model_outputs": report.model_outputs,
        "evidence": report.evidence,
        "verdict": report.verdict,
    }


def record_to_report(rec: dict) -> BugReport:
    return BugReport(
        id=rec["id"],
        task=rec["task"],
        mr=rec["mr"],
        inputs=rec["inputs"],
        model_outputs=rec["model_outputs"],
        evidence=rec["evidence"],
        verdict=rec.get("verdict", UNLABELED),
    )


def write_reports(path: Union[str, Path], reports: Iterable[BugReport]) -> int:
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for report in reports:
            fh.write(json.dumps(report_to_record(report), ensure_ascii=False) + "\n")
            count += 1
    return count


def read_reports(path: Union[str, Path]) -> list[BugReport]:
    reports = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                reports.append(record_to_report(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise LoadError(f"line {lineno}: bad report record ({exc})") from None
    return reports


def load_verdicts(path: Union[str, Path]) -> dict[str, str]:
    """Read the human-review CSV ``report_id,verdict`` (TP or FP)."""
    verdicts: dict[str, str] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or row[0].strip() in ("", "report_id"):
                continue
            if len(row) != 2 or row[1].strip() not in (TP, FP):
                raise LoadError(f"line {lineno}: expected 'report_id,TP|FP'")
            verdicts[row[0].strip()] = row[1].strip()
    return verdicts


def apply_verdicts(reports: Sequence[BugReport], verdicts: dict[str, str]) -> list[str]:
    """Attach verdicts in place; returns report ids still unlabeled."""
    missing = []
    for report in reports:
        if report.id in verdicts:
            report.verdict = verdicts[report.id]
        else:
            missing.append(report.id)
    return missing


def precision(reports: Sequence[BugReport]) -> PrecisionResult:
    """Fraction of reported bugs confirmed as real model misbehaviour."""
    unlabeled = [r.id for r in reports if r.verdict not in (TP, FP)]
    if unlabeled:
        raise ValueError(f"unlabeled reports: {', '.join(unlabeled)}")
    total = len(reports)
    tp = sum(1 for r in reports if r.verdict == TP)
    return PrecisionResult(
        total_reports=total,
        true_positives=tp,
        precision=(tp / total) if total else None,
    )
