"""Command-line pipeline: disassemble -> generate -> test -> report.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 endpoint error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import assembly, disassembly, harness, metamorphic
from .config import ConfigError, RunConfig, apply_overrides, load_config
from .inflect import Inflector
from .ingest import (
    MRC,
    SA,
    SSM,
    Corpus,
    LoadError,
    MrcSeed,
    SaSeed,
    SsmSeed,
    build_corpus,
    load_embeddings,
    load_lexicon,
    load_seed_dataset,
    load_stopwords,
)
from .mutation import MlmClient, MutationLimits, MutationResources, MutationStats

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ENDPOINT = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sentasm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="INI config file with a [run] section")
        p.add_argument("--task", choices=[MRC, SA, SSM])
        p.add_argument("--strategy", choices=["synonym", "mlm"])
        p.add_argument("--beam", type=int, dest="beam")
        p.add_argument("--seed", type=int, dest="rng_seed")
        p.add_argument("--threshold", type=float)
        p.add_argument("--endpoint")
        p.add_argument("--mlm-endpoint", dest="mlm_endpoint")
        p.add_argument("--workers", type=int, help="per-seed worker cap")
        p.add_argument("--out")

    common(sub.add_parser("disassemble", help="write derivation templates as JSONL"))
    common(sub.add_parser("generate", help="write a metamorphic test suite and tree dump"))
    common(sub.add_parser("test", help="execute a suite against a model endpoint"))
    rep = sub.add_parser("report", help="compute precision from verdicts")
    rep.add_argument("--reports", required=True, help="bug-report JSONL")
    rep.add_argument("--verdicts", required=True, help="CSV report_id,TP|FP")
    return parser


def _load_run_config(args: argparse.Namespace) -> RunConfig:
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        overrides = {
            key: getattr(args, key, None)
            for key in (
                "task", "strategy", "beam", "rng_seed", "threshold",
                "endpoint", "mlm_endpoint", "workers", "out",
            )
        }
        apply_overrides(cfg, overrides)
        cfg.validate()
    except (ConfigError, ValueError) as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc
    return cfg


def _corpus(cfg: RunConfig) -> Corpus:
    if cfg.conllu is None:
        raise CliError("a CoNLL-U corpus path is required (config key 'conllu')", EXIT_USAGE)
    try:
        return build_corpus(cfg.conllu, cfg.trees, cfg.labels)
    except LoadError as exc:
        raise CliError(f"corpus load failed: {exc}", EXIT_DATA) from exc


def _resources(cfg: RunConfig) -> MutationResources:
    try:
        lexicon = load_lexicon(cfg.lexicon) if cfg.lexicon else None
        embeddings = load_embeddings(cfg.embeddings) if cfg.embeddings else None
        stopwords = load_stopwords(cfg.stopwords) if cfg.stopwords else frozenset()
    except LoadError as exc:
        raise CliError(f"resource load failed: {exc}", EXIT_DATA) from exc
    resources = MutationResources(stopwords=stopwords, inflector=Inflector.default())
    if lexicon is not None:
        if lexicon.skipped_rows:
            print(
                f"warning: {lexicon.skipped_rows} lexicon rows without usable synonyms skipped",
                file=sys.stderr,
            )
        resources.lexicon = lexicon
    if embeddings is not None:
        resources.embeddings = embeddings
    if cfg.mlm_endpoint:
        resources.mlm_client = MlmClient(
            cfg.mlm_endpoint, mask_token=cfg.mask_token, timeout=cfg.timeout
        )
    return resources


def _limits(cfg: RunConfig) -> MutationLimits:
    return MutationLimits(
        per_word=cfg.per_word, per_adjunct=cfg.per_adjunct, mlm_top_k=cfg.mlm_top_k
    )


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_disassemble(cfg: RunConfig) -> int:
    corpus = _corpus(cfg)
    if len(corpus) == 0:
        raise CliError("corpus is empty", EXIT_DATA)
    out = _out_dir(cfg)
    records = []
    failures = 0
    for sentence in corpus:
        try:
            template = disassembly.disassemble(sentence)
        except disassembly.DisassemblyError as exc:
            print(f"warning: {exc}", file=sys.stderr)
            failures += 1
            continue
        records.append(
            {
                "id": template.source_id,
                "base": disassembly.render_base(template),
                "template": disassembly.render_template(template),
                "degenerate": template.degenerate,
                "slots": [
                    {
                        "slot": s.slot_index,
                        "text": s.text,
                        "kind": s.kind,
                        "weight": sum(
                            (sentence.labels or [0] * len(sentence.tokens))[s.span[0] : s.span[1]]
                        ),
                        "anchor": s.anchor,
                    }
                    for s in template.slots
                ],
            }
        )
    if not records:
        raise CliError("no sentence could be disassembled", EXIT_DATA)
    path = out / "templates.jsonl"
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    print(f"wrote {len(records)} templates to {path} ({failures} failures)")
    return EXIT_OK


def _map_seeds(worker_count, fn, items):
    """Run ``fn`` per seed, optionally on a bounded worker pool, keeping order."""
    if worker_count <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=worker_count) as pool:
        return list(pool.map(fn, items))


def _trees_for_ids(cfg, corpus, resources, sentence_ids, strategy):
    limits = _limits(cfg)
    stats = MutationStats()
    if strategy == "mlm" and resources.mlm_client is None:
        raise CliError("strategy 'mlm' requires an mlm_endpoint", EXIT_USAGE)

    def build(sid):
        template = disassembly.disassemble(corpus[sid])
        if strategy == "mlm":
            mutator = assembly.mlm_mutator(template, resources, limits, stats=stats)
        else:
            mutator = assembly.synonym_mutator(resources, limits)
        return assembly.build_derivation_tree(template, mutator, beam_size=cfg.beam)

    built = _map_seeds(cfg.workers, build, list(sentence_ids))
    return dict(zip(sentence_ids, built)), stats


def cmd_generate(cfg: RunConfig) -> int:
    corpus = _corpus(cfg)
    resources = _resources(cfg)
    if cfg.seeds is None:
        raise CliError("a seed dataset path is required (config key 'seeds')", EXIT_USAGE)
    try:
        seeds = load_seed_dataset(cfg.task, cfg.seeds, corpus)
    except LoadError as exc:
        raise CliError(f"seed load failed: {exc}", EXIT_DATA) from exc
    out = _out_dir(cfg)
    strategy = cfg.effective_strategy
    tests: list[metamorphic.GeneratedTest] = []
    tree_dump: list[dict] = []
    seed_count = 0
    tree_count = 0
    started = time.monotonic()

    if cfg.task == MRC:
        gen_cfg = metamorphic.MrcGenConfig(
            rng_seed=cfg.rng_seed,
            sentences_per_seed=cfg.sentences_per_seed,
            leaf_k=cfg.leaf_k,
            beam=cfg.beam,
            max_tests=cfg.max_tests_per_seed,
            limits=_limits(cfg),
        )
        def gen_one(seed):
            assert isinstance(seed, MrcSeed)
            try:
                return metamorphic.gen_mrc_tests(seed, corpus, resources, gen_cfg)
            except (LoadError, disassembly.DisassemblyError) as exc:
                print(f"warning: seed {seed.id} skipped: {exc}", file=sys.stderr)
                return None

        for seed, generated in zip(seeds, _map_seeds(cfg.workers, gen_one, list(seeds))):
            if generated is None:
                continue
            tests.extend(generated)
            seed_count += 1
            tree_count += min(cfg.sentences_per_seed, len(seed.sentence_ids))
    else:
        if cfg.task == SA:
            ids = [s.sentence_id for s in seeds if isinstance(s, SaSeed)]
        else:
            ids = []
            for s in seeds:
                assert isinstance(s, SsmSeed)
                for sid in (s.sentence_id_a, s.sentence_id_b):
                    if sid not in ids:
                        ids.append(sid)
        trees, mlm_stats = _trees_for_ids(cfg, corpus, resources, ids, strategy)
        if mlm_stats.mlm_skipped:
            print(
                f"warning: {mlm_stats.mlm_skipped} of {mlm_stats.mlm_requests} "
                "masked-prediction requests skipped after failures",
                file=sys.stderr,
            )
        for sid in ids:
            tree = trees[sid]
            tree_dump.extend(assembly.tree_records(tree))
            if cfg.task == SA:
                tests.extend(metamorphic.gen_sa_tests(tree))
            else:
                tests.extend(metamorphic.gen_ssm_tests(tree, resources.stopwords))
            seed_count += 1
            tree_count += 1

    suite_path = out / f"suite_{cfg.task}.jsonl"
    metamorphic.write_suite(suite_path, tests)
    if tree_dump:
        with open(out / "trees.jsonl", "w", encoding="utf-8") as fh:
            for rec in tree_dump:
                fh.write(json.dumps(rec, ensure_ascii=False) + "\n")
    elapsed = time.monotonic() - started
    avg = len(tests) / seed_count if seed_count else 0.0
    avg_time = elapsed / seed_count if seed_count else 0.0
    print(
        f"generated {len(tests)} tests from {seed_count} seeds, {tree_count} trees "
        f"(avg {avg:.1f} tests/seed, {elapsed:.2f}s total, {avg_time:.3f}s/seed) -> {suite_path}"
    )
    return EXIT_OK


def cmd_test(cfg: RunConfig) -> int:
    if cfg.endpoint is None:
        raise CliError("a model endpoint is required (--endpoint)", EXIT_USAGE)
    out = _out_dir(cfg)
    suite_path = out / f"suite_{cfg.task}.jsonl"
    if not suite_path.exists():
        raise CliError(f"suite not found: {suite_path}", EXIT_DATA)
    try:
        tests = metamorphic.read_suite(suite_path)
    except LoadError as exc:
        raise CliError(f"suite load failed: {exc}", EXIT_DATA) from exc
    endpoint = harness.ModelEndpoint(
        task=cfg.task,
        base_url=cfg.endpoint,
        timeout=cfg.timeout,
        max_in_flight=cfg.max_in_flight,
        retries=cfg.retries,
        backoff=cfg.backoff,
    )
    try:
        reports, stats = harness.run_suite(tests, endpoint, threshold=cfg.threshold)
    except harness.EndpointUnreachable as exc:
        raise CliError(str(exc), EXIT_ENDPOINT) from exc
    reports_path = out / f"reports_{cfg.task}.jsonl"
    harness.write_reports(reports_path, reports)
    stats_path = out / f"stats_{cfg.task}.json"
    with open(stats_path, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "executed": stats.executed,
                "unexecuted": stats.unexecuted,
                "violations": stats.violations,
                "wall_time": stats.wall_time,
            },
            fh,
        )
    print(
        f"executed {stats.executed} tests ({stats.unexecuted} unexecuted): "
        f"{stats.violations} suspected bugs -> {reports_path}"
    )
    return EXIT_OK


def cmd_report(reports_path: str, verdicts_path: str) -> int:
    try:
        reports = harness.read_reports(reports_path)
        verdicts = harness.load_verdicts(verdicts_path)
    except (LoadError, OSError) as exc:
        raise CliError(f"report load failed: {exc}", EXIT_DATA) from exc
    missing = harness.apply_verdicts(reports, verdicts)
    if missing:
        raise CliError(
            "verdict file is missing report ids: " + ", ".join(missing), EXIT_DATA
        )
    result = harness.precision(reports)
    shown = "n/a" if result.precision is None else f"{result.precision:.4f}"
    print(
        f"|B| = {result.total_reports}, TP = {result.true_positives}, "
        f"precision = {shown}"
    )
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report":
            return cmd_report(args.reports, args.verdicts)
        cfg = _load_run_config(args)
        if args.command == "disassemble":
            return cmd_disassemble(cfg)
        if args.command == "generate":
            return cmd_generate(cfg)
        if args.command == "test":
            return cmd_test(cfg)
        raise CliError(f"unknown command {args.command!r}", EXIT_USAGE)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
