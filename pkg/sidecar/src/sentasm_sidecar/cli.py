"""Sidecar commands: preprocess raw text, serve fill-mask, serve task models.

Exit codes: 0 success, 1 usage error, 2 data error, 3 model load failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .preprocess import PreprocessError, PreprocessJob, preprocess
from .services import ModelLoadError, fill_mask_app, model_app


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sentasm-sidecar", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    pre = sub.add_parser("preprocess", help="emit CoNLL-U, bracket trees, and labels")
    pre.add_argument("--input", required=True, help="TSV id<TAB>sentence, one per line")
    pre.add_argument("--conllu", required=True)
    pre.add_argument("--trees", required=True)
    pre.add_argument("--labels", required=True)

    mlm = sub.add_parser("serve-mlm", help="serve the fill-mask protocol")
    mlm.add_argument("--port", type=int, default=8800)
    mlm.add_argument("--model", default="heuristic")

    model = sub.add_parser("serve-model", help="serve a task model endpoint")
    model.add_argument("--task", choices=["mrc", "sa", "ssm"], required=True)
    model.add_argument("--port", type=int, default=8801)
    model.add_argument("--model", default="heuristic")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "preprocess":
            job = PreprocessJob(
                input_path=args.input,
                conllu_path=args.conllu,
                trees_path=args.trees,
                labels_path=args.labels,
            )
            count = preprocess(job)
            print(f"preprocessed {count} sentences")
            return 0
        if args.command == "serve-mlm":
            app = fill_mask_app(args.model)
        else:
            app = model_app(args.task, args.model)
    except PreprocessError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ModelLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3

    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
