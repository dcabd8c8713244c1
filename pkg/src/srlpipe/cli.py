"""Command-line entry point: one subcommand per pipeline stage.

Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import langid
from .pipeline import (STAGES, ConfigError, StageError, load_config, run_all,
                       run_stage)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--pairs", help="2-column TSV of raw sentence pairs")
    parser.add_argument("--src-conllu", dest="src_conllu")
    parser.add_argument("--tgt-conllu", dest="tgt_conllu")
    parser.add_argument("--frames", help="source-side frames JSONL")
    parser.add_argument("--frame-index", dest="frame_index",
                        help="JSON of frame -> ordered core FE names")
    parser.add_argument("--outdir")
    parser.add_argument("--langid-model", dest="langid_model")
    parser.add_argument("--classifier", help="quality classifier JSON")
    parser.add_argument("--labels", help="labels TSV for fit-quality / serve")
    parser.add_argument("--lang-src", dest="lang_src")
    parser.add_argument("--lang-tgt", dest="lang_tgt")
    parser.add_argument("--tau-lang", dest="tau_lang", type=float)
    parser.add_argument("--tau", type=float)
    parser.add_argument("--iters", type=int)
    parser.add_argument("--lambda", dest="lam", type=float)
    parser.add_argument("--p-null", dest="p_null", type=float)
    parser.add_argument("--prune", type=float)
    parser.add_argument("--min-tokens", dest="min_tokens", type=int)
    parser.add_argument("--min-depth", dest="min_depth", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--strict", action="store_const", const=True, default=None)
    parser.add_argument("--force", action="store_true",
                        help="rerun even when inputs are unchanged")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="srlpipe")
    sub = parser.add_subparsers(dest="command", required=True)
    for stage in STAGES + ("fit-quality", "run-all"):
        _add_common(sub.add_parser(stage))
    serve = sub.add_parser("serve")
    _add_common(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--static-dir", default=None,
                       help="directory with the built curation UI")
    train = sub.add_parser("train-langid",
                           help="train the n-gram language detector")
    train.add_argument("--corpus", action="append", required=True,
                       metavar="LANG=FILE", help="one plain-text file per language")
    train.add_argument("--order", type=int, default=3)
    train.add_argument("--out", required=True)
    return parser


_CONFIG_KEYS = ("pairs", "src_conllu", "tgt_conllu", "frames", "frame_index",
                "outdir", "langid_model", "classifier", "labels", "lang_src",
                "lang_tgt", "tau_lang", "tau", "iters", "lam", "p_null", "prune",
                "min_tokens", "min_depth", "seed", "strict")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "train-langid":
            corpora = {}
            for entry in args.corpus:
                lang, _, path = entry.partition("=")
                with open(path, encoding="utf-8") as f:
                    corpora[lang] = [line.rstrip("\n") for line in f if line.strip()]
            model = langid.train_langid(corpora, ngram_order=args.order)
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(model.to_json())
            print(f"wrote {args.out}")
            return 0
        overrides = {key: getattr(args, key) for key in _CONFIG_KEYS
                     if getattr(args, key, None) is not None}
        cfg = load_config(args.config, overrides)
        if args.command == "serve":
            from .server import serve_curation
            serve_curation(cfg, host=args.host, port=args.port,
                           static_dir=args.static_dir)
            return 0
        if args.command == "run-all":
            manifest = run_all(cfg, force=args.force)
            print(json.dumps(manifest["funnel"], indent=2))
            return 0
        report = run_stage(cfg, args.command, force=args.force)
        print(json.dumps(report, indent=2))
        return 0
    except (ConfigError, langid.LangIdError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (StageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
