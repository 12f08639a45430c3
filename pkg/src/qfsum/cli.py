"""Command-line interface: ``qfsum ask``, ``qfsum eval`` and ``qfsum tree``."""

from __future__ import annotations

import argparse
import logging
import shlex
import subprocess
import sys
import tempfile
from pathlib import Path

from . import concept_tree as ct
from .errors import QfsumError
from .metrics import evaluate, render_records_tsv, render_tsv
from .pipeline import load_config, run_query

EXIT_OK, EXIT_ERROR, EXIT_NO_ANSWER = 0, 1, 2


def _global_flags(defaults) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", default=defaults)
    p.add_argument("--backend", metavar="fixture:PATH|live", default=defaults)
    p.add_argument("--k", type=int, metavar="N", default=defaults, help="results per search query")
    p.add_argument("--policy", choices=["topk", "above_average"], default=defaults)
    p.add_argument("--threshold-mode", choices=["fixed", "doc_average"], default=defaults)
    p.add_argument("--timing", choices=["wall", "modeled"], default=defaults)
    p.add_argument("--speak", metavar="CMD", default=defaults,
                   help="command run on the output; {} is replaced by a file holding the text")
    p.add_argument("--transcript-file", metavar="PATH", default=defaults)
    p.add_argument("-v", "--verbose", action="store_true", default=defaults)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfsum", parents=[_global_flags(None)],
                                     description="Query-focused extractive summarization.")
    sub = parser.add_subparsers(dest="command", required=True)
    flags = _global_flags(argparse.SUPPRESS)

    ask = sub.add_parser("ask", parents=[flags], help="answer or summarize one query")
    ask.add_argument("query", nargs="?", default="")

    ev = sub.add_parser("eval", parents=[flags], help="evaluate a labeled query file")
    ev.add_argument("labels", metavar="LABELS")
    ev.add_argument("--category", action="append", help="restrict to a category (repeatable)")
    ev.add_argument("--output", "-o", metavar="PATH", help="write the report here instead of stdout")
    ev.add_argument("--records", metavar="PATH", help="also write the per-query records as TSV")
    ev.add_argument("--format", choices=["tsv"], default="tsv")

    tree = sub.add_parser("tree", parents=[flags], help="inspect a concept tree file")
    tree.add_argument("action", choices=["validate", "show"])
    tree.add_argument("tree_path", nargs="?", help="defaults to the configured or bundled tree")
    return parser


def _config(args):
    return load_config(
        args.config,
        backend=args.backend,
        results_per_query=args.k,
        **{"extraction.policy": args.policy, "dedup.threshold_mode": args.threshold_mode,
           "timing": args.timing, "speak": args.speak},
    )


def speak(text: str, command: str) -> None:
    with tempfile.NamedTemporaryFile("w", suffix=".txt", delete=False, encoding="utf-8") as fh:
        fh.write(text)
    argv = shlex.split(command)
    if any("{}" in a for a in argv):
        argv = [a.replace("{}", fh.name) for a in argv]
    else:
        argv.append(fh.name)
    try:
        subprocess.run(argv, check=True)
    except (OSError, subprocess.CalledProcessError) as exc:
        print(f"qfsum: speech command failed: {exc}", file=sys.stderr)
    finally:
        Path(fh.name).unlink(missing_ok=True)


def cmd_ask(args) -> int:
    text = args.query
    if args.transcript_file:
        try:
            text = Path(args.transcript_file).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"qfsum: cannot read transcript: {exc}", file=sys.stderr)
            return EXIT_ERROR
    if not text.strip():
        print("usage: qfsum ask QUERY  (or --transcript-file PATH)", file=sys.stderr)
        return EXIT_ERROR
    config = _config(args)
    result = run_query(text, config)
    if result.status == "error":
        print(f"qfsum: {result.message}", file=sys.stderr)
        return EXIT_ERROR
    if not result.ok:
        print(f"qfsum: no answer ({result.status}): {result.message}", file=sys.stderr)
        return EXIT_NO_ANSWER
    sys.stdout.write(result.text)
    if config.speak:
        speak(result.text, config.speak)
    return EXIT_OK


def cmd_eval(args) -> int:
    config = _config(args)
    reports, records = evaluate(args.labels, config, args.category)
    if not records:
        print("qfsum: no queries matched", file=sys.stderr)
        return EXIT_ERROR
    report = render_tsv(reports)
    if args.output:
        Path(args.output).write_text(report, encoding="utf-8")
    else:
        sys.stdout.write(report)
    if args.records:
        Path(args.records).write_text(render_records_tsv(records), encoding="utf-8")
    for r in records:
        if r.status != "ok":
            print(f"qfsum: warning: {r.query_id}: {r.status}", file=sys.stderr)
    return EXIT_OK


def cmd_tree(args) -> int:
    path = args.tree_path
    if path is None and args.config:
        path = load_config(args.config).tree_path
    try:
        tree = ct.load_tree(path)
    except QfsumError as exc:
        print(f"qfsum: invalid tree: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.action == "show":
        sys.stdout.write(ct.render(tree))
    else:
        print(f"ok: {sum(1 for _ in tree.root.walk())} nodes")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handler = {"ask": cmd_ask, "eval": cmd_eval, "tree": cmd_tree}[args.command]
    try:
        return handler(args)
    except QfsumError as exc:
        print(f"qfsum: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
