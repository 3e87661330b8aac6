"""Command-line interface: index, search, eval, serve.

DSX_INDEX, DSX_CORPUS, and DSX_PORT provide defaults for the
corresponding flags.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from dsx.engine import (
    MODE_EXHAUSTIVE,
    MODE_INDEXED,
    STRATEGIES,
    SearchConfig,
    generate_ground_truth_queries,
    measure_recall,
    result_size_stats,
    search,
)
from dsx.errors import DsxError
from dsx.grammar import QUERY_SEPARATOR, Query
from dsx.index import DEFAULT_K, build_index, load_index, save_index
from dsx.ingestion import (
    Corpus,
    IngestStats,
    load_corpus,
    save_corpus,
    split_commit_into_hunks,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except DsxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsx", description=__doc__)
    sub = parser.add_subparsers(required=True)

    p_index = sub.add_parser("index", help="build a vector index from a corpus")
    p_index.add_argument("--corpus", default=os.environ.get("DSX_CORPUS"),
                         help="corpus JSONL path (written when --git-log is given)")
    p_index.add_argument("--git-log", help="raw `git log -p` or unified diff to ingest")
    p_index.add_argument("--repo", default="", help="repo label for ingested hunks")
    p_index.add_argument("--out", default=os.environ.get("DSX_INDEX"),
                         help="index output path")
    p_index.add_argument("--l", type=int, default=1000, help="feature vector length")
    p_index.set_defaults(func=cmd_index)

    p_search = sub.add_parser("search", help="search the indexed corpus")
    p_search.add_argument("--index", default=os.environ.get("DSX_INDEX"))
    p_search.add_argument("--corpus", default=os.environ.get("DSX_CORPUS"))
    p_search.add_argument("--old", help="old-side snippet ('_' for none)")
    p_search.add_argument("--new", help="new-side snippet ('_' for none)")
    p_search.add_argument(
        "query", nargs="?",
        help=f"single-string form: <old>{QUERY_SEPARATOR}<new>",
    )
    p_search.add_argument("--k", type=int, default=DEFAULT_K)
    p_search.add_argument("--max-results", type=int, default=10)
    p_search.add_argument("--exhaustive", action="store_true")
    p_search.add_argument("--json", action="store_true", dest="as_json")
    p_search.set_defaults(func=cmd_search)

    p_eval = sub.add_parser("eval", help="measure recall for generated queries")
    p_eval.add_argument("--corpus", default=os.environ.get("DSX_CORPUS"))
    p_eval.add_argument("--index", default=os.environ.get("DSX_INDEX"),
                        help="optional; built in memory when omitted")
    p_eval.add_argument("--strategy", required=True, choices=STRATEGIES)
    p_eval.add_argument("--n", type=int, default=20)
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--k", type=int, default=DEFAULT_K)
    p_eval.add_argument("--l", type=int, default=1000)
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="run the HTTP search service")
    p_serve.add_argument("--port", type=int,
                         default=int(os.environ.get("DSX_PORT", "8080")))
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--index", default=os.environ.get("DSX_INDEX"))
    p_serve.add_argument("--corpus", default=os.environ.get("DSX_CORPUS"))
    p_serve.add_argument("--static", help="directory of web UI assets to serve")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def _require(value, flag: str):
    if not value:
        print(f"error: {flag} is required (flag or environment)", file=sys.stderr)
        raise SystemExit(2)
    return value


def cmd_index(args) -> int:
    corpus_path = _require(args.corpus, "--corpus")
    out_path = _require(args.out, "--out")
    if args.git_log:
        with open(args.git_log, "r", encoding="utf-8") as fh:
            text = fh.read()
        stats = IngestStats()
        changes = split_commit_into_hunks(text, repo=args.repo, stats=stats)
        corpus = Corpus()
        corpus.changes.extend(changes)
        save_corpus(corpus, corpus_path)
        print(
            f"ingested {stats.kept} changes "
            f"({stats.skipped_unparseable} unparseable, "
            f"{stats.skipped_tree_equal} tree-equal, "
            f"{stats.skipped_empty} empty hunks skipped)"
        )
    else:
        corpus = load_corpus(corpus_path)
    index = build_index(corpus, args.l)
    save_index(index, out_path)
    print(f"indexed {index.count} changes at l={index.l} -> {out_path}")
    return 0


def _parse_query_args(args) -> Query:
    if args.query is not None:
        return Query.from_combined(args.query)
    if args.old is None and args.new is None:
        print("error: provide --old/--new or a combined query string", file=sys.stderr)
        raise SystemExit(2)
    return Query.from_strings(args.old or "_", args.new or "_")


def cmd_search(args) -> int:
    corpus = load_corpus(_require(args.corpus, "--corpus"))
    config = SearchConfig(
        k=args.k,
        max_results=args.max_results,
        mode=MODE_EXHAUSTIVE if args.exhaustive else MODE_INDEXED,
    )
    index = None
    if not args.exhaustive:
        index = load_index(_require(args.index, "--index"))
        config = SearchConfig(k=args.k, l=index.l, max_results=args.max_results)
    query = _parse_query_args(args)
    results = search(query, config, corpus, index)
    if args.as_json:
        print(json.dumps(
            {
                "results": [
                    {
                        "id": r.change.id,
                        "rank": r.rank,
                        "distance": r.distance,
                        "old": list(r.change.old_lines),
                        "new": list(r.change.new_lines),
                        "bindings": r.bindings,
                    }
                    for r in results
                ],
                "stats": result_size_stats(query, results),
            },
            indent=2,
        ))
        return 0
    if not results:
        print("no matches")
        return 0
    for r in results:
        dist = f"  d={r.distance:.4f}" if r.distance is not None else ""
        print(f"#{r.rank}  change {r.change.id}{dist}  "
              f"[{r.change.repo} {r.change.commit} {r.change.file}]")
        for line in r.change.old_lines:
            print(f"  - {line}")
        for line in r.change.new_lines:
            print(f"  + {line}")
        if r.bindings:
            print("  bindings: " + ", ".join(f"{k}={v}" for k, v in r.bindings.items()))
    return 0


def cmd_eval(args) -> int:
    corpus = load_corpus(_require(args.corpus, "--corpus"))
    index = load_index(args.index) if args.index and os.path.exists(args.index) else None
    config = SearchConfig(k=args.k, l=index.l if index else args.l)
    queries = generate_ground_truth_queries(corpus, args.strategy, args.n, args.seed)
    stats = measure_recall(queries, corpus, config, index)
    print(f"strategy={args.strategy} n={len(queries)} k={config.k} l={config.l}")
    for i, (recall, truth) in enumerate(zip(stats.per_query, stats.truth_sizes)):
        print(f"  query {i}: recall={recall:.3f} truth={truth}")
    if stats.skipped_empty_truth:
        print(f"  ({stats.skipped_empty_truth} queries with empty ground truth skipped)")
    print(f"mean recall: {stats.mean:.4f}")
    return 0


def cmd_serve(args) -> int:
    from dsx.service import SearchApp, make_server

    corpus = load_corpus(_require(args.corpus, "--corpus"))
    index = load_index(_require(args.index, "--index"))
    app = SearchApp(corpus, index, SearchConfig(l=index.l), static_dir=args.static)
    server = make_server(app, args.host, args.port)
    print(f"serving {len(corpus)} changes on http://{args.host}:{server.server_port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
