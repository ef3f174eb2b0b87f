"""Command-line front end: build, query, heatmap, compress, sweep.

Result data goes to standard output or the named output file; progress
and error diagnostics go to standard error.  The process exits 0 only
when the requested work fully succeeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus, imaging, lsa, viz
from .linalg import ConvergenceError


def _require_file(path: str, what: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise ValueError(f"{what} not found: {path}")
    return p


def cmd_build(args: argparse.Namespace) -> int:
    corpus_path = _require_file(args.corpus, "corpus")
    config_path = _require_file(args.config, "config")
    docs = corpus.load_corpus(corpus_path)
    config = corpus.load_tokenizer_config(config_path)
    vocab = corpus.select_vocabulary(docs, config)
    matrix = corpus.build_matrix(docs, vocab, config)
    corpus.save_matrix(matrix, args.output)
    print(
        f"built {len(matrix.terms)} terms x {len(matrix.doc_ids)} documents "
        f"-> {args.output}",
        file=sys.stderr,
    )
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    matrix = corpus.load_matrix(_require_file(args.matrix, "matrix"))
    if args.limit is not None and args.limit < 1:
        raise ValueError(f"limit must be positive, got {args.limit}")
    model = lsa.fit(matrix)
    k = lsa.FULL if args.full else args.k
    results = lsa.keyword_search(
        model, args.keyword, k=k, threshold=args.threshold, limit=args.limit
    )
    sys.stdout.write(lsa.format_results(results))
    return 0


def cmd_heatmap(args: argparse.Namespace) -> int:
    matrix = corpus.load_matrix(_require_file(args.matrix, "matrix"))
    if args.raw:
        labeled = corpus.as_labeled(matrix)
        palette = args.palette or viz.DISCRETE3
    else:
        model = lsa.fit(matrix)
        labeled = lsa.reconstruct_at_rank(model, args.k)
        palette = args.palette or viz.CONTINUOUS
    spec = viz.HeatmapSpec(
        palette=palette,
        cell_px=args.cell_px,
        value_floor=args.floor,
        value_ceiling=args.ceiling,
        show_labels=args.labels,
    )
    out = Path(args.output)
    if out.suffix not in (".ppm", ".svg"):
        raise ValueError(f"output extension must be .ppm or .svg, got {out.suffix!r}")
    out.write_bytes(viz.render_heatmap(labeled, spec, out.suffix.lstrip(".")))
    rows, cols = labeled.values.shape
    print(f"wrote {rows}x{cols} heatmap -> {out}", file=sys.stderr)
    return 0


def cmd_compress(args: argparse.Namespace) -> int:
    image = imaging.load_pgm(_require_file(args.image, "image"))
    compressed, report = imaging.compress_image(image, args.k)
    imaging.save_pgm(compressed, args.output)
    sys.stdout.write(imaging.format_report(report))
    print(
        f"wrote rank-{args.k} image ({image.width}x{image.height}) -> {args.output}",
        file=sys.stderr,
    )
    return 0


def _parse_ks(text: str) -> list[int]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("ks must be non-empty")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"ks must be comma-separated integers, got {text!r}") from None


def cmd_sweep(args: argparse.Namespace) -> int:
    matrix = corpus.load_matrix(_require_file(args.matrix, "matrix"))
    judgments = lsa.load_judgments(_require_file(args.judgments, "judgments"))
    ks = _parse_ks(args.ks)
    model = lsa.fit(matrix)
    report = lsa.sweep_ranks(
        model, list(judgments), judgments, ks, threshold=args.threshold
    )
    sys.stdout.write(lsa.format_sweep(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsakit",
        description="Count matrices, low-rank semantic models, and image compression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a word-document count matrix from a corpus")
    b.add_argument("corpus", help="corpus file: one 'id<TAB>text' line per document")
    b.add_argument("config", help="config file with stopword and alias directives")
    b.add_argument("-o", "--output", required=True, help="matrix file to write")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="rank documents for a keyword")
    q.add_argument("matrix", help="matrix file produced by build")
    q.add_argument("keyword", help="single keyword to look up")
    rank = q.add_mutually_exclusive_group(required=True)
    rank.add_argument("-k", type=int, help="model rank to score with")
    rank.add_argument("--full", action="store_true", help="score by the raw counts")
    q.add_argument(
        "--threshold",
        type=float,
        default=0.0,
        help="return only documents scoring strictly above this (default 0)",
    )
    q.add_argument("--limit", type=int, help="return at most this many documents")
    q.set_defaults(func=cmd_query)

    h = sub.add_parser("heatmap", help="render a matrix as a PPM or SVG heatmap")
    h.add_argument("matrix", help="matrix file produced by build")
    source = h.add_mutually_exclusive_group(required=True)
    source.add_argument("-k", type=int, help="render the rank-k reconstruction")
    source.add_argument("--raw", action="store_true", help="render the counts themselves")
    h.add_argument(
        "--palette",
        choices=[viz.DISCRETE3, viz.CONTINUOUS],
        help="color mapping (default: discrete3 for --raw, else continuous)",
    )
    h.add_argument("--floor", type=float, default=0.0, help="value mapped to black")
    h.add_argument("--ceiling", type=float, default=2.0, help="value mapped to white")
    h.add_argument("--cell-px", type=int, default=16, help="square cell size in pixels")
    h.add_argument("--labels", action="store_true", help="draw row and column labels (SVG)")
    h.add_argument("-o", "--output", required=True, help=".ppm or .svg file to write")
    h.set_defaults(func=cmd_heatmap)

    c = sub.add_parser("compress", help="write a rank-k approximation of a PGM image")
    c.add_argument("image", help="input PGM (P2 or P5, maxval up to 255)")
    c.add_argument("-k", type=int, required=True, help="approximation rank")
    c.add_argument("-o", "--output", required=True, help="PGM file to write")
    c.set_defaults(func=cmd_compress)

    s = sub.add_parser("sweep", help="score judged keywords across a range of ranks")
    s.add_argument("matrix", help="matrix file produced by build")
    s.add_argument("judgments", help="file of 'keyword<TAB>doc,doc,...' lines")
    s.add_argument("--ks", required=True, help="comma-separated ranks, e.g. 2,6")
    s.add_argument(
        "--threshold",
        type=float,
        default=0.0,
        help="retrieval threshold passed to every query (default 0)",
    )
    s.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
