"""CLI: ``embed-export embed ...`` and ``embed-export project ...``."""

from __future__ import annotations

import argparse
import sys

from .errors import ExportError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-export",
        description="Encode a JSONL corpus into the binary embedding "
        "interchange format, or reduce an exported file to 2/5 dims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="encode documents with a sentence encoder")
    p_embed.add_argument("--corpus", required=True, help="JSONL corpus (id, text)")
    p_embed.add_argument("--out", required=True, help="output interchange file")
    p_embed.add_argument(
        "--model",
        default=None,
        help="sentence encoder id or local path (default: a 768-dim MPNet-based model)",
    )
    p_embed.add_argument("--batch-size", type=int, default=32)

    p_proj = sub.add_parser("project", help="reduce an exported embedding file")
    p_proj.add_argument("--in", dest="source", required=True, help="input interchange file")
    p_proj.add_argument("--dims", type=int, choices=[2, 5], required=True)
    p_proj.add_argument("--seed", type=int, default=42)
    p_proj.add_argument("--n-neighbors", type=int, default=15)
    p_proj.add_argument("--metric", default="cosine")
    p_proj.add_argument("--out", required=True)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "embed":
            from .encode import DEFAULT_MODEL, ExportConfig, export_embeddings

            manifest = export_embeddings(
                ExportConfig(
                    corpus=args.corpus,
                    out=args.out,
                    model=args.model or DEFAULT_MODEL,
                    batch_size=args.batch_size,
                )
            )
            print(
                f"wrote {manifest['n_rows']} x {manifest['dim']} embeddings to {args.out}"
            )
        else:
            from .project import ProjectionConfig, export_projection

            manifest = export_projection(
                ProjectionConfig(
                    source=args.source,
                    out=args.out,
                    n_components=args.dims,
                    n_neighbors=args.n_neighbors,
                    metric=args.metric,
                    seed=args.seed,
                )
            )
            print(
                f"wrote {manifest['n_rows']} x {manifest['dim']} projection "
                f"({manifest['method']}) to {args.out}"
            )
        return 0
    except (ExportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
