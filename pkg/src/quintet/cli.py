"""Command line entry: protocol mode, HTTP bridge, or one-shot solving."""

from __future__ import annotations

import argparse
import json
import sys

from .board import Board
from .config import load_config
from .core import ConfigurationError, QuintetError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quintet", description="Free-style Gomoku engine"
    )
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--protocol", action="store_true", help="speak the text protocol on stdio")
    parser.add_argument("--port", type=int, help="serve the JSON/HTTP bridge on this port")
    parser.add_argument("--solve", metavar="BOARDFILE", help="solve a board dump and print JSON")
    parser.add_argument("--depth", type=int, help="search depth override")
    parser.add_argument("--branch", type=int, help="move generation branch override")
    parser.add_argument(
        "--solver", choices=("bmm", "tss"), default="bmm", help="solver for --solve"
    )
    parser.add_argument(
        "--threats",
        choices=("fours", "fours+threes"),
        default="fours",
        help="threat set for --solve",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(
            args.config,
            overrides={"max_depth": args.depth, "branch": args.branch, "port": args.port},
        )
    except (ConfigurationError, OSError) as exc:
        print(f"quintet: {exc}", file=sys.stderr)
        return 2

    if args.solve:
        from .endgame import ThreatSet, bmm_solve, tss_solve
        from .search import SearchLimits

        try:
            board = Board.from_text(open(args.solve).read(), strict=False)
        except (OSError, QuintetError, KeyError, ValueError) as exc:
            print(f"quintet: cannot load board: {exc}", file=sys.stderr)
            return 2
        ts = ThreatSet.FOURS_AND_THREES if args.threats == "fours+threes" else ThreatSet.FOURS
        solve = bmm_solve if args.solver == "bmm" else tss_solve
        limits = SearchLimits(
            max_depth=config.max_depth if config.max_depth else 12,
            node_budget=config.node_budget,
            branch=config.branch,
        )
        verdict = solve(board, ts, limits)
        print(json.dumps(verdict.to_json(board)))
        return 0

    if args.port is not None:
        from .bridge import run_http_bridge

        run_http_bridge(config.port, config)
        return 0

    if args.protocol:
        from .protocol import run_protocol

        return run_protocol(config=config)

    build_parser().print_help()
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
