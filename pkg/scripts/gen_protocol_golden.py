#!/usr/bin/env python3
"""Regenerate the pinned-config protocol transcript under tests/golden/."""

import io
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parents[1] / "src"))

from quintet.config import EngineConfig
from quintet.protocol import ProtocolSession

PINNED = EngineConfig(max_depth=2, branch=8, tt_entries=1 << 12)

COMMANDS = [
    "ABOUT",
    "START 15",
    "INFO timeout_turn 0",
    "BEGIN",
    "TURN 6,6",
    "TURN 9,9",
    "TURN 2,2",
    "START 15",
    "BOARD",
    "7,7,1",
    "6,6,2",
    "8,8,1",
    "5,5,2",
    "DONE",
    "END",
]


def main() -> int:
    golden = Path(__file__).parents[1] / "tests" / "golden"
    golden.mkdir(exist_ok=True)
    out = io.StringIO()
    session = ProtocolSession(PINNED, log=io.StringIO())
    session.run(io.StringIO("\n".join(COMMANDS) + "\n"), out)
    (golden / "protocol_commands.txt").write_text("\n".join(COMMANDS) + "\n")
    (golden / "protocol_replies.txt").write_text(out.getvalue())
    print(out.getvalue(), end="")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
