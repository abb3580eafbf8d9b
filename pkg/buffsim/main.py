"""buffsim command-line entry point.

    python main.py sim --relation lookahead fixtures/branching.A fixtures/branching.B
    python main.py selftest --seed 7
"""

import sys
from typing import Optional, Sequence

from cli.commands import run_argv


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run_argv(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    exit(main())
