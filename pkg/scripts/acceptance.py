"""Run the acceptance criteria outside pytest and print one line each.

    python3 scripts/acceptance.py            # all ten
    python3 scripts/acceptance.py 1 8        # a selection
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from support.acceptance import ALL  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("numbers", nargs="*", type=int, help="criteria to run (default: all)")
    args = ap.parse_args(argv)
    chosen = [c for c in ALL if not args.numbers or c.number in args.numbers]
    failed = 0
    for crit in chosen:
        outcome = crit()
        print(outcome.line(), flush=True)
        failed += not outcome.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
