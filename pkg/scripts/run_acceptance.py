"""Run the acceptance suite and print one PASS/FAIL line per criterion.

    python scripts/run_acceptance.py          # sampled (co)associativity
    python scripts/run_acceptance.py --full   # associativity on every corpus functor
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true", help="check (co)associativity on the whole corpus")
    ap.add_argument("pytest_args", nargs="*", help="extra arguments passed to pytest")
    a = ap.parse_args()
    env = dict(os.environ)
    if a.full:
        env["AWFS_FULL"] = "1"
    cmd = [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", *a.pytest_args]
    return subprocess.call(cmd, cwd=ROOT, env=env)


if __name__ == "__main__":
    sys.exit(main())
