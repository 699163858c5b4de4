"""Check the type-theoretic axioms on each bundled document, in both stability
modes, and print a one-line summary per run plus the failing instances."""

import argparse
import time
from dataclasses import dataclass

from awfs.cli import bundled_names, execute, build_parser, read_bundled
from awfs.document import parse_document


@dataclass
class Config:
    documents: tuple = ()
    modes: tuple = ("strict", "pseudo")
    show_failures: int = 5


def run(cfg):
    names = cfg.documents or tuple(bundled_names())
    for name in names:
        doc = parse_document(read_bundled(name))
        for mode in cfg.modes:
            args = build_parser().parse_args(["verify-ttawfs", "--stability", mode])
            t0 = time.perf_counter()
            rep = execute("verify-ttawfs", doc, args).body
            dt = time.perf_counter() - t0
            bad = [r for r in rep["results"] if not r["passed"]]
            print(f"{name:14} {mode:7} {'PASS' if rep['passed'] else 'FAIL'}  "
                  f"{len(rep['results']) - len(bad)}/{len(rep['results'])} checks  {dt:.1f}s")
            for r in bad[:cfg.show_failures]:
                print(f"    {r['axiom']}: {r['instance']}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description="verify the bundled documents")
    ap.add_argument("documents", nargs="*", help=f"subset of {bundled_names()}")
    ap.add_argument("--mode", choices=["strict", "pseudo"], action="append")
    a = ap.parse_args()
    run(Config(tuple(a.documents), tuple(a.mode or Config.modes)))
