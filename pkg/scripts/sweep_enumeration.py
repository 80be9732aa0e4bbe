"""Sweep toral elements for a list of algebras and print reconciliation summaries.

Unmatched found signatures are listed; they are candidates for gradings with
no row in the tables (or signature collisions).
"""

import argparse
import time

from gqs.algebras import make_tag, build
from gqs.enumeration import default_space, enumerate_gradings, reconcile

DEFAULT = ["B:1:1", "B:0:2", "B:2:1", "C:1:2", "C:1:3", "C:1:4", "D:2:1", "D:3:1", "A:1:0", "A:2:0", "A:1:2", "A:3:0"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("algebras", nargs="*", default=DEFAULT, help="FAMILY:M:N")
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    for item in args.algebras:
        family, m, n = item.split(":")
        alg = build(make_tag(family, int(m), int(n)))
        t0 = time.perf_counter()
        res = enumerate_gradings(alg, default_space(alg, args.bound), jobs=args.jobs)
        rep = reconcile(alg, res.signatures)
        dt = time.perf_counter() - t0
        print(
            f"{alg.tag.label:8s} signatures={len(res.found):3d} rows={len(rep.rows):3d} "
            f"unmatched_rows={len(rep.unmatched_rows)} unmatched_found={len(rep.unmatched_found)} "
            f"collisions={len(rep.collisions)} {dt:.1f}s"
        )
        for i in rep.unmatched_found:
            s = rep.found[i]
            print(f"    unmatched: l={s.length} N={s.N} dims={s.dims} g0={s.g0_profile}")


if __name__ == "__main__":
    main()
