"""Exactness of the two long exact sequences and commutativity of the ladder between them."""
import argparse
import json

from lieideal import corpus
from lieideal.complexes import les_exactness_check, les_squares_check


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--corpus", default="heisenberg3")
    ap.add_argument("--ideal", default="center")
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    d = corpus.load(args.corpus).ideal_data(args.ideal)
    out = {}
    for which in ("top", "bottom"):
        c = les_exactness_check(d, which, args.max_degree)
        out[which] = {"exact": c.verdict, "H_dims": c.dims, "failed": c.witness["failed"]}
    sq = les_squares_check(d, args.max_degree)
    out["squares_commute"] = sq.verdict
    if args.json:
        print(json.dumps(out, indent=2))
        return
    for which in ("top", "bottom"):
        o = out[which]
        print(f"{which:>6}: exact {o['exact']}  dims A {o['H_dims']['A']}  B {o['H_dims']['B']}  "
              f"C {o['H_dims']['C']}")
    print(f"ladder squares commute: {sq.verdict}")
    return 0 if all(out[w]["exact"] for w in ("top", "bottom")) and sq.verdict else 1


if __name__ == "__main__":
    raise SystemExit(main())
