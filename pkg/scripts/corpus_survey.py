"""Cohomology dimensions and certificates for every (algebra, ideal) pair in the corpus."""
import argparse
import json

from lieideal import corpus
from lieideal.complexes import ComplexId, cohomology
from lieideal.config import CapacityError
from lieideal.deform import certify_rigidity, certify_stability

COMPLEXES = ("hom_ideal", "quotient", "ad", "bott")


def survey(max_degree: int):
    rows = []
    for name, key, d in corpus.all_pairs():
        row = {"algebra": name, "ideal": key, "n": d.n, "k": d.k}
        for tag in COMPLEXES:
            top = min(max_degree, d.n)
            try:
                row[tag] = cohomology(ComplexId(tag, d), top).dims()
            except CapacityError as e:
                row[tag] = f"cap: {e}"
        row["stable_h1"] = certify_stability(d, "h1").verdict
        row["rigid_whitehead"] = certify_rigidity(d, "whitehead").verdict
        row["rigid_h0pi"] = certify_rigidity(d, "h0pi").verdict
        rows.append(row)
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = survey(args.max_degree)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    head = f"{'algebra':<22}{'ideal':<10}" + "".join(f"{t:<14}" for t in COMPLEXES) + "stable rigidW rigidΠ"
    print(head)
    for r in rows:
        cells = "".join(f"{str(r[t]):<14}" for t in COMPLEXES)
        print(f"{r['algebra']:<22}{r['ideal']:<10}{cells}{r['stable_h1']!s:<7}{r['rigid_whitehead']!s:<7}"
              f"{r['rigid_h0pi']}")


if __name__ == "__main__":
    main()
