"""Second-order obstruction for deforming the center of the Heisenberg algebra.

Every first-order direction η ∈ Z⁰ = C⁰ = Hom(z, g/z) has a nonzero Kuranishi
class, so no direction extends and the center is an isolated ideal.
"""
import argparse
from fractions import Fraction

from lieideal import corpus
from lieideal.cli import scan_mc
from lieideal.deform import extend_to_second_order, kuranishi
from lieideal.multilin import Cochain, CochainSpace, CoeffModule


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--range", type=int, default=2, help="integer grid for (α, β)")
    ap.add_argument("--scan-step", default="1/4")
    args = ap.parse_args(argv)

    d = corpus.load("heisenberg3").ideal_data("center")
    sp = CochainSpace(0, d.n, CoeffModule("i*⊗i^c", d.m * d.k))
    print(f"C0 = Hom(i, g/i) has dimension {sp.dim}; δ^Hom vanishes on it")
    r = args.range
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            if not (a or b):
                continue
            eta = Cochain(sp, (Fraction(a), Fraction(b)))
            kur, zero = kuranishi(d, eta)
            ext = extend_to_second_order(d, eta)
            rows = [list(kur.block((t,))) for t in range(d.n)]
            print(f"(α, β) = ({a:>2}, {b:>2})  class zero: {zero!s:5}  extends: {ext is not None!s:5}  "
                  f"cocycle blocks: {[[str(x) for x in row] for row in rows]}")
    sols = scan_mc(d, Fraction(args.scan_step), 1)
    print(f"Maurer–Cartan points on the grid of step {args.scan_step} in [−1, 1]²: "
          f"{[[str(x) for x in s.entries] for s in sols]}")


if __name__ == "__main__":
    main()
