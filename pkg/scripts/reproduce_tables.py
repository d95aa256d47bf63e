"""Print the rank, Picard-number, determinant and lattice tables for the six pairs."""

import argparse

from k3mirror import data
from k3mirror.catalog import invariants, gram_of
from k3mirror.pipeline import verify_pair


def table(rows):
    widths = [max(len(str(r[k])) for r in rows) for k in range(len(rows[0]))]
    for r in rows:
        print("  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip())
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=10)
    args = ap.parse_args()
    reports = [(c, verify_pair(c, args.bound)) for c in data.CASES]

    table([("pair", "rk L0")] + [(c.name, r.delta.rk_l0) for c, r in reports])
    table([("pair", "s", "s*", "rho", "rho*", "rho+rho*")]
          + [(c.name, r.delta.s, r.dual.s, r.delta.rho, r.dual.rho, r.delta.rho + r.dual.rho)
             for c, r in reports])
    table([("pair", "det", "det*", "A_L", "Pic(Delta*)", "witness found")]
          + [(c.name, r.delta.det, r.dual.det,
              "x".join(f"Z/{d}" for d in r.delta.invariant_factors) or "0",
              c.expected.pic_dual,
              r.check(f"Pic(Delta*) congruent to {c.expected.pic_dual}").status)
             for c, r in reports])
    table([("pair", "Pic(Delta)", "invariants match", "mirror criterion")]
          + [(c.name, c.expected.pic,
              invariants(r.delta.lattice) == invariants(gram_of(c.expected.pic)),
              r.check("mirror criterion Pic(Delta) vs U+Pic(Delta*)").status)
             for c, r in reports])


if __name__ == "__main__":
    main()
