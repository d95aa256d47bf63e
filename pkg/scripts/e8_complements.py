"""Embed each ADE lattice of the complement table into E8 and compare the
orthogonal complement with the listed answer."""

from k3mirror.catalog import (
    NISHIYAMA,
    embed_in_E8,
    gram_of,
    invariants,
    nishiyama_complement,
    orthogonal_complement,
    roots_of,
)


def main():
    print(f"{'T':4s} {'T-perp':8s} {'rank':>4s} {'|det|':>5s} {'roots':>5s}  match")
    for t in sorted(NISHIYAMA, key=lambda s: (s[0], int(s[1:]))):
        C = orthogonal_complement(embed_in_E8(t))
        target = gram_of(nishiyama_complement(t))
        ok = invariants(C) == invariants(target) and len(roots_of(C)) == len(roots_of(target))
        name = str(nishiyama_complement(t))
        print(f"{t:4s} {name:8s} {C.rank:4d} {abs(C.det):5d} {len(roots_of(C)):5d}  {ok}")


if __name__ == "__main__":
    main()
