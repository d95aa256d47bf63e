"""One-simplices of the fan of a reflexive polytope and toric divisor relations.

For a reflexive ``P`` the rays of its fan are generated by the lattice
points on the edges of the polar dual ``P*``; each ray gives a toric
divisor ``D_i``. The divisors satisfy ``sum_i (e_j, v_i) D_i = 0`` for
``j = 1, 2, 3`` and any three of them with a unimodular coefficient block
can be eliminated, leaving ``s - 3`` generators of the Picard group.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .linalg import det_exact, pivot_columns, rank, rational_inverse, vector_gcd
from .polytope import Polytope3, edge_faces, is_reflexive, NotReflexiveError, polar_dual


class ToricError(ValueError):
    pass


@dataclass(frozen=True)
class OneSimplexSet:
    vectors: tuple[tuple[int, int, int], ...]
    source: Polytope3
    dual: Polytope3

    def __len__(self):
        return len(self.vectors)

    def index(self, v) -> int:
        """0-based position of ``v``."""
        return self.vectors.index(tuple(v))

    def relation_matrix(self) -> list[list[int]]:
        """3 x s matrix with entry (j, i) = (e_j, v_i)."""
        return [[v[j] for v in self.vectors] for j in range(3)]


@dataclass(frozen=True)
class DivisorBasis:
    """Independent divisors plus expressions for the eliminated ones.

    Indices are 0-based into the one-simplex list; ``relations`` maps each
    dependent index to ``{independent index: integer coefficient}``.
    """

    independent: tuple[int, ...]
    dependent: tuple[int, ...]
    relations: dict

    def one_based(self) -> dict:
        return {
            d + 1: {i + 1: c for i, c in sorted(expr.items())}
            for d, expr in sorted(self.relations.items())
        }


def edge_lattice_points(Q: Polytope3) -> set:
    pts = set()
    for e in edge_faces(Q):
        pts.update(e.lattice_points)
    return pts


def one_simplices(P: Polytope3, order=None) -> OneSimplexSet:
    """Primitive generators of the rays of the fan of ``P``.

    Default order is sorted; ``order`` may supply a listing (e.g. a printed
    one) which must be exactly the same set.
    """
    if not is_reflexive(P):
        raise NotReflexiveError("one-simplices need a reflexive polytope")
    Q = polar_dual(P)
    pts = edge_lattice_points(Q)
    for p in pts:
        if vector_gcd(p) != 1:
            raise ToricError(f"edge point {p} is not primitive")
    if order is None:
        vectors = tuple(sorted(pts))
    else:
        vectors = tuple(tuple(v) for v in order)
        if len(set(vectors)) != len(vectors) or set(vectors) != pts:
            missing = sorted(pts - set(vectors))
            extra = sorted(set(vectors) - pts)
            raise ToricError(
                f"listing differs from the edge lattice points: "
                f"missing {missing}, not on an edge {extra}"
            )
    return OneSimplexSet(vectors, P, Q)


def _solve_dependent(C, dep, indep):
    """Express D_dep through D_indep: D_J = -C_J^{-1} C_I D_I."""
    CJ = [[C[j][d] for d in dep] for j in range(3)]
    if abs(det_exact(CJ)) != 1:
        return None
    inv = rational_inverse(CJ)
    relations = {}
    for r, d in enumerate(dep):
        expr = {}
        for i in indep:
            coeff = -sum(inv[r][j] * C[j][i] for j in range(3))
            if coeff:
                assert coeff.denominator == 1
                expr[i] = int(coeff)
        relations[d] = expr
    return relations


def default_dependent(S: OneSimplexSet) -> tuple[int, ...]:
    """HNF pivot columns when unimodular, else the first unimodular triple."""
    C = S.relation_matrix()
    piv = tuple(pivot_columns(C))
    if len(piv) == 3 and abs(det_exact([[C[j][d] for d in piv] for j in range(3)])) == 1:
        return piv
    for dep in itertools.combinations(range(len(S)), 3):
        if abs(det_exact([[C[j][d] for d in dep] for j in range(3)])) == 1:
            return dep
    raise ToricError("no unimodular triple of rays; divisors do not give a Z-basis")


def divisor_relations(S: OneSimplexSet, dependent=None) -> DivisorBasis:
    """Eliminate three divisors using the linear relations.

    ``dependent`` lists 0-based indices to eliminate; by default the choice
    comes from :func:`default_dependent`.
    """
    C = S.relation_matrix()
    if rank(C) < 3:
        raise ToricError("rays do not span 3 dimensions")
    dep = tuple(sorted(dependent)) if dependent is not None else default_dependent(S)
    if len(set(dep)) != 3 or not all(0 <= d < len(S) for d in dep):
        raise ToricError(f"need three distinct indices, got {dependent}")
    indep = tuple(i for i in range(len(S)) if i not in dep)
    relations = _solve_dependent(C, dep, indep)
    if relations is None:
        raise ToricError(
            f"divisors {[d + 1 for d in dep]} have a non-unimodular coefficient "
            "block; the rest do not generate the Picard group over Z"
        )
    return DivisorBasis(indep, dep, relations)


def verify_relation(S: OneSimplexSet, relations) -> bool:
    """Check printed relations ``{dep: {idx: coeff}}`` (0-based).

    Each relation ``D_d ~ sum c_i D_i`` is the divisor ``D_d - sum c_i D_i``;
    it is linearly equivalent to zero iff it lies in the span of the three
    rows of the relation matrix.
    """
    C = S.relation_matrix()
    s = len(S)
    for d, expr in relations.items():
        vec = [0] * s
        vec[d] += 1
        for i, c in expr.items():
            vec[i] -= c
        if any(vec) and not _in_integer_rowspan(C, vec):
            return False
    return True


def _in_integer_rowspan(C, vec) -> bool:
    # rows of C are independent, so the coefficients are unique
    piv = _nonsingular_columns(C)
    A = [[C[j][d] for j in range(3)] for d in piv]
    inv = rational_inverse(A)
    b = [vec[d] for d in piv]
    coeffs = [sum(inv[r][k] * b[k] for k in range(3)) for r in range(3)]
    if any(Fraction(c).denominator != 1 for c in coeffs):
        return False
    return all(
        sum(coeffs[j] * C[j][i] for j in range(3)) == vec[i] for i in range(len(vec))
    )


def _nonsingular_columns(C):
    for dep in itertools.combinations(range(len(C[0])), 3):
        if det_exact([[C[j][d] for d in dep] for j in range(3)]) != 0:
            return dep
    raise ToricError("rank deficient relation matrix")
