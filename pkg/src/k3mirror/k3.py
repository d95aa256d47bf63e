"""Picard lattices of K3 families attached to reflexive 3-polytopes.

Ranks come from edge lattice-point counts; when ``rk L0 = 0`` the
intersection matrix of the restricted toric divisors is assembled from
the self- and mutual-intersection rules for points on edges of ``P*``.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import block_diag, det_exact, invariant_factors, is_symmetric, signature, snf
from .polytope import (
    Polytope3,
    dual_face,
    edge_faces,
    face_lattice,
    is_reflexive,
    NotReflexiveError,
    polar_dual,
    segment_interior_count,
)
from .toric import DivisorBasis, OneSimplexSet, divisor_relations, one_simplices

ENUMERATION_LIMIT = 4096


class LatticeError(ValueError):
    pass


class UnsupportedError(LatticeError):
    """The intersection formulas only cover rk L0 = 0."""


@dataclass(frozen=True)
class GramLattice:
    gram: tuple[tuple[int, ...], ...]
    rank: int
    signature: tuple[int, int]
    det: int

    @classmethod
    def from_matrix(cls, G, check_even=True) -> "GramLattice":
        G = tuple(tuple(int(x) for x in row) for row in G)
        if not is_symmetric(G):
            raise LatticeError("Gram matrix is not symmetric")
        if check_even and any(G[i][i] % 2 for i in range(len(G))):
            raise LatticeError("Gram matrix has an odd diagonal entry")
        d = det_exact(G)
        if d == 0:
            raise LatticeError("degenerate Gram matrix")
        return cls(G, len(G), signature(G), d)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.gram]

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def invariant_factors(self) -> list[int]:
        return [d for d in invariant_factors(self.gram) if d > 1]

    def to_json(self) -> dict:
        return {"gram": self.matrix()}


def direct_sum(*lattices: GramLattice) -> GramLattice:
    return GramLattice.from_matrix(block_diag(*(L.gram for L in lattices)))


@dataclass(frozen=True)
class DiscriminantForm:
    invariant_factors: tuple[int, ...]
    generators: tuple[tuple[Fraction, ...], ...]
    # element coefficients (a_1, ..., a_k), 0 <= a_i < d_i  ->  q in [0, 2)
    q_values: dict = field(compare=False)

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def q_multiset(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.q_values.values()))

    def negated_multiset(self) -> tuple[Fraction, ...]:
        return tuple(sorted((-q) % 2 for q in self.q_values.values()))


def _qform(G, x) -> Fraction:
    return sum(x[i] * G[i][j] * x[j] for i in range(len(x)) for j in range(len(x)) if x[i] and x[j])


def discriminant_form(L: GramLattice) -> DiscriminantForm:
    """Discriminant group L*/L with its Q/2Z-valued quadratic form."""
    G = L.gram
    D, _, V = snf(G)
    n = L.rank
    factors, gens = [], []
    for i in range(n):
        d = D[i][i]
        if d > 1:
            factors.append(d)
            gens.append(tuple(Fraction(V[r][i], d) for r in range(n)))
    values = {}
    order = 1
    for d in factors:
        order *= d
    if order != abs(L.det):
        raise LatticeError("invariant factors do not multiply to |det|")
    if order <= ENUMERATION_LIMIT:
        for coeffs in itertools.product(*(range(d) for d in factors)):
            x = [sum(c * g[r] for c, g in zip(coeffs, gens)) for r in range(n)]
            values[coeffs] = _qform(G, x) % 2
    else:
        for k, g in enumerate(gens):
            coeffs = tuple(int(i == k) for i in range(len(gens)))
            values[coeffs] = _qform(G, g) % 2
    return DiscriminantForm(tuple(factors), tuple(gens), values)


def q_value(L: GramLattice, x) -> Fraction:
    """q(x) mod 2 for a dual-lattice vector given in L-coordinates."""
    return _qform(L.gram, [Fraction(v) for v in x]) % 2


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def primitive_by_squarefree(L: GramLattice) -> bool:
    """Square-free |det| rules out proper overlattices ([L'':L]^2 divides |det|)."""
    return is_squarefree(L.det)


@dataclass(frozen=True)
class EdgeContribution:
    edge: tuple
    dual_edge: tuple
    l_star: int
    l_star_dual: int

    @property
    def product(self) -> int:
        return self.l_star * self.l_star_dual


@dataclass(frozen=True)
class L0Report:
    contributions: tuple[EdgeContribution, ...]

    @property
    def total(self) -> int:
        return sum(c.product for c in self.contributions)

    def nonzero(self) -> list[EdgeContribution]:
        return [c for c in self.contributions if c.product]


def edge_contribution(edge, dual_edge) -> EdgeContribution:
    """l*(edge) * l*(dual edge) for a pair of segments given by endpoints.

    The segments must pair to -1 at every endpoint combination, i.e. be
    mutually dual.
    """
    for x in edge:
        for y in dual_edge:
            if sum(a * b for a, b in zip(x, y)) != -1:
                raise LatticeError(f"{x} and {y} do not pair to -1")
    return EdgeContribution(
        tuple(edge),
        tuple(dual_edge),
        segment_interior_count(*edge),
        segment_interior_count(*dual_edge),
    )


def rk_L0(P: Polytope3) -> L0Report:
    if not is_reflexive(P):
        raise NotReflexiveError("rk L0 needs a reflexive polytope")
    Q = polar_dual(P)
    out = []
    for e in edge_faces(P):
        de = dual_face(P, e, dual=Q)
        out.append(EdgeContribution(e.vertices, de.vertices, e.interior_count, de.interior_count))
    return L0Report(tuple(out))


def picard_number(P: Polytope3) -> int:
    return len(one_simplices(P)) - 3 + rk_L0(P).total


def sum_check(P: Polytope3) -> bool:
    return picard_number(P) + picard_number(polar_dual(P)) == 20 + rk_L0(P).total


def intersection_matrix(S: OneSimplexSet) -> list[list[int]]:
    """Intersections of all restricted toric divisors r_*D_i (s x s).

    Points live on edges of ``Q = S.dual``; dual faces are taken in
    ``P = S.source``. Self-intersection is 2 l*(dual facet) - 2 at a vertex
    of Q and -2 elsewhere. For two points on a common edge E of Q: if both
    are vertices and l*(E) = 0 the entry is l*(E*) + 1; otherwise 1 when
    they are neighbours on E and 0 when not. Points on no common edge
    do not meet.
    """
    P, Q = S.source, S.dual
    if rk_L0(P).total:
        raise UnsupportedError("intersection formulas only hold when rk L0 = 0")
    qfaces = face_lattice(Q)
    verts = set(Q.vertices)
    s = len(S)
    G = [[0] * s for _ in range(s)]
    for i, v in enumerate(S.vectors):
        if v in verts:
            vface = next(f for f in qfaces if f.dim == 0 and f.vertices == (v,))
            G[i][i] = 2 * dual_face(Q, vface, dual=P).interior_count - 2
        else:
            G[i][i] = -2
    pos = {v: i for i, v in enumerate(S.vectors)}
    for e in (f for f in qfaces if f.dim == 1):
        on_edge = [p for p in e.lattice_points if p in pos]
        if len(on_edge) != len(e.lattice_points):
            raise LatticeError(f"edge points {e.lattice_points} not all one-simplices")
        # lattice_points run from one endpoint to the other in order
        for a, b in itertools.combinations(range(len(on_edge)), 2):
            i, j = pos[on_edge[a]], pos[on_edge[b]]
            both_vertices = on_edge[a] in verts and on_edge[b] in verts
            if both_vertices and e.interior_count == 0:
                val = dual_face(Q, e, dual=P).interior_count + 1
            elif b == a + 1:
                val = 1
            else:
                val = 0
            G[i][j] = G[j][i] = val
    return G


def restricted_gram(S: OneSimplexSet, basis: DivisorBasis | None = None) -> GramLattice:
    """Gram matrix of r_*D_i over the independent divisors of ``basis``."""
    if basis is None:
        basis = divisor_relations(S)
    full = intersection_matrix(S)
    idx = basis.independent
    return GramLattice.from_matrix([[full[i][j] for j in idx] for i in idx])


def pic_lattice(P: Polytope3, order=None, dependent=None) -> GramLattice:
    S = one_simplices(P, order=order)
    return restricted_gram(S, divisor_relations(S, dependent))
