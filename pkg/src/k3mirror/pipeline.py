"""Per-polytope analysis, per-pair mirror verification and polytope isometries."""

import itertools
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import data
from .catalog import (
    K3,
    embed,
    gram_of,
    identify,
    invariants,
    mirror_criterion,
    orthogonal_complement,
    parse_lattice,
    with_u,
)
from .k3 import (
    GramLattice,
    discriminant_form,
    intersection_matrix,
    primitive_by_squarefree,
    rk_L0,
)
from .linalg import det_exact, is_saturated, matmul, rank, rational_inverse, transpose
from .polytope import Polytope3, hull, is_reflexive, polar_dual
from .toric import (
    divisor_relations,
    edge_lattice_points,
    one_simplices,
    verify_relation,
)

PASS, FAIL, ERRATUM = "pass", "FAIL", "erratum"


@dataclass
class SideReport:
    name: str
    s: int
    rk_l0: int
    l0_edges: list
    rho: int
    dependent: tuple = ()
    gram: list | None = None
    det: int | None = None
    signature: tuple | None = None
    invariant_factors: tuple = ()
    q_multiset: tuple = ()
    primitive: bool | None = None

    @property
    def lattice(self) -> GramLattice | None:
        return GramLattice.from_matrix(self.gram) if self.gram is not None else None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["q_multiset"] = [str(q) for q in self.q_multiset]
        d["dependent"] = [i + 1 for i in self.dependent]
        return d


def analyze(P: Polytope3, order=None, dependent=None) -> SideReport:
    """s, rk L0 and rho of ``P``; with rk L0 = 0 also its Picard lattice."""
    S = one_simplices(P, order=order)
    l0 = rk_L0(P)
    rep = SideReport(
        name=P.name,
        s=len(S),
        rk_l0=l0.total,
        l0_edges=[(c.edge, c.dual_edge, c.l_star, c.l_star_dual) for c in l0.nonzero()],
        rho=len(S) - 3 + l0.total,
    )
    if l0.total:
        return rep
    B = divisor_relations(S, dependent)
    full = intersection_matrix(S)
    G = [[full[i][j] for j in B.independent] for i in B.independent]
    L = GramLattice.from_matrix(G)
    A = discriminant_form(L)
    rep.dependent = B.dependent
    rep.gram = G
    rep.det = L.det
    rep.signature = L.signature
    rep.invariant_factors = A.invariant_factors
    rep.q_multiset = A.q_multiset()
    rep.primitive = primitive_by_squarefree(L)
    return rep


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass
class MirrorReport:
    name: str
    delta: SideReport
    dual: SideReport
    checks: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def strict_verdict(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "delta": self.delta.to_dict(),
            "dual": self.dual.to_dict(),
            "checks": [asdict(c) for c in self.checks],
        }


def dataset():
    return list(data.CASES)


def build_polytopes(c: data.CasePair):
    """(Delta, Delta*) with Delta = hull of the Delta* one-simplex list."""
    delta = hull(c.dual_vectors, name=f"Delta_{c.singularity}")
    return delta, polar_dual(delta, name=f"Delta*_{c.singularity}")


def permutation_equivalent(A, B):
    """Permutation p with A[p[i]][p[j]] == B[i][j] for all i, j, or None."""
    n = len(A)
    if len(B) != n:
        return None
    sig_a = [(A[i][i], tuple(sorted(A[i]))) for i in range(n)]
    sig_b = [(B[i][i], tuple(sorted(B[i]))) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    perm = [None] * n
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for k in range(n):
            if used[k] or sig_a[k] != sig_b[i]:
                continue
            if all(A[k][perm[j]] == B[i][j] for j in range(i)):
                perm[i] = k
                used[k] = True
                if rec(i + 1):
                    return True
                used[k] = False
        perm[i] = None
        return False

    return list(perm) if rec(0) else None


def _gram_of_combinations(full, combos, s):
    vecs = [[combo.get(i + 1, 0) for i in range(s)] for combo in combos]
    return matmul(matmul(vecs, full), transpose(vecs))


def _status(ok, erratum=False):
    if ok:
        return PASS
    return ERRATUM if erratum else FAIL


def verify_pair(c: data.CasePair, search_bound: int = 10) -> MirrorReport:
    ex = c.expected
    checks = []
    add = lambda name, ok, detail="", erratum=False: checks.append(
        Check(name, _status(ok, erratum), detail)
    )
    delta, dual = build_polytopes(c)
    add("Delta reflexive", is_reflexive(delta))
    add("Delta* reflexive", is_reflexive(dual))
    m_hull = hull(c.delta_vectors)
    add("polar duality both ways", dual == m_hull and polar_dual(m_hull) == delta)

    m_pts = edge_lattice_points(dual)
    printed_ok = set(c.delta_vectors) == m_pts and len(c.delta_vectors) == len(m_pts)
    errs = data.errata_for(c.name, "delta")
    m_order = data.corrected_delta_vectors(c)
    detail = "; ".join(f"m{e.index}: printed {e.printed}, edge point {e.corrected}" for e in errs)
    add("printed m-list = edge points of Delta*", printed_ok, detail,
        erratum=bool(errs) and set(m_order) == m_pts)
    add("printed v-list = edge points of Delta",
        set(c.dual_vectors) == edge_lattice_points(delta) and len(set(c.dual_vectors)) == len(c.dual_vectors))

    S = one_simplices(delta, order=m_order)
    Sd = one_simplices(dual, order=c.dual_vectors)
    side = analyze(delta, order=m_order)
    side_d = analyze(dual, order=c.dual_vectors)
    side.name, side_d.name = delta.name, dual.name

    for label, got, want in (
        ("s", side.s, ex.s), ("s*", side_d.s, ex.s_dual),
        ("rk L0(Delta)", side.rk_l0, ex.rk_l0), ("rk L0(Delta*)", side_d.rk_l0, ex.rk_l0),
        ("rho(Delta)", side.rho, ex.rho), ("rho(Delta*)", side_d.rho, ex.rho_dual),
        ("det Pic(Delta)", side.det, ex.det), ("det Pic(Delta*)", side_d.det, ex.det_dual),
    ):
        add(label, got == want, f"{got} (expected {want})")
    add("rho + rho* = 20 + rk L0", side.rho + side_d.rho == 20 + side.rk_l0,
        f"{side.rho} + {side_d.rho}")

    for S_, rels, label in ((S, c.relations, "Delta"), (Sd, c.relations_dual, "Delta*")):
        if rels:
            zero_based = {d - 1: {i - 1: v for i, v in e.items()} for d, e in rels.items()}
            add(f"printed relations ({label})", verify_relation(S_, zero_based))

    full = intersection_matrix(S)
    full_d = intersection_matrix(Sd)
    L = side.lattice
    Ld = side_d.lattice
    for S_, dep, full_, ref, label, err_side in (
        (S, ex.dependent, full, L, "Delta", "dependent"),
        (Sd, ex.dependent_dual, full_d, Ld, "Delta*", "dependent_dual"),
    ):
        C = S_.relation_matrix()
        block = [[C[j][d - 1] for d in dep] for j in range(3)]
        bdet = det_exact(block)
        add(f"printed dependent set {set(dep)} full rank ({label})", bdet != 0, f"block det {bdet}")
        idx = [i for i in range(len(S_)) if i + 1 not in dep]
        printed_gram = GramLattice.from_matrix([[full_[i][j] for j in idx] for i in idx])
        same = (printed_gram.det == ref.det and printed_gram.signature == ref.signature
                and printed_gram.invariant_factors() == ref.invariant_factors())
        add(f"printed basis Gram invariants ({label})", same,
            f"det {printed_gram.det} vs {ref.det}",
            erratum=bool(data.errata_for(c.name, err_side)))

    if c.gram_dual:
        idx = [i - 1 for i in c.gram_dual_basis]
        printed = [list(r) for r in c.gram_dual]
        add("printed Pic(Delta*) matrix", [[full_d[i][j] for j in idx] for i in idx] == printed)
    if c.gram:
        idx = [i for i in range(len(S)) if i + 1 not in ex.dependent]
        G16 = [[full[i][j] for j in idx] for i in idx]
        perm = permutation_equivalent(G16, [list(r) for r in c.gram])
        add("printed Pic(Delta) matrix up to permutation",
            perm is not None and det_exact(c.gram) == det_exact(G16),
            "print rows are D" + ",".join(str(idx[k] + 1) for k in perm) if perm else "")

    add("Pic(Delta) hyperbolic", L.signature == (1, L.rank - 1), str(L.signature))
    add("Pic(Delta*) hyperbolic", Ld.signature == (1, Ld.rank - 1), str(Ld.signature))
    add("Pic(Delta) square-free det", side.primitive)
    add("Pic(Delta*) square-free det", side_d.primitive)

    if c.dual_retake:
        G = _gram_of_combinations(full_d, c.dual_retake, len(Sd))
        target = [list(r) for r in gram_of(ex.pic_dual).gram]
        add("printed re-take gives Pic(Delta*) block form", G == target, f"{G}",
            erratum=bool(data.errata_for(c.name, "retake_dual")))

    ident_d = identify(Ld, [ex.pic_dual], search_bound)[0]
    add(f"Pic(Delta*) congruent to {ex.pic_dual}", ident_d.tier == "congruent",
        f"P = {ident_d.witness}")
    ident = identify(L, [ex.pic], search_bound)[0]
    add(f"Pic(Delta) invariants of {ex.pic}", ident.invariant_match, ident.tier)

    add("mirror criterion Pic(Delta) vs U+Pic(Delta*)", mirror_criterion(L, with_u(Ld)))
    add("mirror criterion Pic(Delta*) vs U+Pic(Delta)", mirror_criterion(Ld, with_u(L)))

    sub = parse_lattice("U+U" + (f"+{ex.dual_root_part}" if ex.dual_root_part else ""))
    W = embed(K3, sub)
    comp = orthogonal_complement(W)
    add("complement saturated", W.primitive and is_saturated([list(v) for v in W.complement_basis]))
    add(f"(U+U+{ex.dual_root_part or '0'}) complement in K3 ~ Pic(Delta)",
        invariants(comp) == invariants(L) == invariants(gram_of(ex.pic)),
        f"rank {comp.rank}, det {comp.det}")

    return MirrorReport(c.name, side, side_d, checks)


def isometry_check(Pa: Polytope3, Pb: Polytope3, M) -> bool:
    """Row action m -> m M sends the vertices of Pa onto those of Pb."""
    M = [list(r) for r in M]
    if len(M) != 3 or any(len(r) != 3 for r in M) or abs(det_exact(M)) != 1:
        raise ValueError("M must be a 3x3 unimodular matrix")
    image = {tuple(r) for r in matmul([list(v) for v in Pa.vertices], M)}
    return image == set(Pb.vertices)


def isometry_search(Pa: Polytope3, Pb: Polytope3):
    """First M in GL_3(Z) with Pa M = Pb, or None."""
    if len(Pa.vertices) != len(Pb.vertices) or len(Pa.facets) != len(Pb.facets):
        return None
    base = next(
        (t for t in itertools.combinations(Pa.vertices, 3) if rank(list(t)) == 3), None
    )
    if base is None:
        return None
    A_inv = rational_inverse([list(v) for v in base])
    for images in itertools.permutations(Pb.vertices, 3):
        if rank(list(images)) < 3:
            continue
        M = [[sum(A_inv[i][k] * images[k][j] for k in range(3)) for j in range(3)]
             for i in range(3)]
        if any(Fraction(x).denominator != 1 for row in M for x in row):
            continue
        M = [[int(x) for x in row] for row in M]
        if abs(det_exact(M)) == 1 and isometry_check(Pa, Pb, M):
            return M
    return None


def dual_action(M):
    """Inverse transpose: the induced map on the polar dual side."""
    inv = rational_inverse(M)
    return [[int(inv[j][i]) for j in range(3)] for i in range(3)]


def transported_intersections_agree(Pa: Polytope3, Pb: Polytope3, M) -> bool:
    """One-simplices of Pa carried by the dual action of M onto those of Pb
    with identical intersection numbers."""
    Sa, Sb = one_simplices(Pa), one_simplices(Pb)
    N = dual_action(M)
    images = [tuple(r) for r in matmul([list(v) for v in Sa.vectors], N)]
    if set(images) != set(Sb.vectors):
        return False
    Sb = one_simplices(Pb, order=images)
    return intersection_matrix(Sa) == intersection_matrix(Sb)
