"""Named even lattices, E8 embeddings, orthogonal complements, identification.

Root lattices use the negative-definite convention: Bourbaki Dynkin Gram
matrices with -2 on the diagonal and +1 on bonds.
"""

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .k3 import GramLattice, LatticeError, discriminant_form
from .linalg import (
    block_diag,
    det_exact,
    integer_kernel,
    is_saturated,
    matmul,
    transpose,
)

U_GRAM = ((0, 1), (1, 0))
C86_GRAM = ((-4, 1), (1, -2))

DEFAULT_SEARCH_BOUND = 10


class CatalogError(ValueError):
    pass


def _dynkin(n, bonds):
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = -2
    for a, b in bonds:
        G[a - 1][b - 1] = G[b - 1][a - 1] = 1
    return tuple(tuple(r) for r in G)


def _a(n):
    return _dynkin(n, [(i, i + 1) for i in range(1, n)])


def _d(n):
    return _dynkin(n, [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)])


def _e(n):
    return _dynkin(n, [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)])


_ATOM = re.compile(r"^(U|A(\d+)|D(\d+)|E([678])|C86|MINUS(4|8))$")


def atom_gram(atom: str):
    m = _ATOM.match(atom)
    if not m:
        raise CatalogError(f"unknown lattice atom {atom!r}")
    if atom == "U":
        return U_GRAM
    if atom == "C86":
        return C86_GRAM
    if atom.startswith("MINUS"):
        return ((-int(atom[5:]),),)
    n = int(atom[1:])
    if atom[0] == "A" and n >= 1:
        return _a(n)
    if atom[0] == "D" and n >= 4:
        return _d(n)
    if atom[0] == "E":
        return _e(n)
    raise CatalogError(f"unknown lattice atom {atom!r}")


@dataclass(frozen=True)
class NamedLattice:
    """Direct sum of atoms, e.g. ``U+E6+E8``; the empty sum is the zero lattice."""

    atoms: tuple[str, ...]

    def __str__(self):
        return "+".join(self.atoms) if self.atoms else "0"

    def __add__(self, other: "NamedLattice") -> "NamedLattice":
        return NamedLattice(self.atoms + other.atoms)

    @property
    def rank(self) -> int:
        return sum(len(atom_gram(a)) for a in self.atoms)

    def blocks(self):
        """(atom, offset) pairs locating each summand in the block Gram."""
        k = 0
        for a in self.atoms:
            yield a, k
            k += len(atom_gram(a))


def parse_lattice(expr: str) -> NamedLattice:
    """Parse ``"U+A2"``, ``"U+E6+E8"``, ``"C86"``, ``"K3"``, ``"E8^2"``, ``"(-4)"``."""
    text = expr.replace(" ", "").replace("⊕", "+").upper()
    if text in ("", "0"):
        return NamedLattice(())
    atoms = []
    for term in text.split("+"):
        mult = 1
        if "^" in term:
            term, power = term.split("^", 1)
            if not power.isdigit():
                raise CatalogError(f"bad multiplicity in {expr!r}")
            mult = int(power)
        term = {"(-4)": "MINUS4", "-4": "MINUS4", "(-8)": "MINUS8", "-8": "MINUS8",
                "C_8^6": "C86", "C8^6": "C86"}.get(term, term)
        if term == "K3":
            parts = ["U", "U", "U", "E8", "E8"]
        elif term == "0":
            parts = []
        else:
            atom_gram(term)
            parts = [term]
        atoms.extend(parts * mult)
    return NamedLattice(tuple(atoms))


K3 = parse_lattice("K3")


def gram_of(N: NamedLattice | str) -> GramLattice:
    if isinstance(N, str):
        N = parse_lattice(N)
    if not N.atoms:
        raise CatalogError("the zero lattice has no Gram matrix")
    return GramLattice.from_matrix(block_diag(*(atom_gram(a) for a in N.atoms)))


NISHIYAMA = {
    "A1": "E7", "A2": "E6", "A3": "D5", "A4": "A4", "A5": "A1+A2",
    "A6": "C86", "A7": "MINUS8",
    "D4": "D4", "D5": "A3", "D6": "A1+A1", "D7": "MINUS4",
    "E6": "A2", "E7": "A1",
}


def nishiyama_complement(t: str) -> NamedLattice:
    """Orthogonal complement in E8 of a primitive ADE sublattice."""
    key = t.upper().replace("_", "")
    if key not in NISHIYAMA:
        raise CatalogError(f"{t!r} is not in the complement table")
    return parse_lattice(NISHIYAMA[key])


# --- short vectors --------------------------------------------------------


def _ldl(A):
    """Quadratic-form decomposition q(x) = sum Q_ii (x_i + sum_{j>i} Q_ij x_j)^2."""
    n = len(A)
    Q = [[Fraction(x) for x in row] for row in A]
    for i in range(n):
        for j in range(i + 1, n):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                Q[k][l] -= Q[k][i] * Q[i][l]
    return Q


def short_vectors(G, max_norm: int) -> list[tuple[int, ...]]:
    """All nonzero x with -x^T G x <= max_norm, for negative-definite G.

    Exact Fincke-Pohst enumeration over the rational decomposition of -G.
    Sorted by norm, then lexicographically.
    """
    n = len(G)
    A = [[-x for x in row] for row in G]
    Q = _ldl(A)
    if any(Q[i][i] <= 0 for i in range(n)):
        raise LatticeError("short vector enumeration needs a negative-definite form")
    out = []
    x = [0] * n
    bound = Fraction(max_norm)

    def rec(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        c = -sum(Q[i][j] * x[j] for j in range(i + 1, n))
        span = math.sqrt(float(remaining / Q[i][i])) + 1
        lo = math.floor(float(c) - span)
        hi = math.ceil(float(c) + span)
        for v in range(lo, hi + 1):
            t = Q[i][i] * (v - c) ** 2
            if t <= remaining:
                x[i] = v
                rec(i - 1, remaining - t)
        x[i] = 0

    rec(n - 1, bound)
    Gm = [list(r) for r in G]
    out.sort(key=lambda v: (-_norm(Gm, v), v))
    return out


def _norm(G, v):
    return sum(v[i] * G[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def roots_of(L: GramLattice) -> list[tuple[int, ...]]:
    """All norm -2 vectors of a negative-definite lattice, lexicographic order."""
    if L.signature != (0, L.rank):
        raise LatticeError("root enumeration needs a negative-definite lattice")
    G = L.matrix()
    return sorted(v for v in short_vectors(G, 2) if _norm(G, v) == -2)


# --- embeddings and complements -------------------------------------------


@dataclass(frozen=True)
class EmbeddingWitness:
    ambient: NamedLattice | None
    ambient_gram: tuple[tuple[int, ...], ...]
    sub_basis: tuple[tuple[int, ...], ...]
    complement_basis: tuple[tuple[int, ...], ...] = field(default=())

    def sub_gram(self) -> list[list[int]]:
        S = [list(v) for v in self.sub_basis]
        return matmul(matmul(S, self.ambient_gram), transpose(S))

    @property
    def primitive(self) -> bool:
        return is_saturated([list(v) for v in self.sub_basis])


def make_witness(ambient_gram, sub_basis, ambient: NamedLattice | None = None) -> EmbeddingWitness:
    A = tuple(tuple(int(x) for x in r) for r in ambient_gram)
    S = tuple(tuple(int(x) for x in v) for v in sub_basis)
    if S:
        if det_exact(matmul(matmul(S, A), transpose(S))) == 0:
            raise CatalogError("sub-basis spans a degenerate sublattice")
        pairing = matmul(S, A)
        K = integer_kernel(pairing)
    else:
        K = [[int(i == j) for j in range(len(A))] for i in range(len(A))]
    return EmbeddingWitness(ambient, A, S, tuple(tuple(v) for v in K))


def orthogonal_complement(W: EmbeddingWitness) -> GramLattice:
    K = [list(v) for v in W.complement_basis]
    if not K:
        raise CatalogError("complement is zero")
    return GramLattice.from_matrix(matmul(matmul(K, W.ambient_gram), transpose(K)))


@lru_cache(maxsize=None)
def _e8_pool(max_norm: int):
    G = atom_gram("E8")
    vecs = short_vectors(G, max_norm)
    by_norm = {}
    for v in vecs:
        by_norm.setdefault(-_norm(G, v), []).append(v)
    return {k: np.array(sorted(v), dtype=np.int64) for k, v in by_norm.items()}


def _target_gram(t):
    if isinstance(t, str):
        t = parse_lattice(t)
    if isinstance(t, NamedLattice):
        return [list(r) for r in gram_of(t).gram]
    return [list(r) for r in t]


def embed_in_E8(t, primitive: bool = True) -> EmbeddingWitness:
    """Vectors of E8 realising the Gram matrix of ``t``.

    Depth-first over short vectors in lexicographic order; the first hit
    whose span is saturated is returned (any hit if ``primitive=False``).
    """
    T = _target_gram(t)
    k = len(T)
    if k > 8 or any(T[i][i] >= 0 or T[i][i] % 2 for i in range(k)):
        raise CatalogError("target must be even negative definite of rank <= 8")
    G = np.array(atom_gram("E8"), dtype=np.int64)
    pools = _e8_pool(max(-T[i][i] for i in range(k)))
    cand = [pools.get(-T[i][i]) for i in range(k)]
    if any(c is None for c in cand):
        raise CatalogError("no E8 vectors of a required norm")
    cand_G = [c @ G for c in cand]
    chosen = []

    def rec(i):
        if i == k:
            basis = [list(map(int, v)) for v in chosen]
            return not primitive or is_saturated(basis)
        mask = np.ones(len(cand[i]), dtype=bool)
        for j, v in enumerate(chosen):
            mask &= cand_G[i] @ v == T[i][j]
        for row in cand[i][mask]:
            chosen.append(row)
            if rec(i + 1):
                return True
            chosen.pop()
        return False

    if not rec(0):
        raise CatalogError(f"no {'primitive ' if primitive else ''}embedding of {t} in E8")
    basis = [tuple(int(x) for x in v) for v in chosen]
    return make_witness(atom_gram("E8"), basis, parse_lattice("E8"))


def embed(ambient: NamedLattice | str, sub: NamedLattice | str) -> EmbeddingWitness:
    """Embed a named lattice into a named ambient.

    Summands equal to an unused ambient summand map onto it verbatim; the
    remaining summands are embedded together into the next unused E8 block.
    """
    if isinstance(ambient, str):
        ambient = parse_lattice(ambient)
    if isinstance(sub, str):
        sub = parse_lattice(sub)
    n = ambient.rank
    free = list(ambient.blocks())
    basis = []
    rest = []
    for atom in sub.atoms:
        slot = next((b for b in free if b[0] == atom), None)
        if slot is None:
            rest.append(atom)
            continue
        free.remove(slot)
        for r in range(len(atom_gram(atom))):
            v = [0] * n
            v[slot[1] + r] = 1
            basis.append(v)
    if rest:
        slot = next((b for b in free if b[0] == "E8"), None)
        if slot is None:
            raise CatalogError(f"no free E8 summand for {'+'.join(rest)}")
        inner = embed_in_E8(NamedLattice(tuple(rest)))
        for w in inner.sub_basis:
            v = [0] * n
            v[slot[1]:slot[1] + 8] = w
            basis.append(v)
    return make_witness(gram_of(ambient).gram, basis, ambient)


# --- invariants and identification ----------------------------------------


@dataclass(frozen=True)
class Invariants:
    rank: int
    signature: tuple[int, int]
    abs_det: int
    factors: tuple[int, ...]
    q_multiset: tuple[Fraction, ...]


def invariants(L: GramLattice) -> Invariants:
    A = discriminant_form(L)
    return Invariants(L.rank, L.signature, abs(L.det), A.invariant_factors, A.q_multiset())


@dataclass
class Identification:
    candidate: NamedLattice
    tier: str  # "congruent", "invariants" or "none"
    witness: list | None = None
    mismatch: list = field(default_factory=list)

    @property
    def invariant_match(self) -> bool:
        return self.tier in ("congruent", "invariants")


def _box_vectors(n, bound):
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([r] * n), indexing="ij"), axis=-1).reshape(-1, n)
    grid = grid[np.any(grid != 0, axis=1)]
    key = np.lexsort(tuple(grid[:, ::-1].T) + (np.abs(grid).sum(1), np.abs(grid).max(1)))
    return grid[key]


def congruence_search(G, T, bound: int = DEFAULT_SEARCH_BOUND):
    """Find integer P with |det P| = 1 and P^T G P = T, or None.

    Columns of P range over the box [-bound, bound]^n in order of max-norm,
    then 1-norm, then lexicographic; partial column sets must stay
    primitive.
    """
    n = len(G)
    if len(T) != n:
        return None
    Gn = np.array(G, dtype=np.int64)
    box = _box_vectors(n, bound)
    norms = np.einsum("ij,jk,ik->i", box, Gn, box)
    pools = {}
    for i in range(n):
        t = T[i][i]
        if t not in pools:
            sel = box[norms == t]
            pools[t] = (sel, sel @ Gn)
    chosen = []

    def rec(i):
        if i == n:
            return abs(det_exact([list(map(int, v)) for v in chosen])) == 1
        cand, candG = pools[T[i][i]]
        mask = np.ones(len(cand), dtype=bool)
        for j, v in enumerate(chosen):
            mask &= candG @ v == T[i][j]
        for row in cand[mask]:
            chosen.append(row)
            if is_saturated([list(map(int, v)) for v in chosen]) and rec(i + 1):
                return True
            chosen.pop()
        return False

    if not rec(0):
        return None
    # columns of P are the chosen vectors
    return [[int(chosen[c][r]) for c in range(n)] for r in range(n)]


def check_congruence(G, T, P) -> bool:
    return (
        abs(det_exact(P)) == 1
        and matmul(matmul(transpose(P), [list(r) for r in G]), P) == [list(r) for r in T]
    )


def identify(L: GramLattice, candidates, search_bound: int = DEFAULT_SEARCH_BOUND) -> list[Identification]:
    """Compare ``L`` with each candidate: invariants, then (rank <= 4) congruence."""
    inv = invariants(L)
    out = []
    for N in candidates:
        if isinstance(N, str):
            N = parse_lattice(N)
        T = gram_of(N)
        tinv = invariants(T)
        mismatch = [name for name in Invariants.__dataclass_fields__
                    if getattr(inv, name) != getattr(tinv, name)]
        if mismatch:
            out.append(Identification(N, "none", None, mismatch))
            continue
        if L.rank <= 4:
            P = congruence_search(L.matrix(), T.matrix(), search_bound)
            if P is not None and check_congruence(L.gram, T.gram, P):
                out.append(Identification(N, "congruent", P))
                continue
        out.append(Identification(N, "invariants"))
    return out


def mirror_criterion(A: GramLattice, B: GramLattice) -> bool:
    """Nikulin gluing test for A and B as mutual complements in the K3 lattice."""
    if not (A.is_even and B.is_even):
        return False
    qa, qb = discriminant_form(A), discriminant_form(B)
    return (
        qa.invariant_factors == qb.invariant_factors
        and qa.q_multiset() == qb.negated_multiset()
        and A.signature[0] + B.signature[0] == 3
        and A.signature[1] + B.signature[1] == 19
    )


def with_u(L: GramLattice) -> GramLattice:
    """U + L."""
    return GramLattice.from_matrix(block_diag(U_GRAM, L.gram))
