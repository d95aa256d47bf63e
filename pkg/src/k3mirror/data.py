"""Built-in vector lists and expected values for the six transpose-dual pairs.

``delta_vectors`` are the one-simplices of the fan of Delta (lattice points
on the edges of Delta*), ``dual_vectors`` those of Delta* (lattice points on
the edges of Delta). Lists keep the printed order, so index ``i`` (1-based)
below is the divisor ``D_i`` / ``D'_i``.
"""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Expected:
    s: int
    s_dual: int
    rk_l0: int
    rho: int
    rho_dual: int
    det: int
    det_dual: int
    pic: str
    pic_dual: str
    # the ADE-type piece X with Pic(Delta*) = U + X ("" when Pic(Delta*) = U)
    dual_root_part: str
    dependent: tuple[int, ...]
    dependent_dual: tuple[int, ...]


@dataclass(frozen=True)
class CasePair:
    name: str
    singularity: str
    dual_singularity: str
    delta_vectors: tuple[tuple[int, int, int], ...]
    dual_vectors: tuple[tuple[int, int, int], ...]
    expected: Expected
    # re-taken generators of Pic(Delta*): {index: coefficient} per new generator
    dual_retake: tuple[dict, ...] = ()
    # printed divisor relations, dependent index -> {index: coefficient}
    relations: dict = field(default_factory=dict)
    relations_dual: dict = field(default_factory=dict)
    gram: tuple = ()
    gram_dual: tuple = ()
    gram_dual_basis: tuple[int, ...] = ()


Q12_GRAM = (
    (-2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0),
    (0, -2, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1),
    (1, 0, 0, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 0, 0, 0, 1, -2, 1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 1, -2, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 1, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2, 0, 0),
    (0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -2, 1),
    (0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, -2),
)

Q12_DUAL_GRAM = (
    (-2, 1, 0, 1),
    (1, 0, 0, 0),
    (0, 0, -2, 1),
    (1, 0, 1, -2),
)

Q12 = CasePair(
    name="Q12/E18",
    singularity="Q12",
    dual_singularity="E18",
    delta_vectors=(
        (1, 2, 2), (0, 1, 1), (-8, -11, -9),
        (1, -2, 0), (1, 1, 0), (-4, -5, -4),
        (-7, -10, -8), (-6, -9, -7), (-5, -8, -6),
        (-4, -7, -5), (-3, -6, -4), (-2, -5, -3),
        (-1, -4, -2), (0, -3, -1), (1, 0, 1),
        (-5, -7, -6), (-2, -3, -3), (1, -1, 0),
        (1, 0, 0),
    ),
    dual_vectors=(
        (1, 1, -2), (1, -2, 1), (2, -3, 2), (-1, 0, 1),
        (-1, 0, 0), (1, 0, -1), (1, -1, 0),
    ),
    expected=Expected(
        s=19, s_dual=7, rk_l0=0, rho=16, rho_dual=4, det=-3, det_dual=-3,
        pic="U+E6+E8", pic_dual="U+A2", dual_root_part="A2",
        dependent=(1, 2, 6), dependent_dual=(1, 4, 5),
    ),
    dual_retake=({2: 1, 3: 1}, {3: 1}, {6: 1}, {3: 1, 7: 1}),
    relations={
        1: {4: -9, 5: 3, 7: -1, 8: -2, 9: -3, 10: -4, 11: -5, 12: -6,
            13: -7, 14: -8, 15: -5, 16: 1, 17: 2, 18: -5, 19: -1},
        2: {3: 1, 4: 10, 5: -2, 7: 2, 8: 3, 9: 4, 10: 5, 11: 6, 12: 7,
            13: 8, 14: 9, 15: 5, 17: -1, 18: 6, 19: 2},
        6: {3: -2, 4: -2, 5: 1, 7: -2, 8: -2, 9: -2, 10: -2, 11: -2,
            12: -2, 13: -2, 14: -2, 15: -1, 16: -1, 18: -1},
    },
    relations_dual={
        1: {2: 2, 3: 3, 7: 1},
        4: {2: 3, 3: 4, 6: 1, 7: 2},
        5: {3: 1},
    },
    gram=Q12_GRAM,
    gram_dual=Q12_DUAL_GRAM,
    gram_dual_basis=(2, 3, 6, 7),
)

Z10 = CasePair(
    name="Z1,0/E19",
    singularity="Z1,0",
    dual_singularity="E19",
    delta_vectors=(
        (1, -1, 2), (0, -1, 1), (0, 0, 1),
        (4, 2, -1), (-6, 2, -11), (2, 0, 1),
        (3, 1, 0), (-2, 0, -3), (-4, 1, -7),
        (2, 1, 0), (-3, 1, -5), (3, 2, -2),
        (2, 2, -3), (1, 2, -4), (0, 2, -5),
        (-1, 2, -6), (-2, 2, -7), (-3, 2, -8),
        (-4, 2, -9), (-5, 2, -10),
    ),
    dual_vectors=(
        (1, -3, -1), (2, 0, -1), (1, 0, -1),
        (0, -1, -1), (-1, 2, 1), (0, 1, 0),
    ),
    expected=Expected(
        s=20, s_dual=6, rk_l0=0, rho=17, rho_dual=3, det=2, det_dual=2,
        pic="U+E7+E8", pic_dual="U+A1", dual_root_part="A1",
        dependent=(1, 2, 3), dependent_dual=(1, 2, 5),
    ),
    dual_retake=({3: 1, 4: 1}, {4: 1}, {6: 1, 4: -1}),
)

E20 = CasePair(
    name="E20/E20",
    singularity="E20",
    dual_singularity="E20",
    delta_vectors=(
        (-1, -1, 2), (-1, -1, -1), (-1, 11, 2),
        (1, -1, 0), (-1, -1, 1), (-1, -1, 0),
        (-1, 3, 0), (-1, 7, 1), (0, -1, 1),
        (0, 5, 1), (-1, 0, 2), (-1, 1, 2),
        (-1, 2, 2), (-1, 3, 2), (-1, 4, 2),
        (-1, 5, 2), (-1, 6, 2), (-1, 7, 2),
        (-1, 8, 2), (-1, 9, 2), (-1, 10, 2),
    ),
    dual_vectors=(
        (0, 1, 0), (1, 0, 0), (-1, 0, -1),
        (-2, -1, 4), (-1, 0, 2),
    ),
    expected=Expected(
        s=21, s_dual=5, rk_l0=0, rho=18, rho_dual=2, det=-1, det_dual=-1,
        pic="U+E8+E8", pic_dual="U", dual_root_part="",
        dependent=(10, 13, 14), dependent_dual=(1, 2, 3),
    ),
)

Q20 = CasePair(
    name="Q2,0/Z17",
    singularity="Q2,0",
    dual_singularity="Z17",
    delta_vectors=(
        (0, 1, 1), (1, 2, 2), (1, 1, 2),
        (0, -1, 0), (-6, -7, -9), (1, 0, -2),
        (1, 0, 1), (1, 1, 0), (-2, -3, -3),
        (-4, -5, -6), (1, 0, -1), (1, 0, 0),
        (-5, -6, -8), (-4, -5, -7), (-3, -4, -6),
        (-2, -3, -5), (-1, -2, -4), (0, -1, -3),
        (-3, -3, -4),
    ),
    dual_vectors=(
        (1, -2, 1), (-1, 1, 0), (2, 1, -2), (1, 0, -1),
        (0, 1, -1), (-1, 0, 0), (1, -1, 0),
    ),
    expected=Expected(
        s=19, s_dual=7, rk_l0=0, rho=16, rho_dual=4, det=-7, det_dual=-7,
        pic="U+A6+E8", pic_dual="U+C86", dual_root_part="C86",
        dependent=(1, 2, 3), dependent_dual=(1, 2, 6),
    ),
    dual_retake=({3: 1}, {3: 1, 4: 1}, {3: 2, 4: 1, 5: -1}, {7: 1, 3: -1}),
)

E25 = CasePair(
    name="E25/Z19",
    singularity="E25",
    dual_singularity="Z19",
    delta_vectors=(
        (-1, 2, 0), (-1, -1, 9), (-1, -1, -1),
        (-1, 2, -1), (1, -1, -1), (-1, 1, 3),
        (-1, 0, 6), (-1, -1, 8), (-1, -1, 7),
        (-1, -1, 6), (-1, -1, 5), (-1, -1, 4),
        (-1, -1, 3), (-1, -1, 2), (-1, -1, 1),
        (-1, -1, 0), (-1, 0, -1), (-1, 1, -1),
        (0, -1, 4), (0, -1, -1),
    ),
    dual_vectors=(
        (0, 1, 0), (0, 0, 1), (-3, -2, 0),
        (-5, -3, -1), (1, 0, 0), (-1, -1, 0),
    ),
    expected=Expected(
        s=20, s_dual=6, rk_l0=0, rho=17, rho_dual=3, det=2, det_dual=2,
        pic="U+E7+E8", pic_dual="U+A1", dual_root_part="A1",
        dependent=(1, 4, 5), dependent_dual=(1, 2, 3),
    ),
    dual_retake=({4: 1}, {5: 1, 4: -8}, {6: 1, 4: -1}),
)

Q18 = CasePair(
    name="Q18/E30",
    singularity="Q18",
    dual_singularity="E30",
    delta_vectors=(
        (1, -1, -1), (-1, -1, -1), (-1, -1, 8),
        (1, -1, 0), (-1, 2, -1), (0, -1, -1),
        (-1, -1, 0), (-1, -1, 1), (-1, -1, 2),
        (-1, -1, 3), (-1, -1, 4), (-1, -1, 5),
        (-1, -1, 6), (-1, -1, 7), (0, -1, 4),
        (-1, 0, -1), (-1, 1, -1), (-1, 0, 5),
        (-1, 0, 2),
    ),
    dual_vectors=(
        (0, 0, 1), (1, 0, 0), (-4, -3, -1), (-3, -2, 0),
        (0, 1, 0), (-2, -1, 0), (-1, 0, 0),
    ),
    expected=Expected(
        s=19, s_dual=7, rk_l0=0, rho=16, rho_dual=4, det=-3, det_dual=-3,
        pic="U+E6+E8", pic_dual="U+A2", dual_root_part="A2",
        dependent=(1, 4, 5), dependent_dual=(1, 2, 5),
    ),
    dual_retake=({3: 1}, {4: 1, 3: 1}, {6: 1, 3: -1}, {7: 1}),
)

CASES = (Q12, Z10, E20, Q20, E25, Q18)

# GL_3(Z) matrices acting on row vectors, m M = m'
M1 = ((-1, 0, 1), (1, 1, -2), (2, -3, 2))
M2 = ((-1, 2, 1), (1, -3, -1), (2, 0, -1))
ISOMETRIES = (("Q18/E30", "Q12/E18", M1), ("E25/Z19", "Z1,0/E19", M2))

# endpoints of the only rk L0 contributing edge for (Z13, J3,0) and its dual
Z13_EDGE = ((0, 0, 1), (-2, -6, -9))
Z13_DUAL_EDGE = ((8, -1, -1), (-1, 2, -1))
Z13_EDGE_EXPECTED = (1, 2)


def case_by_name(name: str) -> CasePair:
    key = name.replace(",", "").replace("_", "").lower()
    for c in CASES:
        names = {c.name, c.singularity, c.dual_singularity}
        if any(key == n.replace(",", "").replace("_", "").lower() for n in names):
            return c
        if key == c.name.replace(",", "").replace("/", "").lower():
            return c
    raise KeyError(f"unknown case {name!r}")


@dataclass(frozen=True)
class Erratum:
    case: str
    side: str  # "delta", "dual", "dependent_dual", "retake_dual"
    index: int  # 1-based
    printed: object
    corrected: object
    reason: str


ERRATA = (
    Erratum(
        "Q18/E30", "delta", 19, (-1, 0, 2), (-1, 1, 2),
        "(-1,0,2) lies on no edge of Delta*; (-1,1,2) is the missing interior "
        "point of the edge (-1,-1,8)-(-1,2,-1), and with it the dual action of "
        "M1 maps the list onto the Q12 list",
    ),
    Erratum(
        "E25/Z19", "dependent_dual", 0, (1, 2, 3), None,
        "v1, v2, v3 have coefficient determinant -3, so D'4, D'5, D'6 span an "
        "index-3 sublattice (Gram det 18, not 2); any unimodular choice gives det 2",
    ),
    Erratum(
        "E25/Z19", "retake_dual", 0, ({4: 1}, {5: 1, 4: -8}, {6: 1, 4: -1}), None,
        "the re-taken generators lie in the index-3 sublattice and have Gram "
        "det 18, so they cannot give U+A1",
    ),
    Erratum(
        "Q12/E18", "retake_dual", 0, ({2: 1, 3: 1}, {3: 1}, {6: 1}, {3: 1, 7: 1}), None,
        "on the printed 4x4 matrix the first and last re-taken generators pair "
        "to 2, so the Gram is not block diagonal U+A2 (det is still -3)",
    ),
)


def errata_for(case: str, side: str) -> list[Erratum]:
    return [e for e in ERRATA if e.case == case and e.side == side]


def corrected_delta_vectors(c: CasePair) -> tuple:
    vecs = list(c.delta_vectors)
    for e in errata_for(c.name, "delta"):
        assert vecs[e.index - 1] == e.printed
        vecs[e.index - 1] = e.corrected
    return tuple(vecs)
