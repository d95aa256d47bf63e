"""Integral 3-dimensional polytopes with the origin as unique interior point."""

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .linalg import primitive, rank, vector_gcd

Vec = tuple[int, int, int]


class PolytopeError(ValueError):
    pass


class NotReflexiveError(PolytopeError):
    def __init__(self, message, dual_vertex=None):
        super().__init__(message)
        self.dual_vertex = dual_vertex


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


@dataclass(frozen=True)
class Facet:
    """Supporting inequality ``normal . x >= -offset``."""

    normal: Vec
    offset: int

    def value(self, x) -> int:
        return _dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class Face:
    dim: int
    vertices: tuple[Vec, ...]
    lattice_points: tuple[Vec, ...] = field(compare=False)
    interior_count: int = field(compare=False)


@dataclass(frozen=True, eq=False)
class Polytope3:
    vertices: tuple[Vec, ...]
    facets: tuple[Facet, ...]
    name: str = ""

    def __eq__(self, other):
        if not isinstance(other, Polytope3):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    @cached_property
    def vertex_facets(self) -> dict:
        """vertex -> indices of the facets containing it."""
        return {
            v: frozenset(k for k, f in enumerate(self.facets) if f.value(v) == 0)
            for v in self.vertices
        }

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        vf = self.vertex_facets
        out = []
        for i, j in itertools.combinations(range(len(self.vertices)), 2):
            if len(vf[self.vertices[i]] & vf[self.vertices[j]]) >= 2:
                out.append((i, j))
        return tuple(out)

    @cached_property
    def lattice_points(self) -> tuple[Vec, ...]:
        lo = [min(v[k] for v in self.vertices) for k in range(3)]
        hi = [max(v[k] for v in self.vertices) for k in range(3)]
        pts = []
        for p in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            if all(f.value(p) >= 0 for f in self.facets):
                pts.append(p)
        return tuple(pts)

    def interior_points(self) -> list[Vec]:
        return [p for p in self.lattice_points
                if all(f.value(p) > 0 for f in self.facets)]

    def to_json(self) -> dict:
        return {"name": self.name, "vertices": [list(v) for v in self.vertices]}

    def renamed(self, name: str) -> "Polytope3":
        return Polytope3(self.vertices, self.facets, name)


def _supporting_planes(points):
    planes = set()
    for a, b, c in itertools.combinations(points, 3):
        n = _cross(_sub(b, a), _sub(c, a))
        if n == (0, 0, 0):
            continue
        n = primitive(n)
        vals = [_dot(n, _sub(p, a)) for p in points]
        if all(v >= 0 for v in vals):
            planes.add((n, _dot(n, a)))
        elif all(v <= 0 for v in vals):
            m = (-n[0], -n[1], -n[2])
            planes.add((m, _dot(m, a)))
    return planes


def hull(points, name: str = "", check_interior: bool = True) -> Polytope3:
    """Convex hull of integer points in Z^3.

    Facets are found as supporting planes through triples of input points
    (exact integer orientation tests). Non-extreme inputs are dropped from
    the vertex list but remain lattice points of the result.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if any(len(p) != 3 for p in pts):
        raise PolytopeError("points must be 3-vectors")
    if len(pts) < 4 or rank([_sub(p, pts[0]) for p in pts[1:]]) < 3:
        raise PolytopeError("points do not span 3 dimensions")
    facets = []
    for n, d in sorted(_supporting_planes(pts)):
        # n . x >= d on all points; rewrite as n . x >= -offset
        facets.append(Facet(n, -d))
    if any(f.offset <= 0 for f in facets):
        raise PolytopeError("origin is not in the interior")
    vertices = []
    for p in pts:
        normals = [f.normal for f in facets if f.value(p) == 0]
        if len(normals) >= 3 and rank(normals) == 3:
            vertices.append(p)
    P = Polytope3(tuple(vertices), tuple(facets), name)
    if check_interior:
        inner = P.interior_points()
        if inner != [(0, 0, 0)]:
            extra = [p for p in inner if p != (0, 0, 0)]
            raise PolytopeError(f"extra interior lattice points {extra[:5]}")
    return P


def is_reflexive(P: Polytope3) -> bool:
    return all(f.offset == 1 for f in P.facets)


def polar_dual(P: Polytope3, name: str | None = None) -> Polytope3:
    for f in P.facets:
        if f.offset != 1:
            vertex = tuple(Fraction(x, f.offset) for x in f.normal)
            raise NotReflexiveError(
                f"polar dual has non-integral vertex {tuple(str(x) for x in vertex)}",
                dual_vertex=vertex,
            )
    if name is None:
        name = P.name + "*" if P.name else ""
    return hull([f.normal for f in P.facets], name=name)


def segment_interior_count(a, b) -> int:
    """l* of the lattice segment [a, b]."""
    return vector_gcd(_sub(b, a)) - 1


def segment_points(a, b) -> list[Vec]:
    g = vector_gcd(_sub(b, a))
    step = tuple(x // g for x in _sub(b, a))
    return [tuple(a[k] + t * step[k] for k in range(3)) for t in range(g + 1)]


def face_lattice(P: Polytope3) -> list[Face]:
    """All faces of dimension 0, 1, 2 with lattice points and l*."""
    faces = []
    for v in P.vertices:
        faces.append(Face(0, (v,), (v,), 1))
    for i, j in P.edges:
        a, b = P.vertices[i], P.vertices[j]
        pts = segment_points(a, b)
        faces.append(Face(1, tuple(sorted((a, b))), tuple(pts), len(pts) - 2))
    for k, f in enumerate(P.facets):
        verts = tuple(sorted(v for v in P.vertices if f.value(v) == 0))
        pts = tuple(p for p in P.lattice_points if f.value(p) == 0)
        others = [g for m, g in enumerate(P.facets) if m != k]
        inner = sum(1 for p in pts if all(g.value(p) > 0 for g in others))
        faces.append(Face(2, verts, pts, inner))
    return faces


def edge_faces(P: Polytope3) -> list[Face]:
    return [f for f in face_lattice(P) if f.dim == 1]


def _containing_facets(P: Polytope3, face: Face):
    common = None
    for v in face.vertices:
        fs = P.vertex_facets.get(tuple(v))
        if fs is None:
            raise PolytopeError(f"{v} is not a vertex of the polytope")
        common = fs if common is None else common & fs
    return common


def dual_face(P: Polytope3, face: Face, dual: Polytope3 | None = None) -> Face:
    """The face {y in P* : (x, y) = -1 for all x in face}."""
    if not is_reflexive(P):
        raise NotReflexiveError("dual faces need a reflexive polytope")
    lattice = {(f.dim, f.vertices): f for f in face_lattice(P)}
    if (face.dim, tuple(sorted(face.vertices))) not in lattice:
        raise PolytopeError("not a face of the polytope")
    common = _containing_facets(P, face)
    Q = dual if dual is not None else polar_dual(P)
    verts = tuple(sorted(P.facets[k].normal for k in common))
    target_dim = 2 - face.dim
    for g in face_lattice(Q):
        if g.dim == target_dim and g.vertices == verts:
            return g
    raise PolytopeError("dual face not found")


def euler_characteristic(P: Polytope3) -> int:
    return len(P.vertices) - len(P.edges) + len(P.facets)


def load_polytope(path) -> Polytope3:
    with open(path) as fh:
        data = json.load(fh)
    return polytope_from_json(data)


def polytope_from_json(data) -> Polytope3:
    if not isinstance(data, dict) or "vertices" not in data:
        raise PolytopeError('expected an object with a "vertices" list')
    verts = data["vertices"]
    for v in verts:
        if not isinstance(v, list) or len(v) != 3 or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in v
        ):
            raise PolytopeError(f"non-integral or malformed vertex {v!r}")
    return hull(verts, name=str(data.get("name", "")))

