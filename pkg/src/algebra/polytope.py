"""
Newton polygons, integral indecomposability and the irreducibility
certificates they give.

A lattice polygon that is not a Minkowski sum of two lattice polygons with at
least one edge each is integrally indecomposable; a polynomial whose Newton
polygon is integrally indecomposable is irreducible over every extension of
the coefficient field.
"""

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from pydantic import BaseModel

from algebra.errors import BoundExceededError, PreconditionError
from algebra.polynomial import Polynomial

Point = Tuple[int, int]

DEFAULT_BOUND = 16


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Sequence[Point]) -> List[Point]:
    """Monotone chain; counterclockwise from the lexicographically lowest point, collinear points dropped."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower: List[Point] = []
    for p in pts:
        while len(lower) > 1 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(pts):
        while len(upper) > 1 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (_cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


@dataclass(frozen=True)
class LatticePolygon:
    vertices: Tuple[Point, ...]
    points: Tuple[Point, ...]

    @classmethod
    def from_points(cls, points: Sequence[Point]) -> "LatticePolygon":
        support = tuple(sorted(set((int(x), int(y)) for x, y in points)))
        if not support:
            raise PreconditionError("a lattice polygon needs at least one point")
        return cls(tuple(convex_hull(support)), support)

    @property
    def kind(self) -> str:
        return {1: "point", 2: "segment", 3: "triangle"}.get(len(self.vertices), "polygon")

    def edges(self) -> List[Point]:
        """Edge vectors, counterclockwise from the first vertex; a segment has two opposite edges."""
        n = len(self.vertices)
        if n == 1:
            return []
        return [(self.vertices[(i + 1) % n][0] - self.vertices[i][0],
                 self.vertices[(i + 1) % n][1] - self.vertices[i][1]) for i in range(n)]

    def translate(self, v: Point) -> "LatticePolygon":
        def shift(p: Point) -> Point:
            return p[0] + v[0], p[1] + v[1]

        return LatticePolygon(tuple(shift(p) for p in self.vertices), tuple(sorted(shift(p) for p in self.points)))

    def on_boundary(self, p: Point) -> bool:
        n = len(self.vertices)
        if n == 1:
            return p == self.vertices[0]
        return any(_on_segment(p, self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n))

    def edge_points(self) -> List[Point]:
        """Support points on the boundary that are not vertices."""
        return [p for p in self.points if p not in self.vertices and self.on_boundary(p)]

    def interior_points(self) -> List[Point]:
        return [p for p in self.points if p not in self.vertices and not self.on_boundary(p)]

    def contains(self, p: Point) -> bool:
        n = len(self.vertices)
        if n <= 2:
            return self.on_boundary(p)
        return all(_cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0 for i in range(n))

    def describe(self) -> str:
        return " ".join(f"({x},{y})" for x, y in self.vertices)


def newton_polygon(p: Polynomial, variables: Tuple[str, str]) -> LatticePolygon:
    if not p:
        raise PreconditionError("the zero polynomial has no Newton polygon")
    first, second = (p.ring.table.index(v) for v in variables)
    others = [name for name in p.variables() if name not in variables]
    if others:
        raise PreconditionError(f"polynomial involves {', '.join(others)}; substitute them first")
    return LatticePolygon.from_points([(m[first], m[second]) for m in p.terms])


def minkowski_sum(a: LatticePolygon, b: LatticePolygon) -> LatticePolygon:
    return LatticePolygon.from_points([(p[0] + q[0], p[1] + q[1]) for p in a.vertices for q in b.vertices])


def _half(v: Point) -> int:
    # Directions with angle in (-90, 90] first: that is the turn order leaving the lowest vertex.
    return 0 if v[0] > 0 or (v[0] == 0 and v[1] > 0) else 1


def _angle_cmp(u: Point, v: Point) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def polygon_from_edges(start: Point, edges: Sequence[Point]) -> LatticePolygon:
    """Walk the edge vectors in angular order from ``start``."""
    walk = [start]
    for e in sorted(edges, key=cmp_to_key(_angle_cmp)):
        last = walk[-1]
        walk.append((last[0] + e[0], last[1] + e[1]))
    return LatticePolygon.from_points(walk)


def _primitive_edges(poly: LatticePolygon) -> List[Tuple[Point, int]]:
    out = []
    for e in poly.edges():
        g = gcd(abs(e[0]), abs(e[1]))
        out.append(((e[0] // g, e[1] // g), g))
    return out


def brute_force_decompose(poly: LatticePolygon, bound: int) -> Optional[Tuple[LatticePolygon, LatticePolygon]]:
    """First closing sub-multiset of primitive edge vectors, in lexicographic multiplicity order."""
    xs = [v[0] for v in poly.vertices]
    ys = [v[1] for v in poly.vertices]
    if max(xs) - min(xs) > bound or max(ys) - min(ys) > bound:
        raise BoundExceededError(f"polygon {poly.describe()} exceeds coordinate bound {bound}")
    edges = _primitive_edges(poly)
    if not edges:
        return None
    total = tuple(g for _, g in edges)
    for counts in product(*(range(g + 1) for g in total)):
        if not any(counts) or counts == total:
            continue
        sx = sum(k * v[0] for k, (v, _) in zip(counts, edges))
        sy = sum(k * v[1] for k, (v, _) in zip(counts, edges))
        if sx or sy:
            continue
        a_edges = [v for k, (v, _) in zip(counts, edges) for _ in range(k)]
        b_edges = [v for k, (v, g) in zip(counts, edges) for _ in range(g - k)]
        a = polygon_from_edges(poly.vertices[0], a_edges)
        b = polygon_from_edges((0, 0), b_edges)
        logger.debug(f"Decomposition of {poly.describe()}: {a.describe()} + {b.describe()}")
        return a, b
    return None


class IndecomposabilityVerdict(BaseModel):
    status: str
    path: str
    vertices: List[Point]
    gcd: Optional[int] = None
    witness: Optional[List[List[Point]]] = None
    note: Optional[str] = None


def _scaled(poly: LatticePolygon, g: int, factor: int) -> LatticePolygon:
    v0 = poly.vertices[0]
    return LatticePolygon.from_points(
        [(v0[0] + factor * (v[0] - v0[0]) // g, v0[1] + factor * (v[1] - v0[1]) // g) for v in poly.vertices])


def integrally_indecomposable(poly: LatticePolygon, bound: int = DEFAULT_BOUND) -> IndecomposabilityVerdict:
    vertices = list(poly.vertices)
    if poly.kind == "point":
        return IndecomposabilityVerdict(status="Indecomposable", path="point", vertices=vertices,
                                        note="monomial: criterion inapplicable to irreducibility")
    if poly.kind in ("segment", "triangle"):
        v0 = poly.vertices[0]
        g = 0
        for v in poly.vertices[1:]:
            g = gcd(g, gcd(abs(v[0] - v0[0]), abs(v[1] - v0[1])))
        path = f"{poly.kind}_gcd"
        if g == 1:
            return IndecomposabilityVerdict(status="Indecomposable", path=path, vertices=vertices, gcd=g)
        unit = _scaled(poly, g, 1)
        rest = _scaled(poly, g, g - 1).translate((-v0[0], -v0[1]))
        return IndecomposabilityVerdict(status="Decomposable", path=path, vertices=vertices, gcd=g,
                                        witness=[list(unit.vertices), list(rest.vertices)])
    try:
        found = brute_force_decompose(poly, bound)
    except BoundExceededError as exc:
        return IndecomposabilityVerdict(status="Unknown", path="bound_exceeded", vertices=vertices, note=str(exc))
    if found is None:
        return IndecomposabilityVerdict(status="Indecomposable", path="exhaustive_search", vertices=vertices)
    a, b = found
    return IndecomposabilityVerdict(status="Decomposable", path="exhaustive_search", vertices=vertices,
                                    witness=[list(a.vertices), list(b.vertices)])


class IrreducibilityVerdict(BaseModel):
    status: str
    polynomial: str
    variables: List[str]
    stripped_content: str
    content_free: str
    vertices: List[Point]
    edge_points: List[Point]
    interior_points: List[Point]
    indecomposability: IndecomposabilityVerdict
    statement: str


def irreducibility_verdict(p: Polynomial, variables: Tuple[str, str],
                           bound: int = DEFAULT_BOUND) -> IrreducibilityVerdict:
    """Irreducible only on an indecomposable, non-monomial Newton polygon; Unknown otherwise."""
    if not p:
        raise PreconditionError("the zero polynomial has no irreducibility verdict")
    newton_polygon(p, variables)
    idx = [p.ring.table.index(v) for v in variables]
    shift = [min(m[i] for m in p.terms) for i in idx]
    content = [0] * p.ring.ngens
    for i, s in zip(idx, shift):
        content[i] = s
    content_free = p.ring.from_terms(
        {tuple(e - content[k] for k, e in enumerate(m)): c for m, c in p.terms.items()})
    poly = newton_polygon(content_free, variables)
    verdict = integrally_indecomposable(poly, bound)
    monomial = len(content_free) == 1
    if verdict.status == "Indecomposable" and not monomial:
        status = "Irreducible"
        statement = "integrally indecomposable Newton polygon: irreducible over every extension of the field"
    elif monomial:
        status = "Unknown"
        statement = "monomial: the polygon criterion says nothing about irreducibility"
    else:
        status = "Unknown"
        statement = ("polygon not certified indecomposable; a decomposable polygon does not imply "
                     "that the polynomial is reducible")
    logger.info(f"Newton polygon {poly.describe()} of {content_free}: {status}")
    return IrreducibilityVerdict(
        status=status,
        polynomial=str(p),
        variables=list(variables),
        stripped_content=str(p.ring.monomial(tuple(content))),
        content_free=str(content_free),
        vertices=list(poly.vertices),
        edge_points=poly.edge_points(),
        interior_points=poly.interior_points(),
        indecomposability=verdict,
        statement=statement,
    )


def support_points(p: Polynomial, variables: Tuple[str, str]) -> Dict[Point, str]:
    """Exponent vector -> coefficient text, for reports."""
    first, second = (p.ring.table.index(v) for v in variables)
    return {(m[first], m[second]): p.ring.field.format(c) for m, c in p.terms.items()}
