"""Exact two-dimensional lattice geometry.

Points are plain ``(x, y)`` tuples of Python ints, so there is no overflow
and no floating point anywhere in this module.  The same representation is
used for points of the lattice ``M`` and for dual vectors in ``N``.

A :class:`LatticePolygon` stores its vertices counter-clockwise starting from
the lexicographically smallest vertex.  Many routines also come in an
underscore-prefixed form acting on bare vertex tuples; the classification
loop uses those directly to avoid object churn.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, ZeroVectorError

Point = tuple[int, int]
Vertices = tuple[Point, ...]
NormalFormKey = tuple[int, ...]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: Iterable[Point]) -> Vertices:
    """Monotone chain hull; strictly convex vertices, ccw from lex-min."""
    pts = sorted(set(points))
    if len(pts) < 3:
        raise DimensionError(f"hull of {len(pts)} point(s) is not two-dimensional")
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DimensionError("points are collinear")
    return tuple(hull)


def _canonical_cycle(verts: Sequence[Point]) -> Vertices:
    """Rotate a ccw vertex cycle so it starts at the lexicographic minimum."""
    i = min(range(len(verts)), key=verts.__getitem__)
    return tuple(verts[i:]) + tuple(verts[:i])


def _translate_to_corner(verts: Sequence[Point]) -> Vertices:
    mx = min(x for x, _ in verts)
    my = min(y for _, y in verts)
    return tuple((x - mx, y - my) for x, y in verts)


def _volume(verts: Sequence[Point]) -> int:
    n = len(verts)
    s = 0
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def _boundary_count(verts: Sequence[Point]) -> int:
    n = len(verts)
    b = 0
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        b += math.gcd(x1 - x0, y1 - y0)
    return b


def _point_count(verts: Sequence[Point]) -> int:
    # Pick: vol = 2 i + b - 2, so |P cap M| = i + b = (vol + b + 2) / 2
    return (_volume(verts) + _boundary_count(verts) + 2) // 2


def _column_ranges(verts: Sequence[Point]):
    """Yield ``(x, ylo, yhi)`` for every integer column meeting the polygon."""
    n = len(verts)
    xs = [x for x, _ in verts]
    lows = []
    highs = []
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        dx = bx - ax
        if dx > 0:
            lows.append((ax, ay, dx, by - ay))
        elif dx < 0:
            highs.append((ax, ay, dx, by - ay))
    for x in range(min(xs), max(xs) + 1):
        # interior lies to the left of each ccw edge: dx*(y-ay) >= dy*(x-ax)
        # convexity: the lower chain is the max of its edge lines, the upper the min
        ylo = max(ay - ((-dy * (x - ax)) // dx) for ax, ay, dx, dy in lows)
        yhi = min(ay + (dy * (x - ax)) // dx for ax, ay, dx, dy in highs)
        if ylo <= yhi:
            yield x, ylo, yhi


def _lattice_points(verts: Sequence[Point]) -> list[Point]:
    return [(x, y) for x, ylo, yhi in _column_ranges(verts) for y in range(ylo, yhi + 1)]


def _shave(verts: Vertices, i: int) -> Vertices:
    """Hull of the lattice points of ``verts`` with vertex ``i`` removed.

    Only the triangle spanned by the removed vertex and its two neighbours
    can contribute new hull vertices.
    """
    n = len(verts)
    v = verts[i]
    prev = verts[i - 1]
    nxt = verts[(i + 1) % n]
    pts = [p for j, p in enumerate(verts) if j != i]
    if _cross(prev, v, nxt) != 0:
        pts.extend(p for p in _lattice_points((prev, v, nxt)) if p != v)
    return _hull(pts)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _frame(e1: Point, e2: Point, flip: bool) -> tuple[int, int, int, int]:
    """Unimodular matrix sending primitive ``e1`` to (1,0) and ``e2`` into the
    reduced cone position ``(c, d)`` with ``0 <= c < d``.

    ``flip`` composes with ``y -> -y`` for clockwise traversal.
    """
    ax, ay = e1
    g, s, t = _egcd(ax, ay)
    if g < 0:
        s, t = -s, -t
    a11, a12, a21, a22 = s, t, -ay, ax
    if flip:
        a21, a22 = -a21, -a22
    c = a11 * e2[0] + a12 * e2[1]
    d = a21 * e2[0] + a22 * e2[1]
    sh = -(c // d)
    return a11 + sh * a21, a12 + sh * a22, a21, a22


def _normal_key(verts: Vertices) -> NormalFormKey:
    n = len(verts)
    # Lattice length of each edge i -> i+1; the key starts with (L, 0) so only
    # frames built on a shortest edge can be minimal.
    lengths = []
    for i in range(n):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % n]
        lengths.append(math.gcd(x1 - x0, y1 - y0))
    lmin = min(lengths)
    best = None
    for i in range(n):
        for direction in (1, -1):
            # edge leaving vertex i in the traversal direction
            j = (i + 1) % n if direction == 1 else (i - 1) % n
            if lengths[i if direction == 1 else j] != lmin:
                continue
            vx, vy = verts[i]
            nx, ny = verts[j]
            px, py = verts[(i - direction) % n]
            e1 = ((nx - vx) // lmin, (ny - vy) // lmin)
            f11, f12, f21, f22 = _frame(e1, (px - vx, py - vy), direction == -1)
            enc = []
            for step in range(1, n):
                wx, wy = verts[(i + direction * step) % n]
                wx -= vx
                wy -= vy
                enc.append(f11 * wx + f12 * wy)
                enc.append(f21 * wx + f22 * wy)
            cand = tuple(enc)
            if best is None or cand < best:
                best = cand
    return best


def _decode_key(key: NormalFormKey) -> Vertices:
    verts = [(0, 0)] + [(key[i], key[i + 1]) for i in range(0, len(key), 2)]
    return _canonical_cycle(_translate_to_corner(verts))


@dataclass(frozen=True, slots=True)
class LatticePolygon:
    """A convex lattice polygon given by its vertex cycle.

    Construct with :func:`convex_hull` or :meth:`from_vertices`; the
    constructor itself only checks that the cycle is already canonical.
    """

    vertices: Vertices

    def __post_init__(self):
        v = self.vertices
        if len(v) < 3:
            raise DimensionError("a polygon needs at least three vertices")
        if v != _canonical_cycle(v):
            raise ValueError("vertex cycle must start at the lexicographic minimum")
        n = len(v)
        for i in range(n):
            if _cross(v[i - 1], v[i], v[(i + 1) % n]) <= 0:
                raise ValueError("vertices must be in strictly convex ccw position")

    @classmethod
    def from_vertices(cls, points: Iterable[Sequence[int]]) -> "LatticePolygon":
        return convex_hull(points)

    @classmethod
    def _trusted(cls, verts: Vertices) -> "LatticePolygon":
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", verts)
        return obj

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __str__(self) -> str:
        return format_polygon(self)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolygon:
    pts = [(int(p[0]), int(p[1])) for p in points]
    return LatticePolygon._trusted(_hull(pts))


def lattice_points(P: LatticePolygon) -> list[Point]:
    """All lattice points of ``P`` (interior and boundary), sorted."""
    return _lattice_points(P.vertices)


def interior_points(P: LatticePolygon) -> list[Point]:
    v = P.vertices
    n = len(v)
    return [p for p in _lattice_points(v) if all(_cross(v[i], v[(i + 1) % n], p) > 0 for i in range(n))]


def boundary_count(P: LatticePolygon) -> int:
    return _boundary_count(P.vertices)


def point_count(P: LatticePolygon) -> int:
    return _point_count(P.vertices)


def normalized_volume(P: LatticePolygon) -> int:
    """Twice the Euclidean area."""
    return _volume(P.vertices)


def contains(P: LatticePolygon, p: Sequence[int]) -> bool:
    v = P.vertices
    n = len(v)
    return all(_cross(v[i], v[(i + 1) % n], p) >= 0 for i in range(n))


def width_along(P: LatticePolygon, u: Sequence[int]) -> int:
    """Lattice width of ``P`` along the dual vector ``u``."""
    ux, uy = u
    if ux == 0 and uy == 0:
        raise ZeroVectorError("width along the zero vector")
    vals = [ux * x + uy * y for x, y in P.vertices]
    return max(vals) - min(vals)


def bounding_square_size(P: LatticePolygon) -> int:
    """Side of the smallest axis-parallel square containing a translate of P."""
    return max(width_along(P, (1, 0)), width_along(P, (0, 1)))


def translate_to_origin(P: LatticePolygon) -> LatticePolygon:
    """Translate so the bounding box has its lower-left corner at (0,0)."""
    return LatticePolygon._trusted(_translate_to_corner(P.vertices))


@dataclass(frozen=True, slots=True)
class AffineUnimodularMap:
    """``p -> matrix @ p + translation`` with ``det(matrix) = +-1``."""

    matrix: tuple[tuple[int, int], tuple[int, int]]
    translation: Point = (0, 0)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if a * d - b * c not in (1, -1):
            raise ValueError(f"matrix {self.matrix} is not unimodular")

    @classmethod
    def identity(cls) -> "AffineUnimodularMap":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def translation_by(cls, u: Sequence[int]) -> "AffineUnimodularMap":
        return cls(((1, 0), (0, 1)), (int(u[0]), int(u[1])))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def __call__(self, p: Sequence[int]) -> Point:
        (a, b), (c, d) = self.matrix
        tx, ty = self.translation
        return (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)

    def compose(self, other: "AffineUnimodularMap") -> "AffineUnimodularMap":
        """The map ``self o other``."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        return AffineUnimodularMap(m, self(other.translation))

    def inverse(self) -> "AffineUnimodularMap":
        (a, b), (c, d) = self.matrix
        det = self.det
        m = ((d * det, -b * det), (-c * det, a * det))
        tx, ty = self.translation
        inv_t = (-(m[0][0] * tx + m[0][1] * ty), -(m[1][0] * tx + m[1][1] * ty))
        return AffineUnimodularMap(m, inv_t)

    def dual_action(self, u: Sequence[int]) -> Point:
        """Transpose action ``matrix^T u`` on dual vectors."""
        (a, b), (c, d) = self.matrix
        return (a * u[0] + c * u[1], b * u[0] + d * u[1])


def random_unimodular(rng: random.Random, bound: int = 5, translation: int = 10) -> AffineUnimodularMap:
    """A random affine unimodular map with matrix entries in ``[-bound, bound]``."""
    while True:
        a, b, c, d = (rng.randint(-bound, bound) for _ in range(4))
        if a * d - b * c in (1, -1):
            t = (rng.randint(-translation, translation), rng.randint(-translation, translation))
            return AffineUnimodularMap(((a, b), (c, d)), t)


def apply_map(P: LatticePolygon, phi: AffineUnimodularMap) -> LatticePolygon:
    verts = [phi(p) for p in P.vertices]
    if phi.det < 0:
        verts.reverse()
    return LatticePolygon._trusted(_canonical_cycle(verts))


def normal_form(P: LatticePolygon) -> NormalFormKey:
    """Canonical key of the affine unimodular class of ``P``."""
    return _normal_key(P.vertices)


def from_normal_form(key: NormalFormKey) -> LatticePolygon:
    """The distinguished representative encoded by ``key``, in its bounding box."""
    return LatticePolygon._trusted(_decode_key(key))


def canonical_representative(P: LatticePolygon) -> LatticePolygon:
    return from_normal_form(normal_form(P))


def invariants(P: LatticePolygon) -> tuple[int, int, int]:
    """Cheap equivalence invariants: (volume, vertex count, lattice points)."""
    return normalized_volume(P), len(P.vertices), point_count(P)


def is_equivalent(P: LatticePolygon, Q: LatticePolygon) -> bool:
    if invariants(P) != invariants(Q):
        return False
    return normal_form(P) == normal_form(Q)


def primitive(u: Sequence[int]) -> Point:
    g = math.gcd(u[0], u[1])
    if g == 0:
        raise ZeroVectorError("zero vector has no primitive direction")
    return (u[0] // g, u[1] // g)


def vertex_cones(P: LatticePolygon) -> list[tuple[Point, Point]]:
    """Primitive edge directions ``(to next, to previous)`` at each vertex."""
    v = P.vertices
    n = len(v)
    out = []
    for i in range(n):
        x, y = v[i]
        nx, ny = v[(i + 1) % n]
        px, py = v[i - 1]
        out.append((primitive((nx - x, ny - y)), primitive((px - x, py - y))))
    return out


def cone_type(e1: Point, e2: Point) -> tuple[int, int]:
    """Unimodular invariant ``(d, c)`` of the cone spanned by ``e1`` and ``e2``.

    Two-dimensional cones with primitive rays are classified by
    ``d = |det(e1, e2)|`` and ``c`` (mod ``d``), up to the swap ``c -> c^-1``;
    the returned pair is the smaller of the two readings.
    """
    det = e1[0] * e2[1] - e1[1] * e2[0]
    flip = det < 0
    f11, f12, f21, f22 = _frame(e1, e2, flip)
    c1 = f11 * e2[0] + f12 * e2[1]
    d = f21 * e2[0] + f22 * e2[1]
    f11, f12, f21, f22 = _frame(e2, e1, not flip)
    c2 = f11 * e1[0] + f12 * e1[1]
    return (d, min(c1, c2))


def format_polygon(P: LatticePolygon) -> str:
    return "[" + ",".join(f"[{x},{y}]" for x, y in P.vertices) + "]"
