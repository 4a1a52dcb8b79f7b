"""LDP-polygons, polar duals, and the minimal bounding square of a polygon.

The minimal square uses an inscribed-disc bound.  Put the vertex centroid
``c`` at the origin and let ``r`` be the radius of the largest disc about
``c`` inside ``P``.  The width of ``P`` along a dual vector ``u`` is at least
the width of that disc, ``2 r |u|``, so every direction of width at most
``W`` satisfies ``4 r^2 |u|^2 <= W^2``.  That leaves a finite list of
candidate directions; ``P`` fits in ``B_m`` exactly when two of them with
``|det| = 1`` both have width at most ``m``.

Everything is exact: ``r^2`` is rational and compared through
cross-multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BoxTooSmallError, OriginNotInteriorError
from .lattice import (
    AffineUnimodularMap,
    LatticePolygon,
    _canonical_cycle,
    _cross,
    _hull,
    apply_map,
    bounding_square_size,
    width_along,
)

RationalPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class RationalPolygon:
    vertices: tuple[RationalPoint, ...]

    @classmethod
    def from_points(cls, points) -> "RationalPolygon":
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        return cls(_hull(pts))

    def scaled(self, factor) -> "RationalPolygon":
        return RationalPolygon(tuple((x * factor, y * factor) for x, y in self.vertices))

    def is_lattice(self) -> bool:
        return all(x.denominator == 1 and y.denominator == 1 for x, y in self.vertices)


def _origin_strictly_inside(verts: Sequence) -> bool:
    n = len(verts)
    return all(_cross(verts[i], verts[(i + 1) % n], (0, 0)) > 0 for i in range(n))


def is_ldp(P: LatticePolygon) -> bool:
    """Origin strictly interior and every vertex primitive."""
    if not _origin_strictly_inside(P.vertices):
        return False
    return all(math.gcd(x, y) == 1 for x, y in P.vertices)


def _polar(verts: Sequence) -> RationalPolygon:
    if not _origin_strictly_inside(verts):
        raise OriginNotInteriorError("the origin must lie strictly inside the polygon")
    n = len(verts)
    out = []
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        det = Fraction(ax * by - ay * bx)
        # the dual vertex v solves <v,a> = <v,b> = -1
        out.append(((ay - by) / det, (bx - ax) / det))
    return RationalPolygon(_canonical_cycle(out))


def dual_polygon(P: LatticePolygon | RationalPolygon) -> RationalPolygon:
    """Polar dual ``{v : <v,u> >= -1 for all u in P}``."""
    return _polar(P.vertices)


def gorenstein_index(P: LatticePolygon) -> int:
    """Smallest ``l >= 1`` such that ``l * P^*`` is a lattice polygon."""
    ell = 1
    for x, y in dual_polygon(P).vertices:
        ell = math.lcm(ell, x.denominator, y.denominator)
    return ell


def _inscribed_disc_bound(P: LatticePolygon) -> tuple[int, int]:
    """``(num, den)`` with ``num/den = 1 / (4 r^2)`` for the disc about the
    vertex centroid."""
    v = P.vertices
    n = len(v)
    sx = sum(x for x, _ in v)
    sy = sum(y for _, y in v)
    best = None
    for i in range(n):
        ax, ay = v[i]
        bx, by = v[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        # n * cross(b - a, c - a) with c = (sx, sy) / n
        X = ex * (sy - n * ay) - ey * (sx - n * ax)
        # squared distance = X^2 / (n^2 |e|^2)
        num, den = X * X, n * n * (ex * ex + ey * ey)
        if best is None or num * best[1] < best[0] * den:
            best = (num, den)
    r2_num, r2_den = best
    return r2_den, 4 * r2_num


def short_directions(P: LatticePolygon, W: int) -> list[tuple[int, tuple[int, int]]]:
    """All primitive dual vectors ``u`` (up to sign) with ``width(P, u) <= W``,
    as ``(width, u)`` sorted."""
    if W < 1:
        return []
    num, den = _inscribed_disc_bound(P)
    # |u|^2 <= W^2 * num / den
    bnum = W * W * num
    R = math.isqrt(bnum // den) + 1
    out = []
    for ux in range(0, R + 1):
        for uy in range(-R, R + 1):
            if ux == 0 and uy <= 0:
                continue
            if (ux * ux + uy * uy) * den > bnum:
                continue
            if math.gcd(ux, uy) != 1:
                continue
            w = width_along(P, (ux, uy))
            if w <= W:
                out.append((w, (ux, uy)))
    out.sort()
    return out


def _basis_pairs(dirs, m):
    """Unimodular pairs among ``dirs`` with both widths at most ``m``."""
    good = [(w, u) for w, u in dirs if w <= m]
    for i, (w1, u) in enumerate(good):
        for w2, v in good[i + 1:]:
            if u[0] * v[1] - u[1] * v[0] in (1, -1):
                yield u, v


def fits_in_box(P: LatticePolygon, m: int) -> bool:
    """Whether some polygon equivalent to ``P`` lies in ``B_m``."""
    if m < 1:
        return False
    if bounding_square_size(P) <= m:
        return True
    return next(_basis_pairs(short_directions(P, m), m), None) is not None


def _embedding(P: LatticePolygon, u, v) -> tuple[AffineUnimodularMap, LatticePolygon]:
    lin = AffineUnimodularMap((tuple(u), tuple(v)))
    img = apply_map(P, lin)
    tx = -min(x for x, _ in img.vertices)
    ty = -min(y for _, y in img.vertices)
    phi = AffineUnimodularMap.translation_by((tx, ty)).compose(lin)
    return phi, apply_map(P, phi)


@dataclass
class MinBoxResult:
    m: int
    embeddings: list[tuple[AffineUnimodularMap, LatticePolygon]]

    @property
    def polygon(self) -> LatticePolygon:
        return self.embeddings[0][1]


def minimum_box(P: LatticePolygon) -> MinBoxResult:
    """Smallest ``m`` admitting an equivalent polygon in ``B_m``, with the
    embeddings realising it (one per optimal basis, up to sign)."""
    W = bounding_square_size(P)
    dirs = short_directions(P, W)
    best = W
    pairs = []
    for u, v in _basis_pairs(dirs, W):
        w = max(width_along(P, u), width_along(P, v))
        if w < best:
            best, pairs = w, [(u, v)]
        elif w == best:
            pairs.append((u, v))
    embeddings = []
    seen = set()
    for u, v in pairs:
        phi, img = _embedding(P, u, v)
        if img.vertices not in seen:
            seen.add(img.vertices)
            embeddings.append((phi, img))
    return MinBoxResult(best, embeddings)


def all_embeddings(P: LatticePolygon, m: int) -> list[LatticePolygon]:
    """Every placement of ``P`` in ``B_m`` up to translation, deduplicated and
    sorted.  Includes all sign changes and swaps of the two axes."""
    dirs = short_directions(P, m)
    out = set()
    for u, v in _basis_pairs(dirs, m):
        for su in (1, -1):
            for sv in (1, -1):
                a = (su * u[0], su * u[1])
                b = (sv * v[0], sv * v[1])
                out.add(_embedding(P, a, b)[1].vertices)
                out.add(_embedding(P, b, a)[1].vertices)
    if not out:
        raise BoxTooSmallError(f"no polygon equivalent to {P} fits in B_{m}")
    return [LatticePolygon._trusted(v) for v in sorted(out)]


def ldp_origins(P: LatticePolygon) -> list[tuple[int, int]]:
    """Interior lattice points ``c`` for which ``P - c`` is an LDP-polygon."""
    from .lattice import interior_points

    out = []
    for c in interior_points(P):
        if all(math.gcd(x - c[0], y - c[1]) == 1 for x, y in P.vertices):
            out.append(c)
    return out
