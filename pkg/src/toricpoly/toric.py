"""Toric codes: evaluate the monomials of a polygon on the torus (F_q^*)^2.

Rows are indexed by the lattice points ``u`` of the polygon (sorted), columns
by the exponent pairs ``(i, j)``, ``0 <= i, j <= q-2``, with ``i`` as the outer
index.  The entry is ``eps^(i*u1 + j*u2)``.  The polygon is first translated
so its bounding box has its corner at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BoxTooBigError, EmptySubsetError, NotInPolygonError
from .gf import Field, field_make, rank
from .lattice import (
    AffineUnimodularMap,
    LatticePolygon,
    apply_map,
    bounding_square_size,
    lattice_points,
)

# exhaustive weight distributions are compared below this many codewords
BRUTE_FORCE_LIMIT = 2 ** 22


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    field: Field
    rows: np.ndarray
    row_labels: tuple = ()
    column_labels: tuple = ()

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    @property
    def q(self) -> int:
        return self.field.q

    def rank(self) -> int:
        return rank(self.field, self.rows)

    def row(self, u) -> np.ndarray:
        return self.rows[self.row_labels.index(tuple(u))]

    def dump(self) -> str:
        lines = [f"{self.q},{self.n},{self.k}"]
        lines += [" ".join(str(int(a)) for a in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "GeneratorMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        q, n, k = (int(t) for t in lines[0].split(","))
        rows = np.array([[int(t) for t in ln.split()] for ln in lines[1:1 + k]], dtype=np.int16)
        if rows.shape != (k, n):
            raise ValueError(f"expected a {k}x{n} matrix, got {rows.shape}")
        return cls(field_make(q), rows)


@dataclass
class CodeRecord:
    polygon_id: str
    q: int
    n: int
    k: int
    d_exact: int | None = None
    d_bound: int | None = None
    rows_used: int | None = None
    status: str = "undetermined"

    def __post_init__(self):
        if self.d_exact is not None and self.d_bound is not None and self.d_exact > self.d_bound:
            raise ValueError("exact distance exceeds the recorded upper bound")


def torus_columns(q: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(q - 1) for j in range(q - 1)]


def _placed(P: LatticePolygon, F: Field) -> tuple[list[tuple[int, int]], tuple[int, int]]:
    if bounding_square_size(P) > F.q - 2:
        raise BoxTooBigError(
            f"polygon needs a square of side {bounding_square_size(P)} > q-2 = {F.q - 2}"
        )
    mx = min(x for x, _ in P.vertices)
    my = min(y for _, y in P.vertices)
    return [(x - mx, y - my) for x, y in lattice_points(P)], (mx, my)


def _evaluation_rows(points: Sequence[tuple[int, int]], F: Field) -> np.ndarray:
    q1 = F.q - 1
    i = np.repeat(np.arange(q1), q1)
    j = np.tile(np.arange(q1), q1)
    u = np.array(points, dtype=np.int64).reshape(-1, 2)
    expo = (np.outer(u[:, 0], i) + np.outer(u[:, 1], j)) % q1
    return F.exp_table[expo].astype(np.int16)


def generator_matrix(P: LatticePolygon, F: Field | int) -> GeneratorMatrix:
    """The toric code ``C_P(F_q)`` as a labelled ``k x n`` matrix."""
    F = field_make(F) if isinstance(F, int) else F
    points, _ = _placed(P, F)
    rows = _evaluation_rows(points, F)
    return GeneratorMatrix(F, rows, tuple(points), tuple(torus_columns(F.q)))


def generalized_generator_matrix(P: LatticePolygon, F: Field | int,
                                 subset: Iterable[Sequence[int]]) -> GeneratorMatrix:
    """Rows for a subset of the lattice points of ``P``.

    ``subset`` is given in the coordinates of ``P`` itself (before the
    translation into the corner of the box).
    """
    F = field_make(F) if isinstance(F, int) else F
    subset = sorted({(int(a), int(b)) for a, b in subset})
    if not subset:
        raise EmptySubsetError("subset of lattice points is empty")
    _, (mx, my) = _placed(P, F)
    pts = set(lattice_points(P))
    missing = [u for u in subset if u not in pts]
    if missing:
        raise NotInPolygonError(f"points {missing} are not lattice points of the polygon")
    placed = [(x - mx, y - my) for x, y in subset]
    return GeneratorMatrix(F, _evaluation_rows(placed, F), tuple(placed), tuple(torus_columns(F.q)))


def _placement_map(P: LatticePolygon) -> AffineUnimodularMap:
    mx = min(x for x, _ in P.vertices)
    my = min(y for _, y in P.vertices)
    return AffineUnimodularMap.translation_by((-mx, -my))


def monomial_transform(G: GeneratorMatrix, psi: AffineUnimodularMap) -> np.ndarray:
    """Rows of ``G`` pushed through the affine map ``psi``.

    If ``psi(p) = A p + t`` then ``e(psi(u))(eps^i, eps^j)`` equals
    ``e(u)`` at the column ``A^T (i, j)`` scaled by ``eps^<(i,j), t>``, so the
    image is a column permutation plus scaling of ``G``: a monomial map.
    Row ``r`` of the result is the row for the lattice point ``psi(row_labels[r])``.
    """
    F = G.field
    q1 = F.q - 1
    index = {c: r for r, c in enumerate(G.column_labels)}
    perm = []
    scale = []
    for i, j in G.column_labels:
        src = psi.dual_action((i, j))
        perm.append(index[(src[0] % q1, src[1] % q1)])
        scale.append(F.eps_pow(i * psi.translation[0] + j * psi.translation[1]))
    perm = np.array(perm)
    scale = np.array(scale, dtype=np.int16)
    return F.mul_table[scale[None, :], G.rows[:, perm]]


def monomial_equivalence_check(P: LatticePolygon, phi: AffineUnimodularMap, F: Field | int) -> bool:
    """Check that ``C_P`` and ``C_{phi(P)}`` are monomially equivalent.

    The explicit monomial map induced by ``phi`` must carry the generator
    rows of one code onto the other; when the codes are small enough the
    weight distributions are compared as well.
    """
    from .mindist import weight_distribution

    F = field_make(F) if isinstance(F, int) else F
    Q = apply_map(P, phi)
    G = generator_matrix(P, F)
    H = generator_matrix(Q, F)
    if (G.n, G.k) != (H.n, H.k):
        return False
    # map between the two placed copies: placeQ o phi o placeP^-1
    psi = _placement_map(Q).compose(phi).compose(_placement_map(P).inverse())
    moved = monomial_transform(G, psi)
    target = {lab: r for r, lab in enumerate(H.row_labels)}
    for r, lab in enumerate(G.row_labels):
        if not np.array_equal(moved[r], H.rows[target[psi(lab)]]):
            return False
    if F.q ** G.k <= BRUTE_FORCE_LIMIT:
        return np.array_equal(weight_distribution(G), weight_distribution(H))
    return True


def minimal_field(m: int) -> int:
    """Smallest supported prime power ``q`` with ``q - 2 >= m``."""
    from .gf import SUPPORTED_Q

    for q in SUPPORTED_Q:
        if q - 2 >= m:
            return q
    raise ValueError(f"no supported field for box size {m}")

