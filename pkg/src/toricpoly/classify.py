"""Classification of lattice polygons in the box [0,m]^2 by successive shaving.

Every lattice polygon inside ``B_m`` is reached from ``B_m`` by repeatedly
removing a vertex and taking the hull of the remaining lattice points.  The
search is organised by normalised volume: shaving strictly lowers the volume,
so once every polygon of volume ``V`` has been shaved no class of volume
``V`` can appear again and that level can be finalised (and spilled to disk).

Each class keeps one representative that actually sits inside ``B_m``; when
several instances of a class are discovered the smallest one by
``(bounding square, vertex tuple)`` wins.  Because a level is only shaved once
it is complete, the chosen representatives, and therefore the whole run, do
not depend on the worker count.
"""

from __future__ import annotations

import heapq
import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import DimensionError, ResourceError
from .lattice import (
    LatticePolygon,
    NormalFormKey,
    Vertices,
    _canonical_cycle,
    _normal_key,
    _shave,
    _translate_to_corner,
    _volume,
    bounding_square_size,
    cone_type,
    normalized_volume,
    vertex_cones,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_M = 7
# classes held in memory before ResourceError when spilling is disabled
DEFAULT_MEMORY_BUDGET = 2_000_000


def box(m: int) -> LatticePolygon:
    return LatticePolygon._trusted(((0, 0), (m, 0), (m, m), (0, m)))


def shave(P: LatticePolygon, v) -> LatticePolygon:
    """``conv((P cap M) minus {v})`` for a vertex ``v`` of ``P``."""
    v = (int(v[0]), int(v[1]))
    try:
        i = P.vertices.index(v)
    except ValueError:
        raise ValueError(f"{v} is not a vertex of {P}") from None
    return LatticePolygon._trusted(_shave(P.vertices, i))


def _shave_all(reps: list[Vertices]) -> list[tuple[int, NormalFormKey, int, Vertices]]:
    out = []
    for rep in reps:
        for i in range(len(rep)):
            try:
                s = _shave(rep, i)
            except DimensionError:
                continue
            s = _canonical_cycle(_translate_to_corner(s))
            bsq = max(max(x for x, _ in s), max(y for _, y in s))
            out.append((_volume(s), _normal_key(s), bsq, s))
    return out


def _key_line(key: NormalFormKey, rep: Vertices) -> str:
    return ",".join(map(str, key)) + "|" + ",".join(f"{x},{y}" for x, y in rep)


def _parse_key_line(line: str) -> tuple[NormalFormKey, Vertices]:
    k, r = line.rstrip("\n").split("|")
    key = tuple(int(t) for t in k.split(","))
    nums = [int(t) for t in r.split(",")]
    return key, tuple((nums[i], nums[i + 1]) for i in range(0, len(nums), 2))


@dataclass
class ClassificationRun:
    """State of one shaving classification of ``B_m``.

    ``store`` maps volume -> {key: (bounding square, representative)} for
    levels still pending; finished levels are kept in ``done`` or, with a
    spill directory, written as key-sorted runs.
    """

    m: int
    workers: int = 1
    spill_dir: str | None = None
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    store: dict[int, dict[NormalFormKey, tuple[int, Vertices]]] = field(default_factory=dict)
    done: dict[NormalFormKey, Vertices] = field(default_factory=dict)
    runs: list[str] = field(default_factory=list)
    count: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("box size must be at least 1")
        start = box(self.m).vertices
        self.store = {_volume(start): {_normal_key(start): (self.m, start)}}

    def _pending(self) -> int:
        return sum(len(level) for level in self.store.values())

    def _finish_level(self, level: dict[NormalFormKey, tuple[int, Vertices]]):
        self.count += len(level)
        if self.spill_dir is None:
            for k, (_, rep) in level.items():
                self.done[k] = rep
            if len(self.done) + self._pending() > self.memory_budget:
                raise ResourceError(
                    f"{len(self.done)} classes exceed the memory budget; enable disk spill"
                )
            return
        fd, path = tempfile.mkstemp(prefix=f"box{self.m}_", suffix=".run", dir=self.spill_dir)
        with os.fdopen(fd, "w") as fh:
            for k in sorted(level):
                fh.write(_key_line(k, level[k][1]) + "\n")
        self.runs.append(path)

    def run(self) -> "ClassificationRun":
        pool = ProcessPoolExecutor(self.workers) if self.workers > 1 else None
        try:
            while self.store:
                vol = max(self.store)
                level = self.store.pop(vol)
                reps = [rep for _, rep in level.values()]
                if pool is None:
                    results = _shave_all(reps)
                else:
                    size = max(1, len(reps) // (4 * self.workers))
                    chunks = [reps[i:i + size] for i in range(0, len(reps), size)]
                    results = [r for part in pool.map(_shave_all, chunks) for r in part]
                for v, k, bsq, s in results:
                    bucket = self.store.setdefault(v, {})
                    old = bucket.get(k)
                    if old is None or (bsq, s) < old:
                        bucket[k] = (bsq, s)
                self._finish_level(level)
                log.debug("box %d: volume %d done, %d classes so far", self.m, vol, self.count)
        finally:
            if pool is not None:
                pool.shutdown()
        return self

    def items(self) -> Iterator[tuple[NormalFormKey, Vertices]]:
        """All (key, representative) pairs in key order."""
        if self.spill_dir is None:
            for k in sorted(self.done):
                yield k, self.done[k]
            return
        files = [open(p) for p in self.runs]
        try:
            for line in heapq.merge(*files, key=lambda s: _parse_key_line(s)[0]):
                yield _parse_key_line(line)
        finally:
            for fh in files:
                fh.close()

    def cleanup(self):
        for p in self.runs:
            try:
                os.remove(p)
            except FileNotFoundError:
                pass
        self.runs = []


def classify_box(m: int, workers: int = 1, spill_dir: str | None = None,
                 memory_budget: int = DEFAULT_MEMORY_BUDGET) -> list[LatticePolygon]:
    """All classes of lattice polygons contained in ``B_m``, sorted by key.

    Each returned polygon lies in ``B_m``.
    """
    run = ClassificationRun(m, workers=workers, spill_dir=spill_dir,
                            memory_budget=memory_budget).run()
    try:
        return [LatticePolygon._trusted(rep) for _, rep in run.items()]
    finally:
        run.cleanup()


def is_homogeneous(P: LatticePolygon) -> bool:
    """True when all vertex cones are unimodular-equivalent."""
    types = {cone_type(e1, e2) for e1, e2 in vertex_cones(P)}
    return len(types) == 1


@dataclass(frozen=True)
class BoxStats:
    m: int
    count_exact_m: int
    max_vertices: int
    count_max_vertex: int

    def csv_row(self) -> str:
        return f"{self.m},{self.count_exact_m},{self.max_vertices},{self.count_max_vertex}"


def exact_box_classes(classes: Iterable[LatticePolygon], m: int) -> list[LatticePolygon]:
    """Classes whose minimal box (over the whole equivalence class) is ``m``."""
    from .ldp import fits_in_box

    out = []
    for P in classes:
        bsq = bounding_square_size(P)
        if bsq < m:
            continue
        if bsq == m and not fits_in_box(P, m - 1):
            out.append(P)
        elif bsq > m and fits_in_box(P, m) and not fits_in_box(P, m - 1):
            out.append(P)
    return out


def box_stats(classes: Iterable[LatticePolygon], m: int) -> BoxStats:
    exact = exact_box_classes(classes, m)
    nv = [len(P.vertices) for P in exact]
    mx = max(nv, default=0)
    return BoxStats(m, len(exact), mx, sum(1 for k in nv if k == mx))


@dataclass
class MaxVertexSurvey:
    """Polygons of exact box ``m`` with the most vertices.

    ``minimal`` holds the attainers of least volume with their homogeneity
    flags; ``homogeneous`` the homogeneous attainers of least volume among
    the homogeneous ones (these two readings differ at ``m = 7``).
    """

    m: int
    max_vertices: int
    attainers: list[LatticePolygon]
    minimal_volume: int
    minimal: list[tuple[LatticePolygon, bool]]
    homogeneous: list[LatticePolygon]


def max_vertex_survey(classes: Iterable[LatticePolygon], m: int) -> MaxVertexSurvey:
    exact = exact_box_classes(classes, m)
    mx = max(len(P.vertices) for P in exact)
    att = [P for P in exact if len(P.vertices) == mx]
    flags = [(P, is_homogeneous(P)) for P in att]
    vmin = min(normalized_volume(P) for P in att)
    minimal = [(P, h) for P, h in flags if normalized_volume(P) == vmin]
    homog = [P for P, h in flags if h]
    if homog:
        hmin = min(normalized_volume(P) for P in homog)
        homog = [P for P in homog if normalized_volume(P) == hmin]
    return MaxVertexSurvey(m, mx, att, vmin, minimal, homog)
