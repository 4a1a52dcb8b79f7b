"""Batch jobs: code surveys over polygon lists and the reproduction reports."""

from __future__ import annotations

import csv
import io
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .classify import box_stats, classify_box
from .errors import MissingTableEntry, ResourceError, ToricPolyError
from .gf import field_make
from .lattice import LatticePolygon, bounding_square_size, format_polygon, point_count
from .ldp import ldp_origins, minimum_box
from .mindist import (
    KnownDistanceTable,
    bz_min_distance,
    classify_record,
    exact_min_distance,
    row_combo_bound,
    rows_needed_to_disqualify,
)
from .toric import CodeRecord, generator_matrix, minimal_field

log = logging.getLogger(__name__)

SURVEY_HEADER = ["polygon_id", "q", "n", "k", "d_or_db", "kind", "rows_used", "status"]
AGGREGATE_HEADER = ["q", "k", "d_b", "count"]


@dataclass
class SurveyJob:
    polygons: list[tuple[str, LatticePolygon]]
    fields: Sequence[int] | None = None  # None: minimal q per polygon
    mode: str = "bound"  # bound | exact | bz
    rows: int = 4
    budget: float | None = None  # seconds per code for bz
    table: KnownDistanceTable | None = None
    workers: int = 1

    def __post_init__(self):
        if self.mode not in ("bound", "exact", "bz"):
            raise ValueError(f"unknown survey mode {self.mode!r}")


def placed_for_field(P: LatticePolygon, q: int | None = None) -> tuple[LatticePolygon, int]:
    """An embedding of ``P`` in its minimal box, and the field to use.

    With ``q`` None the smallest prime power with ``q - 2 >= m`` is chosen.
    """
    res = minimum_box(P)
    if q is None:
        q = minimal_field(res.m)
    if bounding_square_size(P) <= q - 2:
        return P, q
    return res.polygon, q


def _survey_one(args) -> list[CodeRecord]:
    pid, P, fields, mode, rows, budget, table = args
    out = []
    for q in fields or [None]:
        try:
            emb, q = placed_for_field(P, q)
            G = generator_matrix(emb, field_make(q))
            rec = CodeRecord(pid, q, G.n, G.k)
            if mode == "bound":
                res = row_combo_bound(G, rows)
                if res.kind == "exact":
                    rec.d_exact, rec.status = res.value, "exact"
                else:
                    rec.d_bound, rec.status = res.value, "bounded"
                rec.rows_used = res.rows_used
            elif mode == "exact":
                res = exact_min_distance(G)
                rec.d_exact, rec.rows_used, rec.status = res.value, res.rows_used, "exact"
            else:
                res = bz_min_distance(G, time_budget=budget)
                if res.kind == "exact":
                    rec.d_exact, rec.status = res.value, "exact"
                else:
                    rec.d_bound, rec.status = res.value, "bounded"
                rec.rows_used = res.rows_used
            if table is not None:
                try:
                    classify_record(rec, table)
                except MissingTableEntry:
                    rec.status = "unknown"
        except ToricPolyError as exc:
            log.warning("polygon %s, q=%s: %s", pid, q, exc)
            rec = CodeRecord(pid, q or 0, 0, 0, status=f"error:{type(exc).__name__}")
        out.append(rec)
    return out


def record_row(rec: CodeRecord) -> list:
    value = rec.d_exact if rec.d_exact is not None else rec.d_bound
    kind = "exact" if rec.d_exact is not None else ("upper_bound" if rec.d_bound is not None else "")
    return [rec.polygon_id, rec.q, rec.n, rec.k, "" if value is None else value, kind,
            "" if rec.rows_used is None else rec.rows_used, rec.status]


def _read_checkpoint(path) -> dict[str, list[list[str]]]:
    done: dict[str, list[list[str]]] = {}
    if not path or not os.path.exists(path):
        return done
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != SURVEY_HEADER:
            return done
        for row in reader:
            if row:
                done.setdefault(row[0], []).append(row)
    return done


def run_survey(job: SurveyJob, out_path: str | None = None, resume: bool = False) -> str:
    """Run the job and return the survey CSV text (also written to ``out_path``).

    Rows come out in input order whatever the worker count.  With ``resume``
    the polygons already present in ``out_path`` are not recomputed.
    """
    done = _read_checkpoint(out_path) if resume else {}
    todo = [(pid, P, job.fields, job.mode, job.rows, job.budget, job.table)
            for pid, P in job.polygons if pid not in done]
    results: dict[str, list[list]] = {pid: rows for pid, rows in done.items()}
    ckpt = None
    if out_path:
        ckpt = open(out_path, "a" if resume and done else "w", newline="")
        writer = csv.writer(ckpt)
        if not (resume and done):
            writer.writerow(SURVEY_HEADER)
    try:
        if job.workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(job.workers) as pool:
                stream = pool.map(_survey_one, todo)
                for args, recs in zip(todo, stream):
                    results[args[0]] = [record_row(r) for r in recs]
                    if ckpt:
                        writer.writerows(results[args[0]])
                        ckpt.flush()
        else:
            for args in todo:
                recs = _survey_one(args)
                results[args[0]] = [record_row(r) for r in recs]
                if ckpt:
                    writer.writerows(results[args[0]])
                    ckpt.flush()
    finally:
        if ckpt:
            ckpt.close()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SURVEY_HEADER)
    for pid, _ in job.polygons:
        for row in results.get(pid, []):
            w.writerow(row)
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    return text


def aggregate_survey(csv_text: str) -> str:
    """Per ``(q, k)``: the largest ``d_b`` and how many polygons attain it."""
    best: dict[tuple[int, int], list[int]] = {}
    for row in csv.DictReader(io.StringIO(csv_text)):
        if not row["d_or_db"]:
            continue
        key = (int(row["q"]), int(row["k"]))
        d = int(row["d_or_db"])
        cur = best.get(key)
        if cur is None or d > cur[0]:
            best[key] = [d, 1]
        elif d == cur[0]:
            cur[1] += 1
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(AGGREGATE_HEADER)
    for (q, k), (d, c) in sorted(best.items()):
        w.writerow([q, k, d, c])
    return buf.getvalue()


def ldp_histogram(polygons: Iterable[LatticePolygon]) -> dict[int, int]:
    """Number of polygons per minimal box size."""
    hist: dict[int, int] = {}
    for P in polygons:
        m = minimum_box(P).m
        hist[m] = hist.get(m, 0) + 1
    return dict(sorted(hist.items()))


def reproduce_table1(m_max: int, workers: int = 1, spill_dir: str | None = None):
    """Table rows ``(m, count, max_vertices, count_max)`` for ``m <= m_max``.

    A single classification of ``B_{m_max}`` serves every row.
    """
    if m_max > 7:
        raise ResourceError("classification above m = 7 is not supported")
    if m_max > 5:
        log.warning("classifying B_%d takes a long time", m_max)
    classes = classify_box(m_max, workers=workers, spill_dir=spill_dir)
    return [box_stats(classes, m) for m in range(1, m_max + 1)]


@dataclass
class ChampionReport:
    q: int
    k: int
    scanned: int
    survivors: list[LatticePolygon] = field(default_factory=list)
    exact: dict[str, int] = field(default_factory=dict)
    bounds: dict[str, tuple[int, int]] = field(default_factory=dict)
    certified: list[LatticePolygon] = field(default_factory=list)
    ldp_origins: dict[str, list[tuple[int, int]]] = field(default_factory=dict)
    timed_out: list[str] = field(default_factory=list)
    witnesses: dict[str, list[int]] = field(default_factory=dict)
    seconds: float = 0.0

    def lines(self) -> list[str]:
        out = [f"scanned {self.scanned} classes with {self.k} lattice points in B_{self.q - 2} over F_{self.q}",
               f"survivors of the 4-row filter: {len(self.survivors)}"]
        for P in self.certified:
            s = format_polygon(P)
            out.append(f"certified d={self.exact[s]} [{(self.q - 1) ** 2},{self.k},{self.exact[s]}]: {s}"
                       f" LDP origins {self.ldp_origins.get(s)}")
        if self.timed_out:
            out.append(f"undecided (time budget): {len(self.timed_out)}")
        out.append(f"elapsed {self.seconds:.0f}s")
        return out


def reproduce_champion(q: int = 7, k: int = 19, target: int = 12, box: int | None = None,
                       time_budget: float | None = None, classes: list[LatticePolygon] | None = None,
                       progress=None, skip: dict | None = None) -> ChampionReport:
    """Scan classes in ``B_{q-2}`` with ``k`` points for codes with ``d >= target``.

    Steps: drop codes with a word of weight below ``target`` built from at
    most 4 rows; run Brouwer-Zimmermann (stopping early on any lighter word)
    on the rest; report the classes reaching ``target``.  ``skip`` maps
    formatted polygons to results of an earlier run (see the CLI's
    checkpoint) whose BZ step is not repeated.
    """
    start = time.monotonic()
    box = q - 2 if box is None else box
    if classes is None:
        classes = classify_box(box)
    cands = [P for P in classes if point_count(P) == k and bounding_square_size(P) <= q - 2]
    F = field_make(q)
    rep = ChampionReport(q, k, len(cands))
    for P in cands:
        G = generator_matrix(P, F)
        if rows_needed_to_disqualify(G, target, 4) is None:
            rep.survivors.append(P)
    for i, P in enumerate(rep.survivors):
        s = format_polygon(P)
        if skip and s in skip and not skip[s]["timed_out"]:
            prev = skip[s]
            if prev["kind"] == "exact":
                rep.exact[s] = prev["value"]
                if prev["value"] >= target:
                    rep.certified.append(P)
                    rep.ldp_origins[s] = ldp_origins(P)
            else:
                rep.bounds[s] = (prev["lower_bound"], prev["value"])
            continue
        G = generator_matrix(P, F)
        res = bz_min_distance(G, time_budget=time_budget, target=target)
        if res.timed_out:
            rep.timed_out.append(s)
            rep.bounds[s] = (res.lower_bound, res.value)
        elif res.kind == "exact":
            rep.exact[s] = res.value
            rep.witnesses[s] = [int(a) for a in res.witness]
            if res.value >= target:
                rep.certified.append(P)
                rep.ldp_origins[s] = ldp_origins(P)
        else:
            rep.bounds[s] = (res.lower_bound, res.value)
        if progress:
            progress(i, P, res)
    rep.seconds = time.monotonic() - start
    return rep
