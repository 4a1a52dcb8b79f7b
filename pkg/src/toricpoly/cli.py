"""Command-line entry point (``toricpoly``)."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from contextlib import contextmanager

from . import __version__
from .classify import ClassificationRun, box_stats, max_vertex_survey
from .errors import ResourceError, TimeBudgetExceeded, ToricPolyError
from .gf import field_make
from .io import iter_polygon_lines, write_polygons
from .lattice import LatticePolygon, format_polygon, normalized_volume
from .ldp import all_embeddings, gorenstein_index, is_ldp, minimum_box
from .mindist import (
    KnownDistanceTable,
    bz_min_distance,
    exact_min_distance,
    row_combo_bound,
)
from .survey import (
    SurveyJob,
    aggregate_survey,
    ldp_histogram,
    placed_for_field,
    reproduce_champion,
    reproduce_table1,
    run_survey,
)
from .toric import generator_matrix

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2

log = logging.getLogger("toricpoly")


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _polygons(path) -> tuple[list[tuple[str, LatticePolygon]], int]:
    """Polygons of a file; bad lines are logged and counted, not fatal."""
    out, bad = [], 0
    with (sys.stdin if path == "-" else open(path)) as fh:
        for pid, item in iter_polygon_lines(fh):
            if isinstance(item, Exception):
                log.error("%s", item)
                bad += 1
            else:
                out.append((pid, item))
    return out, bad


def cmd_classify(args) -> int:
    run = ClassificationRun(args.box, workers=args.workers, spill_dir=args.spill).run()
    classes = [LatticePolygon._trusted(rep) for _, rep in run.items()]
    run.cleanup()
    with _output(args.out) as fh:
        write_polygons(classes, fh, header=f"lattice polygons in B_{args.box} up to equivalence: {len(classes)}")
        fh.write("# m,count,max_vertices,count_max\n")
        for m in range(1, args.box + 1):
            fh.write(f"# {box_stats(classes, m).csv_row()}\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    polys, bad = _polygons(args.input)
    classes = [P for _, P in polys]
    m_max = args.box or max(minimum_box(P).m for P in classes)
    with _output(args.out) as fh:
        fh.write("m,count,max_vertices,count_max\n")
        for m in range(1, m_max + 1):
            fh.write(box_stats(classes, m).csv_row() + "\n")
        if args.survey:
            sv = max_vertex_survey(classes, m_max)
            fh.write(f"# minimal volume of {sv.max_vertices}-gons: {sv.minimal_volume}\n")
            for P, h in sv.minimal:
                fh.write(f"# {format_polygon(P)} homogeneous={str(h).lower()}\n")
            for P in sv.homogeneous:
                fh.write(f"# least-volume homogeneous: {format_polygon(P)} volume {normalized_volume(P)}\n")
    return EXIT_PARTIAL if bad else EXIT_OK


def cmd_minbox(args) -> int:
    polys, bad = _polygons(args.input)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "min_m", "polygon"])
        embedded = []
        for pid, P in polys:
            res = minimum_box(P)
            w.writerow([pid, res.m, format_polygon(res.polygon)])
            if args.emit_embeddings:
                embedded.extend(all_embeddings(P, res.m))
        if args.emit_embeddings:
            write_polygons(embedded, fh, header="embeddings in the minimum box")
    return EXIT_PARTIAL if bad else EXIT_OK


def cmd_ldp(args) -> int:
    polys, bad = _polygons(args.input)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "is_ldp", "index", "min_m"])
        for pid, P in polys:
            ok = is_ldp(P)
            idx = gorenstein_index(P) if ok else ""
            w.writerow([pid, str(ok).lower(), idx, minimum_box(P).m])
        if args.histogram:
            fh.write("\n")
            w.writerow(["m", "count"])
            for m, c in ldp_histogram(P for _, P in polys).items():
                w.writerow([m, c])
    return EXIT_PARTIAL if bad else EXIT_OK


def cmd_code(args) -> int:
    polys, bad = _polygons(args.input)
    F = field_make(args.q)
    with _output(args.out) as fh:
        for pid, P in polys:
            try:
                emb, _ = placed_for_field(P, args.q)
                G = generator_matrix(emb, F)
            except ToricPolyError as exc:
                log.error("polygon %s: %s", pid, exc)
                bad += 1
                continue
            fh.write(f"# polygon {pid} {format_polygon(emb)} [n={G.n},k={G.k}] rank={G.rank()}\n")
            if args.dump_matrix:
                fh.write(G.dump())
    return EXIT_PARTIAL if bad else EXIT_OK


def _distance_rows(args, compute):
    polys, bad = _polygons(args.input)
    partial = bool(bad)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["id", "q", "n", "k", "d", "kind", "rows_used", "witness"])
        for pid, P in polys:
            try:
                emb, q = placed_for_field(P, args.q)
                G = generator_matrix(emb, field_make(q))
                res = compute(G)
            except ToricPolyError as exc:
                log.error("polygon %s: %s", pid, exc)
                partial = True
                continue
            partial |= res.timed_out
            wit = "" if res.witness is None else " ".join(str(int(a)) for a in res.witness)
            w.writerow([pid, q, G.n, G.k, res.value, res.kind,
                        "" if res.rows_used is None else res.rows_used, wit])
            fh.flush()
    return EXIT_PARTIAL if partial else EXIT_OK


def cmd_mindist(args) -> int:
    if args.method == "exhaustive":
        return _distance_rows(args, exact_min_distance)
    return _distance_rows(args, lambda G: bz_min_distance(G, time_budget=args.budget))


def cmd_dbound(args) -> int:
    return _distance_rows(args, lambda G: row_combo_bound(G, args.rows, stop_below=args.stop_below))


def cmd_survey(args) -> int:
    polys, bad = _polygons(args.input)
    table = KnownDistanceTable.load(args.table) if args.table else None
    job = SurveyJob(polys, fields=args.q or None, mode=args.mode, rows=args.rows,
                    budget=args.budget, table=table, workers=args.workers)
    text = run_survey(job, out_path=args.out if args.out not in (None, "-") else None, resume=args.resume)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    agg = aggregate_survey(text)
    if args.aggregate:
        with open(args.aggregate, "w") as fh:
            fh.write(agg)
    else:
        sys.stderr.write(agg)
    return EXIT_PARTIAL if bad else EXIT_OK


def cmd_reproduce(args) -> int:
    if args.what == "table1":
        try:
            rows = reproduce_table1(args.m_max, workers=args.workers, spill_dir=args.spill)
        except ResourceError as exc:
            log.error("%s", exc)
            return EXIT_ERROR
        with _output(args.out) as fh:
            fh.write("m,count,max_vertices,count_max\n")
            for st in rows:
                fh.write(st.csv_row() + "\n")
        return EXIT_OK

    checkpoint = args.checkpoint
    done = {}
    if args.resume and checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            for line in fh:
                rec = json.loads(line)
                done[rec["polygon"]] = rec

    ck = open(checkpoint, "a") if checkpoint else None

    def progress(i, P, res):
        log.info("survivor %d: %s -> %s %s", i + 1, format_polygon(P), res.kind, res.value)
        if ck:
            ck.write(json.dumps({"polygon": format_polygon(P), "kind": res.kind, "value": res.value,
                                 "lower_bound": res.lower_bound, "timed_out": res.timed_out}) + "\n")
            ck.flush()

    try:
        rep = reproduce_champion(q=args.q, k=args.k, target=args.target, time_budget=args.budget,
                                 progress=progress, skip=done)
    finally:
        if ck:
            ck.close()
    with _output(args.out) as fh:
        for line in rep.lines():
            fh.write(line + "\n")
    return EXIT_PARTIAL if rep.timed_out else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker processes")
    common.add_argument("--budget", type=float, default=None, help="time budget in seconds per code")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="toricpoly", parents=[common],
                                 description="Lattice polygons in a box and their toric codes.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify polygons in B_m")
    p.add_argument("--box", type=int, required=True)
    p.add_argument("--spill", default=None, help="directory for finished levels")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stats", parents=[common], help="box statistics of a classification file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--box", type=int, default=None)
    p.add_argument("--survey", action="store_true", help="list minimal-volume max-vertex polygons")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("minbox", parents=[common], help="minimum box of each polygon")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--emit-embeddings", action="store_true")
    p.set_defaults(func=cmd_minbox)

    p = sub.add_parser("ldp", parents=[common], help="LDP test, index and minimum box")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--histogram", action="store_true", help="append an m,count histogram")
    p.set_defaults(func=cmd_ldp)

    p = sub.add_parser("code", parents=[common], help="toric code generator matrices")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--dump-matrix", action="store_true")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("mindist", parents=[common], help="exact minimum distance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--q", type=int, default=None, help="field size (default: minimal for the box)")
    p.add_argument("--method", choices=["bz", "exhaustive"], default="bz")
    p.set_defaults(func=cmd_mindist)

    p = sub.add_parser("dbound", parents=[common], help="row-combination bound d_b(r)")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--stop-below", type=int, default=None)
    p.set_defaults(func=cmd_dbound)

    p = sub.add_parser("survey", parents=[common], help="code survey over a polygon file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--q", type=int, action="append", help="field size (repeatable)")
    p.add_argument("--mode", choices=["bound", "exact", "bz"], default="bound")
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--table", default=None, help="known-distance CSV q,n,k,d")
    p.add_argument("--aggregate", default=None, help="write the per-k aggregation here")
    p.add_argument("--resume", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("reproduce", parents=[common], help="reproduction reports")
    p.add_argument("what", choices=["table1", "champion"])
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--spill", default=None)
    p.add_argument("--q", type=int, default=7, help="champion scan: field size")
    p.add_argument("--k", type=int, default=19, help="champion scan: number of lattice points")
    p.add_argument("--target", type=int, default=12, help="champion scan: distance to reach")
    p.add_argument("--checkpoint", default=None, help="JSON-lines log of finished BZ runs")
    p.add_argument("--resume", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except TimeBudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_PARTIAL
    except (ToricPolyError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
