"""Batch theorem verification over graph corpora with resumable JSONL output.

Each graph yields one record; theorem violations fail the suite because the
theorems are ground truth, so a violation can only mean an implementation
bug.  The nullity reach-check is failing; the never-exceed check is
advisory and only warns.
"""

from __future__ import annotations

import json
import os
import time
import zlib
from dataclasses import dataclass, field

from .chains import chains_for, check_order_lemmas
from .drawing import (
    build_parallel_drawing,
    build_standard_drawing,
    leftmost_set,
    verify_drawing,
)
from .errors import UnsupportedInputError, ZfError
from .forcing import forcing_number, is_forcing_set, total_forcing_number
from .graphs import (
    Graph,
    canonical_form,
    disjoint_union,
    encode_graph6,
    enumerate_connected_subcubic,
    path_graph,
    read_graph6_file,
)
from .nullity import NullityCertificate, classify, maximize_nullity

ALL_CHECKS = ("T_iff", "T_fmk", "C_ft", "P_left", "L_order", "E_bounds")
_HARNESS_N_CAP = 12


@dataclass
class SuiteReport:
    corpus_id: str
    totals: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    records: dict = field(default_factory=dict)
    cursor: int = 0

    @property
    def ok(self):
        return not self.violations


def _graph_key(g: Graph):
    return canonical_form(g) if g.n <= 10 else encode_graph6(g)


def _builtin_corpus(n_max):
    graphs = []
    for n in range(1, n_max + 1):
        graphs.extend(enumerate_connected_subcubic(n))
    # disconnected path unions cover the total-forcing sharpness cases and
    # the union-of-paths side of the classification
    for j in range(1, 5):
        graphs.append(disjoint_union([path_graph(2)] * j))
    return graphs


def _load_done(path):
    done = {}
    if path and os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    done[rec["graph"]] = rec
                except (ValueError, KeyError) as exc:
                    raise OSError(f"corrupt resume file {path}, line {lineno}: {exc}") from exc
    return done


def run_suite(
    source,
    checks=ALL_CHECKS,
    resume=False,
    out_path=None,
    seed=0,
    nullity_budget=(50, 2000),
    advisory=False,
) -> SuiteReport:
    """Run the selected theorem checks over a corpus.

    source is either an int (built-in enumeration up to that order) or a
    path to a graph6 file.  Records append to out_path as JSONL, one line
    per graph keyed by canonical form; with resume=True, graphs already
    present are folded in without recomputation.
    """
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise UnsupportedInputError(f"unknown checks: {sorted(unknown)}")
    if isinstance(source, int):
        graphs = _builtin_corpus(source)
        corpus_id = f"builtin:{source}"
    else:
        graphs = read_graph6_file(source)
        corpus_id = f"file:{os.path.basename(source)}:{len(graphs)}"
    done = _load_done(out_path) if resume else {}
    report = SuiteReport(corpus_id=corpus_id)
    sink = open(out_path, "a" if resume else "w", encoding="utf-8") if out_path else None
    try:
        for g in graphs:
            key = _graph_key(g)
            if key in done:
                rec = done[key]
            else:
                rec = _check_one(g, key, checks, seed, nullity_budget, advisory)
                if sink:
                    sink.write(json.dumps(rec) + "\n")
                    sink.flush()
            report.records[key] = rec
            report.cursor += 1
            tag = rec.get("tag")
            if tag:
                report.totals[tag] = report.totals.get(tag, 0) + 1
            for v in rec.get("violations", ()):
                report.violations.append((key, v))
            for w in rec.get("warnings", ()):
                report.warnings.append((key, w))
    finally:
        if sink:
            sink.close()
    return report


def _check_one(g: Graph, key, checks, seed, nullity_budget, advisory):
    rec = {
        "graph": key,
        "n": g.n,
        "f": None,
        "f_t": None,
        "tag": None,
        "m_certified": None,
        "drawing_ok": None,
        "lemma_checks": {},
        "timings": {},
        "violations": [],
        "warnings": [],
        "skipped": False,
    }
    if g.max_degree() > 3 or g.n > _HARNESS_N_CAP:
        rec["skipped"] = True
        return rec
    graph_seed = seed + zlib.crc32(key.encode("ascii")) % 65536

    t0 = time.perf_counter()
    f, witness = forcing_number(g)
    rec["f"] = f
    if g.n >= 1 and all(g.degree(v) > 0 for v in range(g.n)):
        rec["f_t"] = total_forcing_number(g)[0]
    rec["timings"]["forcing_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    t0 = time.perf_counter()
    cls = classify(g)
    rec["tag"] = cls.tag
    rec["timings"]["classify_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    drawing = None
    if "T_iff" in checks or "P_left" in checks or "C_ft" in checks:
        t0 = time.perf_counter()
        if f <= 3:
            try:
                drawing = build_parallel_drawing(g)
                rec["drawing_ok"] = bool(verify_drawing(g, drawing).ok)
            except ZfError as exc:
                rec["drawing_ok"] = False
                rec["violations"].append(f"drawing construction failed: {exc}")
        if "T_iff" in checks:
            if f == 3 and not rec.get("drawing_ok"):
                rec["violations"].append("T_iff: no verified 3-row drawing despite f=3")
            if f == 3 and drawing is not None and drawing.k != 3:
                rec["violations"].append(f"T_iff: drawing has {drawing.k} rows, wanted 3")
            if f != 3:
                try:
                    build_standard_drawing(g)
                    rec["violations"].append("T_iff: 3-row pipeline accepted f != 3 input")
                except UnsupportedInputError:
                    pass
        rec["timings"]["drawing_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    if "P_left" in checks and drawing is not None:
        left = leftmost_set(drawing)
        if not is_forcing_set(g, left):
            rec["violations"].append(f"P_left: leftmost set {sorted(left)} does not force")
        if len(left) < f:
            rec["violations"].append("P_left: leftmost set smaller than the forcing number")

    if "C_ft" in checks and rec["f_t"] is not None:
        if drawing is not None and rec["f_t"] > 2 * drawing.k:
            rec["violations"].append(
                f"C_ft: total forcing {rec['f_t']} exceeds twice the {drawing.k}-row drawing"
            )
        comps = g.components()
        if comps and all(len(c) == 2 for c in comps):
            if rec["f_t"] != 2 * len(comps):
                rec["violations"].append(
                    f"C_ft: union of {len(comps)} edges should have total forcing {2 * len(comps)}"
                )

    if "L_order" in checks:
        t0 = time.perf_counter()
        lemma_report = check_order_lemmas(chains_for(g, witness))
        rec["lemma_checks"] = lemma_report.by_lemma()
        if not lemma_report.passed:
            rec["violations"].append(f"L_order: {lemma_report.violations[:3]}")
        rec["timings"]["lemmas_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    if "E_bounds" in checks:
        if g.is_connected() and 2 * f > g.n + 2:
            rec["violations"].append(f"E_bounds: f={f} above n/2+1")
        if rec["f_t"] is not None and not f <= rec["f_t"] <= 2 * f:
            rec["violations"].append(f"E_bounds: f_t={rec['f_t']} outside [f, 2f]")
        if g.edge_count == 0 and f != g.n:
            rec["violations"].append("E_bounds: edgeless graph must have f = n")

    if "T_fmk" in checks and cls.m is not None:
        t0 = time.perf_counter()
        result = maximize_nullity(g, cls.m, budget=nullity_budget, seed=graph_seed)
        if isinstance(result, NullityCertificate):
            rec["m_certified"] = result.k
        else:
            rec["violations"].append(
                f"T_fmk: optimizer reached only {result.best_k}, classification says {cls.m}"
            )
        if advisory and cls.m + 1 <= g.n:
            over = maximize_nullity(g, cls.m + 1, budget=nullity_budget, seed=graph_seed)
            if isinstance(over, NullityCertificate):
                rec["warnings"].append(
                    f"T_fmk advisory: certified {cls.m + 1} above classified {cls.m}"
                )
        rec["timings"]["nullity_ms"] = round((time.perf_counter() - t0) * 1000, 3)

    return rec


def diff_reports(a: SuiteReport, b: SuiteReport) -> str:
    """Field-level differences between two runs of the same corpus.

    Timings are ignored: they never reproduce, and determinism claims are
    about everything else.
    """
    if a.corpus_id != b.corpus_id:
        raise UnsupportedInputError(
            f"corpus mismatch: {a.corpus_id} vs {b.corpus_id}"
        )
    lines = []
    for key in sorted(set(a.records) | set(b.records)):
        ra = a.records.get(key)
        rb = b.records.get(key)
        if ra is None or rb is None:
            lines.append(f"{key}: present only in {'second' if ra is None else 'first'} run")
            continue
        for fieldname in sorted(set(ra) | set(rb)):
            if fieldname == "timings":
                continue
            va, vb = ra.get(fieldname), rb.get(fieldname)
            if va != vb:
                lines.append(f"{key} {fieldname}: {va!r} != {vb!r}")
    return "\n".join(lines)
