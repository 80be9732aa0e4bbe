"""Command-line front end: build algebras, verify cases, sweep gradings, render tables.

Exit status: 0 when every verdict passes, 1 on a failed verdict, 2 on invalid
parameters, 3 when the enumeration search space exceeds the guard.

Relative ``--output`` paths are resolved against ``$GQS_REPORT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from . import __version__
from .algebras import FamilyTag, InvalidParameters, build, expected_dim, format_weight, make_tag, omega
from .cases import UnknownCase, build_caos, catalog, find_case
from .enumeration import SearchSpaceTooLarge, default_space, enumerate_gradings, reconcile, render_reconcile, render_table
from .grading import NotAdmissible, grade_by_toral, verify_grading
from .relations import DomainMismatch, check_quadratic, compare_with_table, extract_triple_coefficients, get_template, verify_relations
from .superlinalg import Subspace, render_matrix

REPORT_DIR_ENV = "GQS_REPORT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3


def _record(name: str, ok: bool, case: Optional[str] = None, **details) -> dict:
    rec = {"name": name, "verdict": "pass" if ok else "fail"}
    if case is not None:
        rec["case"] = case
    rec["details"] = details
    return rec


def check_case(tag: FamilyTag, case_id: str) -> List[dict]:
    """All checks for one catalog case, as flat report records."""
    spec = find_case(tag, case_id)
    alg = build(tag)
    out = []
    try:
        g = grade_by_toral(alg, spec.grading_coords)
    except NotAdmissible as exc:
        return [_record("grading.admissible", False, case_id, error=str(exc))]
    rep = verify_grading(alg, g)
    for name in rep.CHECKS:
        extra = {k: v for k, v in rep.details.items() if k.startswith(name.split("_")[0])}
        out.append(_record(f"grading.{name}", rep.checks[name], case_id, **extra))
    out.append(
        _record(
            "grading.counts",
            (g.length, g.N) == (spec.expected_length, spec.expected_N),
            case_id,
            expected=[spec.expected_length, spec.expected_N],
            found=[g.length, g.N],
            dims=list(g.dims()),
        )
    )
    g0 = g.component(0)
    even = sum(1 for b in g0.basis if b.degree() == 0)
    out.append(
        _record(
            "grading.g0_dims",
            (even, g0.dim - even) == tuple(spec.expected_g0),
            case_id,
            g0=spec.g0_label,
            expected=list(spec.expected_g0),
            found=[even, g0.dim - even],
        )
    )
    caos = build_caos(spec, alg, g)
    bad = [i + 1 for i in range(caos.N) if omega(alg, caos.plus(i)) != caos.minus(i)]
    out.append(_record("caos.omega_pairs", not bad, case_id, N=caos.N, mismatched=bad))
    spans = all(g.component(s).same_span(_span(caos, s)) for s in (1, -1))
    out.append(_record("caos.span", spans, case_id))
    q = check_quadratic(caos)
    out.append(_record("relations.quadratic", q.passed, case_id, **_rel_details(q)))
    if spec.relation_template:
        tpl = get_template(spec.relation_template)
        r = verify_relations(caos, tpl)
        out.append(_record(f"relations.{tpl.id}", r.passed, case_id, **_rel_details(r)))
        mism = compare_with_table(caos, tpl)
        out.append(_record(f"coefficients.{tpl.id}", not mism, case_id, mismatched=[list(k) for k in mism[:20]]))
    return out


def _span(caos, s):
    return Subspace.span(caos.context, [caos.op(i, s) for i in range(caos.N)])


def _rel_details(r) -> dict:
    d = r.as_dict()
    d.pop("verdict")
    d.pop("case")
    if not d["failures"]:
        d.pop("failures")
    return d


def _check_case_job(args):
    tag, case_id = args
    return check_case(tag, case_id)


def _run_parallel(fn, items, jobs: int):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# commands; each returns (records, extra markdown, extra json payload)


def cmd_build(tag, args):
    alg = build(tag)
    roots = [
        {"root": format_weight(r.weight, tag), "parity": "odd" if r.parity else "even", "vector": render_matrix(r.matrix)}
        for r in alg.roots
    ]
    recs = [_record("build.dimension", alg.dim == expected_dim(tag), None, dim=alg.dim, rank=alg.rank)]
    md = "\n".join(["| root | parity |", "|---|---|"] + [f"| {r['root']} | {r['parity']} |" for r in roots]) + "\n"
    return recs, md, {"dim": alg.dim, "rank": alg.rank, "roots": roots}


def cmd_verify_case(tag, args):
    if not args.case:
        raise InvalidParameters("verify-case needs --case")
    return check_case(tag, args.case), "", None


def cmd_verify_family(tag, args):
    ids = [s.id for s in catalog(tag)]
    results = _run_parallel(_check_case_job, [(tag, cid) for cid in ids], args.jobs)
    return [rec for recs in results for rec in recs], "", {"cases": ids}


def cmd_extract(tag, args):
    if not args.case:
        raise InvalidParameters("extract needs --case")
    spec = find_case(tag, args.case)
    caos = build_caos(spec)
    table = extract_triple_coefficients(caos)
    rows = table.rows()
    ops = [
        {"index": i + 1, "label": list(map(str, caos.labels[i])), "plus": render_matrix(caos.plus(i)), "minus": render_matrix(caos.minus(i))}
        for i in range(caos.N)
    ]
    recs = [_record("extract.expansion", True, spec.id, tuples=len(rows))]
    md = "\n".join(["| tuple | expansion |", "|---|---|"] + [f"| {r['tuple']} | {r['expansion']} |" for r in rows]) + "\n"
    return recs, md, {"operators": ops, "coefficients": rows}


def cmd_enumerate(tag, args):
    alg = build(tag)
    space = default_space(alg, args.bound)
    res = enumerate_gradings(alg, space, jobs=args.jobs)
    rep = reconcile(alg, res.signatures)
    recs = [
        _record("enumerate.soundness", not res.rejected_signatures, None, rejected=[s.as_dict() for s in res.rejected_signatures]),
        _record("enumerate.reconcile", rep.passed, None, unmatched_rows=rep.unmatched_rows, unmatched_found=rep.unmatched_found),
    ]
    payload = {
        "bound": args.bound,
        "step": str(space.step),
        "admissible_vectors": res.admissible_vectors,
        "representatives": [[str(c) for c in h.coords] for h, _ in res.found],
        "reconcile": rep.as_dict(),
    }
    return recs, render_reconcile(rep), payload


def cmd_tables(tag, args):
    specs = catalog(tag)
    rows = [
        {"case": s.id, "g0": s.g0_label, "length": s.expected_length, "N": s.expected_N, "coords": [str(c) for c in s.grading_coords]}
        for s in specs
    ]
    return [], render_table(specs, tag.label), {"rows": rows}


COMMANDS = {
    "build": cmd_build,
    "verify-case": cmd_verify_case,
    "verify-family": cmd_verify_family,
    "extract": cmd_extract,
    "enumerate": cmd_enumerate,
    "tables": cmd_tables,
}


# ---------------------------------------------------------------------------


def make_document(command: str, tag: FamilyTag, records, payload, elapsed: Optional[float]) -> dict:
    doc = {
        "tool": "gqs",
        "version": __version__,
        "command": command,
        "algebra": {"label": tag.label, "family": tag.family, "m": tag.m, "n": tag.n},
        "checks": records,
        "timing": None if elapsed is None else {"seconds": round(elapsed, 3)},
    }
    if payload is not None:
        doc["data"] = payload
    return doc


def render_markdown(doc: dict, extra: str) -> str:
    lines = [f"# gqs {doc['version']}: {doc['command']} {doc['algebra']['label']}", ""]
    if doc["checks"]:
        lines += ["| check | case | verdict | details |", "|---|---|---|---|"]
        for rec in doc["checks"]:
            det = json.dumps(rec["details"], sort_keys=True) if rec["details"] else ""
            lines.append(f"| {rec['name']} | {rec.get('case', '')} | {rec['verdict']} | {det.replace('|', '/')} |")
        n_fail = sum(rec["verdict"] == "fail" for rec in doc["checks"])
        lines += ["", f"{len(doc['checks']) - n_fail} passed, {n_fail} failed", ""]
    if extra:
        lines += [extra]
    if doc["timing"]:
        lines += [f"elapsed: {doc['timing']['seconds']} s", ""]
    return "\n".join(lines)


def _output_path(path: str) -> str:
    base = os.environ.get(REPORT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gqs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gqs {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--family", required=True, choices=["A", "B", "B0", "C", "D"])
        s.add_argument("--m", type=int, default=None)
        s.add_argument("--n", type=int, default=0)
        s.add_argument("--case", default=None)
        s.add_argument("--format", choices=["json", "markdown"], default="json")
        s.add_argument("--output", default=None, help="report path (default: stdout)")
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--bound", type=int, default=2)
        s.add_argument("--timing", action="store_true", help="include wall-clock time (makes reports non-reproducible)")
    return p


def _tag(args) -> FamilyTag:
    m = args.m
    if args.family == "C":
        if m not in (None, 1):
            raise InvalidParameters("C(n) takes only --n")
        return FamilyTag.C(args.n)
    if args.family == "B0":
        if m:
            raise InvalidParameters("B0 takes only --n")
        m = 0
    return make_tag(args.family, m or 0, args.n)


def run(argv: Optional[List[str]] = None) -> int:
    args = parser().parse_args(argv)
    if args.jobs < 1 or args.bound < 1:
        print("error: --jobs and --bound must be positive", file=sys.stderr)
        return EXIT_INVALID
    start = time.perf_counter()
    try:
        tag = _tag(args)
        records, extra, payload = COMMANDS[args.command](tag, args)
    except (InvalidParameters, UnknownCase, DomainMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SearchSpaceTooLarge as exc:
        print(f"error: search space too large: {exc}", file=sys.stderr)
        return EXIT_GUARD
    elapsed = time.perf_counter() - start if args.timing else None
    doc = make_document(args.command, tag, records, payload, elapsed)
    if args.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = render_markdown(doc, extra)
    if args.output:
        path = _output_path(args.output)
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if all(r["verdict"] == "pass" for r in records) else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
