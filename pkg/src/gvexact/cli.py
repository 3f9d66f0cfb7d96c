"""Batch front-end: compute integer tables, run verification suites, list
surface presets.

Exact values are serialized as strings ("p/q"), never floats.  Reports are
emitted in graded-lex degree order regardless of the worker count, one JSON
object (or CSV row group) per degree vector, followed by a summary.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from gvexact.gv import PRESETS, GvReport, integrality_report
from gvexact.series import (
    build_z_series,
    degree_vectors,
    f_connected,
    z_coefficient_matrix,
)
from gvexact.verify import SUITES, run_suites

# scale caps for the verification-grade paths (exponential growth)
MATRIX_PATH_CAP = 4
GRAPH_PATH_CAP = 3


@dataclass
class RunConfig:
    gamma: tuple[int, ...]
    max_total_degree: int = 3
    degrees: list[tuple[int, ...]] | None = None
    paths: tuple[str, ...] = ("def",)
    verify_suites: tuple[str, ...] = ()
    output_format: str = "json"
    jobs: int = 1


def parse_gamma(text: str) -> tuple[int, ...]:
    if text in PRESETS:
        return PRESETS[text]
    vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    if len(vals) < 2:
        raise ValueError("gamma needs at least two entries")
    return vals


def parse_degrees(text: str, r: int) -> list[tuple[int, ...]]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        vec = tuple(int(x) for x in chunk.replace(" ", "").split(","))
        if len(vec) != r or any(x < 0 for x in vec) or not any(vec):
            raise ValueError(f"bad degree vector {chunk!r}")
        out.append(vec)
    return out


def compute_reports(config: RunConfig) -> tuple[list[GvReport], bool]:
    """All requested reports in graded-lex order plus the overall verdict."""
    r = len(config.gamma)
    if config.degrees:
        targets = sorted(set(config.degrees), key=lambda d: (sum(d), d))
        max_total = max(sum(d) for d in targets)
        zs = build_z_series(config.gamma, max_total, degrees=targets)
    else:
        max_total = config.max_total_degree
        targets = list(degree_vectors(r, max_total))
        zs = build_z_series(config.gamma, max_total)
    fs = zs.log()

    def one(d) -> GvReport:
        rep = integrality_report(config.gamma, d, fs.coefficient)
        agree = True
        if "matrix" in config.paths and sum(d) <= MATRIX_PATH_CAP:
            agree &= z_coefficient_matrix(config.gamma, d) == zs.get(d)
        if "graphs" in config.paths and sum(d) <= GRAPH_PATH_CAP:
            agree &= f_connected(config.gamma, d) == fs.get(d)
        rep.paths_agree = agree
        return rep

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(one, targets))
    else:
        reports = [one(d) for d in targets]
    ok = all(rep.integral and rep.paths_agree for rep in reports)
    return reports, ok


def emit_json(reports: list[GvReport], ok: bool, out) -> None:
    for rep in reports:
        out.write(json.dumps(rep.to_json_obj(), separators=(",", ":"), sort_keys=True))
        out.write("\n")
    summary = {
        "summary": True,
        "reports": len(reports),
        "all_integral": all(r.integral for r in reports),
        "all_paths_agree": all(r.paths_agree for r in reports),
        "ok": ok,
    }
    out.write(json.dumps(summary, separators=(",", ":"), sort_keys=True))
    out.write("\n")


def emit_csv(reports: list[GvReport], out) -> None:
    out.write("degree,g,n\n")
    for rep in reports:
        dtxt = " ".join(str(x) for x in rep.degree)
        for g, n in rep.gv_numbers:
            out.write(f"{dtxt},{g},{n}\n")


def load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gv",
        description="Exact integer tables from topological-vertex data (r, gamma).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute t*G tables and integer reports")
    c.add_argument("--surface", choices=sorted(PRESETS), help="preset gamma")
    c.add_argument("--gamma", help="comma-separated integers, e.g. ' -1,-1'")
    c.add_argument("--max-degree", type=int, default=None, dest="max_degree",
                   help="maximum total degree |d| (default 3)")
    c.add_argument("--degrees", help="explicit list: 'd1,..,dr;d1,..,dr;...'")
    c.add_argument("--paths", default=None,
                   help="comma subset of def,matrix,graphs (extra paths verified "
                        f"up to |d|<={MATRIX_PATH_CAP} / {GRAPH_PATH_CAP})")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--jobs", type=int, default=None)
    c.add_argument("--config", help="JSON config file; flags win on conflict")

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", action="append", default=None,
                   help=f"suite name(s); known: {', '.join(sorted(SUITES))}")

    sub.add_parser("surfaces", help="list gamma presets")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "surfaces":
        for name, gamma in PRESETS.items():
            print(f"{name}: gamma = {list(gamma)}")
        return 0

    if args.command == "verify":
        names = args.suite or sorted(SUITES)
        results = run_suites(names)
        ok = True
        for name, passed, detail in results:
            print(f"{name}: {'PASS' if passed else 'FAIL'} - {detail}")
            ok &= passed
        return 0 if ok else 1

    # compute
    file_cfg = load_config_file(args.config) if args.config else {}
    gamma_text = args.gamma or args.surface or file_cfg.get("gamma")
    if gamma_text is None:
        print("error: need --surface, --gamma or a config file gamma", file=sys.stderr)
        return 2
    if isinstance(gamma_text, list):
        gamma = tuple(int(x) for x in gamma_text)
    else:
        gamma = parse_gamma(str(gamma_text))
    def pick(flag, key, default):
        return flag if flag is not None else file_cfg.get(key, default)

    try:
        cfg = RunConfig(
            gamma=gamma,
            max_total_degree=int(pick(args.max_degree, "max_total_degree", 3)),
            degrees=(
                parse_degrees(args.degrees, len(gamma)) if args.degrees
                else [tuple(d) for d in file_cfg.get("degrees", [])] or None
            ),
            paths=tuple(str(pick(args.paths, "paths", "def")).split(",")),
            output_format=args.format,
            jobs=max(1, int(pick(args.jobs, "jobs", 1))),
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports, ok = compute_reports(cfg)
    if cfg.output_format == "csv":
        emit_csv(reports, sys.stdout)
    else:
        emit_json(reports, ok, sys.stdout)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
