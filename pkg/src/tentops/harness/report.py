"""Report persistence: JSON, CSV tables and plot data."""

import csv
import io
import json
import os
import re

from ..criteria import _jsonable


def dumps(report):
    return json.dumps(_jsonable(report), sort_keys=True, indent=1) + "\n"


def load_report(path):
    with open(path) as fh:
        return json.load(fh)


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def _csv_text(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _write(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def slug(name):
    return re.sub(r"[^A-Za-z0-9_.=+-]+", "_", name).strip("_") or "profile"


def write_report(report, out_dir):
    """``<out_dir>/<id>/report.json`` plus ``checks.csv`` and one CSV per table."""
    base = os.path.join(out_dir, report.get("id", "report"))
    os.makedirs(base, exist_ok=True)
    paths = [os.path.join(base, "report.json")]
    _write(paths[0], dumps(report))
    checks = [[c["name"], "pass" if c["passed"] else "fail"] for c in report.get("checks", [])]
    paths.append(os.path.join(base, "checks.csv"))
    _write(paths[-1], _csv_text(["check", "result"], checks))
    for name, tab in sorted(report.get("tables", {}).items()):
        paths.append(os.path.join(base, f"{slug(name)}.csv"))
        _write(paths[-1], _csv_text(tab["columns"], tab["rows"]))
    return paths


def emit_plotdata(report, out_dir):
    """One ``radius,value`` CSV per profile and a ``manifest.json`` describing them."""
    os.makedirs(out_dir, exist_ok=True)
    manifest = {"id": report.get("id"), "profiles": []}
    used = set()
    paths = []
    for name, prof in sorted(report.get("profiles", {}).items()):
        fname = slug(name) + ".csv"
        i = 1
        while fname in used:
            i += 1
            fname = f"{slug(name)}-{i}.csv"
        used.add(fname)
        rows = list(zip(prof["radii"], prof["values"]))
        paths.append(os.path.join(out_dir, fname))
        _write(paths[-1], _csv_text(["radius", "value"], rows))
        meta = {k: v for k, v in prof.items() if k not in ("radii", "values")}
        manifest["profiles"].append({"name": name, "file": fname, **meta})
    mpath = os.path.join(out_dir, "manifest.json")
    _write(mpath, dumps(manifest))
    return [mpath] + paths


def summary_lines(report):
    lines = [f"{report.get('id')}: {'PASS' if report.get('passed') else 'FAIL'}"]
    for c in report.get("checks", []):
        lines.append(f"  [{'pass' if c['passed'] else 'FAIL'}] {c['name']}")
    for e in report.get("errors", []):
        lines.append(f"  [error] {e['case']}: {e['error']}")
    return lines
