"""Batch computation of omega and rho over knot-table CSV files.

Input tables carry columns ``name`` and ``pd_notation``, optionally
``bridge_number``.  Each diagram is processed independently: parse
failures skip the row with a reason, a per-diagram timeout marks the
row timed out, and neither produces fabricated numbers in the output.
Records land in a CSV with the columns

    name,n,strands,omega,rho,beta_ref,strict_gap,bound_ok,millis

plus a JSON summary of totals.  Re-runs resume by skipping names that
already appear in the records file, so long sweeps can run in
append-only slices.  The tabulated bridge number is never consulted by
the search itself; it is only compared against the results afterwards,
keeping the lower-bound check honest.
"""

from __future__ import annotations

import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .diagram import _TUPLE_RE, parse_pd
from .dual import build_dual
from .engine import omega, rho
from .errors import ComputeTimeout, FileUnreadable, MissingColumns, PlainSphereError

RECORD_COLUMNS = ("name", "n", "strands", "omega", "rho", "beta_ref",
                  "strict_gap", "bound_ok", "millis")


@dataclass(frozen=True)
class TableRow:
    name: str
    pd_text: str
    beta_ref: int | None
    line: int


@dataclass
class CensusOptions:
    max_crossings: int | None = None
    jobs: int = 1
    timeout_ms: int | None = None
    resume_names: frozenset[str] = field(default_factory=frozenset)


def ingest(path: str) -> list[TableRow]:
    """Read a census table; structural problems raise, row problems don't."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = {"name", "pd_notation"} - set(header)
            if missing:
                raise MissingColumns(
                    f"{path}: missing columns {sorted(missing)}"
                )
            rows = []
            for i, raw in enumerate(reader, start=2):
                beta_text = (raw.get("bridge_number") or "").strip()
                beta = int(beta_text) if beta_text else None
                rows.append(TableRow(
                    name=(raw.get("name") or "").strip(),
                    pd_text=(raw.get("pd_notation") or "").strip(),
                    beta_ref=beta,
                    line=i,
                ))
            return rows
    except MissingColumns:
        raise
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc
    except (csv.Error, UnicodeDecodeError, ValueError) as exc:
        raise FileUnreadable(f"cannot parse {path}: {exc}") from exc


def _crossing_count(pd_text: str) -> int:
    return len(_TUPLE_RE.findall(pd_text))


def _process_row(args: tuple[int, str, str, int | None, int | None]) -> dict:
    """Worker: compute one row.  Must stay picklable for process pools."""
    index, name, pd_text, beta_ref, timeout_ms = args
    started = time.monotonic()
    deadline = started + timeout_ms / 1000.0 if timeout_ms else None
    try:
        d = parse_pd(pd_text)
        g = build_dual(d)
        w, _ = omega(d, deadline=deadline)
        r, _ = rho(d, dual=g, deadline=deadline)
    except ComputeTimeout:
        return {"index": index, "name": name, "status": "timeout"}
    except PlainSphereError as exc:
        return {"index": index, "name": name, "status": "skipped",
                "reason": f"{type(exc).__name__}: {exc}"}
    millis = (time.monotonic() - started) * 1000.0
    assert r <= w <= d.n
    bound_ok = ""
    if beta_ref is not None:
        bound_ok = "true" if (r >= beta_ref and w >= beta_ref) else "false"
    return {
        "index": index,
        "status": "ok",
        "record": {
            "name": name,
            "n": d.n,
            "strands": len(d.strands),
            "omega": w,
            "rho": r,
            "beta_ref": beta_ref if beta_ref is not None else "",
            "strict_gap": w - r,
            "bound_ok": bound_ok,
            "millis": round(millis, 1),
        },
    }


def run_census(rows: list[TableRow],
               options: CensusOptions) -> tuple[list[dict], dict]:
    """Process eligible rows, return (records, summary).

    Records keep the input order regardless of worker scheduling.
    """
    skipped: list[dict] = []
    tasks: list[tuple[int, str, str, int | None, int | None]] = []
    for idx, row in enumerate(rows):
        if not row.name or not row.pd_text:
            skipped.append({"name": row.name or f"line {row.line}",
                            "reason": "missing name or pd_notation"})
            continue
        if row.name in options.resume_names:
            skipped.append({"name": row.name, "reason": "already in records"})
            continue
        if (options.max_crossings is not None
                and _crossing_count(row.pd_text) > options.max_crossings):
            skipped.append({"name": row.name,
                            "reason": f"more than {options.max_crossings} crossings"})
            continue
        tasks.append((idx, row.name, row.pd_text, row.beta_ref,
                      options.timeout_ms))
    if options.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            results = list(pool.map(_process_row, tasks))
    else:
        results = [_process_row(t) for t in tasks]
    results.sort(key=lambda r: r["index"])
    records = []
    timed_out = []
    for res in results:
        if res["status"] == "ok":
            records.append(res["record"])
        elif res["status"] == "timeout":
            timed_out.append(res["name"])
        else:
            skipped.append({"name": res["name"], "reason": res["reason"]})
    summary = {
        "totals": {
            "rows": len(rows),
            "eligible": len(tasks),
            "completed": len(records),
            "skipped": len(skipped),
            "timed_out": len(timed_out),
        },
        "gap_count": sum(1 for r in records if r["strict_gap"] >= 1),
        "violation_count": sum(1 for r in records if r["bound_ok"] == "false"),
        "timeout_count": len(timed_out),
        "timed_out_names": timed_out,
        "skipped_rows": skipped,
    }
    return records, summary


def existing_record_names(path: str) -> frozenset[str]:
    """Names already present in a records CSV (for append-only resume)."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return frozenset(row["name"] for row in csv.DictReader(fh)
                             if row.get("name"))
    except FileNotFoundError:
        return frozenset()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc


def write_records(path: str, records: list[dict], append: bool) -> None:
    mode = "a" if append else "w"
    with open(path, mode, newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=RECORD_COLUMNS)
        if not append:
            writer.writeheader()
        for rec in records:
            writer.writerow(rec)


def write_summary(path: str, summary: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
