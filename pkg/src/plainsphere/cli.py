"""Command line front end: ``psk compute | census | verify``.

Exit codes are part of the contract:

* 0 success
* 2 PD parse error (malformed text, non-spherical rotation system)
* 3 structurally unsupported diagram (split projection, closed over-component)
* 4 computation timed out
* 5 census input had no processable rows
* 6 certificate rejected
* 7 certificate rejected specifically for a diagram-hash mismatch

``PSK_JOBS`` and ``PSK_TIMEOUT_MS`` provide defaults for ``--jobs`` and
``--timeout-ms``; explicit flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import __version__
from .census import (CensusOptions, existing_record_names, ingest, run_census,
                     write_records, write_summary)
from .certificate import (HASH_MISMATCH, deserialize_certificate,
                          serialize_certificate, verify)
from .diagram import parse_pd
from .dual import build_dual
from .engine import omega, rho
from .errors import (CertificateError, ClosedOverComponent, ComputeTimeout,
                     DisconnectedProjection, EulerViolation, FileUnreadable,
                     MalformedPD, MissingColumns)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_TIMEOUT = 4
EXIT_EMPTY_CENSUS = 5
EXIT_REJECTED = 6
EXIT_HASH_MISMATCH = 7


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        print(f"warning: ignoring non-integer {name}={raw!r}", file=sys.stderr)
        return None


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_pd(args) -> str:
    if args.pd is not None:
        return args.pd
    with open(args.pd_file, encoding="utf-8") as fh:
        return fh.read()


def _load_diagram(args):
    """Returns (diagram, None) or (None, exit_code)."""
    try:
        text = _read_pd(args)
    except OSError as exc:
        return None, _fail(EXIT_PARSE, f"cannot read PD file: {exc}")
    try:
        return parse_pd(text), None
    except (MalformedPD, EulerViolation) as exc:
        return None, _fail(EXIT_PARSE, str(exc))
    except (DisconnectedProjection, ClosedOverComponent) as exc:
        return None, _fail(EXIT_UNSUPPORTED, str(exc))


def cmd_compute(args) -> int:
    d, code = _load_diagram(args)
    if d is None:
        return code
    try:
        dual = build_dual(d)
    except EulerViolation as exc:
        return _fail(EXIT_PARSE, str(exc))
    deadline = None
    if args.timeout_ms:
        deadline = time.monotonic() + args.timeout_ms / 1000.0
    started = time.monotonic()
    result = {"n": d.n, "strands": len(d.strands),
              "omega": None, "rho": None,
              "omega_seeds": None, "rho_seeds": None}
    cert = None
    try:
        if args.invariant in ("omega", "both"):
            w, wcert = omega(d, deadline=deadline)
            result["omega"], result["omega_seeds"] = w, list(wcert.seeds)
            cert = wcert
        if args.invariant in ("rho", "both"):
            pair = (result["omega"], cert) if args.invariant == "both" else None
            r, rcert = rho(d, dual=dual, deadline=deadline, omega_result=pair)
            result["rho"], result["rho_seeds"] = r, list(rcert.seeds)
            cert = rcert
    except ComputeTimeout as exc:
        return _fail(EXIT_TIMEOUT, str(exc))
    result["millis"] = round((time.monotonic() - started) * 1000.0, 1)
    result["certificate"] = None
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fh:
            fh.write(serialize_certificate(cert))
        result["certificate"] = args.certificate
    _print_compute(result, args.format)
    return EXIT_OK


def _print_compute(result: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(result, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        fields = ["n", "strands", "omega", "rho", "omega_seeds",
                  "rho_seeds", "certificate", "millis"]
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        row = dict(result)
        for key in ("omega_seeds", "rho_seeds"):
            row[key] = " ".join(map(str, row[key])) if row[key] else ""
        writer.writerow(row)
        sys.stdout.write(buf.getvalue())
    else:
        print(f"n: {result['n']}")
        print(f"strands: {result['strands']}")
        if result["omega"] is not None:
            seeds = ",".join(map(str, result["omega_seeds"]))
            print(f"omega: {result['omega']}  seeds: {seeds}")
        if result["rho"] is not None:
            seeds = ",".join(map(str, result["rho_seeds"]))
            print(f"rho: {result['rho']}  seeds: {seeds}")
        if result["certificate"]:
            print(f"certificate: {result['certificate']}")


def cmd_census(args) -> int:
    try:
        rows = ingest(args.input)
    except (FileUnreadable, MissingColumns) as exc:
        return _fail(EXIT_PARSE, str(exc))
    resume = frozenset()
    if not args.fresh:
        resume = existing_record_names(args.records)
    options = CensusOptions(
        max_crossings=args.max_crossings,
        jobs=args.jobs or 1,
        timeout_ms=args.timeout_ms,
        resume_names=resume,
    )
    records, summary = run_census(rows, options)
    resumed = sum(1 for s in summary["skipped_rows"]
                  if s["reason"] == "already in records")
    if summary["totals"]["eligible"] == 0 and resumed == 0:
        return _fail(EXIT_EMPTY_CENSUS, "census input has no processable rows")
    append = bool(resume) and os.path.exists(args.records)
    write_records(args.records, records, append=append)
    if args.summary:
        write_summary(args.summary, summary)
    totals = summary["totals"]
    print(f"census: {totals['completed']} completed, "
          f"{totals['skipped']} skipped, {totals['timed_out']} timed out; "
          f"gaps {summary['gap_count']}, "
          f"bound violations {summary['violation_count']}")
    return EXIT_OK


def cmd_verify(args) -> int:
    d, code = _load_diagram(args)
    if d is None:
        return code
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = deserialize_certificate(fh.read())
    except OSError as exc:
        return _fail(EXIT_REJECTED, f"cannot read certificate: {exc}")
    except CertificateError as exc:
        return _fail(EXIT_REJECTED, f"{type(exc).__name__}: {exc}")
    result = verify(d, cert)
    if result.ok:
        print(f"certificate accepted: mode={cert.mode} "
              f"seeds={','.join(map(str, cert.seeds))} "
              f"moves={len(cert.moves)} tau={cert.tau}")
        return EXIT_OK
    print(f"certificate rejected: {result.reason}: {result.detail}",
          file=sys.stderr)
    if result.reason == HASH_MISMATCH:
        return EXIT_HASH_MISMATCH
    return EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psk",
        description="Exact Wirtinger and plain-sphere numbers of link "
                    "diagrams, with verifiable coloring certificates.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pd_args(p):
        grp = p.add_mutually_exclusive_group(required=True)
        grp.add_argument("--pd", help="PD text, e.g. 'X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)'")
        grp.add_argument("--pd-file", help="file containing PD text")

    p = sub.add_parser("compute", help="compute omega and/or rho for one diagram")
    add_pd_args(p)
    p.add_argument("--invariant", choices=("omega", "rho", "both"),
                   default="both")
    p.add_argument("--certificate",
                   help="write the certificate of the last computed invariant here")
    p.add_argument("--format", choices=("json", "csv", "plain"),
                   default="plain")
    p.add_argument("--timeout-ms", type=int, default=_env_int("PSK_TIMEOUT_MS"))
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("census", help="run omega/rho over a CSV knot table")
    p.add_argument("--input", required=True)
    p.add_argument("--records", required=True,
                   help="output CSV; re-runs append rows for new names only")
    p.add_argument("--summary", help="output JSON summary path")
    p.add_argument("--jobs", type=int, default=_env_int("PSK_JOBS"))
    p.add_argument("--timeout-ms", type=int, default=_env_int("PSK_TIMEOUT_MS"))
    p.add_argument("--max-crossings", type=int)
    p.add_argument("--fresh", action="store_true",
                   help="ignore existing records instead of resuming")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check a certificate against a diagram")
    add_pd_args(p)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
