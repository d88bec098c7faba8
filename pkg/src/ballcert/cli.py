"""Command line: run the claim catalog and write a certificate.

    ballcert certify all --emit json --out cert.json
    ballcert certify C06 C17
    ballcert certify covers --d 7 --emit md

Exit status: 0 all selected claims pass, 1 some claim fails, 2 usage error,
3 coset enumeration ran out of room.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from typing import Any, Sequence

from .construction import (CATALOG, CLAIMS, Certificate, ClaimResult, Pipeline, cover_claims,
                           run_all)
from .cosets import DEFAULT_MAX_COSETS
from .errors import ResourceExhausted

SCHEMA = "ballcert.certificate/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCES = 0, 1, 2, 3

_CLAIM_FIELDS = ("id", "statement", "anchor", "provenance", "status", "computed", "expected",
                 "error", "note")


def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    claims = []
    for c in cert.claims:
        row = {"id": c.id, "statement": c.statement, "anchor": c.anchor, "provenance": c.provenance,
               "status": c.status, "computed": c.computed, "expected": c.expected}
        if c.error:
            row["error"] = c.error
        if c.note:
            row["note"] = c.note
        claims.append(row)
    summary: dict[str, Any] = {"passed": cert.passed, "failed": cert.failed,
                               "status": "pass" if cert.ok else "fail"}
    if cert.elapsed is not None:
        summary["elapsed_seconds"] = round(cert.elapsed, 3)
    out = {"schema": SCHEMA, "header": cert.header, "claims": claims, "summary": summary}
    if cert.timestamp is not None:
        out["generated_at"] = cert.timestamp
    return out


def certificate_from_dict(data: dict[str, Any]) -> Certificate:
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported certificate schema {data.get('schema')!r}")
    claims = tuple(
        ClaimResult(c["id"], c["statement"], c["anchor"], c["computed"], c["expected"],
                    c["provenance"], c["status"] == "pass", c.get("error"), c.get("note", ""))
        for c in data["claims"])
    return Certificate(data["header"], claims, data["summary"].get("elapsed_seconds"),
                       data.get("generated_at"))


def to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2, ensure_ascii=False) + "\n"


def from_json(text: str) -> Certificate:
    return certificate_from_dict(json.loads(text))


def _compact(x: Any) -> str:
    return json.dumps(x, ensure_ascii=False)


def to_markdown(cert: Certificate) -> str:
    h = cert.header
    lines = [f"# Certificate ({h['tool']} {h['version']})", ""]
    if cert.timestamp is not None:
        lines += [f"Generated {cert.timestamp}.", ""]
    lines += ["## Conventions", ""]
    lines += [f"- {k}: `{v}`" for k, v in h["conventions"].items()]
    lines += ["", "## Cited, not checked", ""]
    lines += [f"- CITED: {rule}" for rule in h["cited"]]
    lines += ["", f"## Summary: {cert.passed} passed, {cert.failed} failed", ""]
    for c in cert.claims:
        lines += [f"## {c.id}: {c.status.upper()}", "",
                  c.statement, "",
                  f"- anchor: {c.anchor}",
                  f"- provenance: {c.provenance}",
                  f"- expected: `{_compact(c.expected)}`",
                  f"- computed: `{_compact(c.computed)}`"]
        if c.error:
            lines.append(f"- error: {c.error}")
        if c.note:
            lines.append(f"- note: {c.note}")
        lines.append("")
    if cert.elapsed is not None:
        lines += [f"Elapsed: {cert.elapsed:.3f} s", ""]
    return "\n".join(lines)


def to_text(cert: Certificate) -> str:
    rows = [f"{c.id:6} {c.status:4}  {c.statement}" + (f"  [{c.error}]" if c.error else "")
            for c in cert.claims]
    rows.append(f"{cert.passed} passed, {cert.failed} failed")
    return "\n".join(rows) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    cert = sub.add_parser("certify", help="run claims and report")
    cert.add_argument("selection", nargs="*", default=["all"],
                      help="'all', claim ids such as C01 L06, or 'covers' with --d")
    cert.add_argument("--d", type=int, help="odd cover degree (with 'covers')")
    cert.add_argument("--emit", choices=("json", "md"), help="certificate format (default: text summary)")
    cert.add_argument("--out", help="write the report here instead of stdout")
    cert.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS,
                      help="coset enumeration limit (default %(default)s)")
    cert.add_argument("--timestamps", action="store_true",
                      help="record generation time and elapsed seconds (breaks byte-reproducibility)")
    return parser


def _resolve(parser: argparse.ArgumentParser, args) -> tuple[list[str] | None, list]:
    sel = args.selection or ["all"]
    if sel == ["covers"]:
        if args.d is None:
            parser.error("covers requires --d <odd degree>")
        if args.d < 1 or args.d % 2 == 0:
            parser.error(f"--d must be a positive odd integer, got {args.d}")
        return None, list(cover_claims(args.d))
    if args.d is not None:
        parser.error("--d only applies to 'covers'")
    if sel == ["all"]:
        return None, []
    bad = [s for s in sel if s not in CLAIMS]
    if bad:
        parser.error(f"unknown claim ids {bad}; choose from {CATALOG[0].id}..{CATALOG[-1].id}")
    return sel, []


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    selection, extra = _resolve(parser, args)
    if args.max_cosets < 1:
        parser.error("--max-cosets must be positive")

    start = time.perf_counter()
    try:
        cert = run_all(selection, Pipeline(max_cosets=args.max_cosets), extra)
    except ResourceExhausted as exc:
        print(f"ballcert: {exc}", file=sys.stderr)
        return EXIT_RESOURCES
    if args.timestamps:
        cert = Certificate(cert.header, cert.claims, time.perf_counter() - start,
                           datetime.now(timezone.utc).isoformat(timespec="seconds"))

    render = {"json": to_json, "md": to_markdown, None: to_text}[args.emit]
    report = render(cert)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(report)
        except OSError as exc:
            print(f"ballcert: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(report)
    return EXIT_OK if cert.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
