"""igt command line: a thin client over the service handlers.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 resource guard exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .client import HttpClient, LocalClient
from .errors import ResourceLimitError, SpecError
from .service import schemas

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _limits(args) -> schemas.Limits:
    return schemas.Limits(
        order_bound=args.order_bound, subgroup_bound=args.subgroup_bound, iso_bound=args.iso_bound
    )


def cmd_build(client, args) -> int:
    resp = client.call("build", schemas.SpecRequest(spec=args.spec, limits=_limits(args)))
    _emit(resp.model_dump_json(), args.out)
    return EXIT_OK


def cmd_lattice(client, args) -> int:
    resp = client.call("lattice", schemas.SpecRequest(spec=args.spec, limits=_limits(args)))
    if args.json:
        _emit(resp.model_dump_json(), args.out)
        return EXIT_OK
    lines = [f"group {resp.group} of order {resp.order}", "order  count"]
    lines += [f"{k:>5}  {v}" for k, v in resp.counts_by_order.items()]
    lines.append(f"total {len(resp.subgroups)} subgroups, {max(len(resp.subgroups) - 2, 0)} proper non-trivial")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_graph(client, args) -> int:
    req = schemas.GraphRequest(spec=args.spec, format=args.format, limits=_limits(args))
    _emit(client.call("graph", req).content, args.out)
    return EXIT_OK


def cmd_check(client, args) -> int:
    req = schemas.CheckRequest(spec=args.spec, pattern=args.pattern, limits=_limits(args))
    resp = client.call("check", req)
    if resp.found:
        print(f"{resp.spec}: contains {resp.pattern}")
        print(json.dumps(resp.witness))
    else:
        print(f"{resp.spec}: {resp.pattern}-free")
    return EXIT_OK


def cmd_verify(client, args) -> int:
    corpus = None
    if args.corpus:
        try:
            data = json.loads(Path(args.corpus).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SpecError(f"cannot read corpus {args.corpus}: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("entries", [])
        try:
            corpus = [schemas.CorpusEntryModel(**e) for e in data]
        except Exception as exc:
            raise SpecError(f"bad corpus entry: {exc}") from exc
    req = schemas.VerifyRequest(
        max_order=args.max_order,
        corpus=corpus,
        jobs=args.jobs,
        extended=args.extended,
        limits=_limits(args),
    )
    report = client.call("verify", req)
    print(f"# {report['format']}  max_order={report['max_order']} extended={report['extended']}")
    print(f"# {report['scope']}")
    for e in report["entries"]:
        status = "ok  " if e["ok"] else "FAIL"
        got = e["actual"] or e["error"]
        print(f"{status} {e['spec_text']:<44} expected={e['expected']:<12} got={got}  [{e['source']}]")
    n_fail = len(report["mismatches"])
    print(f"{'PASS' if report['passed'] else 'FAIL'}: {len(report['entries']) - n_fail}/{len(report['entries'])} entries as expected")
    if args.report:
        Path(args.report).write_text(json.dumps(report, indent=2) + "\n")
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def cmd_match(client, args) -> int:
    resp = client.call("match", schemas.SpecRequest(spec=args.spec, limits=_limits(args)))
    print(f"item {resp.item}" if resp.item is not None else "none")
    return EXIT_OK


def cmd_serve(client, args) -> int:
    import uvicorn

    uvicorn.run("igt.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="igt", description=__doc__.splitlines()[0])
    parser.add_argument("--url", default=os.environ.get("IGT_URL"),
                        help="talk to a running igt server instead of computing in-process")
    parser.add_argument("--order-bound", type=int, default=schemas.DEFAULT_ORDER_BOUND)
    parser.add_argument("--subgroup-bound", type=int, default=schemas.DEFAULT_SUBGROUP_BOUND)
    parser.add_argument("--iso-bound", type=int, default=schemas.DEFAULT_ISO_BOUND)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit group JSON")
    p.add_argument("spec")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("lattice", help="print per-order subgroup counts")
    p.add_argument("spec")
    p.add_argument("--json", action="store_true", help="full lattice export")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("graph", help="export the intersection graph")
    p.add_argument("spec")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("check", help="search for K3,3, K5, K<k> or K<m>,<n>")
    p.add_argument("spec")
    p.add_argument("--pattern", default="K3,3")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="run the theorem check")
    p.add_argument("--max-order", type=int, default=100)
    p.add_argument("--corpus")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--report", help="write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("match", help="theorem-family matching")
    p.add_argument("spec")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR)
    client = HttpClient(args.url) if args.url else LocalClient()
    try:
        return args.func(client, args)
    except ResourceLimitError as exc:
        print(f"igt: resource guard exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SpecError, ValueError) as exc:
        print(f"igt: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
