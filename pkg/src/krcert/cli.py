"""``certify`` command line."""

from __future__ import annotations

import argparse
import json
import sys

from .checkfile import CheckFileError, run_check_file
from .pipelines import CORRUPTIONS, PIPELINES, Config, run_pipeline
from .report import EXIT_USAGE, emit_report, from_json, replay_report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="certify", description="Exact certificate checker for LND and cylinder computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def output_options(sp):
        sp.add_argument("--report", choices=("json", "text"), default="text", help="output format (default: text)")
        sp.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    pp = sub.add_parser("pipeline", help="run a built-in verification pipeline")
    pp.add_argument("name", choices=PIPELINES)
    output_options(pp)
    pp.add_argument("--kernel-degree", type=_nonneg, default=6, metavar="N",
                    help="degree bound for kernel evidence (default 6)")
    pp.add_argument("--ansatz-degree", type=_nonneg, default=8, metavar="N",
                    help="degree bound for the splitting ansatz (default 8)")
    pp.add_argument("--lnd-cap", type=_nonneg, default=64, metavar="N",
                    help="iteration cap for nilpotency certificates (default 64)")
    pp.add_argument("--negative-controls", action="store_true",
                    help="append claims run on corrupted built-ins (expected refuted)")
    pp.add_argument("--corrupt", choices=CORRUPTIONS, help=argparse.SUPPRESS)

    cp = sub.add_parser("check-file", help="run a declarative check list")
    cp.add_argument("file")
    output_options(cp)

    rp = sub.add_parser("replay", help="re-verify the certificates of a JSON report")
    rp.add_argument("file")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "pipeline":
            config = Config(args.kernel_degree, args.ansatz_degree, args.lnd_cap, args.negative_controls,
                            args.corrupt)
            report = run_pipeline(args.name, config)
        elif args.command == "check-file":
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
            report = run_check_file(text)
        else:
            with open(args.file, encoding="utf-8") as fh:
                report = from_json(fh.read())
            results = replay_report(report)
            for cid, good in results.items():
                print(f"{'ok' if good else 'FAILED':6} {cid}")
            return 0 if all(results.values()) else 1
        emit_report(report, args.report, args.out)
    except CheckFileError as exc:
        print(f"certify: {args.file}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"certify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
