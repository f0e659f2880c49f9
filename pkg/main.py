# main.py
"""
Concavex Mirror Engine - Main Entry Point
Command line front-end with compute, check and selftest subcommands
"""

import argparse
import logging
import sys
import os
from typing import List, Optional

# Add current directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from config.settings import (
    DESCENDENT_SIGN_CONVENTIONS,
    LOG_FORMAT,
    LOG_LEVEL,
    OUTPUT_FORMATS,
)
from support.errors import MirrorError
from support.job_config import METHODS, JobConfig, parse_insertion
from support.response_synthesizer import get_synthesizer
from agents.check_agent import CheckAgent
from agents.router_agent import RouterAgent
from tools import OPERATION_DESCRIPTIONS

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool = False):
    """Logs go to stderr so stdout only carries the rendered table"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else getattr(logging, LOG_LEVEL.upper(), logging.WARNING),
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--max-degree", type=int, default=None, help="truncation order D")
    parser.add_argument("--jobs", type=int, default=None, help="worker threads")
    parser.add_argument("--descendent-sign", choices=DESCENDENT_SIGN_CONVENTIONS, default=None,
                        help="convention for descendent rows (published or geometric)")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirror-engine",
        description="Exact genus-zero invariants of split concavex bundles over P^n",
        epilog=OPERATION_DESCRIPTIONS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute an invariant table")
    compute.add_argument("--config", help="key=value config file; flags override it")
    compute.add_argument("--save-config", help="write the effective config to this file")
    compute.add_argument("--n", type=int, default=None, help="dimension of P^n")
    compute.add_argument("--convex", type=int, action="append", default=None, help="convex twist l (repeatable)")
    compute.add_argument("--concave", type=int, action="append", default=None, help="concave twist k (repeatable)")
    compute.add_argument("--points", type=int, choices=(1, 2), default=None)
    compute.add_argument("--insert", action="append", default=None,
                         help="1, H, H^k or tauW(H^k); one per marked point")
    compute.add_argument("--format", dest="output_format", choices=OUTPUT_FORMATS, default=None)
    compute.add_argument("--method", choices=METHODS, default=None)
    compute.add_argument("--eta", action="store_true", default=None, help="add the Aspinwall-Morrison column")
    compute.add_argument("--integrality", action="store_true", default=None)
    compute.add_argument("--oracle-check", action="store_true", default=None)
    compute.add_argument("--consistency-checks", action="store_true", default=None)
    compute.add_argument("--decimal-hint", action="store_true", default=None,
                         help="append a rounded, non-authoritative decimal column")
    compute.add_argument("--out", help="write output here instead of stdout")
    _add_common(compute)

    check = sub.add_parser("check", help="run verification suites")
    check.add_argument("--golden", choices=("figs",), default=None, help="compare with the golden tables")
    for name in ("oracle", "integrality", "divisor", "consistency", "multiple-cover", "concave", "candelas"):
        check.add_argument(f"--{name}", action="store_true")
    check.add_argument("--all", action="store_true", help="every suite (the default)")
    _add_common(check)

    selftest = sub.add_parser("selftest", help="fast subset of every check")
    selftest.add_argument("--jobs", type=int, default=None)
    selftest.add_argument("--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace) -> JobConfig:
    """File values first, then every flag that was given"""
    cfg = JobConfig.load(args.config) if getattr(args, "config", None) else JobConfig()
    insertions = [parse_insertion(x) for x in args.insert] if getattr(args, "insert", None) else None
    return cfg.override(
        n=getattr(args, "n", None),
        positives=tuple(args.convex) if getattr(args, "convex", None) else None,
        negatives=tuple(args.concave) if getattr(args, "concave", None) else None,
        points=getattr(args, "points", None),
        insertions=insertions,
        max_degree=getattr(args, "max_degree", None),
        output_format=getattr(args, "output_format", None),
        method=getattr(args, "method", None),
        eta=getattr(args, "eta", None),
        integrality=getattr(args, "integrality", None),
        oracle_check=getattr(args, "oracle_check", None),
        consistency_checks=getattr(args, "consistency_checks", None),
        decimal_hint=getattr(args, "decimal_hint", None),
        descendent_sign=getattr(args, "descendent_sign", None),
        jobs=getattr(args, "jobs", None),
    )


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def selected_checks(args: argparse.Namespace) -> List[str]:
    if args.all:
        return []
    chosen = ["golden"] if args.golden else []
    for name in ("oracle", "integrality", "divisor", "consistency", "multiple-cover", "concave", "candelas"):
        if getattr(args, name.replace("-", "_")):
            chosen.append(name)
    return chosen


def main(argv: List[str] = None) -> int:
    """Run one subcommand and return the process exit code"""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    synthesizer = get_synthesizer()

    try:
        if args.command == "compute":
            cfg = config_from_args(args).validate()
            if args.save_config:
                cfg.save(args.save_config)
            output, summary, exit_code = RouterAgent(synthesizer).run_compute(cfg)
            _emit(output, args.out)
            for line in summary:
                print(line, file=sys.stderr)
            return exit_code

        if args.command == "check":
            cfg = config_from_args(args)
            report, exit_code = CheckAgent(synthesizer=synthesizer).run_check(cfg, selected_checks(args))
            sys.stdout.write(report)
            return exit_code

        report, exit_code = CheckAgent(synthesizer=synthesizer).run_selftest(jobs=args.jobs or 1)
        sys.stdout.write(report)
        return exit_code

    except MirrorError as exc:
        print(synthesizer.format_error(exc), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
