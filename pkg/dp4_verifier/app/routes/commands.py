"""
Command-line routes of the verifier.
Parses the dp4 sub-commands and hands each one to its service.
"""
import argparse
import logging
from typing import List, Optional

from app.config import DEFAULT_PRIMES, DEFAULT_SAMPLES, DEFAULT_SEED, DP4_JOBS, parse_primes
from app.models.data_models import RunConfig
from app.services import classifier, ff_counter, poincare, suite_runner
from app.services.exact_algebra import Field
from app.services.grassmann import FlagLine
from app.utils.report_writer import write_json
from app.utils.text_formats import parse_rows

# Configure logging
logger = logging.getLogger(__name__)

CHAINS = ("stable-maps", "line-space", "double-lines")


def handle_verify(args: argparse.Namespace) -> int:
    """
    Run the selected suites and write the report.

    Args:
        args: parsed arguments of ``dp4 verify``

    Returns:
        int: 0 when no item failed, 1 otherwise
    """
    config = RunConfig(
        primes=parse_primes(args.primes),
        random_samples=args.samples,
        seed=args.seed,
        suites=args.suites,
        jobs=args.jobs,
    )
    report = suite_runner.run(config)
    write_json(report, args.out)
    return report.exit_code


def handle_classify_line(args: argparse.Namespace) -> int:
    """Classify one line given by its vertex and plane"""
    field = Field(args.q)
    vertex = parse_rows(args.vertex)
    if len(vertex) != 1:
        raise ValueError(f"The vertex must be a single vector, got {len(vertex)} rows")
    line = FlagLine.from_vectors(field, vertex[0], parse_rows(args.plane))
    result = classifier.classify_line(line, with_family=not args.no_family)
    write_json(result, args.out)
    if result.flags:
        logger.warning(f"Classification oracles disagree: {result.flags}")
    return 0


def handle_count(args: argparse.Namespace) -> int:
    """Count the F_q-points of one variety"""
    result = ff_counter.count_detail(args.variety, args.q, jobs=args.jobs, method=args.method)
    write_json(result, args.out)
    return 0


def handle_poincare(args: argparse.Namespace) -> int:
    """Evaluate one Poincare polynomial chain with the closed-form inputs"""
    records = poincare.run_chain(args.chain)
    write_json(records, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dp4",
        description="Verify the line and double-line geometry of the quintic del Pezzo fourfold",
    )
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run verification suites and emit a JSON report")
    verify.add_argument("suites", nargs="+", metavar="suite",
                        help=f"One or more of {', '.join(suite_runner.SUITE_ORDER)}, or 'all'")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify.add_argument("--primes", default=DEFAULT_PRIMES, help="Comma separated primes, e.g. 3,5,7")
    verify.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="Random samples per check")
    verify.add_argument("--jobs", type=int, default=DP4_JOBS, help="Worker processes for enumerations")
    verify.add_argument("--out", default=None, help="Report path (stdout when omitted)")
    verify.set_defaults(handler=handle_verify)

    line = sub.add_parser("classify-line", help="Classify a line of Y")
    line.add_argument("--vertex", required=True, help="Vertex as e0 or 1,0,0,0,0")
    line.add_argument("--plane", required=True, help="Plane as e0,e1,e4 or rows separated by ';'")
    line.add_argument("--q", type=int, default=0, help="Field characteristic (0 for the rationals)")
    line.add_argument("--no-family", action="store_true", help="Skip the double-line family computation")
    line.add_argument("--out", default=None)
    line.set_defaults(handler=handle_classify_line)

    count = sub.add_parser("count", help="Count F_q-points by enumeration")
    count.add_argument("--variety", required=True, help=f"One of {', '.join(ff_counter.VARIETIES)}")
    count.add_argument("--q", type=int, required=True)
    count.add_argument("--method", choices=ff_counter.LINE_METHODS, default=None)
    count.add_argument("--jobs", type=int, default=DP4_JOBS)
    count.add_argument("--out", default=None)
    count.set_defaults(handler=handle_count)

    chain = sub.add_parser("poincare", help="Evaluate a virtual Poincare polynomial chain")
    chain.add_argument("--chain", choices=CHAINS, default="stable-maps")
    chain.add_argument("--out", default=None)
    chain.set_defaults(handler=handle_poincare)
    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)
