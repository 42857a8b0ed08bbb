"""
Command Line Interface
Batch front end: knot invariants, graded roots, cobordism bounds and the
acceptance battery, with JSON reports on stdout and diagnostics on stderr
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence
import argparse
import logging
import sys

from marshmallow import ValidationError

from acceptance import AcceptanceSuite, all_passed, corrupted_gap_formula, results_table
from cobordism import batson_sequence, cobordism_report, family_report, format_moves, parse_moves
from config import configure_logging, get_config
from exceptions import InvalidInputError, InvariantViolation
from knots import format_knot, invariant_report, knot_homology, order_u, parse_knot
from laurent import torus_gap_formula
from rendering import FORMATS, graded_root_view, render
from schemas import (
    BatsonRequestSchema,
    CobordismReportSchema,
    FamilyReportSchema,
    FamilyRequestSchema,
    InvariantsReportSchema,
    OrderReportSchema,
    SelftestRequestSchema,
    canonical_json,
    report_document,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_INVARIANT = 3


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _document(command: str, input_echo, result) -> dict:
    return report_document(command, input_echo, result, get_config().ARTIFACT_VERSION)


def _batch(exprs: List[str], jobs: int, evaluate: Callable[[str], dict]):
    """Evaluate expressions, concurrently when jobs > 1, keeping input order"""
    if len(exprs) == 1 or jobs <= 1:
        docs = [evaluate(e) for e in exprs]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            docs = list(pool.map(evaluate, exprs))
    return docs[0] if len(docs) == 1 else docs


# ============= COMMANDS =============

def order_document(expr: str) -> dict:
    knot = parse_knot(expr)
    result = OrderReportSchema().dump({
        'knot': format_knot(knot),
        'order_u': order_u(knot),
        'homology': knot_homology(knot),
    })
    return _document('order', {'expr': expr}, result)


def invariants_document(expr: str) -> dict:
    result = InvariantsReportSchema().dump(invariant_report(parse_knot(expr)))
    return _document('invariants', {'expr': expr}, result)


def cmd_order(args) -> int:
    _emit(canonical_json(_batch(args.exprs, args.jobs, order_document)))
    return EXIT_OK


def cmd_invariants(args) -> int:
    _emit(canonical_json(_batch(args.exprs, args.jobs, invariants_document)))
    return EXIT_OK


def cmd_gradedroot(args) -> int:
    view = graded_root_view(parse_knot(args.expr))
    rendered = render(view, args.format)
    if args.format == 'json':
        rendered = canonical_json(_document('gradedroot', {'expr': args.expr, 'format': 'json'}, rendered))
    _emit(rendered)
    return EXIT_OK


def cmd_cobordism(args) -> int:
    with open(args.moves_path, encoding='utf-8') as handle:
        seq = parse_moves(handle.read())
    result = CobordismReportSchema().dump(cobordism_report(seq))
    _emit(canonical_json(_document('cobordism', {'moves_path': args.moves_path}, result)))
    return EXIT_OK


def cmd_family(args) -> int:
    request = FamilyRequestSchema().load({'gamma': args.gamma, 'm': args.m})
    result = FamilyReportSchema().dump(family_report(request['gamma'], request['m']))
    _emit(canonical_json(_document('family', request, result)))
    return EXIT_OK


def cmd_batson(args) -> int:
    request = BatsonRequestSchema().load({'r': args.r, 's': args.s})
    _emit(format_moves(batson_sequence(request['r'], request['s'])))
    return EXIT_OK


def cmd_selftest(args) -> int:
    cfg = get_config()
    request = SelftestRequestSchema().load({
        'max_n': args.max_n if args.max_n is not None else cfg.SELFTEST_MAX_N,
        'seed': args.seed if args.seed is not None else cfg.RANDOM_SEED,
    })
    suite = AcceptanceSuite(
        max_n=request['max_n'],
        seed=request['seed'],
        gap_formula=corrupted_gap_formula if args.corrupt_gap_formula else torus_gap_formula,
    )
    results = suite.run()
    _emit(results_table(results))
    passed = all_passed(results)
    logger.info(f"selftest {'passed' if passed else 'FAILED'}: "
                f"{sum(r.passed for r in results)}/{len(results)} checks")
    return EXIT_OK if passed else EXIT_INVARIANT


# ============= PARSER =============

def build_parser() -> argparse.ArgumentParser:
    cfg = get_config()
    parser = UsageErrorParser(prog='knot-torsion', description=__doc__.strip().splitlines()[0])
    parser.add_argument('--log-level', type=str.upper, default=None,
                        choices=('DEBUG', 'INFO', 'WARNING', 'ERROR'), help='override LOG_LEVEL')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=UsageErrorParser)

    for name, handler, text in (
        ('order', cmd_order, 'torsion order and homology'),
        ('invariants', cmd_invariants, 'Order_U, signature, upsilon and the gamma_4 bound'),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument('exprs', nargs='+', metavar='EXPR', help='knot expression, e.g. "T(5,6) # mirror(T(3,4))"')
        p.add_argument('--jobs', type=int, default=cfg.BATCH_JOBS, help='worker threads for several expressions')
        p.set_defaults(handler=handler)

    p = sub.add_parser('gradedroot', help='graded root of a knot expression')
    p.add_argument('expr', metavar='EXPR')
    p.add_argument('--format', choices=FORMATS, default=cfg.GRADEDROOT_FORMAT)
    p.set_defaults(handler=cmd_gradedroot)

    p = sub.add_parser('cobordism', help='validate a move file and evaluate its bounds')
    p.add_argument('moves_path', metavar='FILE')
    p.set_defaults(handler=cmd_cobordism)

    p = sub.add_parser('family', help='bounds on K_{gamma,m}')
    p.add_argument('--gamma', type=int, required=True)
    p.add_argument('--m', type=int, required=True)
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser('batson', help='move file of r - s non-orientable bands')
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--s', type=int, required=True)
    p.set_defaults(handler=cmd_batson)

    p = sub.add_parser('selftest', help='run the acceptance battery')
    p.add_argument('--max-n', type=int, default=None)
    p.add_argument('--seed', type=int, default=None)
    p.add_argument('--corrupt-gap-formula', action='store_true', help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    configure_logging(level=args.log_level)

    try:
        return args.handler(args)
    except InvariantViolation as e:
        logger.error(f"internal invariant violated: {e}")
        return EXIT_INVARIANT
    except ValidationError as e:
        logger.error(f"invalid request: {e.messages}")
        return EXIT_INVALID
    except InvalidInputError as e:
        logger.error(str(e))
        return EXIT_INVALID
    except OSError as e:
        logger.error(f"cannot read input: {e}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
