"""Command-line interface"""
import argparse
import logging
import sys

from conreal.arith import RatInterval, format_rational, parse_rational
from conreal.bars import DecidableBar, bar_fn_eval, bar_uniform_bound, hitting_time, verify_hitting
from conreal.cantor import cantor_interval, gamma, kappa
from conreal.codes import code_eval, code_locate, code_uc_witness, code_validate, encode_code_value, load_code
from conreal.config import CODE_DEPTH, CODE_KMAX, DEFAULT_PREC, DEPTH_CAP, GLOBAL_CAP
from conreal.errors import ConrealError, InvalidInput, InvariantViolation
from conreal.reals import RegularReal, approx, fundamental_from_regular, less_at, shrinking_from_regular
from conreal.spread import node_interval, node_number, path_of_real, phi, quotient_lift, rho
from conreal.streams import BINARY, TERNARY, format_word, parse_path, parse_word

logger = logging.getLogger(__name__)

PREC_HELP = "print a rational within 2^-K of the real (default %(default)s)"


class ArgumentParser(argparse.ArgumentParser):
    """argparse that reports bad arguments as InvalidInput."""

    def error(self, message):
        raise InvalidInput(message)


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _natural(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {value}")
    return value


def parse_real(spec):
    """const:p/q, dyadic:p/q, kappa:BITS, phi:DIGITS[~d] or a bare p/q"""
    kind, sep, rest = spec.partition(":")
    if not sep:
        return RegularReal.constant(parse_rational(spec))
    if kind == "const":
        return RegularReal.constant(parse_rational(rest))
    if kind == "dyadic":
        q = parse_rational(rest)
        if q.denominator & (q.denominator - 1):
            raise InvalidInput(f"Not a dyadic rational: {rest!r}")
        return RegularReal.constant(q)
    if kind == "kappa":
        return kappa(parse_path(rest, BINARY))
    if kind == "phi":
        return phi(parse_path(rest, TERNARY))
    raise InvalidInput(f"Unknown real spec: {spec!r}")


def _digits(stream, count):
    return "".join(str(d) for d in stream.prefix(count))


# real


def cmd_real_approx(args):
    print(format_rational(approx(parse_real(args.x), args.prec)))


def cmd_real_convert(args):
    x = parse_real(args.x)
    if args.to == "regular":
        print(format_rational(x[args.prec]))
    elif args.to == "fundamental":
        f = fundamental_from_regular(x)
        index = f.modulus(args.prec)
        print(f"modulus {index} term {format_rational(f.terms[index])}")
    else:
        print(shrinking_from_regular(x)[args.prec])


def cmd_real_compare(args):
    result = less_at(parse_real(args.x), parse_real(args.y), args.cap)
    if result.witness is None:
        logger.warning("⚠️  no order witness below depth %d", args.cap)
    print(result)


# spread


def cmd_spread_phi(args):
    print(format_rational(approx(phi(parse_path(args.path, TERNARY)), args.prec)))


def cmd_spread_extract(args):
    print(_digits(path_of_real(parse_real(args.x)), args.digits))


def cmd_spread_rho(args):
    print(_digits(rho(parse_path(args.path, TERNARY)), args.digits))


def cmd_spread_lift(args):
    lifted = quotient_lift(parse_path(args.path, TERNARY), args.n, parse_real(args.x))
    print(_digits(lifted, args.digits))


def cmd_spread_node(args):
    word = parse_word(args.word, TERNARY)
    print(f"{node_number(word)} {node_interval(word)}")


# cantor


def cmd_cantor_kappa(args):
    print(format_rational(approx(kappa(parse_path(args.bits, BINARY)), args.prec)))


def cmd_cantor_gamma(args):
    print(_digits(gamma(parse_path(args.path, TERNARY)), args.digits))


def cmd_cantor_interval(args):
    print(cantor_interval(parse_word(args.word, BINARY)))


# bar


def cmd_bar_eval(args):
    bar = DecidableBar.from_file(args.bar)
    print(format_rational(approx(bar_fn_eval(bar, parse_real(args.at), args.cap), args.prec)))


def cmd_bar_bound(args):
    print(bar_uniform_bound(DecidableBar.from_file(args.bar), args.cap))


def cmd_bar_hitting(args):
    print(hitting_time(DecidableBar.from_file(args.bar), parse_path(args.bits, BINARY), args.cap))


def cmd_bar_verify(args):
    holds = verify_hitting(DecidableBar.from_file(args.bar), parse_path(args.bits, BINARY), args.prec, args.cap)
    print("true" if holds else "false")
    if not holds:
        raise InvariantViolation(f"bar function misses the hitting time of {args.bits}")


# code


def cmd_code_check(args):
    report = code_validate(load_code(args.code), args.depth, args.kmax)
    for line in report.lines():
        print(line)
    if not report.ok:
        raise InvariantViolation(f"{args.code} violates the code conditions")


def cmd_code_eval(args):
    print(format_rational(approx(code_eval(load_code(args.code), parse_real(args.at), args.cap), args.prec)))


def cmd_code_locate(args):
    print(code_locate(load_code(args.code), args.k, parse_path(args.path, TERNARY), args.cap))


def cmd_code_ucmod(args):
    modulus = code_uc_witness(load_code(args.code), args.kmax, args.cap, args.budget)
    for k, omega in enumerate(modulus.table(args.kmax)):
        print(f"{k} {omega}")


def cmd_code_encode(args):
    print(encode_code_value(RatInterval(parse_rational(args.lo), parse_rational(args.hi))))


def build_parser():
    parser = ArgumentParser(prog="conreal", description="Exact constructive reals on the command line")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name, handler, help_text):
        sub = group.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    def with_prec(sub):
        sub.add_argument("--prec", type=_natural, default=DEFAULT_PREC, metavar="K", help=PREC_HELP)
        return sub

    real = groups.add_parser("real", help="real numbers").add_subparsers(dest="command", required=True)
    sub = with_prec(command(real, "approx", cmd_real_approx, "rational approximation"))
    sub.add_argument("--x", required=True, help="const:p/q, dyadic:p/q, kappa:BITS or phi:DIGITS[~d]")
    sub = with_prec(command(real, "convert", cmd_real_convert, "show another representation at index K"))
    sub.add_argument("--x", required=True)
    sub.add_argument("--to", choices=("regular", "fundamental", "shrinking"), required=True)
    sub = command(real, "compare", cmd_real_compare, "search for a strict order witness")
    sub.add_argument("--x", required=True)
    sub.add_argument("--y", required=True)
    sub.add_argument("--cap", type=_positive, default=DEPTH_CAP)

    spread = groups.add_parser("spread", help="the ternary spread").add_subparsers(dest="command", required=True)
    sub = with_prec(command(spread, "phi", cmd_spread_phi, "the real Φ(α)"))
    sub.add_argument("--path", required=True, help='digits with optional tail, e.g. "120~2"')
    sub = command(spread, "extract", cmd_spread_extract, "the path of a real in [0, 1]")
    sub.add_argument("--x", required=True)
    sub.add_argument("--digits", type=_positive, default=16)
    sub = command(spread, "rho", cmd_spread_rho, "the rewritten path ρ(α)")
    sub.add_argument("--path", required=True)
    sub.add_argument("--digits", type=_positive, default=16)
    sub = command(spread, "lift", cmd_spread_lift, "a path through ρ(α)↾n with value x")
    sub.add_argument("--path", required=True)
    sub.add_argument("--n", type=_natural, required=True)
    sub.add_argument("--x", required=True)
    sub.add_argument("--digits", type=_positive, default=16)
    sub = command(spread, "node", cmd_spread_node, "node number and interval of a word")
    sub.add_argument("--word", required=True)

    cantor = groups.add_parser("cantor", help="the Cantor discontinuum").add_subparsers(dest="command", required=True)
    sub = with_prec(command(cantor, "kappa", cmd_cantor_kappa, "the real κ(β)"))
    sub.add_argument("--bits", required=True)
    sub = command(cantor, "gamma", cmd_cantor_gamma, "the binary path γ_α")
    sub.add_argument("--path", required=True)
    sub.add_argument("--digits", type=_positive, default=16)
    sub = command(cantor, "interval", cmd_cantor_interval, "the middle-third interval of a word")
    sub.add_argument("--word", required=True)

    bar = groups.add_parser("bar", help="decidable bars").add_subparsers(dest="command", required=True)
    sub = with_prec(command(bar, "eval", cmd_bar_eval, "evaluate the bar function"))
    sub.add_argument("--bar", required=True, help="file with one binary word per line")
    sub.add_argument("--at", required=True)
    sub.add_argument("--cap", type=_positive, default=DEPTH_CAP)
    sub = command(bar, "bound", cmd_bar_bound, "uniform depth of the bar by fan search")
    sub.add_argument("--bar", required=True)
    sub.add_argument("--cap", type=_positive, default=DEPTH_CAP)
    sub = command(bar, "hitting", cmd_bar_hitting, "hitting time of a binary path")
    sub.add_argument("--bar", required=True)
    sub.add_argument("--bits", required=True)
    sub.add_argument("--cap", type=_positive, default=DEPTH_CAP)
    sub = with_prec(command(bar, "verify", cmd_bar_verify, "check f(κ(β)) against the hitting time"))
    sub.add_argument("--bar", required=True)
    sub.add_argument("--bits", required=True)
    sub.add_argument("--cap", type=_positive, default=DEPTH_CAP)

    code = groups.add_parser("code", help="codes of continuous functions").add_subparsers(dest="command", required=True)
    sub = command(code, "check", cmd_code_check, "validate a code")
    sub.add_argument("--code", required=True, help="builtin:identity, builtin:const:p/q, builtin:affine:a/b:c/d, builtin:slow or file:PATH")
    sub.add_argument("--depth", type=_natural, default=CODE_DEPTH)
    sub.add_argument("--kmax", type=_natural, default=CODE_KMAX)
    sub = with_prec(command(code, "eval", cmd_code_eval, "evaluate the induced function"))
    sub.add_argument("--code", required=True)
    sub.add_argument("--at", required=True)
    sub.add_argument("--cap", type=_positive, default=GLOBAL_CAP)
    sub = command(code, "locate", cmd_code_locate, "first prefix with a 2^-k interval")
    sub.add_argument("--code", required=True)
    sub.add_argument("--k", type=_natural, required=True)
    sub.add_argument("--path", required=True)
    sub.add_argument("--cap", type=_positive, default=GLOBAL_CAP)
    sub = command(code, "ucmod", cmd_code_ucmod, "uniform continuity witness by fan search")
    sub.add_argument("--code", required=True)
    sub.add_argument("--kmax", type=_natural, default=CODE_KMAX)
    sub.add_argument("--cap", type=_positive, default=DEPTH_CAP)
    sub.add_argument("--budget", type=_positive, default=GLOBAL_CAP,
                     help="fan search nodes (default %(default)s)")
    sub = command(code, "encode", cmd_code_encode, "code value of an interval")
    sub.add_argument("--lo", required=True)
    sub.add_argument("--hi", required=True)
    return parser


def run(argv=None):
    """Run one command; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
        logger.debug("⚙️  %s %s", args.group, args.command)
        return args.handler(args) or 0
    except ConrealError as e:
        logger.error("❌ %s", e)
        return e.exit_code


def main():
    sys.exit(run(sys.argv[1:]))
