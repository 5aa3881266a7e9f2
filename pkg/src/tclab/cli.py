import argparse
import json
import sys

from tclab import __version__
from tclab.bounds import DEFAULT_SEED, Window
from tclab.closures import JACOBIAN
from tclab.closures.cohomology import METHODS, SCHENZEL
from tclab.errors import InconclusiveError, InputError, TclabError
from tclab.pipeline import Tclab
from tclab.pipeline.constants import REGISTRY_CHAR
from tclab.report import EXIT_ERROR, EXIT_INCONCLUSIVE, error_payload

CLOSURES = ("limit", "tight", "germ", "unmixed")
VERIFICATIONS = (
    "thm1",
    "schenzel-agree",
    "kodaira",
    "zero-maps",
    "vanishing-bound",
    "main",
    "containment",
    "germ-limit",
    "unmixed-tight",
    "persistence",
)


class Parser(argparse.ArgumentParser):
    """Usage errors are input errors: JSON on standard output and exit 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(error_payload(InputError(message)))
        sys.exit(EXIT_ERROR)


common = argparse.ArgumentParser(add_help=False)
common.add_argument(
    "--ring",
    required=True,
    metavar="FILE|@NAME",
    help="Ring definition file, or @poly2, @fermat3, @nodalline, @curve4.",
)
common.add_argument(
    "--char",
    type=int,
    default=None,
    metavar="P",
    help=f"Characteristic of an example ring (default: {REGISTRY_CHAR}).",
)
common.add_argument(
    "--window",
    type=str,
    default=None,
    metavar="LO..HI",
    help="Degree window, written --window=LO..HI (default: -6..8).",
)
for flag, name in (
    ("--smax", "s_max"),
    ("--emax", "e_max"),
    ("--kmax", "k_max"),
    ("--mmax", "m_max"),
    ("--lmax", "l_max"),
    ("--degree-cap", "degree_cap"),
):
    common.add_argument(
        flag,
        type=int,
        default=None,
        dest=name,
        metavar="N",
        help=f"Bound {name} (default: {getattr(Window, name)}).",
    )
common.add_argument(
    "--powers",
    type=str,
    default=None,
    metavar="N1,N2,..",
    help="Ladder of sop powers (default: 1,2,4).",
)
common.add_argument(
    "--seed",
    type=int,
    default=DEFAULT_SEED,
    metavar="N",
    help=f"Seed for every random choice (default: {DEFAULT_SEED}).",
)
common.add_argument(
    "--workers",
    type=int,
    default=1,
    metavar="N",
    help="Worker threads.  If -1, use one thread per available CPU core.",
)
output = common.add_mutually_exclusive_group()
output.add_argument(
    "--json",
    dest="text",
    action="store_false",
    default=False,
    help="JSON output (default).",
)
output.add_argument("--text", dest="text", action="store_true", help="Text output.")
common.add_argument(
    "-v", "--verbose", action="store_true", help="Report progress on stderr."
)

test_element = argparse.ArgumentParser(add_help=False)
test_element.add_argument(
    "--test-elem",
    type=str,
    default=JACOBIAN,
    metavar="C",
    help="Test element c, or 'jacobian' for a generic Jacobian minor combination.",
)
test_element.add_argument(
    "--assert-test-element",
    action="store_true",
    help="Treat c as a known parameter test element.",
)

sop_flag = argparse.ArgumentParser(add_help=False)
sop_flag.add_argument(
    "--sop",
    type=str,
    default=None,
    metavar="'X1; X2; ..'",
    help="System of parameters (default: the one pinned for an example ring).",
)

parser = Parser(
    prog="tclab",
    description="Closures of parameter ideals and graded local cohomology over F_p.",
)
parser.add_argument(
    "-V", "--version", action="version", version=f"%(prog)s {__version__}"
)
commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

commands.add_parser("hilbert", parents=[common], help="Hilbert function on the window.")
commands.add_parser("dim", parents=[common], help="Declared vs estimated dimension.")
commands.add_parser("jacobian", parents=[common], help="Jacobian ideal generators.")
commands.add_parser(
    "isolated-check", parents=[common], help="Is the singular locus m-primary?"
)

sub = commands.add_parser(
    "sop-suggest", parents=[common], help="Random sop of given degrees."
)
sub.add_argument("--degrees", required=True, metavar="D1,D2,..")

sub = commands.add_parser(
    "sop-check", parents=[common, sop_flag], help="Is a sequence part of a sop?"
)
sub = commands.add_parser(
    "dseq-check", parents=[common, sop_flag], help="Is a sequence a d-sequence?"
)
sub = commands.add_parser(
    "usd-check", parents=[common, sop_flag], help="Is a sop a USD-sequence?"
)
sub = commands.add_parser(
    "standard-check", parents=[common, sop_flag], help="Is a sop standard?"
)

sub = commands.add_parser(
    "closure", parents=[common, test_element], help="Closure pieces or membership."
)
sub.add_argument("kind", choices=CLOSURES)
sub.add_argument("--ideal", required=True, metavar="'F1; F2; ..'")
sub.add_argument("--elem", default=None, metavar="Z", help="Test membership of Z.")
sub.add_argument("--next", default=None, metavar="X", help="Next parameter (unmixed).")
sub.add_argument("--n", type=int, default=None, metavar="N", help="Single degree.")

sub = commands.add_parser(
    "cohomology",
    parents=[common, sop_flag, test_element],
    help="Graded pieces of local cohomology.",
)
sub.add_argument("--i", type=int, default=None, metavar="I")
sub.add_argument("--method", choices=METHODS, default=SCHENZEL)
sub.add_argument("--power", type=int, default=1, metavar="N", help="Sop power.")

sub = commands.add_parser(
    "tc0",
    parents=[common, sop_flag, test_element],
    help="Tight closure of zero in top cohomology.",
)
sub.add_argument("--n", type=int, default=None, metavar="N")

sub = commands.add_parser("section", parents=[common], help="The ring R/xR.")
sub.add_argument("--elem", required=True, metavar="X")
sub.add_argument("--dim", type=int, default=None, metavar="D")

sub = commands.add_parser(
    "verify",
    parents=[common, sop_flag, test_element],
    help="Check a statement on the window.",
)
sub.add_argument("kind", choices=VERIFICATIONS)
sub.add_argument("--i", type=int, default=None, metavar="I")
sub.add_argument("--n", type=int, default=None, metavar="N")
sub.add_argument("--t", type=int, default=1, metavar="T")


def parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"{what} {text!r} is not a comma separated list.") from None


def build_window(args) -> Window:
    changes = {}
    if args.window:
        changes["n_lo"], changes["n_hi"] = Window.parse_range(args.window)
    for name in ("s_max", "e_max", "k_max", "m_max", "l_max", "degree_cap"):
        if getattr(args, name) is not None:
            changes[name] = getattr(args, name)
    if args.powers:
        changes["powers"] = tuple(parse_ints(args.powers, "Power ladder"))
    return Window(**changes)


def run(model: Tclab, args):
    command = args.command
    c = {
        "test_elem": getattr(args, "test_elem", JACOBIAN),
        "certified": getattr(args, "assert_test_element", False),
    }
    if command == "hilbert":
        return model.hilbert()
    elif command == "dim":
        return model.dim()
    elif command == "jacobian":
        return model.jacobian()
    elif command == "isolated-check":
        return model.isolated_check()
    elif command == "sop-suggest":
        return model.sop_suggest(parse_ints(args.degrees, "Degrees"))
    elif command in ("sop-check", "dseq-check"):
        if args.sop is None:
            raise InputError(f"{command} needs the sequence (--sop).")
        if command == "sop-check":
            return model.sop_check(args.sop)
        return model.dseq_check(args.sop)
    elif command == "usd-check":
        return model.usd_check(args.sop)
    elif command == "standard-check":
        return model.standard_check(args.sop)
    elif command == "closure":
        return model.closure(
            args.kind, args.ideal, args.elem, args.n, following=args.next, **c
        )
    elif command == "cohomology":
        return model.cohomology(args.i, args.method, args.sop, args.power, **c)
    elif command == "tc0":
        return model.tc0(args.n, args.sop, **c)
    elif command == "section":
        return model.section(args.elem, args.dim)
    else:
        return model.verify(args.kind, args.i, args.n, args.sop, args.t, **c)


def main(args=None) -> int:
    args = parser.parse_args(args)
    char = args.char
    if char is None and args.ring.startswith("@"):
        char = REGISTRY_CHAR

    model = None
    try:
        model = Tclab(
            args.ring,
            char=char,
            window=build_window(args),
            seed=args.seed,
            workers=args.workers,
            verbose=args.verbose,
        )
        report = run(model, args)
    except InconclusiveError as e:
        if args.verbose:
            print(f"Inconclusive: {e}", file=sys.stderr)
        if model is None:
            payload = e.to_dict() | {"verdict": e.verdict.to_dict()}
            print(json.dumps({"error": payload}, indent=2, ensure_ascii=False))
            return EXIT_INCONCLUSIVE
        report = model.report(args.command).add(e.verdict)
    except TclabError as e:
        print(error_payload(e))
        return EXIT_ERROR

    print(report.render(args.text))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
