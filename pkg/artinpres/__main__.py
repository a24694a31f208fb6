import argparse
import logging
import sys

from modelforge.logs import setup_logging

from artinpres.coxeter import EnumerationLimitError, GraphError, NotFiniteTypeError, \
    classify_graph
from artinpres.garside import print_delta, solve_words
from artinpres.mcg import FLAVORS, ParameterError, export_presentation, print_presentation
from artinpres.presentation import COSET_CAP, FORMATTERS, PresentationError
from artinpres.suites import DEFAULT_SEED, WORDS_PER_TYPE, suite_ids, verify
from artinpres.verifier import SEARCH_DEPTH, ScriptError
from artinpres.words import WordSyntaxError

USAGE_ERRORS = (ParameterError, GraphError, WordSyntaxError, PresentationError, ScriptError,
                EnumerationLimitError, OSError)


def one_arg_parser(*args, **kwargs) -> argparse.ArgumentParser:
    """
    Create parser for one argument with passed arguments.
    It is helper function to avoid argument duplication in subcommands.
    :return: Parser for one argument.
    """
    arg_parser = argparse.ArgumentParser(add_help=False)
    arg_parser.add_argument(*args, **kwargs)
    return arg_parser


def bounded_int(minimum: int):
    def convert(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError("%r is not an integer" % text) from None
        if value < minimum:
            raise argparse.ArgumentTypeError("must be at least %d, got %d" % (minimum, value))
        return value
    return convert


def graph_source_parser(required: bool = True) -> argparse.ArgumentParser:
    """
    ``--graph FILE`` and ``--type T`` as a mutually exclusive pair.
    """
    arg_parser = argparse.ArgumentParser(add_help=False)
    group = arg_parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--graph", help="Path to a Coxeter graph file.")
    group.add_argument("--type", help="Standard finite type such as A3, B4, D6 or E7.")
    return arg_parser


def surface_parser(genus_required: bool = True) -> argparse.ArgumentParser:
    arg_parser = argparse.ArgumentParser(add_help=False)
    arg_parser.add_argument("--g", type=bounded_int(1), required=genus_required, help="Genus.")
    arg_parser.add_argument("--r", type=bounded_int(0), default=0,
                            help="The surface has r + 1 boundary components.")
    arg_parser.add_argument("--n", type=bounded_int(0), default=0, help="Number of punctures.")
    arg_parser.add_argument("--flavor", choices=FLAVORS, default="full",
                            help="Full or pure mapping class group.")
    arg_parser.add_argument("--closed", action="store_true",
                            help="Cap the boundary: closed surface of genus g.")
    arg_parser.add_argument("--format", choices=sorted(FORMATTERS), default="text",
                            help="Output format of the presentation.")
    arg_parser.add_argument("--eliminate-u", action="store_true",
                            help="Remove the boundary twists u_i by Tietze moves (g >= 2).")
    return arg_parser


def get_parser() -> argparse.ArgumentParser:
    """
    Create main parser.
    :return: Parser
    """
    parser = argparse.ArgumentParser()
    parser.add_argument("--log-level", default="INFO",
                        choices=logging._nameToLevel,
                        help="Logging verbosity.")

    # Create all common arguments

    output_arg_default = one_arg_parser("-o", "--output", help="Path to the output file.")
    surface_arg_default = surface_parser()
    optional_surface_arg_default = surface_parser(genus_required=False)
    graph_arg_default = graph_source_parser()

    # Create and construct subparsers

    subparsers = parser.add_subparsers(help="Commands.", dest="command")

    present_parser = subparsers.add_parser(
        "present", help="Print the presentation of a surface mapping class group "
        "as a quotient of an Artin group.",
        parents=[surface_arg_default, output_arg_default])
    present_parser.set_defaults(handler=print_presentation)

    solve_parser = subparsers.add_parser(
        "solve", help="Normal form of a word, or whether several words are equal.",
        parents=[graph_arg_default])
    solve_parser.set_defaults(handler=solve_words)
    solve_parser.add_argument("--word", action="append", required=True,
                              help="Word in the generators, e.g. \"x1 x2^-1 (x1 x3)^2\". "
                              "Repeat to compare words.")

    delta_parser = subparsers.add_parser(
        "delta", help="Positive word of the fundamental element.",
        parents=[graph_arg_default])
    delta_parser.set_defaults(handler=print_delta)
    delta_parser.add_argument("--subset", nargs="+",
                              help="Vertices of a connected finite-type parabolic subgroup.")

    classify_parser = subparsers.add_parser(
        "classify", help="Finite type of every connected component of a graph file.")
    classify_parser.set_defaults(handler=classify_graph)
    classify_parser.add_argument("--graph", required=True, help="Path to a Coxeter graph file.")

    verify_parser = subparsers.add_parser(
        "verify", help="Run a suite of claims or check a derivation script.")
    verify_parser.set_defaults(handler=verify)
    source = verify_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--suite", choices=suite_ids(), help="Suite of claims to run.")
    source.add_argument("--script", help="Path to a derivation script file.")
    verify_parser.add_argument("--presentation",
                               help="Presentation file for a script without embedded records.")
    verify_parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                               help="Seed of the random word generator.")
    verify_parser.add_argument("--workers", type=bounded_int(1), default=1,
                               help="Number of threads running claims.")
    verify_parser.add_argument("--depth", type=bounded_int(0), default=SEARCH_DEPTH,
                               help="Move limit of the fallback derivation search.")
    verify_parser.add_argument("--words", type=bounded_int(0), default=WORDS_PER_TYPE,
                               help="Random words per type in the normal form checks.")
    verify_parser.add_argument("--cap", type=bounded_int(1), default=COSET_CAP,
                               help="Maximum number of cosets in coset enumeration.")
    verify_parser.add_argument("--progress", action="store_true",
                               help="Show progress bars on long suites.")

    export_parser = subparsers.add_parser(
        "export", help="Write a surface presentation or the shipped derivation "
        "transcripts to files.",
        parents=[optional_surface_arg_default, output_arg_default])
    export_parser.set_defaults(handler=export_presentation)
    export_parser.add_argument("--transcripts",
                               help="Directory receiving one script file per transcript.")

    return parser


def main():
    """
    Creates all the argparse-rs and invokes the function from set_defaults().
    :return: The exit code: 0 on success, 2 on bad input, 3 when a graph is
             not of finite type, 4 when a claim or a script is refuted.
    """
    parser = get_parser()
    args = parser.parse_args()
    args.log_level = logging._nameToLevel[args.log_level]
    setup_logging(args.log_level)

    try:
        handler = args.handler
    except AttributeError:
        def print_usage(_):
            parser.print_usage()

        handler = print_usage
    log = logging.getLogger("main")
    try:
        return handler(args)
    except NotFiniteTypeError as e:
        log.error("%s", e)
        return 3
    except USAGE_ERRORS as e:
        log.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
