"""Command-line entry point ``padic-codes``.

Exit codes: 0 success, 1 input/format/usage error, 2 validation or
certificate hypotheses fail (including indeterminate comparisons),
3 resource budget exceeded. Reports go to stdout, logs to stderr.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from typing import Sequence

from padic_codes import __version__
from padic_codes.core.config import settings
from padic_codes.core.errors import (
    CertificateError,
    ConsistencyError,
    PadicCodesError,
    ResourceBudgetError,
)
from padic_codes.models.config import RunConfig
from padic_codes.services import experiments

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAIL = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reads negative rationals such as -1/2 as values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # argparse (3.10 to 3.12) treats tokens matching this as values, not options
        self._negative_number_matcher = re.compile(
            r"^-\d+$|^-\d*\.\d+$|^-\d+/\d+$"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="padic-codes",
        description="Exact p-adic spherical codes, kissing numbers and bounds.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--log-level", default=None, help="Logging level (default: PADIC_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="Validate a code file")
    validate.add_argument("code", help="Code file")
    validate.add_argument("--tsv", help="Write the violation table here")

    search = commands.add_parser("search", help="Largest code for a separation")
    search.add_argument("-p", "--prime", type=int, required=True)
    search.add_argument("-d", "--dim", type=int, required=True)
    separation = search.add_mutually_exclusive_group()
    separation.add_argument("--kissing", action="store_true", help="theta = pi/3")
    separation.add_argument("--cos-theta", help="Rational cos theta, e.g. 1/2")
    search.add_argument("--level", type=int, help="Search this level with its loosest separation")
    search.add_argument("--precision", type=int, help="Hensel precision of the witness")
    search.add_argument("--budget", type=int, help="Residue tuples to enumerate at most")
    search.add_argument("--threads", type=int, help="Worker threads (default: PADIC_THREADS)")
    search.add_argument("-o", "--output", help="Write the witness code file here")
    search.add_argument("--stats", help="Write the statistics TSV row here")

    certify = commands.add_parser("certify", help="Verify or synthesize a bound certificate")
    certify.add_argument("code", help="Code file")
    source = certify.add_mutually_exclusive_group(required=True)
    source.add_argument("--cert", help="Certificate file")
    source.add_argument("--synthesize", action="store_true", help="Solve the certificate LP")
    certify.add_argument("-o", "--output", help="Write the synthesized certificate here")

    classical = commands.add_parser("classical", help="Classical real-sphere bounds")
    tools = classical.add_subparsers(dest="tool", required=True)

    gegenbauer = tools.add_parser("gegenbauer", help="Evaluate G_k^(n)(r)")
    gegenbauer.add_argument("-k", "--degree", type=int, required=True)
    gegenbauer.add_argument("-n", "--dim-param", type=int, required=True)
    gegenbauer.add_argument("-r", "--point", required=True)

    delsarte = tools.add_parser("delsarte", help="Delsarte LP bound for a polynomial")
    delsarte.add_argument("--poly", nargs="+", required=True, help="c_0 c_1 ... c_m")
    delsarte.add_argument("--cos-theta", required=True)
    delsarte.add_argument("--dim-param", type=int, required=True)

    pfender = tools.add_parser("pfender", help="Pfender bound for a real code")
    pfender.add_argument("code", help="Code file with 'prime real'")
    pfender.add_argument("--cert", required=True, help="Real certificate file")

    expand = tools.add_parser("expand", help="Gegenbauer coefficients of a polynomial")
    expand.add_argument("--poly", nargs="+", required=True)
    expand.add_argument("--dim-param", type=int, required=True)
    expand.add_argument("--tsv", help="Write the coefficient table here")

    orthogonality = tools.add_parser("orthogonality", help="Weighted integral of G_j G_k")
    orthogonality.add_argument("-j", type=int, required=True)
    orthogonality.add_argument("-k", type=int, required=True)
    orthogonality.add_argument("-n", "--dim-param", type=int, required=True)
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    command = args.command if args.command != "classical" else f"classical {args.tool}"
    values = {"command": command}
    for name in RunConfig.model_fields:
        if name != "command" and getattr(args, name, None) is not None:
            values[name] = getattr(args, name)
    if getattr(args, "j", None) is not None:
        values["degree"] = args.j
        values["other_degree"] = args.k
    values["threads"] = args.threads if getattr(args, "threads", None) else settings.threads
    return RunConfig(**values)


def _dispatch(config: RunConfig, out) -> int:
    command = config.command
    if command == "validate":
        summary = experiments.validate_file(config.code)
        out.write(experiments.render_report(config, summary))
        if config.tsv:
            experiments.write_tsv(experiments.violations_frame(summary), config.tsv)
        return EXIT_OK if summary.valid else EXIT_FAIL

    if command == "search":
        logger.info("search on %d thread(s)", config.threads)
        summary, _, _ = experiments.run_search(config)
        out.write(experiments.render_report(config, summary))
        return EXIT_OK

    if command == "certify":
        summary = experiments.run_certify(config)
        out.write(experiments.render_report(config, summary))
        return EXIT_OK if summary.hypotheses_ok else EXIT_FAIL

    if command == "classical gegenbauer":
        lines = config.header_lines() + [f"value {experiments.run_gegenbauer(config)}"]
        out.write("\n".join(lines) + "\n")
        return EXIT_OK

    if command == "classical delsarte":
        summary = experiments.run_delsarte(config)
        out.write(experiments.render_report(config, summary))
        return EXIT_OK if summary.bound is not None else EXIT_FAIL

    if command == "classical pfender":
        summary = experiments.run_real_pfender(config)
        out.write(experiments.render_report(config, summary))
        return EXIT_OK if summary.hypotheses_ok else EXIT_FAIL

    if command == "classical expand":
        frame = experiments.expansion_frame(config)
        out.write("\n".join(config.header_lines()) + "\n")
        out.write(experiments.tsv_text(frame))
        if config.tsv:
            experiments.write_tsv(frame, config.tsv)
        return EXIT_OK

    if command == "classical orthogonality":
        rows = experiments.run_orthogonality(config)
        out.write("\n".join(config.header_lines()) + "\n")
        out.write(f"# decimal value, absolute error target {rows[0].tolerance:g}\n")
        out.write(experiments.tsv_text(experiments.rows_frame(rows)))
        return EXIT_OK

    raise ValueError(f"unknown command {command!r}")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    out = sys.stdout if out is None else out
    try:
        config = run_config(args)
        return _dispatch(config, out)
    except ConsistencyError:
        raise
    except ResourceBudgetError as e:
        logger.error("budget exceeded: %s", e)
        return EXIT_BUDGET
    except CertificateError as e:
        logger.error("certificate rejected: %s", e)
        return EXIT_FAIL
    except (PadicCodesError, ValueError, OSError) as e:
        logger.error("%s", e)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
