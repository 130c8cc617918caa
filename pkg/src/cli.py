"""Command-line surface: check, validate, saturate, transform, prove and fuzz.

Results go to stdout and are byte-identical for identical inputs; logging and
error messages go to stderr. Exit status is 0 for true/valid/accepted, 1 for
false/violations/rejected/counterexamples and 2 for usage, parse, validation
or I/O errors.
"""

import argparse
import hashlib
import logging
import shlex
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .config import configure, get_settings
from .errors import WhylogError
from .logic.grammar import parse_formula
from .logic.syntax import Formula
from .models.modelfile import load_model, print_coverage, print_model, read_model_source
from .proofs.checker import check_proof
from .proofs.prooffile import load_proof
from .proofs.soundness import run_soundness_fuzz
from .semantics.evaluator import Verdict, eval
from .semantics.jl import eval_jl, jl_transform, load_jl_model, print_jl_model, validate_jl
from .semantics.properties import check_factivity, check_introspection
from .semantics.transforms import factive_transform
from .utils.op_logger import logged_operation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


@dataclass
class RunReport:
    """
    Everything one command run prints.

    Attributes:
        command: The command line, shell-quoted.
        digest: sha256 over the bytes of every input file, in argument order.
        lines: Result lines (verdicts, violations, proof or fuzz summaries).
        status: Exit status.
    """

    command: str
    digest: str
    lines: list[str] = field(default_factory=list)
    status: int = EXIT_OK

    def render(self, header: bool = False) -> str:
        out = []
        if header:
            out += [f"# {self.command}", f"# inputs sha256 {self.digest}"]
        out += self.lines
        if header:
            out.append(f"# exit {self.status}")
        return "".join(line + "\n" for line in out)


class _Inputs:
    """Reads input files once and hashes them in order."""

    def __init__(self):
        self._hash = hashlib.sha256()

    def read(self, path: str) -> str:
        data = Path(path).read_bytes()
        self._hash.update(data)
        return data.decode("utf-8")

    @property
    def digest(self) -> str:
        return self._hash.hexdigest()


class _InputError(WhylogError):
    """A WhylogError raised while reading a named input file."""

    def __init__(self, path: str, cause: WhylogError):
        super().__init__(f"{path}: {cause}")


def _load(inputs: _Inputs, path: str, loader):
    text = inputs.read(path)
    try:
        return loader(text)
    except WhylogError as exc:
        raise _InputError(path, exc) from exc


def _formula_list(text: str) -> list[Formula]:
    return [parse_formula(part) for part in text.split(";") if part.strip()]


def _verdict_lines(verdict: Verdict, trace: bool) -> list[str]:
    lines = ["true" if verdict.value else "false"]
    if trace and verdict.trace is not None:
        lines.append(f"  {verdict.trace.describe()}")
    return lines


@logged_operation
def cmd_check(args: argparse.Namespace, inputs: _Inputs) -> RunReport:
    """Truth of a formula at a world, under ELKy or (with --jl) JL semantics."""
    text = inputs.read(args.model)
    formula = parse_formula(args.formula)
    try:
        if args.jl:
            if read_model_source(text).jl:
                j = load_jl_model(text)
            else:
                j = jl_transform(load_model(text))
            verdict = eval_jl(j.with_queries([formula]), args.world, formula)
        else:
            m = load_model(text).with_queries([formula])
            verdict = eval(m, args.world, formula)
    except WhylogError as exc:
        raise _InputError(args.model, exc) from exc
    status = EXIT_OK if verdict.value else EXIT_NEGATIVE
    return RunReport("", "", _verdict_lines(verdict, args.trace), status)


@logged_operation
def cmd_validate(args: argparse.Namespace, inputs: _Inputs) -> RunReport:
    """Load-time validation, plus factivity and introspection checks on request."""
    text = inputs.read(args.model)
    universe = _formula_list(args.introspection) if args.introspection else []
    lines: list[str] = []
    try:
        if read_model_source(text).jl:
            lines += [f"jl: {v.describe()}" for v in validate_jl(load_jl_model(text))]
        else:
            m = load_model(text)
            if args.factivity:
                lines += [f"factivity: {v.describe()}" for v in check_factivity(m)]
            if universe:
                lines += [f"introspection: {v.describe()}" for v in check_introspection(m, universe)]
    except WhylogError as exc:
        raise _InputError(args.model, exc) from exc
    count = len(lines)
    lines.append(f"{count} violation{'' if count == 1 else 's'}")
    return RunReport("", "", lines, EXIT_NEGATIVE if count else EXIT_OK)


@logged_operation
def cmd_saturate(args: argparse.Namespace, inputs: _Inputs) -> RunReport:
    """The saturated coverage table as seed lines."""
    m = _load(inputs, args.model, load_model)
    return RunReport("", "", print_coverage(m).splitlines())


@logged_operation
def cmd_transform(args: argparse.Namespace, inputs: _Inputs) -> RunReport:
    """Write the factive or JL transform of an ELKy model."""
    m = _load(inputs, args.model, load_model)
    if args.mode == "factive":
        out = print_model(factive_transform(m))
    else:
        out = print_jl_model(jl_transform(m))
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
        logger.info(f"wrote {args.mode} transform of {args.model} to {args.output}")
        return RunReport("", "", [f"wrote {args.output}"])
    return RunReport("", "", out.splitlines())


@logged_operation
def cmd_prove(args: argparse.Namespace, inputs: _Inputs) -> RunReport:
    """Check a proof file line by line."""
    proof = _load(inputs, args.proof, load_proof)
    report = check_proof(proof)
    return RunReport("", "", report.lines(), EXIT_OK if report.accepted else EXIT_NEGATIVE)


@logged_operation
def cmd_fuzz(args: argparse.Namespace, inputs: _Inputs) -> RunReport:
    """Soundness fuzzing of SKY or SKYI; counterexample models go to --emit-dir."""
    if args.trials < 1:
        raise WhylogError("--trials must be at least 1")
    report = run_soundness_fuzz(
        args.system, args.trials, args.seed, max_worlds=args.max_worlds, depth=args.depth
    )
    if args.emit_dir and report.counterexamples:
        directory = Path(args.emit_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for c in report.counterexamples:
            path = directory / f"{args.system}_seed{c.seed}_trial{c.trial}_{c.source}.mod"
            path.write_text(f"# {c.describe()}\n{c.model_text}", encoding="utf-8")
    status = EXIT_NEGATIVE if report.counterexamples else EXIT_OK
    return RunReport("", "", report.lines(), status)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="whylog",
        description="Model checking, transforms and proof checking for knowing-that and knowing-why.",
    )
    parser.add_argument("--report", action="store_true", help="print command echo, input digest and exit status")
    parser.add_argument("--log-level", help="logging level for stderr (default from WHYLOG_LOG_LEVEL)")
    parser.add_argument("--op-log", action="store_true", help="print coloured operation logs on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="evaluate a formula at a world")
    check.add_argument("model")
    check.add_argument("world")
    check.add_argument("formula")
    check.add_argument("--jl", action="store_true", help="use JL semantics (JL files or the JL transform)")
    check.add_argument("--trace", action="store_true", help="explain the verdict of a modal formula")
    check.set_defaults(handler=cmd_check)

    validate = commands.add_parser("validate", help="validate a model and report violations")
    validate.add_argument("model")
    validate.add_argument("--factivity", action="store_true")
    validate.add_argument(
        "--introspection", metavar="FORMULAS",
        help="';'-separated formulas of shape K, ~K, Ky or ~Ky",
    )
    validate.set_defaults(handler=cmd_validate)

    saturate = commands.add_parser("saturate", help="print the saturated coverage table")
    saturate.add_argument("model")
    saturate.set_defaults(handler=cmd_saturate)

    transform = commands.add_parser("transform", help="factive or JL transform of a model")
    transform.add_argument("model")
    transform.add_argument("mode", choices=["factive", "jl"])
    transform.add_argument("-o", "--output", help="write to this file instead of stdout")
    transform.set_defaults(handler=cmd_transform)

    prove = commands.add_parser("prove", help="check a proof file")
    prove.add_argument("proof")
    prove.set_defaults(handler=cmd_prove)

    fuzz = commands.add_parser("fuzz", help="soundness fuzzing on random models")
    fuzz.add_argument("system", choices=["SKY", "SKYI"])
    fuzz.add_argument("--trials", type=int, default=100)
    fuzz.add_argument("--seed", type=int, default=1)
    fuzz.add_argument("--max-worlds", type=int, default=4)
    fuzz.add_argument("--depth", type=int, default=2)
    fuzz.add_argument("--emit-dir", help="directory for counterexample model files")
    fuzz.set_defaults(handler=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Run one command and return its exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR

    overrides = {}
    if args.log_level:
        overrides["log_level"] = args.log_level.upper()
    if args.op_log:
        overrides["op_logging"] = True
    settings = configure(**overrides) if overrides else get_settings()
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    inputs = _Inputs()
    try:
        report = args.handler(args, inputs)
    except (WhylogError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report.command = shlex.join(["whylog", *argv])
    report.digest = inputs.digest
    sys.stdout.write(report.render(header=args.report))
    sys.stdout.flush()
    return report.status


def run() -> None:
    """Console entry: UTF-8, line-buffered stdout, then main()."""
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8", line_buffering=True)
    sys.exit(main())
