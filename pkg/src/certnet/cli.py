"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 validation failure (or a
round-trip mismatch).
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass

from .degrees import format_degree, format_value
from .distribution import format_tsv, max_discrepancy, necessity, possibility
from .errors import CertnetError
from .kb import (
    compile_fuzzy,
    compile_network,
    format_kb,
    load_kb,
    recover_distribution,
    subsumed_indices,
)
from .logic import DEFAULT_MAX_VARS, parse_formula
from .network import (
    PERMISSIVE,
    STRICT,
    defuzzify_network,
    format_network,
    fuzzy_joint,
    joint_distribution,
    load_network,
    validate,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2


@dataclass
class CommandResult:
    code: int = EXIT_OK
    stdout: str = ""
    stderr: str = ""
    output: str | None = None


class _Invalid(Exception):
    def __init__(self, report_text):
        super().__init__(report_text)
        self.report_text = report_text


def _load_checked(args, fuzzy=None):
    """Load a network, enforcing the requested validation level."""
    n = load_network(args.file, fuzzy=fuzzy)
    structural = validate(n, PERMISSIVE)
    if not structural.ok:
        raise _Invalid(structural.format())
    strict = validate(n, STRICT)
    notes = ""
    if not strict.ok:
        if args.level == STRICT:
            raise _Invalid(strict.format())
        notes = (f"warning: {args.file} fails strict normalization "
                 f"({len(strict.violations)} violation(s)); continuing permissively\n")
    return n, notes


def cmd_validate(args) -> CommandResult:
    n = load_network(args.file)
    report = validate(n, args.level)
    return CommandResult(EXIT_OK if report.ok else EXIT_INVALID, report.format() + "\n")


def cmd_joint(args) -> CommandResult:
    n, notes = _load_checked(args)
    if n.fuzzy:
        joint = fuzzy_joint(n, args.max_vars)
        lines = ["\t".join((*n.vocabulary, "degree"))]
        for w, fd in joint.items():
            lines.append("\t".join((*(str(lit) for lit in w.literals()), format_value(fd))))
        return CommandResult(EXIT_OK, "\n".join(lines) + "\n", notes)
    return CommandResult(EXIT_OK, format_tsv(joint_distribution(n, args.max_vars)), notes)


def cmd_query(args) -> CommandResult:
    n, notes = _load_checked(args)
    if n.fuzzy:
        n = defuzzify_network(n)
        notes += "note: fuzzy network queried through its defuzzified projection\n"
    formula = parse_formula(args.formula, n.vocabulary)
    d = joint_distribution(n, args.max_vars)
    out = (f"possibility: {format_degree(possibility(d, formula))}\n"
           f"necessity: {format_degree(necessity(d, formula))}\n")
    return CommandResult(EXIT_OK, out, notes)


def cmd_compile(args) -> CommandResult:
    n, notes = _load_checked(args)
    kb = compile_fuzzy(n) if n.fuzzy else compile_network(n)
    return CommandResult(EXIT_OK, format_kb(kb), notes)


def cmd_recover(args) -> CommandResult:
    kb = load_kb(args.file)
    return CommandResult(EXIT_OK, format_tsv(recover_distribution(kb, args.max_vars)))


def cmd_roundtrip(args) -> CommandResult:
    n, notes = _load_checked(args)
    if n.fuzzy:
        n = defuzzify_network(n)
        notes += "note: fuzzy network checked through its defuzzified projection\n"
    joint = joint_distribution(n, args.max_vars)
    recovered = recover_distribution(compile_network(n), args.max_vars)
    worlds = len(joint.values)
    if joint == recovered:
        return CommandResult(EXIT_OK, f"identical ({worlds} worlds)\n"
                                      f"max discrepancy: 0\n", notes)
    differing = sum(a != b for a, b in zip(joint.values, recovered.values))
    out = (f"different ({differing} of {worlds} worlds)\n"
           f"max discrepancy: {format_degree(max_discrepancy(joint, recovered))}\n")
    return CommandResult(EXIT_INVALID, out, notes)


def cmd_defuzzify(args) -> CommandResult:
    n, notes = _load_checked(args, fuzzy=True)
    return CommandResult(EXIT_OK, format_network(defuzzify_network(n)), notes)


def cmd_subsumed(args) -> CommandResult:
    kb = load_kb(args.file)
    found = subsumed_indices(kb, args.max_vars)
    if not found:
        return CommandResult(EXIT_OK, "no subsumed formulas\n")
    lines = []
    for i in found:
        wf = kb.formulas[i]
        label = f"line {wf.line}" if wf.line is not None else f"formula {i + 1}"
        lines.append(f"{label} subsumed")
    return CommandResult(EXIT_OK, "\n".join(lines) + "\n")


COMMANDS = {
    "validate": (cmd_validate, "check a network file", "network"),
    "joint": (cmd_joint, "print the joint certainty distribution as TSV", "network"),
    "query": (cmd_query, "possibility and necessity of a formula", "network"),
    "compile": (cmd_compile, "compile a network to a weighted-clause knowledge base", "network"),
    "recover": (cmd_recover, "certainty distribution induced by a knowledge base", "kb"),
    "roundtrip": (cmd_roundtrip, "compare the chain rule with compile-then-recover", "network"),
    "defuzzify": (cmd_defuzzify, "write the crisp projection of a fuzzy network", "network"),
    "subsumed": (cmd_subsumed, "list subsumed formulas of a knowledge base", "kb"),
}


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    level = common.add_mutually_exclusive_group()
    level.add_argument("--strict", dest="level", action="store_const", const=STRICT,
                       default=argparse.SUPPRESS, help="require normalized tables")
    level.add_argument("--permissive", dest="level", action="store_const", const=PERMISSIVE,
                       default=argparse.SUPPRESS, help="check structure, coverage and range only (default)")
    common.add_argument("--max-vars", type=int, default=argparse.SUPPRESS, metavar="N",
                        help=f"world enumeration limit (default {DEFAULT_MAX_VARS})")
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, metavar="PATH",
                        help="write results to PATH instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="certnet", parents=[common],
                                     description="Certain Bayesian networks and knowledge bases.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, kind) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help=f"{kind} file")
        if name == "query":
            p.add_argument("--formula", required=True, help="formula over the network's attributes")
    return parser


def run(argv=None) -> CommandResult:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.level = getattr(args, "level", PERMISSIVE)
    args.max_vars = getattr(args, "max_vars", DEFAULT_MAX_VARS)
    handler = COMMANDS[args.command][0]
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            result = handler(args)
        result.stderr = "".join(f"warning: {w.message}\n" for w in caught) + result.stderr
    except _Invalid as exc:
        return CommandResult(EXIT_INVALID, exc.report_text + "\n", "")
    except (CertnetError, OSError, ValueError) as exc:
        return CommandResult(EXIT_ERROR, "", f"error: {exc}\n")
    result.output = getattr(args, "output", None)
    return result


def main(argv=None) -> int:
    result = run(argv)
    if result.output and result.stdout:
        with open(result.output, "w", encoding="utf-8") as fh:
            fh.write(result.stdout)
    else:
        sys.stdout.write(result.stdout)
    sys.stderr.write(result.stderr)
    return result.code


if __name__ == "__main__":
    sys.exit(main())
