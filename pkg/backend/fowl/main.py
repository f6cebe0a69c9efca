"""Command-line front end: translate, consistency, prove, entails, molgen, membership."""

from pathlib import Path
from typing import List, Optional, Sequence
import argparse
import json
import logging
import shlex
import sys

from fowl.config import settings
from fowl.core.errors import FowlError, MangleCollisionError, UnsupportedConstructError, WildcardError
from fowl.logic.ast import Formula, Role, TptpProblem, TptpUnit, universal_closure
from fowl.logic.tptp import emit_tptp, parse_tptp_file, parse_tptp_formula
from fowl.owl.imports import catalog_loader, load_catalog, resolve_imports
from fowl.owl.model import OntologyDocument
from fowl.owl.parser import ParseMode, parse_ontology
from fowl.schemas import CliConfig, EmitStyle, EntailmentReport, NamingMode, ProverConfig, SzsStatus, count_statuses
from fowl.services.aligner import alignment_report
from fowl.services.molgen import (
    class_predicate, instances_and_classes, make_membership_conjectures, molgen_problem,
    parse_expected_memberships, read_molgen_file,
)
from fowl.services.reasoner import (
    Assembly, assemble, batch_membership, check_problem_consistency, classify_membership, conjecture_task,
    consistency_assembly, count_outcomes, entailment_task, run_proof_task,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_TRANSLATION_ERROR = 2
EXIT_REFUTED = 3
EXIT_UNKNOWN = 4
EXIT_PROVER_ERROR = 5

_TRANSLATION_ERRORS = (UnsupportedConstructError, MangleCollisionError, WildcardError)


class UsageError(Exception):
    pass


class FowlArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the parse-error code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE_ERROR, f"{self.prog}: error: {message}\n")


# Configuration

def build_config(args: argparse.Namespace) -> CliConfig:
    """Validate every flag before any file is read"""
    template = shlex.split(args.prover_args) if getattr(args, "prover_args", None) else None
    sat_template = shlex.split(args.prover_sat_args) if getattr(args, "prover_sat_args", None) else None
    prover = ProverConfig.from_settings(
        executable=getattr(args, "prover", None),
        argument_template=template,
        # a custom template replaces both modes unless a satisfiability one is given too
        sat_argument_template=sat_template or template,
        timeout_seconds=getattr(args, "timeout", None),
        keep_problems=True if getattr(args, "keep_problems", False) else None,
    )
    return CliConfig(
        command=args.command,
        catalog=getattr(args, "catalog", None),
        annotation_props=getattr(args, "annotation_prop", None) or [],
        naming=NamingMode.READABLE if getattr(args, "readable_names", False) else NamingMode.IRI,
        style=EmitStyle(getattr(args, "style", EmitStyle.QUOTED.value)),
        owl_only=getattr(args, "owl_only", False),
        strict=getattr(args, "strict", False),
        externalize=getattr(args, "externalize", False),
        alignment_report=getattr(args, "alignment_report", None),
        parallelism=getattr(args, "parallel", None) or settings.FOWL_PARALLELISM,
        prover=prover,
    )


# Input

def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def load_ontology(path: str, config: CliConfig) -> OntologyDocument:
    mode = ParseMode.STRICT if config.strict else ParseMode.LENIENT
    doc = parse_ontology(read_text(path), mode)
    loader = catalog_loader(load_catalog(config.catalog)) if config.catalog else None
    return resolve_imports(doc, loader, mode)


def load_extras(paths: Sequence[str]) -> List[TptpProblem]:
    return [parse_tptp_file(read_text(path)) for path in paths]


def read_conjectures(text: str) -> tuple:
    """Conjecture formulas and axiom units of a TPTP file, or one bare formula"""
    if "fof(" not in text:
        return [universal_closure(parse_tptp_formula(text.strip()))], []
    problem = parse_tptp_file(text)
    conjectures: List[Formula] = [universal_closure(u.formula) for u in problem.conjectures]
    return conjectures, list(problem.axioms)


def write_output(text: str, path: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")


# Reports

def format_report(report: EntailmentReport) -> str:
    rows = [(r.unit_name, r.verdict.status.value, f"{r.verdict.wall_clock:.2f}s", r.source) for r in report.per_conjecture]
    header = ("conjecture", "status", "time", "source")
    widths = [max(len(header[i]), *(len(row[i]) for row in rows)) for i in range(3)] if rows else [len(h) for h in header[:3]]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header[:3], widths)) + "  " + header[3]]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row[:3], widths)) + "  " + row[3])
    summary = ", ".join(f"{status}: {n}" for status, n in report.summary.items() if n)
    lines.append(f"{len(rows)} conjectures; {summary or 'nothing attempted'}; entailed: {'yes' if report.entailed else 'no'}")
    return "\n".join(lines) + "\n"


def report_exit_code(report: EntailmentReport) -> int:
    statuses = [r.verdict.status for r in report.per_conjecture]
    if SzsStatus.ERROR in statuses:
        return EXIT_PROVER_ERROR
    if SzsStatus.COUNTER_SATISFIABLE in statuses:
        return EXIT_REFUTED
    if all(status == SzsStatus.THEOREM for status in statuses):
        return EXIT_OK
    return EXIT_UNKNOWN


def print_report(report: EntailmentReport, jsonl: bool) -> None:
    if jsonl:
        for result in report.per_conjecture:
            sys.stdout.write(json.dumps(result.to_record()) + "\n")
    else:
        sys.stdout.write(format_report(report))


# Commands

def write_alignment(assembly: Assembly, config: CliConfig) -> None:
    if config.alignment_report:
        write_output(alignment_report(assembly.signature_map), config.alignment_report)


def cmd_translate(args: argparse.Namespace, config: CliConfig) -> int:
    doc = load_ontology(args.input, config)
    assembly = assemble(
        doc,
        config.annotation_properties(),
        load_extras(args.extra),
        naming=config.naming,
        owl_only=config.owl_only,
        skip_unsupported=args.skip_unsupported,
    )
    write_output(emit_tptp(assembly.problem, config.style), args.output)
    write_alignment(assembly, config)
    return EXIT_OK


def cmd_consistency(args: argparse.Namespace, config: CliConfig) -> int:
    doc = load_ontology(args.input, config)
    assembly = consistency_assembly(
        doc, config.annotation_properties(), load_extras(args.extra), config.naming,
        external=config.externalize, owl_only=config.owl_only,
    )
    write_alignment(assembly, config)
    verdict = check_problem_consistency(assembly.problem, config.prover)
    sys.stdout.write(f"{verdict.status.value} ({verdict.wall_clock:.2f}s)\n")
    if verdict.status == SzsStatus.SATISFIABLE:
        return EXIT_OK
    if verdict.status == SzsStatus.UNSATISFIABLE:
        return EXIT_REFUTED
    if verdict.status == SzsStatus.ERROR:
        logger.error(verdict.raw_output.strip()[-500:])
        return EXIT_PROVER_ERROR
    return EXIT_UNKNOWN


def cmd_prove(args: argparse.Namespace, config: CliConfig) -> int:
    doc = load_ontology(args.input, config)
    conjectures, axioms = read_conjectures(read_text(args.conjectures))
    if not conjectures:
        raise UsageError(f"{args.conjectures} contains no conjecture")
    extras = load_extras(args.extra)
    if axioms:
        extras.append(TptpProblem(tuple(axioms)))
    task = conjecture_task(
        doc, conjectures, config.annotation_properties(), extras, config.naming, config.owl_only,
    )
    write_alignment(task.assembly, config)
    report = run_proof_task(task, config.prover, config.parallelism)
    print_report(report, args.jsonl)
    return report_exit_code(report)


def cmd_entails(args: argparse.Namespace, config: CliConfig) -> int:
    premise = load_ontology(args.premise, config)
    conjecture = load_ontology(args.conjecture_ontology, config)
    task = entailment_task(
        premise, conjecture, config.annotation_properties(), load_extras(args.extra), config.naming,
        config.owl_only,
    )
    write_alignment(task.assembly, config)
    report = run_proof_task(task, config.prover, config.parallelism)
    print_report(report, args.jsonl)
    return report_exit_code(report)


def cmd_molgen(args: argparse.Namespace, config: CliConfig) -> int:
    schemes, errors = read_molgen_file(read_text(args.smiles_file))
    write_output(emit_tptp(molgen_problem(schemes), config.style), args.output)

    if args.conjectures:
        instances, classes = instances_and_classes(schemes)
        units = [TptpUnit(name, Role.CONJECTURE, formula)
                 for name, formula in make_membership_conjectures(instances, classes)]
        write_output(emit_tptp(TptpProblem(tuple(units)), config.style), args.conjectures)

    for error in errors:
        sys.stderr.write(f"{args.smiles_file}: {error}\n")
    return EXIT_PARSE_ERROR if errors else EXIT_OK


def cmd_membership(args: argparse.Namespace, config: CliConfig) -> int:
    schemes, errors = read_molgen_file(read_text(args.smiles_file))
    for error in errors:
        sys.stderr.write(f"{args.smiles_file}: {error}\n")

    base = molgen_problem(schemes)
    for extra in load_extras(args.extra):
        base = base + extra
    instances, classes = instances_and_classes(schemes)
    results = batch_membership(
        base, [molecule for _, molecule in instances], [class_predicate(c) for c in classes],
        config.prover, config.parallelism,
    )

    expected = parse_expected_memberships(read_text(args.expected)) if args.expected else None
    records = [r.to_record() for r in results]
    if expected is not None:
        classified = classify_membership(results, expected)
        records = [c.to_record() for c in classified]

    if args.jsonl:
        for record in records:
            sys.stdout.write(json.dumps(record) + "\n")
    else:
        for record in records:
            outcome = f"  {record['outcome']}" if "outcome" in record else ""
            sys.stdout.write(f"{record['class']}({record['instance']})  {record['status']}  {record['seconds']:.2f}s{outcome}\n")
        summary = count_outcomes(classified) if expected is not None else count_statuses(r.verdict for r in results)
        sys.stdout.write(", ".join(f"{k}: {v}" for k, v in summary.items() if v) + "\n")

    if errors:
        return EXIT_PARSE_ERROR
    if any(r.verdict.status == SzsStatus.ERROR for r in results):
        return EXIT_PROVER_ERROR
    return EXIT_OK


COMMANDS = {
    "translate": cmd_translate,
    "consistency": cmd_consistency,
    "prove": cmd_prove,
    "entails": cmd_entails,
    "molgen": cmd_molgen,
    "membership": cmd_membership,
}


# Argument parsing

def _ontology_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--catalog", help="file of '<iri> <path>' lines used to resolve imports")
    parent.add_argument("--annotation-prop", action="append", metavar="IRI[=clif|tptp]",
                        help="annotation property holding FOL axioms (repeatable)")
    parent.add_argument("--readable-names", action="store_true", help="name symbols by label instead of IRI")
    parent.add_argument("--owl-only", action="store_true", help="ignore FOL annotations")
    parent.add_argument("--strict", action="store_true", help="require declarations for every entity")
    parent.add_argument("--extra", action="append", default=[], metavar="TPTP",
                        help="additional TPTP axiom file (repeatable)")
    parent.add_argument("--alignment-report", metavar="PATH", help="write the symbol alignment table")
    return parent


def _prover_flags() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--prover", help=f"prover executable (default {settings.FOWL_PROVER})")
    parent.add_argument("--prover-args", help="argument template with {file} and {timeout} placeholders")
    parent.add_argument("--prover-sat-args", help="argument template for satisfiability checks")
    parent.add_argument("--timeout", type=int, help=f"seconds per proof attempt (default {settings.FOWL_TIMEOUT})")
    parent.add_argument("--parallel", type=int, help="prover processes run at once")
    parent.add_argument("--keep-problems", action="store_true", help="keep the TPTP files given to the prover")
    parent.add_argument("--jsonl", action="store_true", help="one JSON record per proof attempt")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = FowlArgumentParser(prog="fowl", description=settings.APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.VERSION}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=FowlArgumentParser)

    ontology, prover = _ontology_flags(), _prover_flags()

    p = sub.add_parser("translate", parents=[ontology], help="write the assembled TPTP problem")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--style", choices=[s.value for s in EmitStyle], default=EmitStyle.QUOTED.value)
    p.add_argument("--skip-unsupported", action="store_true", help="drop untranslatable axioms with a warning")

    p = sub.add_parser("consistency", parents=[ontology, prover], help="check satisfiability")
    p.add_argument("input")
    p.add_argument("--externalize", action="store_true", help="add one fresh individual per class first")

    p = sub.add_parser("prove", parents=[ontology, prover], help="prove TPTP conjectures")
    p.add_argument("input")
    p.add_argument("conjectures")

    p = sub.add_parser("entails", parents=[ontology, prover], help="check that one ontology entails another")
    p.add_argument("premise")
    p.add_argument("conjecture_ontology")

    p = sub.add_parser("molgen", help="generate molecular class axioms from SMILES")
    p.add_argument("smiles_file")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.add_argument("--conjectures", metavar="PATH", help="also write membership conjectures")
    p.add_argument("--style", choices=[s.value for s in EmitStyle], default=EmitStyle.QUOTED.value)

    p = sub.add_parser("membership", parents=[prover], help="prove every instance/class membership")
    p.add_argument("smiles_file")
    p.add_argument("--expected", metavar="PATH", help="'<instanceClassId> <classId>' lines asserted upstream")
    p.add_argument("--extra", action="append", default=[], metavar="TPTP", help="additional TPTP axiom file")

    return parser


def configure_logging(args: argparse.Namespace) -> None:
    level = settings.LOG_LEVEL
    if args.verbose or settings.DEBUG:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args)

    try:
        config = build_config(args)
        return COMMANDS[args.command](args, config)
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"fowl: {e}\n")
        return EXIT_PARSE_ERROR
    except _TRANSLATION_ERRORS as e:
        sys.stderr.write(f"fowl: translation error: {e}\n")
        return EXIT_TRANSLATION_ERROR
    except FowlError as e:
        sys.stderr.write(f"fowl: {e}\n")
        return EXIT_PARSE_ERROR
    except OSError as e:
        sys.stderr.write(f"fowl: {e}\n")
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
