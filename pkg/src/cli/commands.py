"""
Command Line Interface

Subcommands over presentation files. Exit codes: 0 affirmative, 1 negative
verdict, 2 usage or input error, 3 cap exhausted.
"""

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence

from config.constants import (
    APP_DESCRIPTION,
    APP_NAME,
    APP_VERSION,
    EXIT_CAP_EXHAUSTED,
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE,
    EXIT_OK,
    EXPORT_FORMATS,
    OUTPUT_FORMATS,
    SETTINGS_FILE,
)
from config.settings import Settings, load_settings
from src.core import word_problem
from src.core.davis import build_complex, expected_cell_counts
from src.core.enumeration import METHODS, enumerate_group, group_order
from src.core.errors import CoxeterError, TheoremViolation
from src.core.exporter import Exporter, cell_counts, table_counts
from src.core.invariants import compare_presentations, diagram_invariants
from src.core.involutions import classify_involution, involution_normal_form, is_reflection
from src.core.rigidity import align_generating_sets, twist_generating_set
from src.core.spherical import (
    davis_dimension,
    describe_subset,
    dimension_hints,
    is_spherical,
    is_two_dimensional,
    maximal_spherical_subsets,
    spherical_subsets,
)
from src.models.coxeter_data import CoxeterMatrix, GroupElement, ParabolicSubset, Word, format_order
from src.models.run_config import RunConfig
from src.utils.file_utils import dumps_json, format_presentation, read_generator_map, read_presentation, write_presentation

logger = logging.getLogger(__name__)

# RunConfig fields settable from the command line
CONFIG_FIELDS = (
    'word_cap', 'enum_radius', 'enum_size_cap', 'search_radius',
    'descent_cap', 'order_probe', 'output_format',
)


@dataclass
class CommandResult:
    """Outcome of one subcommand: exit code, JSON-ready result and text rendering"""

    exit_code: int
    result: Any
    text: str


class WarningCollector(logging.Handler):
    """Collects warnings logged during one invocation for the JSON report"""

    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages: List[str] = []

    def emit(self, record: logging.LogRecord):
        message = record.getMessage()
        if message not in self.messages:
            self.messages.append(message)


def parse_word(matrix: CoxeterMatrix, text: str) -> Word:
    """Comma-separated generator names; '' or '1' is the identity"""
    text = text.strip()
    if text in ("", "1"):
        return ()
    return matrix.word_from_names(name.strip() for name in text.split(','))


def parse_subset(matrix: CoxeterMatrix, text: Optional[str]) -> ParabolicSubset:
    """Comma-separated generator names; None means all of S"""
    if text is None:
        return ParabolicSubset(frozenset(matrix.generators))
    return ParabolicSubset(frozenset(parse_word(matrix, text)))


def _element(matrix: CoxeterMatrix, text: str, config: RunConfig) -> GroupElement:
    return word_problem.reduce(matrix, parse_word(matrix, text), config.word_cap)


def _subset_text(matrix: CoxeterMatrix, subset: ParabolicSubset) -> str:
    return "{" + ",".join(subset.names(matrix)) + "}"


# Subcommands

def cmd_validate(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    result = {**matrix.to_dict(), 'rank': matrix.rank}
    return CommandResult(EXIT_OK, result, f"ok: {matrix}")


def cmd_reduce(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    word = parse_word(matrix, args.word)
    if args.oracle:
        table = enumerate_group(matrix, radius_cap=len(word), size_cap=config.enum_size_cap)
        element = table.element_of(word)
    else:
        element = word_problem.reduce(matrix, word, config.word_cap)
    result = {
        'word': element.names(),
        'length': element.length,
        'parity': element.parity,
        'support': element.support.names(matrix),
    }
    return CommandResult(EXIT_OK, result, str(element))


def cmd_equal(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    a, b = _element(matrix, args.a, config), _element(matrix, args.b, config)
    same = word_problem.equal(a, b)
    result = {'equal': same, 'a': a.names(), 'b': b.names()}
    return CommandResult(EXIT_OK if same else EXIT_NEGATIVE, result, "equal" if same else f"different: {a} vs {b}")


def cmd_order(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    if args.element is not None:
        order = word_problem.element_order(_element(matrix, args.element, config), config.order_probe)
        shown = format_order(order)
        return CommandResult(EXIT_OK, {'element_order': shown}, shown)
    order = group_order(matrix, size_cap=config.enum_size_cap)
    if order is None:
        return CommandResult(EXIT_CAP_EXHAUSTED, {'order': "exceeds cap", 'size_cap': config.enum_size_cap}, "exceeds cap")
    return CommandResult(EXIT_OK, {'order': order}, str(order))


def cmd_spherical(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    if args.list:
        verdicts = [(s, is_spherical(matrix, s)) for s in spherical_subsets(matrix)]
        result = [{'T': s.names(matrix), 'witness': v.witness, 'order': v.order} for s, v in verdicts]
        text = "\n".join(f"{describe_subset(matrix, s)}: {v.witness}" for s, v in verdicts)
        return CommandResult(EXIT_OK, result, text)
    subset = parse_subset(matrix, args.T)
    verdict = is_spherical(matrix, subset)
    text = f"{_subset_text(matrix, subset)}: {'finite' if verdict.finite else 'infinite'} ({verdict.witness})"
    return CommandResult(EXIT_OK if verdict.finite else EXIT_NEGATIVE, verdict.to_dict(), text)


def cmd_dimension(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    dimension = davis_dimension(matrix)
    result = {
        'dimension': dimension,
        'two_dimensional': is_two_dimensional(matrix),
        'maximal_spherical': [s.names(matrix) for s in maximal_spherical_subsets(matrix)],
        'hints': dimension_hints(matrix),
    }
    return CommandResult(EXIT_OK, result, str(dimension))


def cmd_davis_build(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    radius = args.radius if args.radius is not None else config.enum_radius
    cx = build_complex(matrix, radius, size_cap=config.enum_size_cap)
    exporter = Exporter()
    rendered = exporter.render_complex(cx, args.format, args.view)
    counts = cell_counts(cx)
    result: Dict[str, Any] = {**counts, 'complete': cx.complete}
    if cx.complete:
        result['expected_counts'] = {
            f"dim_{k}": v for k, v in (expected_cell_counts(matrix, config.enum_size_cap) or {}).items()
        }
    if args.output:
        if not exporter.export_with_summary(rendered, args.output, "davis_complex", args.m, counts):
            return CommandResult(EXIT_INPUT_ERROR, {'error': f"cannot write {args.output}"}, f"cannot write {args.output}")
        result['output'] = args.output
        return CommandResult(EXIT_OK, result, f"{len(cx)} cells written to {args.output}")
    result['export'] = rendered
    return CommandResult(EXIT_OK, result, rendered.rstrip("\n"))


def cmd_table_export(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    radius = args.radius if args.radius is not None else config.enum_radius
    table = enumerate_group(matrix, radius_cap=radius, size_cap=config.enum_size_cap, method=args.method)
    exporter = Exporter()
    rendered = exporter.render_table(table, args.format)
    counts = table_counts(table)
    result: Dict[str, Any] = {**counts, 'complete': table.complete}
    if args.output:
        if not exporter.export_with_summary(rendered, args.output, "cayley_graph", args.m, counts):
            return CommandResult(EXIT_INPUT_ERROR, {'error': f"cannot write {args.output}"}, f"cannot write {args.output}")
        result['output'] = args.output
        return CommandResult(EXIT_OK, result, f"{len(table)} elements written to {args.output}")
    result['export'] = rendered
    return CommandResult(EXIT_OK, result, rendered.rstrip("\n"))


def cmd_is_reflection(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    a = _element(matrix, args.word, config)
    verdict = is_reflection(a, config.descent_cap)
    return CommandResult(
        EXIT_OK if verdict else EXIT_NEGATIVE,
        {'element': a.names(), 'reflection': verdict},
        "reflection" if verdict else "not a reflection",
    )


def cmd_normal_form(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    a = _element(matrix, args.word, config)
    nf = involution_normal_form(a, config.descent_cap)
    kind = classify_involution(a, config.descent_cap)
    result = {**nf.to_dict(), 'classification': kind.to_dict()}
    text = "\n".join([
        f"conjugator: {nf.conjugator}",
        f"core: {nf.core}",
        f"core_support: {_subset_text(matrix, nf.core_support)}",
        f"class: {kind.kind}",
    ])
    return CommandResult(EXIT_OK, result, text)


def cmd_twist(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    s, t = matrix.generator_index(args.s), matrix.generator_index(args.t)
    twisted, psi = twist_generating_set(matrix, s, t, config.order_probe)
    if args.output and not write_presentation(twisted, args.output):
        return CommandResult(EXIT_INPUT_ERROR, {'error': f"cannot write {args.output}"}, f"cannot write {args.output}")
    result = {'presentation': twisted.to_dict(), 'map': psi.image_names()}
    text = format_presentation(twisted) + "# map: " + str(psi)
    return CommandResult(EXIT_OK, result, text)


def cmd_align(args, config: RunConfig) -> CommandResult:
    phi = read_generator_map(args.map)
    radius = args.radius if args.radius is not None else config.search_radius
    aligned = align_generating_sets(phi, radius, config.enum_size_cap, config.order_probe)
    lines = [f"pseudo-transpositions: {', '.join(phi.source.labels[s] for s in aligned.pseudo_transpositions) or 'none'}"]
    for resolution in aligned.resolutions:
        target = phi.target.labels
        lines.append(
            f"  {phi.source.labels[resolution.s]} -> partner {phi.source.labels[resolution.partner_t]}, "
            f"pair ({target[resolution.target_pair[0]]},{target[resolution.target_pair[1]]}), "
            f"conjugator {resolution.conjugator_w}"
        )
    lines.append("S'': " + ", ".join(
        f"{label}={element}" for label, element in zip(aligned.matrix.labels, aligned.elements)
    ))
    lines.append("checks: " + ", ".join(f"{k}={'ok' if v else 'FAILED'}" for k, v in aligned.checks.items()))
    lines.append(f"invariants: {aligned.invariants.left} vs {aligned.invariants.right}")
    lines.append(f"bijectivity: {aligned.bijectivity}")
    return CommandResult(EXIT_OK, aligned.to_dict(), "\n".join(lines))


def cmd_invariants(args, config: RunConfig) -> CommandResult:
    matrix = read_presentation(args.m)
    invariants = diagram_invariants(matrix)
    return CommandResult(EXIT_OK, invariants.to_dict(), str(invariants))


def cmd_compare(args, config: RunConfig) -> CommandResult:
    left, right = read_presentation(args.m), read_presentation(args.other)
    comparison = compare_presentations(left, right, size_cap=config.enum_size_cap)
    orders = ["exceeds cap" if order is None else str(order) for order in comparison.orders]
    text = "\n".join([
        comparison.invariants.to_frame().to_string(index=False),
        f"orders: {orders[0]} vs {orders[1]}",
        f"davis dimensions: {comparison.dimensions[0]} vs {comparison.dimensions[1]}",
        "SAME" if comparison.same else "DIFFER",
    ])
    return CommandResult(EXIT_OK if comparison.same else EXIT_NEGATIVE, comparison.to_dict(), text)


# Parser

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("run configuration")
    group.add_argument('--output-format', choices=OUTPUT_FORMATS, default=None, help="text or json report")
    group.add_argument('--word-cap', type=int, default=None, help="longest input word accepted by reduce")
    group.add_argument('--enum-radius', type=int, default=None, help="radius cap of enumerations")
    group.add_argument('--enum-size-cap', type=int, default=None, help="size cap of enumerations")
    group.add_argument('--search-radius', type=int, default=None, help="radius of rigidity searches")
    group.add_argument('--descent-cap', type=int, default=None, help="plateau cap of conjugation descent")
    group.add_argument('--order-probe', type=int, default=None, help="least number of powers tried before reporting infinite order")
    group.add_argument('--settings', default=SETTINGS_FILE, help="settings JSON file")
    group.add_argument('--verbose', action='store_true', help="log progress")
    group.add_argument('--debug', action='store_true', help="log search details")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog=APP_NAME, description=APP_DESCRIPTION)
    parser.add_argument('--version', action='version', version=f"{APP_NAME} {APP_VERSION}")
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    def with_matrix(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument('--m', required=True, metavar='FILE', help="presentation file (.cox or .json)")
        return p

    with_matrix(add('validate', cmd_validate, "validate a presentation"))

    p = with_matrix(add('reduce', cmd_reduce, "canonical reduced form of a word"))
    p.add_argument('--word', required=True, help="comma-separated generator names")
    p.add_argument('--oracle', action='store_true', help="canonicalize through an enumeration table")

    p = with_matrix(add('equal', cmd_equal, "decide whether two words are equal"))
    p.add_argument('--a', required=True)
    p.add_argument('--b', required=True)

    p = with_matrix(add('order', cmd_order, "group order, or the order of one element"))
    p.add_argument('--element', default=None)

    p = with_matrix(add('spherical', cmd_spherical, "finiteness of a parabolic subgroup"))
    p.add_argument('--T', default=None, help="comma-separated generators (default: all)")
    p.add_argument('--list', action='store_true', help="list every spherical subset")

    with_matrix(add('dimension', cmd_dimension, "dimension of the Davis complex"))

    davis = sub.add_parser('davis', help="Davis complex truncations")
    davis_sub = davis.add_subparsers(dest='action', required=True)
    p = with_matrix(davis_sub.add_parser('build', parents=[common], help="build and export a truncation"))
    p.set_defaults(handler=cmd_davis_build)
    p.add_argument('--radius', type=int, default=None)
    p.add_argument('--format', choices=EXPORT_FORMATS, default='json')
    p.add_argument('--view', choices=['hasse', 'skeleton'], default='hasse', help="DOT view")
    p.add_argument('--output', default=None, help="write the export and a summary file")

    table = sub.add_parser('table', help="enumeration tables")
    table_sub = table.add_subparsers(dest='action', required=True)
    p = with_matrix(table_sub.add_parser('export', parents=[common], help="export a Cayley ball"))
    p.set_defaults(handler=cmd_table_export)
    p.add_argument('--radius', type=int, default=None)
    p.add_argument('--format', choices=EXPORT_FORMATS, default='json')
    p.add_argument('--method', choices=METHODS, default='representation')
    p.add_argument('--output', default=None, help="write the export and a summary file")

    p = with_matrix(add('is-reflection', cmd_is_reflection, "decide whether an element is a reflection"))
    p.add_argument('--word', required=True)

    p = with_matrix(add('normal-form', cmd_normal_form, "normal form of an involution"))
    p.add_argument('--word', required=True)

    p = with_matrix(add('twist', cmd_twist, "replace s by st"))
    p.add_argument('--s', required=True)
    p.add_argument('--t', required=True)
    p.add_argument('--output', default=None, help="write the twisted presentation")

    p = add('align', cmd_align, "align generating sets along a generator map")
    p.add_argument('--map', required=True, metavar='FILE', help="generator map JSON")
    p.add_argument('--radius', type=int, default=None)

    with_matrix(add('invariants', cmd_invariants, "diagram invariants"))

    p = with_matrix(add('compare', cmd_compare, "compare diagram invariants of two presentations"))
    p.add_argument('--other', required=True, metavar='FILE')

    return parser


def build_config(args, settings: Settings) -> RunConfig:
    """Settings file values, overridden by CLI flags"""
    for key in CONFIG_FIELDS:
        value = getattr(args, key, None)
        if value is not None:
            settings.set(key, value)
    return RunConfig.from_settings(settings)


def _configure_logging(args, settings: Settings):
    level = settings.get('log_level', 'WARNING')
    if args.verbose:
        level = 'INFO'
    if args.debug:
        level = 'DEBUG'
    logging.getLogger().setLevel(level)


def _emit(config_json: bool, ok: bool, result: Any, text: str, warnings: List[str]):
    if config_json:
        print(dumps_json({'ok': ok, 'result': result, 'warnings': warnings}))
    elif text:
        print(text)


def dispatch(argv: Sequence[str], settings: Optional[Settings] = None) -> int:
    """Run one command line; returns the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR

    if settings is None or args.settings != SETTINGS_FILE:
        settings = load_settings(args.settings)
    json_output = (args.output_format or settings.get('output_format')) == 'json'
    try:
        config = build_config(args, settings)
    except ValueError as e:
        _emit(json_output, False, {'error': 'InvalidConfig', 'message': str(e)}, "", [])
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    _configure_logging(args, settings)

    collector = WarningCollector()
    root = logging.getLogger()
    root.addHandler(collector)
    try:
        outcome = args.handler(args, config)
    except CoxeterError as e:
        logger.debug("%s failed: %s", args.command, e)
        error: Dict[str, Any] = {'error': e.kind, 'message': str(e)}
        if isinstance(e, TheoremViolation):
            error['clause'] = e.clause
        _emit(config.json_output, False, error, "", collector.messages)
        if not config.json_output:
            print(f"error: {e.kind}: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        _emit(config.json_output, False, {'error': 'InvalidArgument', 'message': str(e)}, "", collector.messages)
        if not config.json_output:
            print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    finally:
        root.removeHandler(collector)

    _emit(config.json_output, outcome.exit_code == EXIT_OK, outcome.result, outcome.text, collector.messages)
    return outcome.exit_code
