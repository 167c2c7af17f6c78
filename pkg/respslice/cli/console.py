# cli/console.py
"""
The respslice command line interface.

    respslice suggest src/ --format table
    respslice apply sort.mj --method SortAndNormalize --candidate 0 --out sorted.mj
    respslice run sort.mj --method SortAndNormalize --args '[3, 1, 2]'

Exit codes: 0 success, 1 usage error, 2 parse or type error, 3 application of a rejected candidate.
"""
import argparse
import json
import logging
import os
import random
import sys

from .. import lang
from ..analysis import MethodAnalysis
from ..criteria import output_criteria, node_criteria, other_criteria
from ..errors import (RespsliceError, MimplSyntaxError, NameResolutionError, MimplTypeError, DuplicateMethodError,
                      RuleRejectedError)
from ..evalkit import MatchConfig, score, load_truths, load_suggestions
from ..graphs import cfg_to_dot, pdg_to_dot, cdg_to_dot, draw_graph
from ..interp import run, equivalent, random_inputs
from ..metrics import method_metrics, metrics_csv, census
from ..pipeline import suggest, apply_candidate, rejection_summary
from ..settings import (AnalysisConfig, configure_logging, MAX_OVERLAP, MIN_EXTRACT_SIZE, ALLOW_DUPLICATION,
                        DEFAULT_SEED, DEFAULT_FUEL, RANDOM_INPUTS, MAX_DIFF, WORKERS, LOG_LEVEL_TYPES)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_REJECTED = 3

PARSE_ERRORS = (MimplSyntaxError, NameResolutionError, MimplTypeError, DuplicateMethodError)


class UsageError(Exception):
    """Wrong command line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def mj_files(paths: list[str]) -> list[str]:
    """
    :param paths: Files and directories.
    :return: The files, and the .mj files below the directories, sorted per argument.
    :raises UsageError: If a path does not exist.
    """
    files = []
    for p in paths:
        if os.path.isdir(p):
            found = []
            for root, _, names in os.walk(p):
                found += [os.path.join(root, n) for n in names if n.endswith('.mj')]
            files += sorted(found)
        elif os.path.isfile(p):
            files.append(p)
        else:
            raise UsageError(f'No such file or directory: {p}')
    return files


def load_program(path: str) -> lang.Program:
    with open(path, encoding='utf8') as f:
        return lang.parse(f.read())


def emit(text: str, out: str | None):
    """
    Writes text to the file out, or prints it if out is None.
    """
    if out is None:
        print(text)
        return
    with open(out, 'w', encoding='utf8') as f:
        f.write(text if text.endswith('\n') else text + '\n')
    logging.info(f'Wrote {out}.')


def config_from(args) -> AnalysisConfig:
    algorithms = tuple(a.strip() for a in args.algorithms.split(',')) if args.algorithms else None
    return AnalysisConfig(args.max_overlap, args.min_extract_size, args.allow_duplication, algorithms,
                          frozenset(args.disable_rule or ()))


# commands

def cmd_suggest(args) -> int:
    config = config_from(args)
    documents, status = [], EXIT_OK
    for path in mj_files(args.paths):
        try:
            program = load_program(path)
        except PARSE_ERRORS as e:
            logging.error(f'{path}: {e}')
            status = EXIT_PARSE
            continue
        documents += suggest(program, config, path, [args.method] if args.method else None, args.workers)
    if args.format == 'table':
        text = '\n\n'.join(d.to_table() for d in documents)
        summary = rejection_summary(documents)
        if summary:
            text += '\n\nrejections per rule: ' + ', '.join(f'{r}: {n}' for r, n in summary.items())
    else:
        text = json.dumps([d.to_dict() for d in documents], indent=2)
    emit(text, args.out)
    return status


def cmd_apply(args) -> int:
    program = load_program(args.file)
    result = apply_candidate(program, args.method, args.candidate, config_from(args), args.force)
    if args.verify:
        inputs = random_inputs(program.method(args.method), args.seed, RANDOM_INPUTS, program)
        check = equivalent(program, result.program, args.method, inputs, args.fuel)
        logging.info(f'Behavior check with seed {args.seed}: {check.report()}')
        if not check:
            print(check.report(), file=sys.stderr)
    emit(result.source(), args.out if args.out is not None else args.file)
    return EXIT_OK


def cmd_metrics(args) -> int:
    rows, status = [], EXIT_OK
    for path in mj_files(args.paths):
        try:
            program = load_program(path)
        except PARSE_ERRORS as e:
            logging.error(f'{path}: {e}')
            status = EXIT_PARSE
            continue
        rows += [method_metrics(m, program, args.mode) for m in program.all_methods()]
    text = metrics_csv(rows)
    if args.csv is not None:
        emit(text, args.csv)
    elif args.format == 'json':
        emit(json.dumps([{'method': r.method, 'cohesion': r.cohesion.to_dict(),
                          'complexity': r.complexity.values()} for r in rows], indent=2), args.out)
    else:
        emit(text.rstrip('\n'), args.out)
    return status


def cmd_run(args) -> int:
    program = load_program(args.file)
    try:
        values = json.loads(f'[{args.args}]') if args.args else []
    except json.JSONDecodeError as e:
        raise UsageError(f'Cannot read the arguments "{args.args}": {e}') from e
    trace = run(program, args.method, tuple(values), args.fuel)
    emit(trace.to_json_lines(), args.out)
    return EXIT_OK


def cmd_eval(args) -> int:
    report = score(load_suggestions(args.suggestions), load_truths(args.truth), MatchConfig(args.max_diff))
    if args.format == 'table':
        emit(report.to_table(), args.out)
    else:
        emit(json.dumps(report.to_dict(), indent=2) + '\n\n' + report.to_table(), args.out)
    return EXIT_OK


def cmd_dump_graphs(args) -> int:
    analysis = MethodAnalysis(program := load_program(args.file), program.method(args.method))
    emit('\n'.join([cfg_to_dot(analysis.cfg), pdg_to_dot(analysis.pdg), cdg_to_dot(analysis.cdg)]), args.out)
    if args.draw is not None:
        graph = {'cfg': analysis.cfg, 'pdg': analysis.pdg, 'cdg': analysis.cdg}[args.graph]
        draw_graph(graph, show=False, path=args.draw)
    return EXIT_OK


def cmd_dump_regions(args) -> int:
    analysis = MethodAnalysis(program := load_program(args.file), program.method(args.method))
    emit(analysis.regions.to_json(), args.out)
    return EXIT_OK


def cmd_dump_criteria(args) -> int:
    analysis = MethodAnalysis(program := load_program(args.file), program.method(args.method))
    variables = []
    for o in analysis.outputs:
        variables += [v for v in o.variables if v not in variables]
    data = {'method': analysis.method.qualified_name,
            'method_type': analysis.method_type,
            'outputs': [o.to_dict() for o in analysis.outputs],
            'output_criteria': [c.to_dict() for c in output_criteria(analysis.method, analysis.outputs)],
            'node_criteria': [node_criteria(analysis.method, analysis.pdg, analysis.regions, v,
                                            analysis.outputs).to_dict() for v in variables],
            'other_criteria': [c.to_dict() for c in other_criteria(analysis.method, analysis.pdg)]}
    emit(json.dumps(data, indent=2), args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    result, status = {}, EXIT_OK
    for path in mj_files(args.paths):
        try:
            result[path] = census(load_program(path)).to_dict()
        except PARSE_ERRORS as e:
            logging.error(f'{path}: {e}')
            status = EXIT_PARSE
    emit(json.dumps(result, indent=2), args.out)
    return status


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--max-overlap', type=float, default=MAX_OVERLAP,
                        help='slice overlap above which only one output instruction keeps its candidates')
    common.add_argument('--min-extract-size', type=int, default=MIN_EXTRACT_SIZE,
                        help='minimum number of extracted statements')
    common.add_argument('--allow-duplication', type=float, default=ALLOW_DUPLICATION,
                        help='maximum ratio of duplicated statements')
    common.add_argument('--algorithms', default=None,
                        help='comma separated slicing algorithms, default: chosen by method type')
    common.add_argument('--disable-rule', type=int, action='append', help='ignore the verdicts of a rule')
    common.add_argument('--seed', type=int, default=DEFAULT_SEED, help='seed of random inputs')
    common.add_argument('--out', default=None, help='output file, default: standard output')
    common.add_argument('--format', choices=('json', 'table'), default='json')
    common.add_argument('--workers', type=int, default=WORKERS, help='worker threads, 0 for none')
    common.add_argument('--log-level', default='WARNING', choices=list(LOG_LEVEL_TYPES.keys()))
    common.add_argument('--log-file', default=None)

    parser = _Parser(prog='respslice', description='Suggests extract method refactorings for long methods.')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('suggest', parents=[common], help='suggest extract method candidates')
    p.add_argument('paths', nargs='+')
    p.add_argument('--method', default=None, help='only this method')
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser('apply', parents=[common], help='apply a candidate')
    p.add_argument('file')
    p.add_argument('--method', required=True)
    p.add_argument('--candidate', type=int, required=True, help='index from suggest')
    p.add_argument('--force', action='store_true', help='apply candidates failing rules')
    p.add_argument('--verify', action='store_true', help='compare traces on random inputs')
    p.add_argument('--fuel', type=int, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser('metrics', parents=[common], help='cohesion and complexity metrics')
    p.add_argument('paths', nargs='+')
    p.add_argument('--mode', choices=('output', 'all'), default='output')
    p.add_argument('--csv', default=None, help='write the metrics as CSV to this file')
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser('run', parents=[common], help='run a method and print its output trace')
    p.add_argument('file')
    p.add_argument('--method', required=True)
    p.add_argument('--args', default='', help='comma separated JSON values')
    p.add_argument('--fuel', type=int, default=DEFAULT_FUEL)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser('eval', parents=[common], help='score suggestions against ground truth')
    p.add_argument('--truth', required=True)
    p.add_argument('--suggestions', required=True)
    p.add_argument('--max-diff', type=int, default=MAX_DIFF)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser('dump-graphs', parents=[common], help='print CFG, PDG and CDG as DOT')
    p.add_argument('file')
    p.add_argument('--method', required=True)
    p.add_argument('--draw', default=None, help='draw a graph to this image file')
    p.add_argument('--graph', choices=('cfg', 'pdg', 'cdg'), default='pdg')
    p.set_defaults(func=cmd_dump_graphs)

    for name, func, text in (('dump-regions', cmd_dump_regions, 'print Reach, Dom, boundary blocks and regions'),
                             ('dump-criteria', cmd_dump_criteria, 'print output instructions and criteria')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('file')
        p.add_argument('--method', required=True)
        p.set_defaults(func=func)

    p = sub.add_parser('census', parents=[common], help='count methods per output class')
    p.add_argument('paths', nargs='+')
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Runs the command line interface.

    :param argv: The arguments without the program name. sys.argv if None.
    :return: The exit code.
    """
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level, args.log_file)
        return args.func(args)
    except UsageError as e:
        print(f'respslice: {e}', file=sys.stderr)
        return EXIT_USAGE
    except PARSE_ERRORS as e:
        print(f'respslice: {e}', file=sys.stderr)
        return EXIT_PARSE
    except RuleRejectedError as e:
        print(f'respslice: {e}', file=sys.stderr)
        return EXIT_REJECTED
    except (RespsliceError, KeyError, IndexError, ValueError, OSError) as e:
        print(f'respslice: {e}', file=sys.stderr)
        return EXIT_USAGE
