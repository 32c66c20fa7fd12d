# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Command line front end.

Every subcommand writes one report to standard output. JSON reports have
the keys ``command``, ``alpha``, ``tolerance``, ``result`` and ``notes``
and are byte-identical across runs with the same inputs. The exit status
is 0 for a determinate verdict, 2 when the verdict is undetermined and 1
for usage, parse or pole errors.
"""
import argparse
import json
import math
import os

import numpy as np

from astropy import log
from astropy.table import Table
from astropy.utils.data import get_pkg_data_path

from .classify import (class_membership, class_table, group_norm,
                       sample_operator_norm, sup_norm)
from .coeffs import (FracOrder, convolve, frac_coeffs, inverse_coeffs,
                     tail_sum_bound)
from .compact import hmnc_bounds, is_compact
from .compact import report_notes as compact_notes
from .config import ToleranceConfig
from .dual import check_beta_dual
from .dual import report_notes as dual_notes
from .exceptions import FracseqError
from .fracop import Seq, apply_forward, apply_inverse
from .limits import LimitStatus
from .matrix import MatrixSpec, TermSource
from .notes import notes_for
from .spaces import (CODOMAINS, DOMAINS, SpaceId, classify_sequence,
                     schauder_reconstruct)
from .transform import alpha_hat, hat_matrix

__all__ = ['main', 'build_parser', 'render_json']

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNDETERMINED = 2

_UNDETERMINED = {'undetermined'}


def _plain(value):
    """JSON-ready copy with non-finite floats spelled as strings."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (SpaceId, LimitStatus)):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return value
    return value


def render_json(report):
    """Serialize a report with sorted keys and shortest float reprs."""
    return json.dumps(_plain(report), sort_keys=True, indent=2,
                      allow_nan=False)


def _flatten(value, prefix=''):
    if isinstance(value, dict):
        for key in sorted(value):
            name = '{}.{}'.format(prefix, key) if prefix else str(key)
            yield from _flatten(value[key], name)
    elif isinstance(value, list) and any(isinstance(v, (dict, list))
                                         for v in value):
        for i, item in enumerate(value):
            yield from _flatten(item, '{}[{}]'.format(prefix, i))
    else:
        yield prefix, json.dumps(value, sort_keys=True)


def render_table(report):
    """Tabular rendering through `~astropy.table.Table`."""
    result = _plain(report['result'])
    command = report['command']
    if command == 'coeffs':
        table = Table([list(range(len(result['coefficients']))),
                       result['coefficients']], names=('k', 'c_k'))
    elif command == 'apply':
        table = Table([list(range(len(result['terms']))), result['terms']],
                      names=('n', 'value'))
    elif command == 'class-table':
        layout = result['layout']
        table = Table(rows=[[row['to']] + [row[d.value] for d in DOMAINS]
                            for row in layout],
                      names=['to'] + [d.value for d in DOMAINS])
    elif command in ('hmnc', 'compact'):
        table = Table(rows=result['trail'] or None, names=('r', 'T(r)'))
        table.meta['verdict'] = result.get('verdict', result.get('status'))
    else:
        fields = list(_flatten(result))
        table = Table(rows=fields or None, names=('field', 'value'),
                      dtype=(str, str))
    lines = ['{}: alpha={}'.format(command, report['alpha'])]
    lines.extend(table.pformat(max_lines=-1, max_width=-1))
    for key in sorted(report['notes']):
        lines.append('note [{}]: {}'.format(key, report['notes'][key]))
    return '\n'.join(lines)


# -- input -------------------------------------------------------------------

def _read_json(path):
    if not os.path.exists(path):
        # bundled example inputs may be named directly
        bundled = get_pkg_data_path('data', path, package='fracseq')
        if not os.path.exists(bundled):
            raise FracseqError("input file {} not found".format(path))
        path = bundled
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise FracseqError("cannot read {}: {}".format(
            path, exc.strerror or exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FracseqError("{}: line {}, column {}: {}".format(
            path, exc.lineno, exc.colno, exc.msg))


def _require(res, name):
    value = getattr(res, name)
    if value is None:
        raise FracseqError("--{} is required for {}".format(
            name.replace('_', '-'), res.command))
    return value


def _load_seq(res):
    return Seq.from_dict(_read_json(_require(res, 'input')))


def _load_matrix(res):
    return MatrixSpec.from_dict(_read_json(_require(res, 'matrix')))


def _load_generator(res):
    data = _read_json(_require(res, 'input'))
    if isinstance(data, dict) and 'fill' in data:
        return TermSource.coerce(data)
    return Seq.from_dict(data)


# -- commands ----------------------------------------------------------------
# Each returns (result, note keys or note dict, undetermined?).

def _cmd_coeffs(res, order, tol):
    n = tol.series_length if res.n is None else res.n
    series = frac_coeffs(order, n)
    result = {'n': n, 'coefficients': series.tolist(),
              'tail_sum': tail_sum_bound(series).to_dict()}
    keys = ['series-factorial']
    if res.beta is not None:
        beta = FracOrder.parse(res.beta)
        combined = convolve(series, frac_coeffs(beta, n))
        direct = frac_coeffs(order + beta, n)
        identity = convolve(series, inverse_coeffs(order, n))
        unit = np.zeros(n)
        unit[0] = 1.0
        semigroup_gap = float(np.max(np.abs(combined - direct)))
        inverse_gap = float(np.max(np.abs(identity - unit)))
        result['semigroup'] = {
            'beta': beta.value, 'sum_order': (order + beta).value,
            'semigroup_discrepancy': semigroup_gap,
            'inverse_discrepancy': inverse_gap,
            'holds': max(semigroup_gap, inverse_gap) <= tol.eps}
        if order.is_integer and order.value > 0:
            keys.append('inverse-integer-order')
    return result, keys, False


def _cmd_apply(res, order, tol):
    x = _load_seq(res)
    y = apply_inverse(order, x) if res.inverse else apply_forward(order, x)
    return dict(y.to_dict(), inverse=bool(res.inverse)), [], False


def _cmd_classify_seq(res, order, tol):
    x = _load_seq(res)
    verdict = classify_sequence(order, x, tol, res.space)
    result = verdict.to_dict()
    keys = []
    if verdict.is_member and verdict.space in (SpaceId.C0_DELTA,
                                               SpaceId.C_DELTA):
        rebuilt = schauder_reconstruct(order, x, verdict.space, tol,
                                       xi=verdict.limit)
        result['reconstruction_residual'] = float(
            np.max(np.abs(rebuilt.terms - x.terms)))
        keys.append('schauder-truncation')
    return result, keys, verdict.status.value in _UNDETERMINED


def _cmd_hat(res, order, tol):
    matrix = _load_matrix(res)
    rows = 8 if res.n is None else res.n
    hat = hat_matrix(order, matrix, rows, tol.cols, tol)
    bundle = alpha_hat(order, matrix, tol=tol)
    flags = [f.value for f in hat.row_tail_flags] + [bundle.status.value]
    result = {'matrix': matrix.to_dict(), 'hat': hat.to_dict(),
              'alpha_hat': bundle.to_dict()}
    keys = ['w-gamma-argument', 'beta-sign']
    return result, keys, bool(_UNDETERMINED & set(flags))


def _cmd_beta_dual(res, order, tol):
    space = SpaceId.from_tag(_require(res, 'from_space'))
    report = check_beta_dual(order, _load_generator(res), space, tol)
    return (report.to_dict(), dual_notes(space),
            report.verdict.value in _UNDETERMINED)


def _cmd_class(res, order, tol):
    verdict = class_membership(order, _load_matrix(res),
                               _require(res, 'from_space'),
                               _require(res, 'to_space'), tol)
    return (verdict.to_dict(), verdict.notes,
            verdict.verdict.value in _UNDETERMINED)


def _cmd_class_table(res, order, tol):
    table = class_table(order, _load_matrix(res), tol)
    undetermined = any(v.verdict.value in _UNDETERMINED
                       for v in table.verdicts)
    return table.to_dict(), table.notes, undetermined


def _cmd_norm(res, order, tol):
    matrix = _load_matrix(res)
    from_space = _require(res, 'from_space')
    to_space = SpaceId.from_tag(res.to_space or 'linf')
    if to_space is SpaceId.L1:
        estimate = group_norm(order, matrix, from_space, tol=tol)
    else:
        estimate = sup_norm(order, matrix, from_space, tol)
    result = {'to': to_space.value, 'norm': estimate.to_dict()}
    if res.samples:
        result['sampled'] = sample_operator_norm(
            order, matrix, res.samples, res.seed, tol).to_dict()
    keys = ['hmnc-row-norm'] if to_space is SpaceId.LINF else []
    return result, keys, estimate.status.value in _UNDETERMINED


def _cmd_hmnc(res, order, tol):
    to_space = _require(res, 'to_space')
    bounds = hmnc_bounds(order, _load_matrix(res),
                         _require(res, 'from_space'), to_space, tol)
    return (bounds.to_dict(), compact_notes(to_space),
            bounds.status.value in _UNDETERMINED)


def _cmd_compact(res, order, tol):
    to_space = _require(res, 'to_space')
    verdict = is_compact(order, _load_matrix(res),
                         _require(res, 'from_space'), to_space, tol)
    return (verdict.to_dict(), compact_notes(to_space),
            verdict.verdict.value in _UNDETERMINED)


COMMANDS = {
    'coeffs': (_cmd_coeffs, 'Coefficients of the fractional difference.'),
    'apply': (_cmd_apply, 'Apply the operator or its inverse to --input.'),
    'classify-seq': (_cmd_classify_seq,
                     'Classify --input against the matrix domains.'),
    'hat': (_cmd_hat, 'Hat matrix rows and column limits of --matrix.'),
    'beta-dual': (_cmd_beta_dual,
                  'Beta-dual conditions of --input for --from.'),
    'class': (_cmd_class, 'Class membership of --matrix for (--from, --to).'),
    'class-table': (_cmd_class_table,
                    'Class membership of --matrix for every pair.'),
    'norm': (_cmd_norm, 'Operator norm estimate of --matrix.'),
    'hmnc': (_cmd_hmnc, 'Bounds on the measure of noncompactness.'),
    'compact': (_cmd_compact, 'Compactness of --matrix for (--from, --to).'),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--alpha', default='0.5',
                        help='Order of the operator, e.g. 0.5 or 2/3.')
    common.add_argument('--eps', type=float, default=None,
                        help='Convergence tolerance.')
    common.add_argument('--window', type=int, default=None,
                        help='Trailing diagnostic window.')
    common.add_argument('--subset-budget', dest='subset_budget', type=int,
                        default=None,
                        help='Largest row count searched exhaustively.')
    common.add_argument('--truncate-rows', dest='rows', type=int,
                        default=None, help='Matrix rows evaluated.')
    common.add_argument('--truncate-cols', dest='cols', type=int,
                        default=None, help='Base column truncation.')
    common.add_argument('--format', dest='fmt', choices=('json', 'table'),
                        default='json', help='Report format.')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='Log progress to the terminal.')

    parser = argparse.ArgumentParser(
        prog='fracseq',
        description='Sequence spaces and matrix classes of the fractional '
                    'difference operator.')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True
    for name, (_, summary) in COMMANDS.items():
        cmd = sub.add_parser(name, parents=[common], help=summary,
                             description=summary)
        if name == 'coeffs':
            cmd.add_argument('--n', type=int, default=None,
                             help='Number of coefficients.')
            cmd.add_argument('--beta', default=None,
                             help='Second order for the semigroup check.')
        if name == 'hat':
            cmd.add_argument('--n', type=int, default=None,
                             help='Number of hat rows to print.')
        if name in ('apply', 'classify-seq', 'beta-dual'):
            cmd.add_argument('--input', default=None,
                             help='Sequence JSON file {"terms": [...]}.')
        if name == 'apply':
            cmd.add_argument('--inverse', action='store_true',
                             help='Apply the inverse operator.')
        if name == 'classify-seq':
            cmd.add_argument('--space', default=None,
                             choices=[d.value for d in DOMAINS],
                             help='Answer for this space.')
        if name in ('hat', 'class', 'class-table', 'norm', 'hmnc',
                    'compact'):
            cmd.add_argument('--matrix', default=None,
                             help='MatrixSpec JSON file.')
        if name in ('beta-dual', 'class', 'norm', 'hmnc', 'compact'):
            cmd.add_argument('--from', dest='from_space', default=None,
                             choices=[d.value for d in DOMAINS],
                             help='Fractional matrix domain.')
        if name in ('class', 'norm', 'hmnc', 'compact'):
            cmd.add_argument('--to', dest='to_space', default=None,
                             choices=[c.value for c in CODOMAINS],
                             help='Classical codomain.')
        if name == 'norm':
            cmd.add_argument('--samples', type=int, default=0,
                             help='Monte-Carlo unit-ball samples.')
            cmd.add_argument('--seed', type=int, default=0,
                             help='Seed for the Monte-Carlo samples.')
    return parser


def run(res):
    """Execute one parsed command; return ``(report, exit status)``."""
    order = FracOrder.parse(res.alpha)
    tol = ToleranceConfig.from_conf(eps=res.eps, window=res.window,
                                    subset_budget=res.subset_budget,
                                    rows=res.rows, cols=res.cols)
    log.info("fracseq {} at alpha={}".format(res.command, order))
    handler = COMMANDS[res.command][0]
    result, notes, undetermined = handler(res, order, tol)
    if not isinstance(notes, dict):
        notes = notes_for(*notes)
    report = {'command': res.command, 'alpha': order.value,
              'tolerance': tol.to_dict(), 'result': result, 'notes': notes}
    return report, EXIT_UNDETERMINED if undetermined else EXIT_OK


def main(args=None):

    parser = build_parser()
    try:
        res = parser.parse_args(args)
    except SystemExit as exc:
        # argparse exits with 2, which is reserved for undetermined verdicts
        if exc.code in (0, None):
            raise
        return EXIT_USAGE

    level = log.level
    log.setLevel('INFO' if res.verbose else 'WARNING')
    try:
        report, status = run(res)
    except FracseqError as exc:
        log.error(str(exc))
        return EXIT_USAGE
    finally:
        log.setLevel(level)

    if res.fmt == 'table':
        print(render_table(report))
    else:
        print(render_json(report))
    return status
