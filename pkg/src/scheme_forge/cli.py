'''
command line entry point: field-info, periods, scheme verify, fusion, design and reproduce
'''

import argparse
import json
import logging
import sys

from dataclasses import asdict
from pathlib import Path

from .cyclotomy import build_frame
from .dense import dense_materialize
from .dense import dense_srg_check
from .dense import verify_scheme_dense
from .design import design_isomorphic
from .design import extract_design
from .design import is_circulant
from .eigenmatrix import is_pseudocyclic
from .exceptions import NotAFusionError
from .exceptions import NotStronglyRegularError
from .exceptions import ParameterError
from .exceptions import SchemeForgeError
from .field import build_field
from .field import trace
from .fusion import FusionPartition
from .fusion import bannai_muzychuk
from .fusion import design_block_fusion
from .fusion import line_fusion
from .fusion import spread_fusion
from .geometry import align_eigenmatrix
from .geometry import pg_space
from .geometry import regular_spread
from .report import DesignArtifact
from .report import OutputFormat
from .report import SRGArtifact
from .report import emit
from .scheme import TranslationScheme
from .scheme import parse_group_spec
from .scheme import srg_check_translation
from .scheme import translation_eigenmatrix
from .workbench import PRESETS
from .workbench import TARGETS
from .workbench import reproduce
from .workbench import resolve_scheme

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

PG_CANDIDATES = tuple((m, q) for m in (2, 3, 4) for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16))

MATCH_PG_DEFAULTS = {(3, 2): 'example1', (2, 2): 'example3'}


def _modulus(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None

    try:
        return tuple(int(c) for c in text.split(','))
    except ValueError as err:
        raise ParameterError(f'modulus must be comma separated integers, got {text!r}') from err


def _write(text: str, out: str | None = None) -> None:
    if out is None:
        sys.stdout.write(text)
        return

    with open(Path(out), 'wt', encoding='utf-8', newline='\n') as f:
        f.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + '\n'


def _pg_for(d: int, k: int) -> tuple[int, int]:
    for m, q in PG_CANDIDATES:
        if (q ** (m + 1) - 1) // (q - 1) == d and (q ** m - 1) // (q - 1) == k:
            return m, q

    raise ParameterError(f'no PG(m,q) with {d} points and {k} points per hyperplane')


def _field_info(args) -> int:
    f = build_field(args.p, args.m, _modulus(args.modulus))

    _write(_dump({
        'p': f.p,
        'm': f.m,
        'q': f.q,
        'modulus': list(f.modulus),
        'alpha': int(f.alpha),
        'trace_of_one': trace(f, 1),
    }))

    return EXIT_PASS


def _periods(args) -> int:
    frame = build_frame(build_field(args.p, args.m, _modulus(args.modulus)), args.e)
    out = {'e': frame.e, 'class_size': frame.class_size}

    # irrational periods are a finding, not an error
    if frame.rational:
        out['periods'] = list(frame.rational_periods())
    else:
        out['periods'] = None
        out['trace_counts'] = [list(row) for row in frame.trace_counts]

    _write(_dump(out))

    return EXIT_PASS


def _scheme_verify(args) -> int:
    frame = build_frame(build_field(args.p, args.m, _modulus(args.modulus)), args.e)
    s = TranslationScheme(frame, parse_group_spec(args.groups, args.e))
    P = translation_eigenmatrix(s)

    reports = []
    failed = False

    for j in range(1, s.d + 1):
        try:
            reports.append(SRGArtifact.of(srg_check_translation(s, j)).model_dump(by_alias=True))
        except NotStronglyRegularError as e:
            failed = True
            reports.append({'relation': j, 'error': str(e)})

    out = {
        'eigenmatrix': P.to_list(),
        'multiplicities': list(P.multiplicities),
        'pseudocyclic': is_pseudocyclic(P),
        'srg': reports,
    }

    if args.dense:
        ds = dense_materialize(s)
        verify_scheme_dense(ds)
        dense = []

        for j in range(1, s.d + 1):
            try:
                found = dense_srg_check(ds, j)
                dense.append(None if found is None else asdict(found))
            except NotStronglyRegularError as e:
                dense.append({'relation': j, 'error': str(e)})

        out['dense'] = {'axioms': True, 'srg': dense}

    _write(_dump(out))

    return EXIT_FAIL if failed else EXIT_PASS


def _fusion(args) -> int:
    s = resolve_scheme(args.scheme, _modulus(args.modulus))
    P = translation_eigenmatrix(s)
    spec = args.partition.strip()
    out = {'scheme': args.scheme, 'partition': spec}

    try:
        if spec.startswith('named:'):
            name, _, ident = spec.removeprefix('named:').partition('=')
            T = extract_design(P)

            match name:
                case 'block':
                    class3, class2 = design_block_fusion(T, int(ident or 0))
                    out['eigenmatrix'] = class3.to_list()
                    out['merged'] = class2.to_list()

                case 'line' | 'spread':
                    space = pg_space(*_pg_for(T.design.d, T.design.k))
                    aligned = align_eigenmatrix(T, space).eigenmatrix

                    if name == 'line':
                        fused = line_fusion(aligned, space, int(ident or 0))
                    else:
                        fused = spread_fusion(aligned, space, regular_spread(space))

                    out['eigenmatrix'] = fused.to_list()

                case _:
                    raise ParameterError(f'unknown named partition {name!r}')
        else:
            try:
                parts = json.loads(spec)
            except ValueError as err:
                raise ParameterError(f'cannot parse partition {spec!r}') from err

            out['eigenmatrix'] = bannai_muzychuk(P, FusionPartition(parts)).to_list()

    except NotAFusionError as e:
        out['criterion'] = 'FAIL'
        reason, parts = e.args
        out['reason'] = reason
        out['offending_parts'] = list(parts)
        _write(_dump(out))
        return EXIT_FAIL

    except ValueError as err:
        if isinstance(err, SchemeForgeError):
            raise
        raise ParameterError(f'bad partition identifier in {spec!r}') from err

    out['criterion'] = 'PASS'
    _write(_dump(out))

    return EXIT_PASS


def _design_extract(args) -> int:
    s = resolve_scheme(args.scheme, _modulus(args.modulus))
    T = extract_design(translation_eigenmatrix(s))
    artifact = DesignArtifact.of(T.design, is_circulant(T.design.incidence))

    _write(_dump(artifact.model_dump(by_alias=True)))

    return EXIT_PASS


def _design_match_pg(args) -> int:
    scheme = args.scheme or MATCH_PG_DEFAULTS.get((args.m, args.q))

    if scheme is None:
        raise ParameterError(f'no default scheme carries a PG({args.m},{args.q}) design, pass --scheme')

    space = pg_space(args.m, args.q)
    T = extract_design(translation_eigenmatrix(resolve_scheme(scheme)))
    iso = design_isomorphic(T.design, space.design)

    _write(_dump({
        'scheme': scheme,
        'pg': [args.m, args.q],
        'isomorphic': iso.isomorphic,
        'point_map': list(iso.point_map) if iso.point_map else None,
        'block_map': list(iso.block_map) if iso.block_map else None,
    }))

    return EXIT_PASS if iso.isomorphic else EXIT_FAIL


def _reproduce(args) -> int:
    report = reproduce(args.target, args.a, _modulus(args.modulus))
    _write(emit(report, args.format, timing=args.timing), args.out)

    if not report.passed:
        logger.warning('first divergence: %s', report.first_divergence)

    return EXIT_PASS if report.passed else EXIT_FAIL


def _add_field_options(parser: argparse.ArgumentParser, with_e: bool = False) -> None:
    parser.add_argument('--p', type=int, required=True)
    parser.add_argument('--m', type=int, required=True)
    if with_e:
        parser.add_argument('--e', type=int, required=True)
    parser.add_argument('--modulus', help='coefficients, low degree first, comma separated')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='scheme-forge',
        description='cyclotomic association schemes, their designs and fusions',
    )
    parser.add_argument('-v', '--verbose', action='count', default=0)
    commands = parser.add_subparsers(dest='command', required=True)

    sub = commands.add_parser('field-info', help='modulus, primitive element and Tr(1) of GF(p^m)')
    _add_field_options(sub)
    sub.set_defaults(handler=_field_info)

    sub = commands.add_parser('periods', help='Gaussian periods of the class-e cyclotomy')
    _add_field_options(sub, with_e=True)
    sub.set_defaults(handler=_periods)

    scheme = commands.add_parser('scheme', help='translation schemes')
    scheme_commands = scheme.add_subparsers(dest='scheme_command', required=True)
    sub = scheme_commands.add_parser('verify', help='eigenmatrix and per-relation SRG report')
    _add_field_options(sub, with_e=True)
    sub.add_argument('--groups', default='singletons', help='cyclic:STEP,COUNT,STRIDE,a | singletons | JSON')
    sub.add_argument('--dense', action='store_true', help='cross-check with the bitset oracle')
    sub.set_defaults(handler=_scheme_verify)

    sub = commands.add_parser('fusion', help='fuse an eigenmatrix along a partition')
    sub.add_argument('--scheme', required=True, help='target name or P:M:E[:GROUPSPEC]')
    sub.add_argument('--partition', required=True, help='JSON | named:block[=ID] | named:line=ID | named:spread')
    sub.add_argument('--modulus')
    sub.set_defaults(handler=_fusion)

    design = commands.add_parser('design', help='designs in the principal part')
    design_commands = design.add_subparsers(dest='design_command', required=True)
    sub = design_commands.add_parser('extract', help='the symmetric design of a pseudocyclic scheme')
    sub.add_argument('--scheme', required=True)
    sub.add_argument('--modulus')
    sub.set_defaults(handler=_design_extract)
    sub = design_commands.add_parser('match-pg', help='isomorphism to the points/hyperplanes of PG(m,q)')
    sub.add_argument('--m', type=int, required=True)
    sub.add_argument('--q', type=int, required=True)
    sub.add_argument('--scheme', choices=sorted(PRESETS))
    sub.set_defaults(handler=_design_match_pg)

    sub = commands.add_parser('reproduce', help='run a reproduction target end to end')
    sub.add_argument('target', choices=sorted(TARGETS))
    sub.add_argument('--a', type=int, default=1)
    sub.add_argument('--modulus')
    sub.add_argument('--format', choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    sub.add_argument('--out')
    sub.add_argument('--timing', action='store_true', help='include stage timings in json output')
    sub.set_defaults(handler=_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')

    try:
        return args.handler(args)
    except ParameterError as e:
        logger.error('%s', e)
        return EXIT_USAGE
    except SchemeForgeError as e:
        logger.error('%s', e)
        return EXIT_FAIL
