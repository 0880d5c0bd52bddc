'''
define the reproduction targets: named end-to-end pipelines from a field
to SRG checks, design extraction, PG matching and the line and spread fusions
'''

import logging
import math
import time

from abc import ABC
from abc import abstractmethod
from collections import Counter
from collections.abc import Iterable
from contextlib import contextmanager
from dataclasses import dataclass

from typing_extensions import override

from .config import get_settings
from .cyclotomy import build_frame
from .cyclotomy import cyclotomic_eigenmatrix
from .dense import dense_materialize
from .dense import dense_srg_check
from .dense import verify_scheme_dense
from .design import design_isomorphic
from .design import develop_difference_set
from .design import extract_design
from .design import is_circulant
from .eigenmatrix import Eigenmatrix
from .eigenmatrix import is_pseudocyclic
from .eigenmatrix import orthogonality_residual
from .exceptions import ParameterError
from .exceptions import SchemeForgeError
from .field import build_field
from .fusion import FusionPartition
from .fusion import bannai_muzychuk
from .fusion import block_fusion_formula_class2
from .fusion import block_fusion_formula_class3
from .fusion import design_block_fusion
from .fusion import is_amorphous
from .fusion import line_fusion
from .fusion import spread_fusion
from .geometry import align_eigenmatrix
from .geometry import pg_space
from .geometry import regular_spread
from .report import DesignArtifact
from .report import ReproductionReport
from .report import SRGArtifact
from .scheme import TranslationScheme
from .scheme import cyclic_groups
from .scheme import parse_group_spec
from .scheme import srg_check_translation
from .scheme import srg_from_spectrum
from .scheme import translation_eigenmatrix

logger = logging.getLogger(__name__)

LINE_FUSION_GF2_12 = (
    (1, 3276, 273, 273, 273),
    (1, -52, 17, 17, 17),
    (1, 12, -15, -15, 17),
    (1, 12, -15, 17, -15),
    (1, 12, 17, -15, -15),
)

LINE_FUSION_GF2_20 = (
    (1, 838860, 69905, 69905, 69905),
    (1, -820, 273, 273, 273),
    (1, 204, -239, -239, 273),
    (1, 204, -239, 273, -239),
    (1, 204, 273, -239, -239),
)

LINE_FUSION_GF2_21 = (
    (1, 1198372, 299593, 299593, 299593),
    (1, -1756, 585, 585, 585),
    (1, 292, -439, -439, 585),
    (1, 292, -439, 585, -439),
    (1, 292, 585, -439, -439),
)

QUADRATIC_RESIDUES_MOD_11 = (1, 3, 4, 5, 9)


@dataclass(frozen=True)
class Preset:
    '''
    a translation scheme from the reproduction corpus

    rule is (step, count, stride) of the cyclic union rule, None for singleton groups;
    spread_principal is (diagonal, off-diagonal, valency) of the spread fusion
    '''

    name: str
    p: int
    m: int
    e: int
    rule: tuple[int, int, int] | None
    coprime_to: int
    spectrum: tuple[int, int, int]
    design: tuple[int, int, int]
    pg: tuple[int, int] | None = None
    line_fusion: tuple[tuple[int, ...], ...] | None = None
    spread_principal: tuple[int, int, int] | None = None

    def groups(self, a: int) -> tuple[tuple[int, ...], ...]:
        if self.rule is None:
            return tuple((i,) for i in range(self.e))

        if math.gcd(a, self.coprime_to) != 1:
            raise ParameterError(f'a must be coprime to {self.coprime_to}, got {a}')

        return cyclic_groups(self.e, *self.rule, a)


PRESETS = {
    preset.name: preset for preset in (
        Preset(
            name='example1', p=2, m=12, e=45, rule=(3, 3, 5), coprime_to=15,
            spectrum=(273, 17, -15), design=(15, 7, 3), pg=(3, 2),
            line_fusion=LINE_FUSION_GF2_12, spread_principal=(51, -13, 819),
        ),
        Preset(
            name='example2', p=2, m=20, e=75, rule=(5, 5, 3), coprime_to=15,
            spectrum=(69905, 273, -239), design=(15, 7, 3), pg=(3, 2),
            line_fusion=LINE_FUSION_GF2_20, spread_principal=(819, -205, 209715),
        ),
        Preset(
            name='example3', p=2, m=21, e=49, rule=(7, 7, 1), coprime_to=7,
            spectrum=(299593, 585, -439), design=(7, 3, 1), pg=(2, 2),
            line_fusion=LINE_FUSION_GF2_21,
        ),
        Preset(
            name='vls', p=3, m=5, e=11, rule=None, coprime_to=1,
            spectrum=(22, 4, -5), design=(11, 5, 2),
        ),
    )
}


def preset_scheme(preset: Preset, a: int = 1, modulus: Iterable[int] | None = None) -> TranslationScheme:
    frame = build_frame(build_field(preset.p, preset.m, modulus), preset.e)
    return TranslationScheme(frame, preset.groups(a))


def resolve_scheme(spec: str, modulus: Iterable[int] | None = None) -> TranslationScheme:
    '''
    a preset name, or P:M:E[:GROUPSPEC] with singleton groups by default
    '''

    if spec in PRESETS:
        return preset_scheme(PRESETS[spec], 1, modulus)

    fields = spec.split(':', 3)

    try:
        p, m, e = (int(v) for v in fields[:3])
    except ValueError as err:
        raise ParameterError(f'expected a preset name or P:M:E[:GROUPSPEC], got {spec!r}') from err

    frame = build_frame(build_field(p, m, modulus), e)
    groups = parse_group_spec(fields[3] if len(fields) == 4 else 'singletons', e)

    return TranslationScheme(frame, groups)


class _Aborted(Exception):
    pass


class Workbench:
    '''
    collects assertions and timings; a stage that raises records a failed
    `stage:<name>` assertion and aborts the run
    '''

    report: ReproductionReport

    def __init__(self, target: str, options: dict):
        self.report = ReproductionReport(target=target, options=options)

    @contextmanager
    def stage(self, name: str):
        start = time.perf_counter()
        try:
            yield
        except SchemeForgeError as e:
            logger.warning('stage %s failed: %s', name, e)
            self.report.check(f'stage:{name}', 'completed', str(e), 'pipeline')
            raise _Aborted(name) from e
        finally:
            self.report.timing[name] = round(time.perf_counter() - start, 6)

    def check(self, name: str, expected, computed, provenance: str) -> bool:
        return self.report.check(name, expected, computed, provenance)

    def record_eigenmatrix(self, name: str, P: Eigenmatrix) -> None:
        self.report.eigenmatrices[name] = P.to_list()

    def translation_pipeline(
        self, preset: Preset, a: int, modulus, label: str = '',
    ) -> tuple[TranslationScheme, Eigenmatrix]:
        with self.stage(f'{label}field'):
            f = build_field(preset.p, preset.m, modulus)

        with self.stage(f'{label}frame'):
            frame = build_frame(f, preset.e)

        self.check(f'{label}periods:rational', True, frame.rational, 'derived: trace counts')

        with self.stage(f'{label}scheme'):
            s = TranslationScheme(frame, preset.groups(a))
            P = translation_eigenmatrix(s)

        self.record_eigenmatrix(f'{label}translation', P)
        self.check(f'{label}scheme:pseudocyclic', True, is_pseudocyclic(P), 'cyclotomic schemes are pseudocyclic')
        self.check(f'{label}scheme:orthogonality', 0, orthogonality_residual(P), 'orthogonality relations')

        return s, P

    def srg_stage(self, s: TranslationScheme, preset: Preset, label: str = '') -> list:
        k, r, t = preset.spectrum

        with self.stage(f'{label}srg'):
            reports = [srg_check_translation(s, j) for j in range(1, s.d + 1)]
            expected = srg_from_spectrum(s.frame.field.q, k, r, t)

        self.report.srg[f'{label}translation'] = [SRGArtifact.of(rep) for rep in reports]
        self.check(
            f'{label}srg:spectrum', [[k, r, t]],
            [list(v) for v in sorted({(rep.k, rep.r, rep.s) for rep in reports})],
            'printed eigenvalues',
        )
        self.check(
            f'{label}srg:parameters', [[expected.n, expected.k, expected.lam, expected.mu]],
            [list(v) for v in sorted({(rep.n, rep.k, rep.lam, rep.mu) for rep in reports})],
            'derived: mu = k + rs, lambda = mu + r + s',
        )
        self.check(f'{label}srg:relations', s.d, sum(not rep.degenerate for rep in reports), 'every relation')

        return reports


class _Target(ABC):
    '''
    base class of the reproduction targets
    '''

    single_field: bool = True
    presets: tuple[Preset, ...] = ()

    @abstractmethod
    def run(self, bench: Workbench, a: int, modulus) -> None:
        pass


class _ExampleTarget(_Target):
    preset: Preset

    def __init__(self, preset: Preset):
        self.preset = preset
        self.presets = (preset,)

    @override
    def run(self, bench: Workbench, a: int, modulus) -> None:
        preset = self.preset
        s, P = bench.translation_pipeline(preset, a, modulus)
        reports = bench.srg_stage(s, preset)

        with bench.stage('design'):
            T = extract_design(P)

        circulant = is_circulant(T.design.incidence)
        bench.report.designs['extracted'] = DesignArtifact.of(T.design, circulant)
        bench.check('design:parameters', list(preset.design), list(T.design.parameters), 'printed design')
        bench.check('design:circulant', True, circulant, 'union rule is invariant under the class shift')

        m, q = preset.pg

        with bench.stage('isomorphism'):
            space = pg_space(m, q)
            iso = design_isomorphic(T.design, space.design)

        bench.check(f'design:isomorphic to PG({m},{q})', True, iso.isomorphic, 'printed identification')

        with bench.stage('line fusion'):
            aligned = align_eigenmatrix(T, space)
            fused = line_fusion(aligned.eigenmatrix, space, 0)

        bench.record_eigenmatrix('line fusion', fused)
        bench.check(
            'line fusion:eigenmatrix',
            [list(row) for row in Eigenmatrix(preset.line_fusion).canonical().rows],
            fused.canonical().to_list(),
            'printed eigenmatrix',
        )

        if m == 3:
            with bench.stage('spread fusion'):
                spread = regular_spread(space)
                fused = spread_fusion(aligned.eigenmatrix, space, spread)
                amorphous = is_amorphous(fused)

            bench.record_eigenmatrix('spread fusion', fused)
            bench.check('spread fusion:principal', list(preset.spread_principal), _spread_principal(fused), 'closed form')
            bench.check('spread fusion:pseudocyclic', True, is_pseudocyclic(fused), 'printed claim')
            bench.check('spread fusion:amorphous', True, amorphous, 'printed claim')

        if s.frame.field.q <= get_settings().dense_point_cap:
            with bench.stage('dense'):
                ds = dense_materialize(s)
                verify_scheme_dense(ds)
                dense = [dense_srg_check(ds, j) for j in range(1, s.d + 1)]

            bench.check(
                'dense:srg parameters',
                [[rep.n, rep.k, rep.lam, rep.mu] for rep in reports],
                [[p.n, p.k, p.lam, p.mu] if p else None for p in dense],
                'bitset oracle',
            )


def _spread_principal(P: Eigenmatrix) -> list[int]:
    size = P.d
    counts = Counter(P.principal_part.flat)
    diagonal = next((int(v) for v, c in counts.items() if c == size), None)
    off = next((int(v) for v, c in counts.items() if c == size * size - size), None)
    return [diagonal, off, P.valencies[1]]


class _VLSTarget(_Target):
    '''
    the class-11 cyclotomic scheme on GF(3^5) with its design and dense oracle
    '''

    preset = PRESETS['vls']
    presets = (PRESETS['vls'],)

    @override
    def run(self, bench: Workbench, a: int, modulus) -> None:
        preset = self.preset

        with bench.stage('field'):
            f = build_field(preset.p, preset.m, modulus)

        with bench.stage('frame'):
            frame = build_frame(f, preset.e)

        bench.check('periods:rational', True, frame.rational, 'c_1 = c_2 for every class')

        with bench.stage('scheme'):
            P = cyclotomic_eigenmatrix(frame)
            s = TranslationScheme(frame, preset.groups(a))

        bench.record_eigenmatrix('cyclotomic', P)
        bench.check('scheme:principal values', [-5, 4], sorted({int(v) for v in P.principal_part.flat}), 'derived')
        bench.check('scheme:multiplicities', [1] + [22] * 11, list(P.multiplicities), 'derived')
        bench.check('scheme:orthogonality', 0, orthogonality_residual(P), 'orthogonality relations')

        reports = bench.srg_stage(s, preset)

        with bench.stage('dense'):
            ds = dense_materialize(s)
            verify_scheme_dense(ds)
            dense = [dense_srg_check(ds, j, full=True) for j in range(1, s.d + 1)]

        bench.check('dense:axioms', True, True, 'bitset oracle')
        bench.check(
            'dense:srg parameters',
            [[rep.n, rep.k, rep.lam, rep.mu] for rep in reports],
            [[p.n, p.k, p.lam, p.mu] if p else None for p in dense],
            'direct A^2 check on every row',
        )

        with bench.stage('design'):
            T = extract_design(P)
            model = develop_difference_set(11, QUADRATIC_RESIDUES_MOD_11)
            iso = design_isomorphic(T.design, model)

        bench.report.designs['extracted'] = DesignArtifact.of(T.design, is_circulant(T.design.incidence))
        bench.check('design:parameters', list(preset.design), list(T.design.parameters), 'printed design')
        bench.check('design:isomorphic to the quadratic residue model', True, iso.isomorphic, 'fixed model')


class _CorollaryTarget(_Target):
    '''
    the class-3 and class-2 block fusions of examples 1 and 2 and of the
    11-class scheme on GF(3^5) against their closed forms
    '''

    single_field = False
    presets = (PRESETS['example1'], PRESETS['example2'], PRESETS['vls'])

    @override
    def run(self, bench: Workbench, a: int, modulus) -> None:
        for preset in self.presets:
            label = f'{preset.name}:'
            _, P = bench.translation_pipeline(preset, a, None, label)

            with bench.stage(f'{label}block fusion'):
                T = extract_design(P)
                class3, class2 = design_block_fusion(T, 0)
                merged = bannai_muzychuk(class3, FusionPartition(((0,), (1, 2), (3,))))

            args = (T.f, T.design.k, T.design.lam, T.design.d, T.marked, T.unmarked)
            bench.record_eigenmatrix(f'{label}class 3', class3)
            bench.record_eigenmatrix(f'{label}class 2', class2)
            bench.check(
                f'{label}class 3', block_fusion_formula_class3(*args).canonical().to_list(),
                class3.canonical().to_list(), 'closed form',
            )
            bench.check(
                f'{label}class 2', block_fusion_formula_class2(*args).canonical().to_list(),
                class2.canonical().to_list(), 'closed form',
            )
            bench.check(
                f'{label}merging the first two relations', class2.canonical().to_list(),
                merged.canonical().to_list(), 'fusion criterion',
            )


class _SpreadAmorphyTarget(_Target):
    '''
    the class-5 spread fusions of examples 1 and 2 and their amorphy
    '''

    single_field = False
    presets = (PRESETS['example1'], PRESETS['example2'])

    @override
    def run(self, bench: Workbench, a: int, modulus) -> None:
        for preset in self.presets:
            label = f'{preset.name}:'
            _, P = bench.translation_pipeline(preset, a, None, label)

            with bench.stage(f'{label}spread fusion'):
                T = extract_design(P)
                space = pg_space(*preset.pg)
                aligned = align_eigenmatrix(T, space)
                fused = spread_fusion(aligned.eigenmatrix, space, regular_spread(space))
                amorphous = is_amorphous(fused)

            bench.record_eigenmatrix(f'{label}spread fusion', fused)
            bench.check(f'{label}principal', list(preset.spread_principal), _spread_principal(fused), 'closed form')
            bench.check(f'{label}amorphous', True, amorphous, 'printed claim')


TARGETS: dict[str, _Target] = {
    'example1': _ExampleTarget(PRESETS['example1']),
    'example2': _ExampleTarget(PRESETS['example2']),
    'example3': _ExampleTarget(PRESETS['example3']),
    'vls': _VLSTarget(),
    'corollary-fusions': _CorollaryTarget(),
    'spread-amorphy': _SpreadAmorphyTarget(),
}


def reproduce(target: str, a: int = 1, modulus: Iterable[int] | None = None) -> ReproductionReport:
    '''
    run a named target end to end; the report lists every assertion with
    its expected and computed values, failed or not
    '''

    if target not in TARGETS:
        raise ParameterError(f'unknown target {target!r}, expected one of {sorted(TARGETS)}')

    runner = TARGETS[target]
    modulus = None if modulus is None else [int(c) for c in modulus]

    if modulus is not None and not runner.single_field:
        raise ParameterError(f'target {target} spans several fields and takes no modulus')

    for preset in runner.presets:
        preset.groups(a)

    bench = Workbench(target, {'a': a, 'modulus': modulus})

    try:
        runner.run(bench, a, modulus)
    except _Aborted as stage:
        logger.warning('target %s aborted at stage %s', target, stage)

    logger.info('target %s: %s', target, 'pass' if bench.report.passed else 'fail')

    return bench.report
