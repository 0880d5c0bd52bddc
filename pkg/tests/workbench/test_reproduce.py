import json

import pytest

from scheme_forge.design import extract_design
from scheme_forge.eigenmatrix import is_pseudocyclic
from scheme_forge.exceptions import ParameterError
from scheme_forge.exceptions import ReducibleModulusError
from scheme_forge.geometry import pg_space
from scheme_forge.report import SCHEMA
from scheme_forge.report import DesignArtifact
from scheme_forge.report import ReproductionReport
from scheme_forge.report import emit
from scheme_forge.report import render_design_markdown
from scheme_forge.report import render_eigenmatrix_tsv
from scheme_forge.workbench import LINE_FUSION_GF2_12
from scheme_forge.workbench import PRESETS
from scheme_forge.workbench import Workbench
from scheme_forge.workbench import _Aborted
from scheme_forge.workbench import reproduce
from scheme_forge.workbench import resolve_scheme

from ..utils import ALTERNATE_MODULUS_2_12
from ..utils import _eigenmatrix


@pytest.fixture(scope='module')
def vls_report():
    return reproduce('vls')


def _names(report: ReproductionReport) -> list[str]:
    return [a.name for a in report.assertions]


def test_example1():
    report = reproduce('example1')

    assert report.passed, report.first_divergence
    assert 'line fusion:eigenmatrix' in _names(report)
    assert 'spread fusion:amorphous' in _names(report)
    assert 'dense:srg parameters' in _names(report)
    assert report.designs['extracted'].incidence[0].count('1') == 7


def test_example1_under_another_modulus():
    report = reproduce('example1', modulus=ALTERNATE_MODULUS_2_12)

    assert report.passed, report.first_divergence
    assert report.options['modulus'] == list(ALTERNATE_MODULUS_2_12)


def test_vls(vls_report):
    assert vls_report.passed, vls_report.first_divergence
    assert vls_report.designs['extracted'].k == 5
    assert all(a.provenance for a in vls_report.assertions)


@pytest.mark.parametrize('a', [1, 2, 4, 7, 8, 11, 13, 14])
def test_example1_multipliers_give_the_same_spectrum(a):
    P = _eigenmatrix('example1', a)

    assert P.valencies == (1,) + (273,) * 15
    assert set(P.principal_part.flat) == {17, -15}
    assert is_pseudocyclic(P)
    assert extract_design(P).design.parameters == (15, 7, 3)


@pytest.mark.slow
def test_example1_multiplier_seven():
    report = reproduce('example1', a=7)

    assert report.passed, report.first_divergence


@pytest.mark.slow
@pytest.mark.parametrize('target', ['example2', 'example3', 'corollary-fusions', 'spread-amorphy'])
def test_large_targets(target):
    report = reproduce(target)

    assert report.passed, report.first_divergence


def test_rejected_options():
    with pytest.raises(ParameterError):
        reproduce('example1', a=3)

    with pytest.raises(ParameterError):
        reproduce('example1', a=10)

    with pytest.raises(ParameterError):
        reproduce('corollary-fusions', modulus=ALTERNATE_MODULUS_2_12)

    with pytest.raises(ParameterError):
        reproduce('example4')


def test_bad_modulus_aborts_at_the_field_stage():
    reducible = (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1)
    report = reproduce('example1', modulus=reducible)

    assert not report.passed
    assert report.first_divergence == 'stage:field'
    assert len(report.assertions) == 1
    assert 'field' in report.timing


def test_stage_records_failure_and_aborts():
    bench = Workbench('scratch', {})

    with pytest.raises(_Aborted):
        with bench.stage('boom'):
            raise ReducibleModulusError(2, (1, 0, 1))

    (assertion,) = bench.report.assertions
    assert assertion.name == 'stage:boom'
    assert not assertion.passed
    assert 'boom' in bench.report.timing


def test_resolve_scheme():
    assert resolve_scheme('3:2:2').d == 2
    assert resolve_scheme('3:5:11:singletons').d == 11
    assert resolve_scheme('2:4:15:cyclic:3,3,5,1').d == 5
    assert resolve_scheme('vls').frame.field.q == 243

    with pytest.raises(ParameterError):
        resolve_scheme('GF(9)')


def test_preset_groups():
    assert PRESETS['vls'].groups(5) == tuple((i,) for i in range(11))
    assert len(PRESETS['example3'].groups(3)) == 7

    with pytest.raises(ParameterError):
        PRESETS['example3'].groups(14)


def test_json_is_deterministic(vls_report):
    again = reproduce('vls')
    text = emit(vls_report)

    assert text == emit(again)
    assert text.endswith('\n')

    obj = json.loads(text)
    assert obj['schema'] == SCHEMA == 'scheme-forge/1'
    assert obj['target'] == 'vls'
    assert 'timing' not in obj
    assert obj['designs']['extracted']['lambda'] == 2
    assert 'timing' in json.loads(emit(vls_report, 'json', timing=True))


def test_tsv(vls_report):
    text = emit(vls_report, 'tsv')
    lines = text.splitlines()

    assert lines[0] == 'assertion\texpected\tcomputed\tprovenance\tpassed'
    assert len(lines[1].split('\t')) == 5
    assert '# cyclotomic' in lines
    assert not any(line.startswith('# timing') for line in lines)
    assert len(render_eigenmatrix_tsv(LINE_FUSION_GF2_12).splitlines()) == 5
    assert render_eigenmatrix_tsv(LINE_FUSION_GF2_12).splitlines()[1] == '1\t-52\t17\t17\t17'


def test_markdown(vls_report):
    text = emit(vls_report, 'markdown')

    assert text.startswith('# vls\n')
    assert 'status: PASS' in text
    assert '### cyclotomic' in text


def test_design_markdown():
    artifact = DesignArtifact.of(pg_space(3, 2).design, False)
    lines = render_design_markdown('pg', artifact)
    rows = lines[lines.index('```') + 1:-1]

    assert lines[0] == '### pg: 2-(15,7,3), circulant: false'
    assert len(rows) == 15
    assert all(len(row) == 15 and row.count('1') == 7 for row in rows)


def test_empty_and_failing_reports():
    report = ReproductionReport(target='empty')

    assert report.passed
    assert report.first_divergence is None
    assert json.loads(emit(report))['assertions'] == []
    assert emit(report, 'tsv') == 'assertion\texpected\tcomputed\tprovenance\tpassed\n'
    assert 'status: PASS' in emit(report, 'markdown')

    assert not report.check('sizes', [1, 2], [1, 3], 'hand')
    assert report.first_divergence == 'sizes'
    assert 'FAIL (first divergence: sizes)' in emit(report, 'markdown')
    assert 'sizes\t[1, 2]\t[1, 3]\thand\tfalse' in emit(report, 'tsv')


@pytest.mark.slow
def test_corollary_fusions_cover_vls():
    report = reproduce('corollary-fusions')

    assert report.passed, report.first_divergence
    assert sorted(report.eigenmatrices['vls:class 3']) == [
        [1, -5, -20, 24], [1, -5, 7, -3], [1, 4, -2, -3], [1, 22, 88, 132],
    ]
    assert sorted(report.eigenmatrices['vls:class 2']) == [[1, -25, 24], [1, 2, -3], [1, 110, 132]]
    assert 'vls:merging the first two relations' in _names(report)
