'''
define the reproduction report and its json, tsv and markdown renderings
'''

import json

from enum import StrEnum
from typing import Any

from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field

from .design import SymmetricDesign
from .scheme import SRGReport

SCHEMA = 'scheme-forge/1'


class OutputFormat(StrEnum):
    JSON = 'json'
    TSV = 'tsv'
    MARKDOWN = 'markdown'


class Assertion(BaseModel):
    name: str
    expected: Any
    computed: Any
    provenance: str
    passed: bool


class DesignArtifact(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    d: int
    k: int
    lam: int = Field(serialization_alias='lambda')
    circulant: bool
    incidence: list[str]

    @classmethod
    def of(cls, D: SymmetricDesign, circulant: bool) -> 'DesignArtifact':
        return cls(d=D.d, k=D.k, lam=D.lam, circulant=circulant, incidence=D.bitstrings())


class SRGArtifact(BaseModel):
    relation: int
    n: int
    k: int
    r: int
    s: int | None
    lam: int | None = Field(serialization_alias='lambda')
    mu: int | None

    @classmethod
    def of(cls, report: SRGReport) -> 'SRGArtifact':
        return cls(
            relation=report.relation, n=report.n, k=report.k,
            r=report.r, s=report.s, lam=report.lam, mu=report.mu,
        )


class ReproductionReport(BaseModel):
    '''
    assertions in the order they were checked, plus the artifacts they were checked on
    '''

    schema_version: str = Field(default=SCHEMA, serialization_alias='schema')
    target: str
    options: dict[str, Any] = Field(default_factory=dict)
    assertions: list[Assertion] = Field(default_factory=list)
    eigenmatrices: dict[str, list[list[int]]] = Field(default_factory=dict)
    designs: dict[str, DesignArtifact] = Field(default_factory=dict)
    srg: dict[str, list[SRGArtifact]] = Field(default_factory=dict)
    timing: dict[str, float] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(assertion.passed for assertion in self.assertions)

    @property
    def first_divergence(self) -> str | None:
        return next((a.name for a in self.assertions if not a.passed), None)

    def check(self, name: str, expected, computed, provenance: str) -> bool:
        passed = expected == computed
        self.assertions.append(Assertion(
            name=name, expected=expected, computed=computed, provenance=provenance, passed=passed,
        ))
        return passed


def render_eigenmatrix_tsv(rows) -> str:
    return '\n'.join('\t'.join(str(v) for v in row) for row in rows)


def _render_tsv(report: ReproductionReport, timing: bool) -> str:
    lines = ['assertion\texpected\tcomputed\tprovenance\tpassed']

    for a in report.assertions:
        lines.append('\t'.join((
            a.name, json.dumps(a.expected), json.dumps(a.computed), a.provenance, str(a.passed).lower(),
        )))

    for name, rows in report.eigenmatrices.items():
        lines.extend(('', f'# {name}', render_eigenmatrix_tsv(rows)))

    if timing:
        lines.append('')
        lines.extend(f'# timing {stage}\t{seconds:.3f}' for stage, seconds in report.timing.items())

    return '\n'.join(lines) + '\n'


def render_design_markdown(name: str, design: DesignArtifact) -> list[str]:
    return [
        f'### {name}: 2-({design.d},{design.k},{design.lam}), circulant: {str(design.circulant).lower()}',
        '',
        '```',
        *design.incidence,
        '```',
    ]


def _render_markdown(report: ReproductionReport, timing: bool) -> str:
    status = 'PASS' if report.passed else f'FAIL (first divergence: {report.first_divergence})'
    lines = [
        f'# {report.target}',
        '',
        f'status: {status}',
        '',
        '| assertion | expected | computed | provenance | passed |',
        '|---|---|---|---|---|',
    ]

    for a in report.assertions:
        lines.append(
            f'| {a.name} | `{json.dumps(a.expected)}` | `{json.dumps(a.computed)}` | {a.provenance} | {"yes" if a.passed else "no"} |'
        )

    for name, rows in report.eigenmatrices.items():
        lines.extend(('', f'### {name}', ''))
        lines.append('| ' + ' | '.join(f'P{j}' for j in range(len(rows[0]))) + ' |')
        lines.append('|' + '---|' * len(rows[0]))
        lines.extend('| ' + ' | '.join(str(v) for v in row) + ' |' for row in rows)

    for name, design in report.designs.items():
        lines.append('')
        lines.extend(render_design_markdown(name, design))

    if timing and report.timing:
        lines.extend(('', '### timing', ''))
        lines.extend(f'- {stage}: {seconds:.3f} s' for stage, seconds in report.timing.items())

    return '\n'.join(lines) + '\n'


def emit(report: ReproductionReport, fmt: OutputFormat | str = OutputFormat.JSON, timing: bool = False) -> str:
    '''
    serialize a report; timings are left out unless asked for,
    so the default output of a deterministic run is byte-identical
    '''

    match OutputFormat(fmt):
        case OutputFormat.JSON:
            exclude = None if timing else {'timing'}
            return report.model_dump_json(by_alias=True, indent=2, exclude=exclude) + '\n'

        case OutputFormat.TSV:
            return _render_tsv(report, timing)

        case OutputFormat.MARKDOWN:
            return _render_markdown(report, timing)

        case _:
            raise RuntimeError('Should be unreachable.')
