'''
define the fusion criterion on first eigenmatrices, amorphy testing,
and the block, line and spread fusions of design-form eigenmatrices
'''

import logging

from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .config import get_settings
from .design import DesignDecomposition
from .eigenmatrix import Eigenmatrix
from .exceptions import CapExceededError
from .exceptions import FormulaMismatchError
from .exceptions import GeometryError
from .exceptions import NotAFusionError
from .exceptions import NotAnEigenmatrixError
from .exceptions import ParameterError
from .exceptions import SchemeForgeError
from .geometry import ProjectiveSpace
from .geometry import Spread
from .geometry import validate_spread
from .workers import map_chunks

logger = logging.getLogger(__name__)

PREFIX_DEPTH = 4


@dataclass(frozen=True)
class FusionPartition:
    '''
    a partition of the relation indices 0..d whose first part is {0}
    '''

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        parts = tuple(tuple(sorted(int(i) for i in part)) for part in self.parts)
        object.__setattr__(self, 'parts', parts)

        if not parts or parts[0] != (0,):
            raise ParameterError('the first part of a fusion partition must be {0}')

        if any(len(part) == 0 for part in parts):
            raise ParameterError('fusion parts must be nonempty')

        flat = sorted(i for part in parts for i in part)

        if flat != list(range(len(flat))):
            raise ParameterError(f'parts must cover 0..d exactly once, got {[list(p) for p in parts]}')

    @property
    def d(self) -> int:
        return sum(len(part) for part in self.parts) - 1

    @classmethod
    def singletons(cls, d: int) -> 'FusionPartition':
        return cls(tuple((i,) for i in range(d + 1)))

    @classmethod
    def from_growth_string(cls, rgs: Sequence[int]) -> 'FusionPartition':
        '''
        relation i + 1 goes to part rgs[i] + 1
        '''

        parts: list[list[int]] = [[0]]
        for i, label in enumerate(rgs):
            if label + 1 == len(parts):
                parts.append([])
            parts[label + 1].append(i + 1)

        return cls(tuple(tuple(part) for part in parts))


def _indicator(d: int, parts: Sequence[Sequence[int]]) -> np.ndarray:
    F = np.zeros((d + 1, len(parts)), dtype=np.int64)
    for j, part in enumerate(parts):
        F[list(part), j] = 1
    return F


def _row_groups(signatures: np.ndarray) -> dict[tuple[int, ...], list[int]]:
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, row in enumerate(signatures.tolist()):
        groups.setdefault(tuple(row), []).append(i)
    return groups


def fusion_row_classes(P: Eigenmatrix, part: FusionPartition) -> tuple[tuple[int, ...], ...]:
    '''
    the row partition Delta_0 = {0}, Delta_1, ... found by grouping the rows of P
    by their row sums over the column parts, in order of first occurrence
    '''

    if part.d != P.d:
        raise ParameterError(f'partition covers 0..{part.d} but the eigenmatrix has class {P.d}')

    signatures = P.array @ _indicator(P.d, part.parts)
    groups = _row_groups(signatures)
    wanted = len(part.parts)

    if groups[tuple(signatures[0].tolist())] != [0]:
        raise NotAFusionError('row 0 shares its row-sum signature with another row')

    if len(groups) != wanted:
        # a fused column can take at most one value per row class
        offending = tuple(
            j for j in range(1, wanted)
            if len(set(signatures[:, j].tolist())) > wanted
        ) or tuple(range(1, wanted))
        raise NotAFusionError(f'{len(groups)} distinct row-sum signatures for {wanted} parts', offending)

    return tuple(tuple(rows) for rows in groups.values())


def bannai_muzychuk(P: Eigenmatrix, part: FusionPartition) -> Eigenmatrix:
    '''
    the first eigenmatrix of the fusion scheme along part

    each (Delta_i, Lambda_j) block of P has constant row sums and the
    constant is entry (i, j) of the result
    '''

    row_classes = fusion_row_classes(P, part)
    signatures = P.array @ _indicator(P.d, part.parts)

    try:
        fused = Eigenmatrix(tuple(tuple(signatures[rows[0]].tolist()) for rows in row_classes))
        multiplicities = fused.multiplicities
    except NotAnEigenmatrixError as e:
        raise NotAFusionError(f'fused matrix is not an eigenmatrix: {e.args[0]}') from e

    expected = tuple(sum(P.multiplicities[i] for i in rows) for rows in row_classes)

    if multiplicities != expected:
        raise NotAFusionError(
            f'fused multiplicities {list(multiplicities)} differ from row class totals {list(expected)}'
        )

    return fused


def iter_partitions(d: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    '''
    restricted growth strings a_1..a_d (a_1 = 0, a_i <= 1 + max of the earlier ones)
    starting with prefix, in lexicographic order
    '''

    prefix = tuple(prefix)
    top = -1

    for label in prefix:
        if not 0 <= label <= top + 1:
            raise ParameterError(f'{list(prefix)} is not a restricted growth string')
        top = max(top, label)

    if len(prefix) > d:
        raise ParameterError(f'prefix longer than {d}')

    def extend(rgs: list[int], top: int) -> Iterator[tuple[int, ...]]:
        if len(rgs) == d:
            yield tuple(rgs)
            return
        for label in range(top + 2):
            rgs.append(label)
            yield from extend(rgs, max(top, label))
            rgs.pop()

    yield from extend(list(prefix), top)


def _is_fusion(P: np.ndarray, rgs: tuple[int, ...]) -> bool:
    d = len(rgs)
    parts = max(rgs, default=-1) + 2
    F = np.zeros((d + 1, parts), dtype=np.int64)
    F[0, 0] = 1
    F[np.arange(1, d + 1), np.array(rgs, dtype=np.int64) + 1] = 1

    rows = [tuple(row) for row in (P @ F).tolist()]
    distinct = set(rows)

    return len(distinct) == parts and rows[0] not in rows[1:]


def is_amorphous(P: Eigenmatrix) -> bool:
    '''
    true iff every partition of the nontrivial relations gives a fusion scheme
    '''

    cap = get_settings().amorphy_class_cap
    if P.d > cap:
        raise CapExceededError('classes for amorphy enumeration', P.d, cap)

    A = P.array
    prefixes = list(iter_partitions(min(P.d, PREFIX_DEPTH)))

    def check(start: int, stop: int) -> bool:
        return all(
            _is_fusion(A, rgs)
            for prefix in prefixes[start:stop]
            for rgs in iter_partitions(P.d, prefix)
        )

    amorphous = all(map_chunks(check, len(prefixes), 1))

    logger.info('class-%d scheme amorphous: %s', P.d, amorphous)

    return amorphous


def block_fusion_formula_class3(f: int, k: int, lam: int, d: int, r: int, s: int) -> Eigenmatrix:
    '''
    columns: diagonal, one point of a block, the other k - 1 block points, the d - k others;
    r marks the incidences and s the non-incidences
    '''

    return Eigenmatrix((
        (1, f, (k - 1) * f, (d - k) * f),
        (1, r, (k - 1) * r, (d - k) * s),
        (1, r, (lam - 1) * r + (k - lam) * s, (k - lam) * r + (d - 2 * k + lam) * s),
        (1, s, lam * r + (k - 1 - lam) * s, (k - lam) * r + (d - 2 * k + lam) * s),
    ))


def block_fusion_formula_class2(f: int, k: int, lam: int, d: int, r: int, s: int) -> Eigenmatrix:
    return Eigenmatrix((
        (1, k * f, (d - k) * f),
        (1, k * r, (d - k) * s),
        (1, lam * r + (k - lam) * s, (k - lam) * r + (d - 2 * k + lam) * s),
    ))


def line_fusion_formula(f: int, k: int, d: int, q: int, r: int, s: int) -> Eigenmatrix:
    '''
    columns: diagonal, the points off a line L, then each of the q + 1 points of L
    '''

    size = q + 1
    rows = [
        (1, (d - size) * f, *(f,) * size),
        (1, (k - size) * r + (d - k) * s, *(r,) * size),
    ]

    for i in range(size):
        rows.append((1, (k - 1) * r + (d - k - q) * s, *(r if j == i else s for j in range(size))))

    return Eigenmatrix(tuple(rows))


def spread_fusion_formula(f: int, q: int, r: int, s: int) -> Eigenmatrix:
    '''
    principal part q (r - s) I + (r + s q) J with valency (q + 1) f per spread line
    '''

    size = q * q + 1
    off = r + s * q
    rows = [(1, *((q + 1) * f,) * size)]

    for i in range(size):
        rows.append((1, *(q * (r - s) + off if j == i else off for j in range(size))))

    return Eigenmatrix(tuple(rows))


def _check_formula(name: str, expected: Eigenmatrix, computed: Eigenmatrix) -> None:
    if expected.canonical() != computed.canonical():
        raise FormulaMismatchError(name, expected.canonical().rows, computed.canonical().rows)


def design_block_fusion(T: DesignDecomposition, block: int) -> tuple[Eigenmatrix, Eigenmatrix]:
    '''
    fuse along one block B of the extracted design: its least point,
    the rest of B, and the points off B; then merge the first two parts
    '''

    D = T.design

    if not 0 <= block < D.d:
        raise ParameterError(f'block must be in 0..{D.d - 1}, got {block}')

    points = np.flatnonzero(D.incidence[block]).tolist()
    off = np.flatnonzero(D.incidence[block] == 0).tolist()

    part = FusionPartition((
        (0,),
        (1 + points[0],),
        tuple(1 + x for x in points[1:]),
        tuple(1 + x for x in off),
    ))

    try:
        class3 = bannai_muzychuk(T.eigenmatrix, part)
        class2 = bannai_muzychuk(class3, FusionPartition(((0,), (1, 2), (3,))))
    except SchemeForgeError as e:
        raise e.under('design_block_fusion') from e.__cause__

    args = (T.f, D.k, D.lam, D.d, T.marked, T.unmarked)
    _check_formula('class-3 block fusion', block_fusion_formula_class3(*args), class3)
    _check_formula('class-2 block fusion', block_fusion_formula_class2(*args), class2)

    return class3, class2


def _design_form(P: Eigenmatrix, space: ProjectiveSpace) -> tuple[int, int, int]:
    '''
    (r, s, f) with principal part r M + s (J - M) for the PG incidence M
    '''

    if P.d != space.d:
        raise GeometryError(f'class {P.d} does not match the {space.d} points of PG({space.m},{space.q})')

    M = space.incidence.astype(bool)
    P0 = P.principal_part
    marked = set(P0[M].tolist())
    unmarked = set(P0[~M].tolist())

    if len(marked) != 1 or len(unmarked) != 1:
        raise GeometryError(f'principal part is not r M + s (J - M) for PG({space.m},{space.q})')

    if len(set(P.valencies[1:])) != 1:
        raise GeometryError('nontrivial valencies differ')

    return marked.pop(), unmarked.pop(), P.valencies[1]


def line_fusion(P: Eigenmatrix, space: ProjectiveSpace, line: int) -> Eigenmatrix:
    '''
    the class q + 2 fusion: the points off a line as one part, each point of the line alone
    '''

    r, s, f = _design_form(P, space)

    if not 0 <= line < len(space.lines):
        raise ParameterError(f'line must be in 0..{len(space.lines) - 1}, got {line}')

    on = space.lines[line]
    off = tuple(1 + x for x in range(space.d) if x not in on)
    part = FusionPartition(((0,), off, *((1 + x,) for x in on)))

    try:
        fused = bannai_muzychuk(P, part)
    except SchemeForgeError as e:
        raise e.under('line_fusion') from e.__cause__

    _check_formula('line fusion', line_fusion_formula(f, space.k, space.d, space.q, r, s), fused)

    return fused


def spread_fusion(P: Eigenmatrix, space: ProjectiveSpace, spread: Spread) -> Eigenmatrix:
    '''
    the class q^2 + 1 fusion with one part per spread line
    '''

    validate_spread(space, spread)
    r, s, f = _design_form(P, space)

    part = FusionPartition(((0,), *(tuple(1 + x for x in line) for line in spread.lines)))

    try:
        fused = bannai_muzychuk(P, part)
    except SchemeForgeError as e:
        raise e.under('spread_fusion') from e.__cause__

    _check_formula('spread fusion', spread_fusion_formula(f, space.q, r, s), fused)

    return fused
