'''
define translation schemes on GF(q) as partitions of the cyclotomic classes,
their fused eigenmatrices, and strong-regularity checks
'''

import json
import logging

from collections import Counter
from dataclasses import dataclass

from .cyclotomy import CyclotomicFrame
from .cyclotomy import cyclotomic_eigenmatrix
from .eigenmatrix import Eigenmatrix
from .exceptions import InfeasibleParametersError
from .exceptions import NotStronglyRegularError
from .exceptions import ParameterError
from .exceptions import SchemeForgeError
from .fusion import FusionPartition
from .fusion import bannai_muzychuk
from .fusion import fusion_row_classes

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TranslationScheme:
    '''
    relation j (1 <= j <= d) holds (x, y) iff x - y lies in a class of groups[j - 1]
    '''

    frame: CyclotomicFrame
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        groups = tuple(tuple(sorted(int(i) for i in group)) for group in self.groups)
        object.__setattr__(self, 'groups', groups)

        if any(len(group) == 0 for group in groups):
            raise ParameterError('relation groups must be nonempty')

        flat = sorted(i for group in groups for i in group)

        if flat != list(range(self.frame.e)):
            raise ParameterError(f'groups must partition the classes 0..{self.frame.e - 1}')

    @property
    def d(self) -> int:
        return len(self.groups)

    @property
    def valencies(self) -> tuple[int, ...]:
        return (1, *(len(group) * self.frame.class_size for group in self.groups))

    def group_of_class(self) -> list[int]:
        '''
        relation index (1..d) of every class
        '''

        owner = [0] * self.frame.e
        for j, group in enumerate(self.groups, start=1):
            for i in group:
                owner[i] = j
        return owner


def cyclic_groups(e: int, step: int, count: int, stride: int, a: int = 1) -> tuple[tuple[int, ...], ...]:
    '''
    Lambda_k = {a (step (k - 1) + stride i) mod e : i < count} for k = 1..e / count
    '''

    if count < 1 or e % count != 0:
        raise ParameterError(f'count must divide e = {e}, got {count}')

    groups = tuple(
        tuple(sorted(a * (step * k + stride * i) % e for i in range(count)))
        for k in range(e // count)
    )

    if sorted(i for group in groups for i in group) != list(range(e)):
        raise ParameterError(
            f'cyclic:{step},{count},{stride},{a} does not partition the {e} classes'
        )

    return groups


def parse_group_spec(spec: str, e: int) -> tuple[tuple[int, ...], ...]:
    '''
    `cyclic:STEP,COUNT,STRIDE,a`, `singletons`, or a JSON list of class lists
    '''

    spec = spec.strip()

    if spec == 'singletons':
        return tuple((i,) for i in range(e))

    if spec.startswith('cyclic:'):
        try:
            step, count, stride, a = (int(v) for v in spec.removeprefix('cyclic:').split(','))
        except ValueError as err:
            raise ParameterError(f'expected cyclic:STEP,COUNT,STRIDE,a, got {spec!r}') from err
        return cyclic_groups(e, step, count, stride, a)

    try:
        groups = json.loads(spec)
        return tuple(tuple(int(i) for i in group) for group in groups)
    except (ValueError, TypeError) as err:
        raise ParameterError(f'cannot parse group spec {spec!r}') from err


def class_shift(s: TranslationScheme) -> int | None:
    '''
    the least c > 0 with groups[k] + c = groups[k + 1 mod d] for every k, if any
    '''

    e = s.frame.e
    groups = [frozenset(group) for group in s.groups]

    for c in range(1, e):
        if all(frozenset((i + c) % e for i in group) == groups[(k + 1) % s.d] for k, group in enumerate(groups)):
            return c

    return None


def _order_by_class(P: Eigenmatrix, part: FusionPartition, fused: Eigenmatrix, shift: int) -> Eigenmatrix:
    '''
    fused row t is the one holding character class -shift * t, so that
    entry (t, k) depends only on k - t
    '''

    e = P.d
    row_of_class = {}

    for r, rows in enumerate(fusion_row_classes(P, part)[1:], start=1):
        for row in rows:
            row_of_class[row - 1] = r

    order = [row_of_class[(-shift * t) % e] for t in range(fused.d)]

    if sorted(order) != list(range(1, fused.d + 1)):
        return fused

    return Eigenmatrix((fused.rows[0], *(fused.rows[r] for r in order)))


def translation_eigenmatrix(s: TranslationScheme) -> Eigenmatrix:
    '''
    fuse the cyclotomic eigenmatrix along the class groups (column 1 + i is class i);
    when a class shift cycles the groups, the nontrivial rows follow it
    '''

    try:
        P = cyclotomic_eigenmatrix(s.frame)
        part = FusionPartition(((0,), *(tuple(1 + i for i in group) for group in s.groups)))
        fused = bannai_muzychuk(P, part)
    except SchemeForgeError as e:
        raise e.under('translation_eigenmatrix') from e.__cause__

    shift = class_shift(s)
    if shift is not None:
        fused = _order_by_class(P, part, fused, shift)

    logger.info('translation scheme of class %d on GF(%d) is a fusion', s.d, s.frame.field.q)

    return fused


@dataclass(frozen=True)
class SRGParameters:
    n: int
    k: int
    lam: int
    mu: int


@dataclass(frozen=True)
class SRGReport:
    '''
    degenerate reports carry a single nontrivial eigenvalue in r and no parameters
    '''

    relation: int
    n: int
    k: int
    r: int
    s: int | None
    lam: int | None
    mu: int | None

    @property
    def degenerate(self) -> bool:
        return self.s is None

    @property
    def parameters(self) -> SRGParameters | None:
        if self.degenerate:
            return None
        return SRGParameters(self.n, self.k, self.lam, self.mu)


def srg_from_spectrum(n: int, k: int, r: int, s: int) -> SRGParameters:
    '''
    mu = k + r s and lam = mu + r + s, checked against (n - 1 - k) mu = k (k - 1 - lam)
    '''

    if r <= s or k < 1:
        raise ParameterError(f'need r > s and k >= 1, got k={k}, r={r}, s={s}')

    mu = k + r * s
    lam = mu + r + s

    if (n - 1 - k) * mu != k * (k - 1 - lam) or lam < 0 or mu < 0:
        raise InfeasibleParametersError(n, k, r, s, lam, mu)

    return SRGParameters(n, k, lam, mu)


def srg_check_translation(s: TranslationScheme, group: int) -> SRGReport:
    '''
    the nontrivial eigenvalues of relation `group` are the sums of
    eta_{(i + j) mod e} over i in its classes, for j = 0..e-1
    '''

    if not 1 <= group <= s.d:
        raise ParameterError(f'relation must be in 1..{s.d}, got {group}')

    eta = s.frame.rational_periods()
    e = s.frame.e
    classes = s.groups[group - 1]
    values = Counter(sum(eta[(i + j) % e] for i in classes) for j in range(e))

    n = s.frame.field.q
    k = s.valencies[group]

    if len(values) == 1:
        (r,) = values
        return SRGReport(relation=group, n=n, k=k, r=r, s=None, lam=None, mu=None)

    if len(values) > 2:
        raise NotStronglyRegularError(group, dict(values))

    low, high = sorted(values)

    try:
        parameters = srg_from_spectrum(n, k, high, low)
    except SchemeForgeError as e:
        raise e.under(f'relation {group}') from e.__cause__

    return SRGReport(
        relation=group, n=n, k=k, r=high, s=low, lam=parameters.lam, mu=parameters.mu,
    )
