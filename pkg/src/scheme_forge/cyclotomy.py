'''
define cyclotomic classes, Gaussian periods and the cyclotomic first eigenmatrix
'''

import logging

from dataclasses import dataclass

import numpy as np

from galois import divisors

from .eigenmatrix import Eigenmatrix
from .exceptions import IrrationalPeriodsError
from .exceptions import ParameterError
from .field import FieldTable
from .field import rational_character_sum
from .workers import map_chunks

logger = logging.getLogger(__name__)

PERIOD_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class CyclotomicFrame:
    '''
    GF(q) split into the e cosets C_i = alpha^i <alpha^e> of the index-e subgroup

    trace_counts[i][j] counts the elements of C_i with trace j;
    periods[i] is eta_i as an int when rational, else the trace-count vector
    '''

    field: FieldTable
    e: int
    class_size: int
    class_table: np.ndarray
    trace_counts: tuple[tuple[int, ...], ...]
    periods: tuple[int | tuple[int, ...], ...]

    @property
    def rational(self) -> bool:
        return all(isinstance(eta, int) for eta in self.periods)

    def class_of(self, x: int) -> int:
        if not 0 < x < self.field.q:
            raise ParameterError(f'class_of is defined on nonzero elements, got {x}')
        return int(self.class_table[x])

    def class_elements(self, i: int) -> np.ndarray:
        '''
        alpha^i, alpha^(i+e), alpha^(i+2e), ...
        '''

        return self.field.power_table[i % self.e::self.e]

    def rational_periods(self) -> tuple[int, ...]:
        if not self.rational:
            raise IrrationalPeriodsError(self.e, self.trace_counts)
        return tuple(self.periods)


def build_frame(f: FieldTable, e: int) -> CyclotomicFrame:
    '''
    classify every nonzero element and accumulate the trace counts of each class
    in one pass over the power table (alpha^t lies in class t mod e)
    '''

    n = f.q - 1

    if e < 1 or n % e != 0:
        raise ParameterError(f'e must divide q - 1 = {n}, got {e}')

    p = f.p

    def accumulate(start: int, stop: int) -> np.ndarray:
        t = np.arange(start, stop, dtype=np.int64)
        keys = (t % e) * p + f.trace_table[f.power_table[start:stop]]
        return np.bincount(keys, minlength=e * p)

    counts = sum(map_chunks(accumulate, n, PERIOD_CHUNK)).reshape(e, p)
    trace_counts = tuple(tuple(int(c) for c in row) for row in counts)

    periods = []
    for row in trace_counts:
        eta = rational_character_sum(row)
        periods.append(row if eta is None else eta)

    class_table = np.full(f.q, -1, dtype=np.int32)
    class_table[1:] = f.dlog_table[1:] % e
    class_table.setflags(write=False)

    frame = CyclotomicFrame(
        field=f,
        e=e,
        class_size=n // e,
        class_table=class_table,
        trace_counts=trace_counts,
        periods=tuple(periods),
    )

    logger.info(
        'built cyclotomic frame on GF(%d), e=%d, rational periods: %s',
        f.q, e, frame.rational,
    )

    return frame


def cyclotomic_eigenmatrix(frame: CyclotomicFrame) -> Eigenmatrix:
    '''
    row 0 holds the valencies; entry (1+j, 1+i) is eta_{(i+j) mod e},
    the eigenvalue of the class-i Cayley graph at a character indexed from class j
    '''

    try:
        eta = frame.rational_periods()
    except IrrationalPeriodsError as e:
        raise e.under('cyclotomic_eigenmatrix') from e.__cause__

    e = frame.e
    rows = [(1, *(frame.class_size,) * e)]

    for j in range(e):
        rows.append((1, *(eta[(i + j) % e] for i in range(e))))

    return Eigenmatrix(tuple(rows))


def amorphous_cyclotomic_predicate(p: int, m: int, e: int) -> bool:
    '''
    m even and e divides p^m' + 1 for some divisor m' of m/2
    '''

    if e < 1 or (p ** m - 1) % e != 0:
        raise ParameterError(f'e must divide p^m - 1 = {p ** m - 1}, got {e}')

    if m % 2 != 0:
        return False

    return any((p ** d + 1) % e == 0 for d in divisors(m // 2))
