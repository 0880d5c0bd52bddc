'''
define the exact first eigenmatrix of a commutative association scheme
'''

import math

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exceptions import NotAnEigenmatrixError

INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class Eigenmatrix:
    '''
    (d+1) x (d+1) integer matrix P; row 0 holds the valencies k_0 = 1, k_1..k_d,
    column 0 is all ones, and the lower-right d x d block is the principal part
    '''

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, 'rows', rows)

        size = len(rows)

        if size < 2:
            raise NotAnEigenmatrixError('an eigenmatrix has at least two rows')

        if any(len(row) != size for row in rows):
            raise NotAnEigenmatrixError('an eigenmatrix must be square')

        if any(row[0] != 1 for row in rows):
            raise NotAnEigenmatrixError('the first column must be all ones')

        if any(k <= 0 for k in rows[0]):
            raise NotAnEigenmatrixError(f'valencies must be positive, got {list(rows[0])}')

        if any(abs(v) > INT64_MAX for row in rows for v in row):
            raise NotAnEigenmatrixError('entries do not fit in 64-bit integers')

    @property
    def d(self) -> int:
        return len(self.rows) - 1

    @property
    def valencies(self) -> tuple[int, ...]:
        return self.rows[0]

    @property
    def order(self) -> int:
        '''
        |X|, the number of points
        '''
        return sum(self.rows[0])

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    @property
    def principal_part(self) -> np.ndarray:
        return self.array[1:, 1:]

    @cached_property
    def multiplicities(self) -> tuple[int, ...]:
        return multiplicities_from_eigenmatrix(self)

    def canonical(self) -> 'Eigenmatrix':
        '''
        row 0 followed by the nontrivial rows in lexicographic order
        '''
        return Eigenmatrix((self.rows[0], *sorted(self.rows[1:])))

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def _weighted_norms(P: Eigenmatrix) -> tuple[int, list[int]]:
    '''
    L = lcm of the valencies and S_j = L * sum_i P_ji^2 / k_i, all exact
    '''

    L = math.lcm(*P.valencies)
    weights = [L // k for k in P.valencies]

    return L, [sum(v * v * w for v, w in zip(row, weights)) for row in P.rows]


def multiplicities_from_eigenmatrix(P: Eigenmatrix) -> tuple[int, ...]:
    '''
    m_j = |X| / sum_i (P_ji^2 / k_i)
    '''

    L, norms = _weighted_norms(P)
    n = P.order
    multiplicities = []

    for j, norm in enumerate(norms):
        if norm == 0 or (n * L) % norm != 0:
            raise NotAnEigenmatrixError(f'multiplicity of row {j} is not an integer')
        multiplicities.append(n * L // norm)

    if multiplicities[0] != 1:
        raise NotAnEigenmatrixError(f'trivial multiplicity is {multiplicities[0]}, expected 1')

    if sum(multiplicities) != n:
        raise NotAnEigenmatrixError(f'multiplicities sum to {sum(multiplicities)}, expected {n}')

    return tuple(multiplicities)


def orthogonality_residual(P: Eigenmatrix) -> int:
    '''
    sum of |L * sum_i P_ji P_li / k_i - delta_jl L |X| / m_j| over all (j, l)

    exact, and zero for a genuine eigenmatrix
    '''

    L, _ = _weighted_norms(P)
    multiplicities = P.multiplicities

    A = np.array(P.rows, dtype=object)
    W = np.diag([L // k for k in P.valencies]).astype(object)
    gram = A @ W @ A.T

    target = np.diag([L * P.order // m for m in multiplicities]).astype(object)

    return int(sum(abs(v) for v in (gram - target).flat))


def is_pseudocyclic(P: Eigenmatrix) -> bool:
    '''
    true iff the nontrivial multiplicities coincide; the nontrivial valencies
    must then coincide with them too
    '''

    multiplicities = P.multiplicities[1:]

    if len(set(multiplicities)) != 1:
        return False

    f = multiplicities[0]

    if any(k != f for k in P.valencies[1:]):
        raise NotAnEigenmatrixError(
            f'multiplicities are all {f} but valencies are {list(P.valencies[1:])}'
        )

    return True
