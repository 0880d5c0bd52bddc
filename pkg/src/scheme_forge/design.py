'''
define symmetric 2-designs, their extraction from pseudocyclic eigenmatrices,
and isomorphism testing between them
'''

import dataclasses
import logging

from collections import Counter
from dataclasses import dataclass
from enum import StrEnum
from typing import Self

import numpy as np

from .config import get_settings
from .eigenmatrix import Eigenmatrix
from .eigenmatrix import is_pseudocyclic
from .exceptions import CapExceededError
from .exceptions import NotADesignError
from .exceptions import ParameterError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SymmetricDesign:
    '''
    d points, d blocks of size k, every pair of points in lam blocks;
    incidence rows are blocks and columns are points
    '''

    d: int
    k: int
    lam: int
    incidence: np.ndarray

    @property
    def parameters(self) -> tuple[int, int, int]:
        return self.d, self.k, self.lam

    def dual(self) -> 'SymmetricDesign':
        return design_from_incidence(self.incidence.T)

    def blocks(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in np.flatnonzero(row)) for row in self.incidence]

    def bitstrings(self) -> list[str]:
        return [''.join('1' if v else '0' for v in row) for row in self.incidence]

    def __eq__(self, other):
        if not isinstance(other, SymmetricDesign):
            return NotImplemented
        return np.array_equal(self.incidence, other.incidence)

    __hash__ = None


def verify_design(M) -> tuple[int, int, int]:
    '''
    check that M is the incidence matrix of a symmetric 2-(d, k, lam) design
    with 1 <= lam < k < d, and return (d, k, lam)
    '''

    M = np.asarray(M)

    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotADesignError('incidence matrix must be square', tuple(M.shape))

    d = M.shape[0]

    if d < 2:
        raise NotADesignError('a design needs at least two points', (d,))

    bad = np.argwhere((M != 0) & (M != 1))
    if bad.size:
        raise NotADesignError('entries must be 0 or 1', tuple(int(v) for v in bad[0]))

    M = M.astype(np.int64)

    row_sums = M.sum(axis=1)
    k = int(row_sums[0])
    bad = np.flatnonzero(row_sums != k)
    if bad.size:
        raise NotADesignError('blocks have different sizes', ('block', int(bad[0])))

    column_sums = M.sum(axis=0)
    bad = np.flatnonzero(column_sums != k)
    if bad.size:
        raise NotADesignError('points have different replication numbers', ('point', int(bad[0])))

    gram = M.T @ M
    lam = int(gram[0, 1])
    off_diagonal = ~np.eye(d, dtype=bool)
    bad = np.argwhere(off_diagonal & (gram != lam))
    if bad.size:
        x, y = (int(v) for v in bad[0])
        raise NotADesignError('point pairs lie in different numbers of blocks', ('pair', x, y))

    if not 1 <= lam < k < d:
        raise NotADesignError('degenerate parameters', (d, k, lam))

    if lam * (d - 1) != k * (k - 1):
        raise NotADesignError('lambda (d - 1) != k (k - 1)', (d, k, lam))

    return d, k, lam


def design_from_incidence(M) -> SymmetricDesign:
    d, k, lam = verify_design(M)

    incidence = np.array(M, dtype=np.uint8)
    incidence.setflags(write=False)

    return SymmetricDesign(d=d, k=k, lam=lam, incidence=incidence)


def complement_design(D: SymmetricDesign) -> SymmetricDesign:
    '''
    the (d, d - k, d - 2k + lam) design with incidence J - M
    '''

    return design_from_incidence(1 - D.incidence)


def develop_difference_set(d: int, base) -> SymmetricDesign:
    '''
    the circulant design whose block i is base + i mod d
    '''

    M = np.zeros((d, d), dtype=np.uint8)

    for i in range(d):
        for b in base:
            M[i, (b + i) % d] = 1

    return design_from_incidence(M)


def is_circulant(M) -> bool:
    '''
    true iff M[i][j] depends only on (j - i) mod d
    '''

    M = np.asarray(M)

    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ParameterError(f'circulance is defined for square matrices, got shape {M.shape}')

    return all(np.array_equal(row, np.roll(M[0], i)) for i, row in enumerate(M))


class Orientation(StrEnum):
    '''
    which principal-part value marks the ones of the incidence matrix
    '''
    UPPER = 'UPPER'
    LOWER = 'LOWER'

    @classmethod
    def tell(cls, marked: int, unmarked: int) -> Self:
        if marked > unmarked:
            return cls.UPPER
        return cls.LOWER


@dataclass(frozen=True)
class DesignDecomposition:
    '''
    a pseudocyclic eigenmatrix whose principal part is
    marked * M + unmarked * (J - M) for the incidence matrix M of a symmetric design
    '''

    eigenmatrix: Eigenmatrix
    design: SymmetricDesign
    marked: int
    unmarked: int
    other_orientation_valid: bool = False

    @property
    def orientation(self) -> Orientation:
        return Orientation.tell(self.marked, self.unmarked)

    @property
    def r(self) -> int:
        return max(self.marked, self.unmarked)

    @property
    def s(self) -> int:
        return min(self.marked, self.unmarked)

    @property
    def f(self) -> int:
        return self.eigenmatrix.valencies[1]


def _decompose(P: Eigenmatrix, marked: int, unmarked: int) -> DesignDecomposition:
    d = P.d
    numerator = -(unmarked * d + 1)
    gap = marked - unmarked

    if numerator % gap != 0 or numerator // gap <= 0:
        raise NotADesignError('-(sd + 1) / (r - s) is not a positive integer', (marked, unmarked))

    k = numerator // gap
    P0 = P.principal_part
    M = (P0 == marked).astype(np.int64)

    design = design_from_incidence(M)

    if design.k != k:
        raise NotADesignError('block size differs from -(sd + 1) / (r - s)', (design.k, k))

    n = P.order
    f = P.valencies[1]
    I = np.eye(d, dtype=np.int64)
    J = np.ones((d, d), dtype=np.int64)

    if not np.array_equal(gap * gap * (M @ M.T), n * I + (unmarked * unmarked * d + 2 * unmarked - f) * J):
        raise NotADesignError('(r - s)^2 M M^T != |X| I + (s^2 d + 2s - f) J', (marked, unmarked))

    if not np.array_equal(f * J + P0 @ P0.T, n * I):
        raise NotADesignError('f J + P0 P0^T != |X| I', (marked, unmarked))

    return DesignDecomposition(eigenmatrix=P, design=design, marked=marked, unmarked=unmarked)


def extract_design(P: Eigenmatrix) -> DesignDecomposition:
    '''
    read the symmetric design off a pseudocyclic eigenmatrix whose principal part
    takes two values; both value-to-incidence assignments are tried and the one
    with the smaller block size wins when both give designs
    '''

    if not is_pseudocyclic(P):
        raise ParameterError('design extraction needs a pseudocyclic eigenmatrix')

    values = sorted({int(v) for v in P.principal_part.flat})

    if len(values) != 2:
        raise NotADesignError(f'principal part takes {len(values)} values', tuple(values))

    low, high = values
    found = []

    for marked, unmarked in ((high, low), (low, high)):
        try:
            found.append(_decompose(P, marked, unmarked))
        except NotADesignError as e:
            logger.debug('orientation marked=%d rejected: %s', marked, e.args[0])

    if not found:
        raise NotADesignError('neither orientation gives a symmetric design', tuple(values))

    best = min(found, key=lambda T: T.design.k)

    logger.info('extracted symmetric 2-%s design', best.design.parameters)

    return dataclasses.replace(best, other_orientation_valid=len(found) == 2)


def eigenvalues_for_gap(D: SymmetricDesign, gap: int) -> tuple[int, int]:
    '''
    the (marked, unmarked) pair with marked - unmarked = gap and
    unmarked = -(k gap + 1) / d
    '''

    numerator = -(D.k * gap + 1)

    if gap == 0 or numerator % D.d != 0:
        raise ParameterError(f'd = {D.d} does not divide k * {gap} + 1')

    unmarked = numerator // D.d

    return unmarked + gap, unmarked


def synthesize_eigenmatrix(D: SymmetricDesign, r: int, s: int) -> Eigenmatrix:
    '''
    the pseudocyclic eigenmatrix with principal part r M + s (J - M),
    |X| = (r - s)^2 (k - lam) points and valency f = (|X| - 1) / d
    '''

    gap = r - s

    if gap == 0 or s * D.d != -(D.k * gap + 1):
        raise ParameterError(f'(r, s) = ({r}, {s}) does not satisfy k = -(sd + 1) / (r - s)')

    n = gap * gap * (D.k - D.lam)

    if (n - 1) % D.d != 0 or n <= 1:
        raise ParameterError(f'|X| - 1 = {n - 1} is not a positive multiple of d = {D.d}')

    f = (n - 1) // D.d
    M = D.incidence.astype(np.int64)
    P0 = r * M + s * (1 - M)

    rows = [(1, *(f,) * D.d)]
    rows.extend((1, *row) for row in P0.tolist())

    return Eigenmatrix(tuple(rows))


@dataclass(frozen=True)
class IsomorphismResult:
    '''
    point_map[x] is the image of point x; block_map[b] the image of block b
    '''

    isomorphic: bool
    point_map: tuple[int, ...] | None = None
    block_map: tuple[int, ...] | None = None

    def __bool__(self):
        return self.isomorphic


def _triple_invariants(M: np.ndarray) -> list[tuple]:
    '''
    for each column x, the distribution of #{rows containing x, y, z} over pairs y < z
    '''

    M = M.astype(np.int64)
    d = M.shape[1]
    triples = np.einsum('bx,by,bz->xyz', M, M, M)
    upper = np.triu(np.ones((d, d), dtype=bool), k=1)
    invariants = []

    for x in range(d):
        keep = np.ones(d, dtype=bool)
        keep[x] = False
        counts = triples[x][np.ix_(keep, keep)][upper[:d - 1, :d - 1]]
        values, multiplicities = np.unique(counts, return_counts=True)
        invariants.append(tuple(zip(values.tolist(), multiplicities.tolist())))

    return invariants


def design_isomorphic(A: SymmetricDesign, B: SymmetricDesign) -> IsomorphismResult:
    '''
    backtracking over point images, pruned by triple-count invariants of points
    and by the multiset of (block invariant, incidence with mapped points) profiles
    '''

    if A.parameters != B.parameters:
        return IsomorphismResult(False)

    d = A.d
    cap = get_settings().isomorphism_point_cap
    if d > cap:
        raise CapExceededError('design points', d, cap)

    MA = A.incidence.astype(np.int64)
    MB = B.incidence.astype(np.int64)

    point_inv_a = _triple_invariants(MA)
    point_inv_b = _triple_invariants(MB)

    if Counter(point_inv_a) != Counter(point_inv_b):
        return IsomorphismResult(False)

    # the points of the dual design are the blocks
    dual_inv_a = _triple_invariants(A.dual().incidence)
    dual_inv_b = _triple_invariants(B.dual().incidence)
    block_keys = {inv: i for i, inv in enumerate(sorted(set(dual_inv_a) | set(dual_inv_b)))}
    block_inv_a = [block_keys[inv] for inv in dual_inv_a]
    block_inv_b = [block_keys[inv] for inv in dual_inv_b]

    if Counter(block_inv_a) != Counter(block_inv_b):
        return IsomorphismResult(False)

    cand_by_inv: dict[tuple, list[int]] = {}
    for y in range(d):
        cand_by_inv.setdefault(point_inv_b[y], []).append(y)

    blocks_b = {frozenset(np.flatnonzero(row).tolist()): i for i, row in enumerate(MB)}
    blocks_a = [np.flatnonzero(row).tolist() for row in MA]

    used = [False] * d
    point_map = [-1] * d
    profiles_a = [(inv,) for inv in block_inv_a]
    profiles_b = [(inv,) for inv in block_inv_b]
    visited = 0

    def block_images() -> list[int] | None:
        images = []
        for block in blocks_a:
            image = blocks_b.get(frozenset(point_map[x] for x in block))
            if image is None:
                return None
            images.append(image)
        return images

    def dfs(x: int) -> list[int] | None:
        nonlocal profiles_a, profiles_b, visited

        if x == d:
            return block_images()

        saved_a, saved_b = profiles_a, profiles_b
        next_a = [prof + (int(MA[b, x]),) for b, prof in enumerate(profiles_a)]
        wanted = Counter(next_a)

        for y in cand_by_inv.get(point_inv_a[x], []):
            if used[y]:
                continue

            visited += 1
            next_b = [prof + (int(MB[b, y]),) for b, prof in enumerate(profiles_b)]

            if Counter(next_b) != wanted:
                continue

            used[y] = True
            point_map[x] = y
            profiles_a, profiles_b = next_a, next_b

            images = dfs(x + 1)
            if images is not None:
                return images

            profiles_a, profiles_b = saved_a, saved_b
            used[y] = False
            point_map[x] = -1

        return None

    images = dfs(0)

    logger.debug('isomorphism search visited %d candidate images', visited)

    if images is None:
        return IsomorphismResult(False)

    return IsomorphismResult(True, tuple(point_map), tuple(images))
