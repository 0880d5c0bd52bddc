'''
define the projective spaces PG(m, q) as symmetric designs of points and hyperplanes,
their lines and spreads, and the alignment of extracted designs to them
'''

import itertools
import logging

from dataclasses import dataclass
from functools import cache
from functools import cached_property

import galois
import numpy as np

from .config import get_settings
from .design import DesignDecomposition
from .design import SymmetricDesign
from .design import design_from_incidence
from .design import design_isomorphic
from .eigenmatrix import Eigenmatrix
from .exceptions import CapExceededError
from .exceptions import GeometryError
from .exceptions import ParameterError
from .field import FieldTable
from .field import build_field
from .workers import map_chunks

logger = logging.getLogger(__name__)

INCIDENCE_CELLS = 1 << 22


@dataclass(frozen=True, eq=False)
class ProjectiveSpace:
    '''
    points are the nonzero vectors of GF(q)^(m+1) whose first nonzero coordinate is 1,
    in lexicographic order; hyperplanes are indexed by the same vectors and
    incidence[h, x] = 1 iff h . x = 0
    '''

    m: int
    q: int
    field: FieldTable
    points: np.ndarray
    incidence: np.ndarray
    design: SymmetricDesign

    @property
    def d(self) -> int:
        return (self.q ** (self.m + 1) - 1) // (self.q - 1)

    @property
    def k(self) -> int:
        return (self.q ** self.m - 1) // (self.q - 1)

    @property
    def lam(self) -> int:
        return (self.q ** (self.m - 1) - 1) // (self.q - 1)

    @cached_property
    def _lookup(self) -> np.ndarray:
        table = np.full(self.q ** (self.m + 1), -1, dtype=np.int64)
        table[self._keys(self.points)] = np.arange(len(self.points))
        return table

    def _keys(self, vectors: np.ndarray) -> np.ndarray:
        return vectors @ (self.q ** np.arange(self.m + 1, dtype=np.int64))

    def _normalize_rows(self, vectors: np.ndarray) -> np.ndarray:
        lead = vectors[np.arange(len(vectors)), np.argmax(vectors != 0, axis=1)]
        return self.field.mul(vectors, self.field.inverse(lead)[:, None])

    def normalize(self, vector) -> tuple[int, ...]:
        '''
        scale a nonzero vector so that its first nonzero coordinate is 1
        '''

        vector = np.asarray(vector, dtype=np.int64)

        if vector.shape != (self.m + 1,) or np.any((vector < 0) | (vector >= self.q)):
            raise GeometryError(f'{vector.tolist()} is not a vector of GF({self.q})^{self.m + 1}')

        if not vector.any():
            raise GeometryError('the zero vector is not a projective point')

        return tuple(int(v) for v in self._normalize_rows(vector[None, :])[0])

    def point_index(self, vector) -> int:
        key = int(self._keys(np.array(self.normalize(vector), dtype=np.int64)))
        return int(self._lookup[key])

    def line_through(self, u: int, v: int) -> tuple[int, ...]:
        '''
        the q + 1 points spanned by points u and v
        '''

        if u == v or not (0 <= u < self.d and 0 <= v < self.d):
            raise GeometryError(f'a line needs two distinct points, got {u} and {v}')

        f = self.field
        a, b = np.array([pair for pair in itertools.product(range(self.q), repeat=2) if any(pair)]).T
        span = f.add(f.mul(a[:, None], self.points[u][None, :]), f.mul(b[:, None], self.points[v][None, :]))
        indices = self._lookup[self._keys(self._normalize_rows(span))]

        return tuple(sorted({int(i) for i in indices}))

    @cached_property
    def lines(self) -> tuple[tuple[int, ...], ...]:
        '''
        all lines, each listed once, in sorted order
        '''

        found = []

        for u in range(self.d):
            seen = np.zeros(self.d, dtype=bool)
            for v in range(u + 1, self.d):
                if seen[v]:
                    continue
                line = self.line_through(u, v)
                seen[list(line)] = True
                if line[0] == u:
                    found.append(line)

        return tuple(sorted(found))


def _incidence(f: FieldTable, points: np.ndarray) -> np.ndarray:
    d, width = points.shape

    def block(start: int, stop: int) -> np.ndarray:
        acc = np.zeros((stop - start, d), dtype=np.int64)
        for i in range(width):
            acc = f.add(acc, f.mul(points[start:stop, i][:, None], points[:, i][None, :]))
        return (acc == 0).astype(np.uint8)

    return np.concatenate(map_chunks(block, d, max(1, INCIDENCE_CELLS // d)))


@cache
def _pg_space(m: int, q: int) -> ProjectiveSpace:
    primes, exponents = galois.factors(q)
    f = build_field(int(primes[0]), int(exponents[0]))

    points = np.array(
        [v for v in itertools.product(range(q), repeat=m + 1) if next((c for c in v if c), 0) == 1],
        dtype=np.int64,
    )
    points.setflags(write=False)

    incidence = _incidence(f, points)
    incidence.setflags(write=False)

    design = design_from_incidence(incidence)

    space = ProjectiveSpace(m=m, q=q, field=f, points=points, incidence=incidence, design=design)

    if design.parameters != (space.d, space.k, space.lam):
        raise GeometryError(f'PG({m},{q}) incidence gives 2-{design.parameters}')

    logger.info('built PG(%d,%d) as a symmetric 2-%s design', m, q, design.parameters)

    return space


def pg_space(m: int, q: int) -> ProjectiveSpace:
    '''
    the points and hyperplanes of PG(m, q), 2 <= m <= 4, q a prime power <= 16
    '''

    if not 2 <= m <= 4:
        raise ParameterError(f'dimension must be between 2 and 4, got {m}')

    if not 2 <= q <= 16 or not galois.is_prime_power(q):
        raise ParameterError(f'q must be a prime power at most 16, got {q}')

    d = (q ** (m + 1) - 1) // (q - 1)
    cap = get_settings().geometry_point_cap
    if d > cap:
        raise CapExceededError('projective points', d, cap)

    return _pg_space(m, q)


@dataclass(frozen=True)
class Spread:
    '''
    q^2 + 1 pairwise disjoint lines of PG(3, q) covering every point
    '''

    lines: tuple[tuple[int, ...], ...]


def validate_spread(space: ProjectiveSpace, spread: Spread) -> None:
    if space.m != 3:
        raise GeometryError(f'spreads live in PG(3, q), got PG({space.m},{space.q})')

    q = space.q

    if len(spread.lines) != q * q + 1:
        raise GeometryError(f'a spread has {q * q + 1} lines, got {len(spread.lines)}')

    for line in spread.lines:
        if len(line) != q + 1 or space.line_through(line[0], line[1]) != tuple(sorted(line)):
            raise GeometryError(f'{list(line)} is not a line of PG(3,{q})')

    covered = sorted(x for line in spread.lines for x in line)

    if covered != list(range(space.d)):
        raise GeometryError('spread lines are not disjoint or do not cover every point')


def _irreducible_quadratic(f: FieldTable) -> tuple[int, int]:
    '''
    the least (n, t) with x^2 - t x - n irreducible over GF(q)
    '''

    GF = f.galois_field
    leading = GF([1, 0, 0])

    for n in range(1, f.q):
        for t in range(f.q):
            if galois.Poly(leading - GF([0, t, n])).is_irreducible():
                return n, t

    raise GeometryError(f'no irreducible quadratic over GF({f.q})')


def regular_spread(space: ProjectiveSpace) -> Spread:
    '''
    GF(q)^4 viewed as GF(q^2)^2: the lines {(x, y, (x, y) A)} for A = aI + bC,
    C the companion matrix of an irreducible quadratic, and the line x = y = 0
    '''

    if space.m != 3:
        raise GeometryError(f'spreads live in PG(3, q), got PG({space.m},{space.q})')

    f = space.field
    n, t = _irreducible_quadratic(f)
    lines = [space.line_through(space.point_index((0, 0, 1, 0)), space.point_index((0, 0, 0, 1)))]

    for a, b in itertools.product(range(space.q), repeat=2):
        bn = int(f.mul(b, n))
        a_bt = int(f.add(a, f.mul(b, t)))
        u = space.point_index((1, 0, a, b))
        v = space.point_index((0, 1, bn, a_bt))
        lines.append(space.line_through(u, v))

    spread = Spread(lines=tuple(sorted(lines)))
    validate_spread(space, spread)

    return spread


@dataclass(frozen=True)
class AlignedEigenmatrix:
    '''
    an eigenmatrix reordered so that its principal part is
    marked * M + unmarked * (J - M) for the canonical PG incidence M
    '''

    eigenmatrix: Eigenmatrix
    point_map: tuple[int, ...]
    block_map: tuple[int, ...]


def align_eigenmatrix(T: DesignDecomposition, space: ProjectiveSpace) -> AlignedEigenmatrix:
    iso = design_isomorphic(T.design, space.design)

    if not iso:
        raise GeometryError(
            f'extracted 2-{T.design.parameters} design is not isomorphic to PG({space.m},{space.q})'
        )

    P = T.eigenmatrix.array
    d = T.eigenmatrix.d
    columns = np.array(iso.point_map) + 1
    rows = np.array(iso.block_map) + 1

    aligned = np.empty_like(P)
    aligned[:, 0] = 1
    aligned[0, 0] = P[0, 0]
    aligned[0, columns] = P[0, 1:]
    aligned[np.ix_(rows, columns)] = P[1:, 1:]

    M = space.incidence.astype(np.int64)
    expected = T.marked * M + T.unmarked * (1 - M)

    if not np.array_equal(aligned[1:, 1:], expected):
        raise GeometryError('aligned principal part is not in design form')

    logger.debug('aligned %d relations to PG(%d,%d)', d, space.m, space.q)

    return AlignedEigenmatrix(
        eigenmatrix=Eigenmatrix(tuple(map(tuple, aligned.tolist()))),
        point_map=iso.point_map,
        block_map=iso.block_map,
    )
