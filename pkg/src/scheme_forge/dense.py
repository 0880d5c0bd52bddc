'''
define the dense brute-force oracle: relation matrices as packed bitset rows,
intersection numbers, direct SRG checks and spectra
'''

import logging

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .config import get_settings
from .exceptions import CapExceededError
from .exceptions import NotAnAssociationSchemeError
from .exceptions import NotStronglyRegularError
from .exceptions import ParameterError
from .scheme import SRGParameters
from .scheme import TranslationScheme
from .workers import map_chunks

logger = logging.getLogger(__name__)

ROW_CHUNK = 256


def _pack(bits: np.ndarray) -> np.ndarray:
    '''
    bool rows -> uint64 words, bit y of a row is element y
    '''

    packed = np.packbits(bits, axis=1, bitorder='little')
    pad = (-packed.shape[1]) % 8

    if pad:
        packed = np.pad(packed, ((0, 0), (0, pad)))

    return np.ascontiguousarray(packed).view(np.uint64)


def _unpack(words: np.ndarray, n: int) -> np.ndarray:
    words = np.ascontiguousarray(np.atleast_2d(words))
    return np.unpackbits(words.view(np.uint8), axis=1, count=n, bitorder='little').astype(bool)


def _popcount(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class DenseScheme:
    '''
    d + 1 relation matrices on n points as packed rows;
    translation schemes are invariant under x -> x + a, so row 0 speaks for every row
    '''

    n: int
    relations: tuple[np.ndarray, ...]
    translation: bool = False

    @property
    def d(self) -> int:
        return len(self.relations) - 1

    @classmethod
    def from_matrices(cls, matrices, translation: bool = False) -> 'DenseScheme':
        matrices = [np.asarray(M) for M in matrices]
        n = matrices[0].shape[0]

        if any(M.shape != (n, n) for M in matrices):
            raise ParameterError('relation matrices must all be n x n')

        cap = get_settings().dense_point_cap
        if n > cap:
            raise CapExceededError('dense points', n, cap)

        return cls(n=n, relations=tuple(_pack(M != 0) for M in matrices), translation=translation)

    def matrix(self, relation: int) -> np.ndarray:
        return _unpack(self.relations[relation], self.n).astype(np.uint8)

    def neighbours(self, relation: int, x: int) -> np.ndarray:
        return np.flatnonzero(_unpack(self.relations[relation][x], self.n)[0])


def dense_materialize(s: TranslationScheme) -> DenseScheme:
    '''
    (x, y) in relation j iff the class of x - y lies in groups[j - 1]
    '''

    f = s.frame.field
    n = f.q
    cap = get_settings().dense_point_cap

    if n > cap:
        raise CapExceededError('dense points', n, cap)

    e = s.frame.e
    shift = s.frame.class_of(int(f.neg(1))) if f.p != 2 else 0

    for j, group in enumerate(s.groups, start=1):
        if {(i + shift) % e for i in group} != set(group):
            raise ParameterError(f'relation {j} is not symmetric')

    owner = np.array(s.group_of_class(), dtype=np.int64)
    elements = np.arange(n, dtype=np.int64)
    words = (n + 63) // 64
    relations = tuple(np.zeros((n, words), dtype=np.uint64) for _ in range(s.d + 1))

    def fill(start: int, stop: int) -> None:
        diffs = f.sub(elements[start:stop, None], elements[None, :])
        labels = np.where(diffs == 0, 0, owner[s.frame.class_table[diffs]])
        for j, R in enumerate(relations):
            R[start:stop] = _pack(labels == j)

    map_chunks(fill, n, ROW_CHUNK)

    for R in relations:
        R.setflags(write=False)

    logger.info('materialized %d relations on %d points', s.d + 1, n)

    return DenseScheme(n=n, relations=relations, translation=True)


def _identity_words(n: int) -> np.ndarray:
    x = np.arange(n)
    words = np.zeros((n, (n + 63) // 64), dtype=np.uint64)
    words[x, x // 64] = np.left_shift(np.uint64(1), (x % 64).astype(np.uint64))
    return words


_TRANSPOSE_MASKS = {
    j: np.uint64(sum(1 << b for b in range(64) if not b & j))
    for j in (32, 16, 8, 4, 2, 1)
}


def _transpose_blocks(words: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    '''
    cut packed rows into 64 x 64 bit blocks and transpose each block in place of bits;
    blocks[a, w, r] holds row 64a + r over the columns 64w..64w+63
    '''

    w = words.shape[1]
    padded = np.zeros((64 * w, w), dtype=np.uint64)
    padded[:n] = words

    blocks = np.ascontiguousarray(padded.reshape(w, 64, w).transpose(0, 2, 1))
    flipped = blocks.copy()

    for j, mask in _TRANSPOSE_MASKS.items():
        pairs = flipped.reshape(w, w, 64 // (2 * j), 2, j)
        lo = pairs[..., 0, :].copy()
        hi = pairs[..., 1, :].copy()
        shift = np.uint64(j)

        pairs[..., 0, :] = (lo & mask) | ((hi & mask) << shift)
        pairs[..., 1, :] = (hi & ~mask) | ((lo & ~mask) >> shift)

    return blocks, flipped


def _asymmetric_pair(words: np.ndarray, n: int) -> tuple[int, int] | None:
    blocks, flipped = _transpose_blocks(words, n)
    diff = blocks ^ flipped.transpose(1, 0, 2)
    at = np.argwhere(diff)

    if not at.size:
        return None

    a, w, r = (int(v) for v in at[0])
    word = int(diff[a, w, r])
    b = (word & -word).bit_length() - 1

    return 64 * a + r, 64 * w + b


def _check_axioms(ds: DenseScheme) -> None:
    n = ds.n

    bad = np.flatnonzero(np.any(ds.relations[0] != _identity_words(n), axis=1))
    if bad.size:
        raise NotAnAssociationSchemeError('R_0 is not the identity', ('row', int(bad[0])))

    union = np.zeros_like(ds.relations[0])
    total = np.zeros(n, dtype=np.int64)

    for j, R in enumerate(ds.relations):
        counts = _popcount(R)

        if not counts.any():
            raise NotAnAssociationSchemeError(f'relation {j} is empty', ('relation', j))

        union |= R
        total += counts

    bad = np.flatnonzero((total != n) | (_popcount(union) != n))
    if bad.size:
        raise NotAnAssociationSchemeError('relations do not partition X x X', ('row', int(bad[0])))

    for j in range(1, ds.d + 1):
        pair = _asymmetric_pair(ds.relations[j], n)
        if pair is not None:
            raise NotAnAssociationSchemeError(f'relation {j} is not symmetric', pair)


def _intersections_at(ds: DenseScheme, x: int) -> np.ndarray:
    '''
    p[i, j, k] = #{z : (x, z) in R_i, (z, y) in R_j}, constant over y with (x, y) in R_k
    '''

    size = ds.d + 1
    base = np.stack([R[x] for R in ds.relations])
    p = np.zeros((size, size, size), dtype=np.int64)

    for k in range(size):
        ys = ds.neighbours(k, x)

        for j in range(size):
            counts = _popcount(base[:, None, :] & ds.relations[j][ys][None, :, :])
            bad = np.argwhere(counts != counts[:, :1])

            if bad.size:
                i, at = (int(v) for v in bad[0])
                raise NotAnAssociationSchemeError(
                    f'p[{i}][{j}][{k}] is not constant', (x, int(ys[0]), int(ys[at])),
                )

            p[:, j, k] = counts[:, 0]

    return p


def verify_scheme_dense(ds: DenseScheme) -> np.ndarray:
    '''
    check the association scheme axioms and return the intersection numbers p[i, j, k]
    '''

    _check_axioms(ds)

    if ds.translation:
        return _intersections_at(ds, 0)

    def scan(start: int, stop: int) -> np.ndarray:
        first = _intersections_at(ds, start)
        for x in range(start + 1, stop):
            if not np.array_equal(_intersections_at(ds, x), first):
                raise NotAnAssociationSchemeError('intersection numbers depend on the base point', (start, x))
        return first

    tensors = map_chunks(scan, ds.n, ROW_CHUNK)

    for start, tensor in zip(range(0, ds.n, ROW_CHUNK), tensors):
        if not np.array_equal(tensor, tensors[0]):
            raise NotAnAssociationSchemeError('intersection numbers depend on the base point', (0, start))

    return tensors[0]


def dense_srg_check(ds: DenseScheme, relation: int, full: bool = False) -> SRGParameters | None:
    '''
    A^2 = k I + lam A + mu (J - I - A) by counting common neighbours with popcounts;
    None for a complete graph
    '''

    if not 1 <= relation <= ds.d:
        raise ParameterError(f'relation must be in 1..{ds.d}, got {relation}')

    A = ds.relations[relation]
    n = ds.n
    rows = 1 if ds.translation and not full else n

    def scan(start: int, stop: int) -> set[tuple[int, int | None, int | None]]:
        found = set()

        for x in range(start, stop):
            common = _popcount(A[x] & A)
            adjacent = _unpack(A[x], n)[0]
            others = ~adjacent
            others[x] = False

            lams = Counter(common[adjacent].tolist())
            mus = Counter(common[others].tolist())

            if len(lams) > 1 or len(mus) > 1:
                raise NotStronglyRegularError(relation, dict(lams + mus))

            found.add((int(common[x]), next(iter(lams), None), next(iter(mus), None)))

        return found

    shapes = set().union(*map_chunks(scan, rows, ROW_CHUNK))

    if len(shapes) != 1:
        raise NotStronglyRegularError(relation, dict(Counter(shape[0] for shape in shapes)))

    k, lam, mu = shapes.pop()

    if mu is None:
        return None

    return SRGParameters(n=n, k=k, lam=lam, mu=mu)


def dense_spectrum(ds: DenseScheme, relation: int) -> dict[int, int]:
    '''
    eigenvalue -> multiplicity of one relation matrix, checked to be integral
    '''

    values = np.linalg.eigvalsh(ds.matrix(relation).astype(np.float64))
    rounded = np.rint(values)

    if np.max(np.abs(values - rounded)) > 1e-6:
        raise NotAnAssociationSchemeError('relation has non-integral eigenvalues', (relation,))

    return dict(sorted(Counter(int(v) for v in rounded).items()))
