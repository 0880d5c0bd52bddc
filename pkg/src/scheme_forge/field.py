'''
define exact GF(p^m) arithmetic on top of galois, with power, discrete log and trace tables

elements are the integers 0..q-1; the base-p digit k of an element is its
coefficient of x^k modulo the field's defining polynomial, which is also
the integer representation galois uses
'''

import itertools
import logging
import math

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cache

import galois
import numpy as np

from .config import get_settings
from .exceptions import CapExceededError
from .exceptions import InternalFaultError
from .exceptions import ParameterError
from .exceptions import ReducibleModulusError

logger = logging.getLogger(__name__)


def modulus_poly(modulus: tuple[int, ...], p: int) -> galois.Poly:
    '''
    the galois polynomial of a coefficient tuple given from the constant term up
    '''
    return galois.Poly(list(reversed(modulus)), field=galois.GF(p))


@cache
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    '''
    the lexicographically least monic irreducible polynomial of degree m over GF(p),
    coefficients compared from the constant term up
    '''

    if m == 1:
        return (0, 1)

    for c0 in range(1, p):
        for middle in itertools.product(range(p), repeat=m - 1):
            candidate = (c0, *middle, 1)

            if modulus_poly(candidate, p).is_irreducible():
                logger.debug('default modulus for GF(%d^%d): %s', p, m, candidate)
                return candidate

    raise InternalFaultError(f'no irreducible polynomial of degree {m} over GF({p})')


def _ints(a) -> np.ndarray:
    return np.asarray(a).view(np.ndarray).astype(np.int64)


@dataclass(frozen=True, eq=False)
class FieldTable:
    '''
    an immutable finite field GF(p^m) with its lookup tables

    power_table[i] = alpha^i for 0 <= i <= q-2
    dlog_table[x] = i with alpha^i = x, and -1 at 0
    trace_table[x] = Tr(x) in 0..p-1

    arithmetic goes through the galois field class; inputs and outputs are
    integer arrays (or scalars) in 0..q-1
    '''

    p: int
    m: int
    q: int
    modulus: tuple[int, ...]
    alpha: int
    galois_field: type[galois.FieldArray]
    power_table: np.ndarray
    dlog_table: np.ndarray
    trace_table: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    def digits(self, x) -> np.ndarray:
        '''
        coefficient vectors of one or many elements, shape (..., m)
        '''

        x = np.asarray(x, dtype=np.int64)
        return (x[..., None] // self.weights) % self.p

    def element(self, digits) -> np.ndarray:
        '''
        the element with the given coefficient vector, inverse of digits
        '''
        return (np.asarray(digits, dtype=np.int64) % self.p) @ self.weights

    def _lift(self, x) -> galois.FieldArray:
        return self.galois_field(np.asarray(x, dtype=np.int64))

    def add(self, x, y) -> np.ndarray:
        '''
        x + y elementwise, broadcasting like numpy
        '''
        return _ints(self._lift(x) + self._lift(y))

    def neg(self, x) -> np.ndarray:
        '''
        -x elementwise
        '''
        return _ints(-self._lift(x))

    def sub(self, x, y) -> np.ndarray:
        '''
        x - y elementwise
        '''
        return _ints(self._lift(x) - self._lift(y))

    def mul(self, x, y) -> np.ndarray:
        '''
        x * y elementwise, broadcasting like numpy
        '''
        return _ints(self._lift(x) * self._lift(y))

    def inverse(self, x) -> np.ndarray:
        '''
        1 / x elementwise; 0 is rejected
        '''

        x = np.asarray(x, dtype=np.int64)

        if np.any(x == 0):
            raise ParameterError('0 has no multiplicative inverse')

        return _ints(np.reciprocal(self._lift(x)))

    def power(self, i: int) -> int:
        '''
        alpha^i, for any integer i
        '''
        return int(self.power_table[i % (self.q - 1)])

    def dlog(self, x: int) -> int:
        '''
        the i in 0..q-2 with alpha^i = x
        '''

        if not 0 < x < self.q:
            raise ParameterError(f'dlog is defined on nonzero elements, got {x}')
        return int(self.dlog_table[x])


def _galois_field(p: int, m: int, modulus: tuple[int, ...]) -> type[galois.FieldArray]:
    if m == 1:
        return galois.GF(p)

    return galois.GF(p ** m, irreducible_poly=modulus_poly(modulus, p))


def _power_table(alpha: galois.FieldArray, n: int) -> np.ndarray:
    '''
    alpha^0..alpha^(n-1): one block of sqrt(n) powers times every power of alpha^block
    '''

    block = max(1, math.isqrt(n))
    head = alpha ** np.arange(block)
    steps = (alpha ** block) ** np.arange(-(-n // block))
    powers = (steps[:, None] * head[None, :]).reshape(-1)[:n]

    return powers.view(np.ndarray).astype(np.int32)


def _trace_table(GF: type[galois.FieldArray], p: int, m: int) -> np.ndarray:
    '''
    Tr is GF(p)-linear, so Tr(x) = sum_k c_k Tr(x^k) over the digits c_k of x
    '''

    if m == 1:
        return np.arange(p, dtype=np.int8 if p < 128 else np.int32)

    basis = GF(p ** np.arange(m, dtype=np.int64))
    basis_traces = basis.field_trace().view(np.ndarray).astype(np.int64)

    q = p ** m
    elements = np.arange(q, dtype=np.int64)
    table = np.zeros(q, dtype=np.int64)

    for k, t in enumerate(basis_traces.tolist()):
        if t:
            table += ((elements // p ** k) % p) * t

    return (table % p).astype(np.int8 if p < 128 else np.int32)


@cache
def _build_field(p: int, m: int, modulus: tuple[int, ...]) -> FieldTable:
    q = p ** m
    GF = _galois_field(p, m, modulus)
    alpha = GF.primitive_element
    power_table = _power_table(alpha, q - 1)

    dlog_table = np.full(q, -1, dtype=np.int32)
    dlog_table[power_table] = np.arange(q - 1, dtype=np.int32)

    if power_table[0] != 1 or dlog_table[0] != -1 or np.any(dlog_table[1:] < 0):
        raise InternalFaultError(f'power table of GF({p}^{m}) is not a bijection')

    trace_table = _trace_table(GF, p, m)

    for table in (power_table, dlog_table, trace_table):
        table.setflags(write=False)

    logger.info('built GF(%d^%d), modulus %s, alpha %d', p, m, modulus, int(alpha))

    return FieldTable(
        p=p,
        m=m,
        q=q,
        modulus=modulus,
        alpha=int(alpha),
        galois_field=GF,
        power_table=power_table,
        dlog_table=dlog_table,
        trace_table=trace_table,
    )


def build_field(p: int, m: int, modulus: Iterable[int] | None = None) -> FieldTable:
    '''
    build (or fetch the cached) GF(p^m)

    modulus is the monic defining polynomial as coefficients from the constant term up;
    it defaults to default_modulus(p, m)
    '''

    if not galois.is_prime(p):
        raise ParameterError(f'p must be prime, got {p}')

    if m < 1:
        raise ParameterError(f'extension degree must be at least 1, got {m}')

    cap = get_settings().field_order_cap
    if p ** m > cap:
        raise CapExceededError('field order', p ** m, cap)

    if modulus is None:
        return _build_field(p, m, default_modulus(p, m))

    modulus = tuple(int(c) for c in modulus)

    if len(modulus) != m + 1 or modulus[-1] != 1 or any(not 0 <= c < p for c in modulus):
        raise ParameterError(
            f'modulus must be {m + 1} coefficients in 0..{p - 1} ending in 1, got {list(modulus)}'
        )

    if not modulus_poly(modulus, p).is_irreducible():
        raise ReducibleModulusError(p, modulus)

    return _build_field(p, m, modulus)


def trace(f: FieldTable, x: int) -> int:
    '''
    Tr(x) = x + x^p + ... + x^(p^(m-1)) as a residue mod p
    '''

    if not 0 <= x < f.q:
        raise ParameterError(f'{x} is not an element of GF({f.q})')

    return int(f.trace_table[x])


def additive_character_class_counts(f: FieldTable, elements) -> tuple[int, ...]:
    '''
    c_j = #{x in elements : Tr(x) = j}; the character sum over the set is sum_j c_j zeta_p^j
    '''

    if not isinstance(elements, np.ndarray):
        elements = list(elements)

    elements = np.asarray(elements, dtype=np.int64)

    if elements.size == 0:
        raise ParameterError('character sums need a nonempty set')

    if elements.min() < 0 or elements.max() >= f.q:
        raise ParameterError(f'set contains indices outside GF({f.q})')

    counts = np.bincount(f.trace_table[elements], minlength=f.p)

    return tuple(int(c) for c in counts)


def rational_character_sum(counts: Iterable[int]) -> int | None:
    '''
    the exact character sum of trace counts when it is a rational integer, else None

    for odd p, sum_j c_j zeta^j is rational iff c_1 = ... = c_{p-1}, and then
    equals c_0 - c_1 because zeta + ... + zeta^(p-1) = -1
    '''

    counts = tuple(counts)

    if len(counts) == 2:
        return counts[0] - counts[1]

    if len(set(counts[1:])) != 1:
        return None

    return counts[0] - counts[1]
