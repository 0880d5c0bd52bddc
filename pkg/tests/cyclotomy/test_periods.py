import random

import numpy as np
import pytest

from galois import divisors

from scheme_forge.cyclotomy import amorphous_cyclotomic_predicate
from scheme_forge.cyclotomy import build_frame
from scheme_forge.cyclotomy import cyclotomic_eigenmatrix
from scheme_forge.eigenmatrix import is_pseudocyclic
from scheme_forge.eigenmatrix import orthogonality_residual
from scheme_forge.exceptions import IrrationalPeriodsError
from scheme_forge.exceptions import ParameterError
from scheme_forge.field import build_field
from scheme_forge.fusion import is_amorphous

from ..utils import _cyclotomic
from ..utils import _frame


def _random_parameters(count: int, seed: int = 2024) -> list[tuple[int, int, int]]:
    rng = random.Random(seed)
    fields = [(p, m) for p in (2, 3, 5, 7, 11, 13) for m in range(1, 17) if 2 < p ** m <= 1 << 16]
    found = []

    while len(found) < count:
        p, m = rng.choice(fields)
        e = rng.choice([e for e in divisors(p ** m - 1) if e <= 64])
        found.append((p, m, int(e)))

    return found


@pytest.mark.parametrize('p, m, e', _random_parameters(50))
def test_periods_sum_to_minus_one(p, m, e):
    frame = _frame(p, m, e)

    assert frame.class_size * e == p ** m - 1
    assert all(sum(row) == frame.class_size for row in frame.trace_counts)

    q = p ** m
    columns = [sum(row[j] for row in frame.trace_counts) for j in range(p)]
    assert columns == [q // p - 1] + [q // p] * (p - 1)

    # sum_j columns[j] zeta^j with zeta + ... + zeta^(p-1) = -1
    assert columns[0] - columns[1] == -1

    if frame.rational:
        assert sum(frame.periods) == -1


def test_random_parameters_include_irrational_frames():
    assert any(not _frame(*params).rational for params in _random_parameters(50))


def test_classes_partition_the_multiplicative_group():
    frame = _frame(2, 12, 45)
    seen = np.concatenate([frame.class_elements(i) for i in range(45)])

    assert sorted(seen.tolist()) == list(range(1, 4096))
    assert all(frame.class_of(int(x)) == 7 for x in frame.class_elements(7)[:10])
    assert frame.class_table[0] == -1


def test_paley_nine():
    frame = _frame(3, 2, 2)

    assert sorted(frame.rational_periods()) == [-2, 1]


def test_vls_periods_are_rational():
    frame = _frame(3, 5, 11)

    assert frame.rational
    assert sorted(frame.periods) == [-5] * 5 + [4] * 6

    for counts in frame.trace_counts:
        assert counts[1] == counts[2]


def test_cubic_periods_of_seven_are_irrational():
    frame = _frame(7, 1, 3)

    assert not frame.rational

    with pytest.raises(IrrationalPeriodsError):
        frame.rational_periods()

    with pytest.raises(IrrationalPeriodsError) as info:
        cyclotomic_eigenmatrix(frame)

    assert info.value.loc == ('cyclotomic_eigenmatrix',)


def test_cyclotomic_eigenmatrix_is_pseudocyclic():
    for p, m, e in [(2, 4, 3), (2, 4, 5), (3, 2, 4), (3, 5, 11), (2, 6, 9)]:
        P = _cyclotomic(p, m, e)

        assert is_pseudocyclic(P)
        assert orthogonality_residual(P) == 0
        assert all(sum(row[1:]) == -1 for row in P.rows[1:])


def test_rejects_e_not_dividing():
    with pytest.raises(ParameterError):
        build_frame(build_field(2, 4), 4)


def _amorphous_by_enumeration(p: int, m: int, e: int) -> bool:
    try:
        P = _cyclotomic(p, m, e)
    except IrrationalPeriodsError:
        return False
    return is_amorphous(P)


@pytest.mark.parametrize('p, m', [(2, 4), (2, 6), (3, 4), (2, 8)])
def test_amorphous_predicate_agrees_with_enumeration(p, m):
    for e in divisors(p ** m - 1):
        if e > 12:
            continue
        assert amorphous_cyclotomic_predicate(p, m, int(e)) == _amorphous_by_enumeration(p, m, int(e)), e


@pytest.mark.parametrize('p, m, e, expected', [
    (2, 4, 5, True),
    (2, 6, 7, False),
    (2, 6, 9, True),
    (3, 4, 8, False),
    (3, 4, 10, True),
    (3, 5, 11, False),
    (2, 12, 5, True),
    (2, 21, 49, False),
])
def test_amorphous_predicate(p, m, e, expected):
    assert amorphous_cyclotomic_predicate(p, m, e) == expected
