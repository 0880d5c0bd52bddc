import numpy as np
import pytest

from scheme_forge.dense import DenseScheme
from scheme_forge.dense import _asymmetric_pair
from scheme_forge.dense import _pack
from scheme_forge.dense import dense_materialize
from scheme_forge.dense import dense_spectrum
from scheme_forge.dense import dense_srg_check
from scheme_forge.dense import verify_scheme_dense
from scheme_forge.exceptions import CapExceededError
from scheme_forge.exceptions import NotAFusionError
from scheme_forge.exceptions import NotAnAssociationSchemeError
from scheme_forge.exceptions import ParameterError
from scheme_forge.scheme import SRGParameters
from scheme_forge.scheme import TranslationScheme
from scheme_forge.scheme import srg_check_translation
from scheme_forge.scheme import translation_eigenmatrix

from ..utils import _dense
from ..utils import _frame
from ..utils import _scheme
from ..utils import _singletons


def test_paley_nine_intersection_numbers():
    ds = _dense(3, 2, 2)
    p = verify_scheme_dense(ds)

    assert ds.n == 9
    assert p.shape == (3, 3, 3)
    assert np.array_equal(p[0], np.eye(3, dtype=np.int64))
    assert p[1, 1, 0] == 4
    assert p[1, 1, 1] == 1
    assert p[1, 1, 2] == 2


def test_paley_nine_spectrum():
    ds = _dense(3, 2, 2)

    assert dense_spectrum(ds, 1) == {-2: 4, 1: 4, 4: 1}
    assert len(ds.neighbours(1, 0)) == 4


def test_general_path_agrees_with_translation_path():
    ds = _dense(3, 2, 2)
    general = DenseScheme.from_matrices([ds.matrix(j) for j in range(3)])

    assert not general.translation
    assert np.array_equal(verify_scheme_dense(general), verify_scheme_dense(ds))
    assert dense_srg_check(general, 2) == SRGParameters(9, 4, 1, 2)


@pytest.mark.parametrize('p, m', [(3, 2), (5, 2)])
def test_spectral_and_dense_srg_agree_on_paley(p, m):
    s = _singletons(p, m, 2)
    ds = _dense(p, m, 2)

    verify_scheme_dense(ds)

    for j in (1, 2):
        assert dense_srg_check(ds, j) == srg_check_translation(s, j).parameters


def test_vls_scheme_full_check():
    s = _singletons(3, 5, 11)
    ds = _dense(3, 5, 11)
    p = verify_scheme_dense(ds)

    assert p.shape == (12, 12, 12)
    assert all(p[j, j, 0] == 22 for j in range(1, 12))

    for j in range(1, 12):
        assert dense_srg_check(ds, j) == srg_check_translation(s, j).parameters

    assert dense_srg_check(ds, 1, full=True) == SRGParameters(243, 22, 1, 2)


def test_vls_spectrum_matches_periods():
    frame = _frame(3, 5, 11)
    ds = _dense(3, 5, 11)
    expected = {22: 1}

    for j in range(11):
        eta = frame.periods[j]
        expected[eta] = expected.get(eta, 0) + frame.class_size

    assert dense_spectrum(ds, 1) == dict(sorted(expected.items()))


def test_example1_dense_agrees_with_spectrum():
    s = _scheme('example1')
    ds = dense_materialize(s)

    verify_scheme_dense(ds)

    for j in range(1, 16):
        assert dense_srg_check(ds, j) == SRGParameters(4096, 273, 20, 18)


def test_complete_graph_is_degenerate():
    ds = dense_materialize(TranslationScheme(_frame(3, 2, 2), ((0, 1),)))

    assert dense_srg_check(ds, 1) is None


def test_rejects_asymmetric_relations():
    # -1 lies in class 2 of the class-4 cyclotomy of GF(5)
    s = TranslationScheme(_frame(5, 1, 4), tuple((i,) for i in range(4)))

    with pytest.raises(ParameterError):
        dense_materialize(s)


def test_path_is_not_a_scheme():
    A = np.array([
        [0, 1, 0, 0],
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [0, 0, 1, 0],
    ])
    ds = DenseScheme.from_matrices([np.eye(4, dtype=int), A, 1 - A - np.eye(4, dtype=int)])

    with pytest.raises(NotAnAssociationSchemeError):
        verify_scheme_dense(ds)


def test_relations_must_partition():
    I = np.eye(3, dtype=int)
    ds = DenseScheme.from_matrices([I, 1 - I, 1 - I])

    with pytest.raises(NotAnAssociationSchemeError):
        verify_scheme_dense(ds)


def test_dense_cap():
    with pytest.raises(CapExceededError):
        dense_materialize(_singletons(2, 13, 1))


def test_empty_relation_is_rejected():
    I = np.eye(4, dtype=int)
    ds = DenseScheme.from_matrices([I, 1 - I, np.zeros((4, 4), dtype=int)])

    with pytest.raises(NotAnAssociationSchemeError) as info:
        verify_scheme_dense(ds)

    assert info.value.args == ('relation 2 is empty', ('relation', 2))


def test_asymmetric_relation_names_a_pair():
    # the directed 3-cycle and its reverse
    I = np.eye(3, dtype=int)
    A = np.roll(I, 1, axis=1)
    ds = DenseScheme.from_matrices([I, A, A.T])

    with pytest.raises(NotAnAssociationSchemeError) as info:
        verify_scheme_dense(ds)

    assert info.value.args == ('relation 1 is not symmetric', (0, 1))


@pytest.mark.parametrize('n', [5, 64, 70, 130])
def test_packed_transpose_finds_the_first_asymmetric_pair(n):
    rng = np.random.default_rng(n)
    upper = np.triu(rng.integers(0, 2, size=(n, n)), 1)
    M = upper + upper.T
    words = _pack(M != 0)

    assert _asymmetric_pair(words, n) is None

    x, y = n - 1, n // 3
    M[x, y] ^= 1
    assert _asymmetric_pair(_pack(M != 0), n) == (y, x)


def test_errors_keep_their_witness_under_a_new_location():
    error = NotAnAssociationSchemeError('relation 1 is not symmetric', (0, 1))
    located = error.under('inner').under('outer')

    assert located.loc == ('outer', 'inner')
    assert located.args == error.args
    assert 'outer/inner' in str(located)
    assert error.loc == ()


def test_spectral_and_dense_paths_reject_the_same_merge():
    # merging two classes of the 11-class scheme on GF(3^5) is not a fusion
    s = TranslationScheme(_frame(3, 5, 11), ((0, 1), *((i,) for i in range(2, 11))))

    with pytest.raises(NotAFusionError) as info:
        translation_eigenmatrix(s)

    assert info.value.loc == ('translation_eigenmatrix',)

    with pytest.raises(NotAnAssociationSchemeError):
        verify_scheme_dense(dense_materialize(s))
