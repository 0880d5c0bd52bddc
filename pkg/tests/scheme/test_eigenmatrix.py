import pytest

from scheme_forge.eigenmatrix import Eigenmatrix
from scheme_forge.eigenmatrix import is_pseudocyclic
from scheme_forge.eigenmatrix import multiplicities_from_eigenmatrix
from scheme_forge.eigenmatrix import orthogonality_residual
from scheme_forge.exceptions import NotAnEigenmatrixError
from scheme_forge.workbench import LINE_FUSION_GF2_12
from scheme_forge.workbench import LINE_FUSION_GF2_20

PALEY_9 = ((1, 4, 4), (1, 1, -2), (1, -2, 1))


def test_paley_multiplicities():
    P = Eigenmatrix(PALEY_9)

    assert P.d == 2
    assert P.order == 9
    assert P.multiplicities == (1, 4, 4)
    assert orthogonality_residual(P) == 0
    assert is_pseudocyclic(P)


def test_line_fusion_matrices_are_not_pseudocyclic():
    P = Eigenmatrix(LINE_FUSION_GF2_12)

    assert P.multiplicities == (1, 819, 1092, 1092, 1092)
    assert orthogonality_residual(P) == 0
    assert not is_pseudocyclic(P)

    P = Eigenmatrix(LINE_FUSION_GF2_20)

    assert P.order == 1 << 20
    assert orthogonality_residual(P) == 0
    assert not is_pseudocyclic(P)


def test_canonical_sorts_nontrivial_rows():
    P = Eigenmatrix(((1, 4, 4), (1, -2, 1), (1, 1, -2)))

    assert P.canonical() == Eigenmatrix(((1, 4, 4), (1, -2, 1), (1, 1, -2)))
    assert P.canonical().rows[0] == (1, 4, 4)
    assert Eigenmatrix(PALEY_9).canonical() == P.canonical()
    assert P.to_list() == [[1, 4, 4], [1, -2, 1], [1, 1, -2]]


@pytest.mark.parametrize('rows', [
    ((1, 4),),
    ((1, 4, 4), (1, 1)),
    ((1, 4, 4), (2, 1, -2), (1, -2, 1)),
    ((1, 0, 4), (1, 1, -2), (1, -2, 1)),
])
def test_rejects_malformed(rows):
    with pytest.raises(NotAnEigenmatrixError):
        Eigenmatrix(rows)


def test_rejects_non_integral_multiplicities():
    with pytest.raises(NotAnEigenmatrixError):
        multiplicities_from_eigenmatrix(Eigenmatrix(((1, 4, 4), (1, 2, -3), (1, -2, 1))))


def test_complete_bipartite_is_not_pseudocyclic():
    # K_{3,3}: relations "adjacent" (valency 3) and "same side" (valency 2)
    P = Eigenmatrix(((1, 3, 2), (1, -3, 2), (1, 0, -1)))

    assert P.multiplicities == (1, 1, 4)
    assert not is_pseudocyclic(P)
