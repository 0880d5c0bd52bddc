import numpy as np
import pytest

from scheme_forge.design import Orientation
from scheme_forge.design import complement_design
from scheme_forge.design import design_from_incidence
from scheme_forge.design import design_isomorphic
from scheme_forge.design import develop_difference_set
from scheme_forge.design import eigenvalues_for_gap
from scheme_forge.design import extract_design
from scheme_forge.design import is_circulant
from scheme_forge.design import synthesize_eigenmatrix
from scheme_forge.design import verify_design
from scheme_forge.eigenmatrix import Eigenmatrix
from scheme_forge.eigenmatrix import is_pseudocyclic
from scheme_forge.eigenmatrix import orthogonality_residual
from scheme_forge.exceptions import NotADesignError
from scheme_forge.exceptions import ParameterError
from scheme_forge.geometry import pg_space

from ..utils import _cyclotomic
from ..utils import _decomposition

FANO = develop_difference_set(7, (0, 1, 3))
BIPLANE_11 = develop_difference_set(11, (1, 3, 4, 5, 9))
PG32 = develop_difference_set(15, (0, 1, 2, 4, 5, 8, 10))
PG23 = develop_difference_set(13, (0, 1, 3, 9))


def _decomposition_identities(T):
    P = T.eigenmatrix
    P0 = P.principal_part
    d = P.d
    M = T.design.incidence.astype(np.int64)
    J = np.ones((d, d), dtype=np.int64)

    assert np.array_equal(P0, T.marked * M + T.unmarked * (J - M))
    assert np.array_equal(T.f * J + P0 @ P0.T, P.order * np.eye(d, dtype=np.int64))
    assert T.design.k == -(T.unmarked * d + 1) // (T.marked - T.unmarked)


def test_difference_set_designs():
    assert FANO.parameters == (7, 3, 1)
    assert BIPLANE_11.parameters == (11, 5, 2)
    assert PG32.parameters == (15, 7, 3)
    assert is_circulant(FANO.incidence)
    assert FANO.blocks()[0] == (0, 1, 3)
    assert FANO.bitstrings()[0] == '1101000'
    assert FANO.dual().parameters == (7, 3, 1)


def test_complement():
    assert complement_design(FANO).parameters == (7, 4, 2)
    assert complement_design(PG32).parameters == (15, 8, 4)


@pytest.mark.parametrize('M', [
    np.ones((3, 4)),
    np.eye(4) * 2,
    np.eye(4),
    np.array([[1, 1, 0], [0, 1, 1], [1, 1, 0]]),
])
def test_verify_design_rejects(M):
    with pytest.raises(NotADesignError):
        verify_design(M)


def test_circulance_depends_on_row_order():
    shuffled = FANO.incidence[[3, 0, 6, 1, 5, 2, 4]]

    assert not is_circulant(shuffled)
    assert not is_circulant(pg_space(3, 2).incidence)

    with pytest.raises(ParameterError):
        is_circulant(np.ones((2, 3)))


def test_example1_extraction():
    T = _decomposition('example1')

    assert T.design.parameters == (15, 7, 3)
    assert (T.marked, T.unmarked) == (17, -15)
    assert T.orientation == Orientation.UPPER
    assert T.other_orientation_valid
    assert T.f == 273
    assert is_circulant(T.design.incidence)
    _decomposition_identities(T)


def test_example1_design_is_pg32():
    T = _decomposition('example1')
    result = design_isomorphic(T.design, pg_space(3, 2).design)

    assert result
    assert sorted(result.point_map) == list(range(15))
    assert sorted(result.block_map) == list(range(15))


def test_vls_extraction_takes_the_smaller_block():
    T = extract_design(_cyclotomic(3, 5, 11))

    assert T.design.parameters == (11, 5, 2)
    assert (T.marked, T.unmarked) == (-5, 4)
    assert T.orientation == Orientation.LOWER
    assert design_isomorphic(T.design, BIPLANE_11)
    _decomposition_identities(T)


def test_paley_principal_part_is_not_a_design():
    with pytest.raises(NotADesignError):
        extract_design(_cyclotomic(3, 2, 2))


def test_non_pseudocyclic_is_rejected():
    with pytest.raises(ParameterError):
        extract_design(Eigenmatrix(((1, 3, 2), (1, -3, 2), (1, 0, -1))))


def test_eigenvalues_for_gap():
    assert eigenvalues_for_gap(FANO, 2) == (1, -1)
    assert eigenvalues_for_gap(PG32, 32) == (17, -15)
    assert eigenvalues_for_gap(BIPLANE_11, -9) == (-5, 4)

    with pytest.raises(ParameterError):
        eigenvalues_for_gap(FANO, 3)


def test_synthesized_fano():
    P = synthesize_eigenmatrix(FANO, 1, -1)

    assert P.order == 8
    assert P.valencies == (1,) * 8
    assert is_pseudocyclic(P)


def _synthetic_triples():
    triples = []

    for D in (FANO, BIPLANE_11, PG32, PG23, complement_design(FANO)):
        found = 0
        gap = 1
        while found < 4:
            try:
                triples.append((D, *eigenvalues_for_gap(D, gap)))
                found += 1
            except ParameterError:
                pass
            gap += 1

    return triples


@pytest.mark.parametrize('D, r, s', _synthetic_triples())
def test_extract_inverts_synthesize(D, r, s):
    P = synthesize_eigenmatrix(D, r, s)

    assert orthogonality_residual(P) == 0

    T = extract_design(P)

    if T.marked == r:
        assert T.design == D
    else:
        assert T.design == complement_design(D)
        assert T.design.k < D.k

    _decomposition_identities(T)


def test_synthesize_rejects_wrong_pair():
    with pytest.raises(ParameterError):
        synthesize_eigenmatrix(FANO, 2, -1)


def test_isomorphism_witness_on_relabelled_design():
    rng = np.random.default_rng(7)
    points = rng.permutation(15)
    blocks = rng.permutation(15)
    relabelled = design_from_incidence(PG32.incidence[np.ix_(blocks, points)])

    result = design_isomorphic(PG32, relabelled)

    assert result.isomorphic
    for b, block in enumerate(PG32.blocks()):
        image = {result.point_map[x] for x in block}
        assert image == set(relabelled.blocks()[result.block_map[b]])


def test_different_parameters_are_not_isomorphic():
    assert not design_isomorphic(FANO, complement_design(FANO))


def test_duals_are_matched_like_their_designs():
    assert FANO.dual().parameters == FANO.parameters
    assert design_isomorphic(BIPLANE_11.dual(), BIPLANE_11)
    assert design_isomorphic(PG32.dual(), pg_space(3, 2).design)
    assert not design_isomorphic(PG32.dual(), complement_design(PG32))
