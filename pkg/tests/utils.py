from functools import cache

from scheme_forge.cyclotomy import build_frame
from scheme_forge.cyclotomy import cyclotomic_eigenmatrix
from scheme_forge.dense import DenseScheme
from scheme_forge.dense import dense_materialize
from scheme_forge.design import DesignDecomposition
from scheme_forge.design import extract_design
from scheme_forge.eigenmatrix import Eigenmatrix
from scheme_forge.field import build_field
from scheme_forge.geometry import AlignedEigenmatrix
from scheme_forge.geometry import align_eigenmatrix
from scheme_forge.geometry import pg_space
from scheme_forge.scheme import TranslationScheme
from scheme_forge.scheme import translation_eigenmatrix
from scheme_forge.workbench import PRESETS
from scheme_forge.workbench import preset_scheme

# x^12 + x^6 + x^4 + x + 1, low degree first
ALTERNATE_MODULUS_2_12 = (1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1)


@cache
def _frame(p: int, m: int, e: int):
    return build_frame(build_field(p, m), e)


@cache
def _cyclotomic(p: int, m: int, e: int) -> Eigenmatrix:
    return cyclotomic_eigenmatrix(_frame(p, m, e))


@cache
def _scheme(name: str, a: int = 1) -> TranslationScheme:
    return preset_scheme(PRESETS[name], a)


@cache
def _eigenmatrix(name: str, a: int = 1) -> Eigenmatrix:
    return translation_eigenmatrix(_scheme(name, a))


@cache
def _decomposition(name: str) -> DesignDecomposition:
    return extract_design(_eigenmatrix(name))


@cache
def _aligned(name: str) -> AlignedEigenmatrix:
    return align_eigenmatrix(_decomposition(name), pg_space(*PRESETS[name].pg))


@cache
def _singletons(p: int, m: int, e: int) -> TranslationScheme:
    frame = _frame(p, m, e)
    return TranslationScheme(frame, tuple((i,) for i in range(e)))


@cache
def _dense(p: int, m: int, e: int) -> DenseScheme:
    return dense_materialize(_singletons(p, m, e))
