'''
import shortcuts
'''

from .cyclotomy import amorphous_cyclotomic_predicate
from .cyclotomy import build_frame
from .cyclotomy import cyclotomic_eigenmatrix
from .dense import dense_materialize
from .dense import dense_spectrum
from .dense import dense_srg_check
from .dense import verify_scheme_dense
from .design import design_isomorphic
from .design import eigenvalues_for_gap
from .design import extract_design
from .design import synthesize_eigenmatrix
from .eigenmatrix import Eigenmatrix
from .eigenmatrix import is_pseudocyclic
from .eigenmatrix import multiplicities_from_eigenmatrix
from .field import build_field
from .field import trace
from .fusion import FusionPartition
from .fusion import bannai_muzychuk
from .fusion import design_block_fusion
from .fusion import is_amorphous
from .fusion import line_fusion
from .fusion import spread_fusion
from .geometry import pg_space
from .geometry import regular_spread
from .report import emit
from .scheme import TranslationScheme
from .scheme import srg_check_translation
from .scheme import translation_eigenmatrix
from .workbench import reproduce
