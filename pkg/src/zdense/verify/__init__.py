from .density import DensityReport, density_check, lemma2_rank
from .generators import AFFINE, MATRIX2, GeneratorSet, from_construction_doc
from .independence import IndependenceResult, multiplicative_independence
from .lift import lift_discrete_dense, nielsen_reduced, projection_injectivity
from .margin import MarginReport, discreteness_margin
from .pingpong import identity_word_search, pingpong_certificate

__all__ = [
    "AFFINE",
    "MATRIX2",
    "DensityReport",
    "GeneratorSet",
    "IndependenceResult",
    "MarginReport",
    "density_check",
    "discreteness_margin",
    "from_construction_doc",
    "identity_word_search",
    "lemma2_rank",
    "lift_discrete_dense",
    "multiplicative_independence",
    "nielsen_reduced",
    "pingpong_certificate",
    "projection_injectivity",
]
