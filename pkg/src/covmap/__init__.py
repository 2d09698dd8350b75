"""Group-covariant linear maps on matrix algebras.

Build covariant maps from finite-group irreps through their isotypic
projectors, compute map/Choi matrices, and classify complete positivity,
complete copositivity and positivity (exact regions where known, inverse-
reduction certificates, sampled product-vector search as evidence).
"""

__version__ = "0.1.0"

from . import catalog, groups, irreps, positivity, reporting, superop  # noqa: F401
from ._core import HAVE_COMPILED, default_backend  # noqa: F401
from .positivity import ClassificationReport, block_positivity_search, classify  # noqa: F401
from .superop import CovariantMap  # noqa: F401
