"""Online importance sampling: sum estimation, hypergraph sparsification, subspace embeddings."""

from ._robustis import *  # noqa: F401,F403
from ._robustis import __doc__  # noqa: F401
