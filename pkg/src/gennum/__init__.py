"""Generalized numbers: asymptotic nets, linear algebra and Lorentzian causality.

The most used names are re-exported here; see the submodules for the rest.
"""

from .errors import GenNumError
from .gen_num import (
    NEGLIGIBLE,
    EpsGrid,
    GenNumber,
    IndexSet,
    Status,
    Verdict,
    chi,
    const,
    default_grid,
    eps_net,
    equals,
    estimate_order,
    is_invertible,
    is_negligible,
    is_strictly_negative,
    is_strictly_nonzero,
    is_strictly_positive,
    leq,
    make_gen,
)
from .gen_linalg import GenMatrix, GenVector, gen_eigen, matrix_index
from .causal import BilinearForm, CausalKind, classify, minkowski

__version__ = "0.1.0"

__all__ = [
    "NEGLIGIBLE",
    "BilinearForm",
    "CausalKind",
    "EpsGrid",
    "GenMatrix",
    "GenNumError",
    "GenNumber",
    "GenVector",
    "IndexSet",
    "Status",
    "Verdict",
    "chi",
    "classify",
    "const",
    "default_grid",
    "eps_net",
    "equals",
    "estimate_order",
    "gen_eigen",
    "is_invertible",
    "is_negligible",
    "is_strictly_negative",
    "is_strictly_nonzero",
    "is_strictly_positive",
    "leq",
    "make_gen",
    "matrix_index",
    "minkowski",
]
