"""Links from Thompson's group F, their HOMFLYPT polynomials, and positivity checks."""

from .forest import (
    IDENTITY,
    X0,
    X1,
    Forest,
    GroupElement,
    ParseError,
    Tree,
    eval_word,
    invert,
    multiply,
    parse_tree,
    reduce,
    stabilize,
)
from .gram import element_gram, hermitian_eigenvalues, spectrum, sweep, tangle_gram
from .homfly import EvalParams, delta_num, delta_sym, evaluate, homfly, phi, tangle_inner
from .laurent import LaurentPoly
from .signs import NotOriented, enumerate_oriented, is_oriented, propagate
from .tangles import (
    build_link,
    build_unoriented_link,
    caret_piece,
    conjugate_by_crossing,
    object_signs,
    phi_of_forest,
    stack,
    star,
)

__version__ = "0.1.0"


def __getattr__(name):
    # the estimators pull in scikit-learn, so load them on first use
    if name in ("HomflyKernel", "GramPositivityEstimator"):
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
