"""Exact equivalence checking for parameterized quantum circuits.

Circuits are compared over the cyclotomic field: either exhaustively on a
finite cutoff grid of rational-multiple-of-pi angles, at random points of a
sample set with a bounded false-positive rate, or symbolically through their
Laurent-polynomial semantics.
"""

__version__ = "0.1.0"

from .checker import (
    Equivalent,
    NotEquivalent,
    ProbablyEquivalent,
    check,
    check_exact,
    check_phase,
    check_probabilistic,
    check_symbolic,
)
from .circuit import (
    AffineForm,
    Constant,
    Control,
    Empty,
    Par,
    Rotation,
    Seq,
    builtin,
    coeff_seq,
    rotation,
    seq,
    par,
    validate,
)
from .exactnum import Cyclotomic
from .fileformat import load, parse, parse_file, serialize
from .semantics import eval_exact, eval_float

__all__ = [
    "AffineForm",
    "Constant",
    "Control",
    "Cyclotomic",
    "Empty",
    "Equivalent",
    "NotEquivalent",
    "Par",
    "ProbablyEquivalent",
    "Rotation",
    "Seq",
    "builtin",
    "check",
    "check_exact",
    "check_phase",
    "check_probabilistic",
    "check_symbolic",
    "coeff_seq",
    "eval_exact",
    "eval_float",
    "load",
    "par",
    "parse",
    "parse_file",
    "rotation",
    "seq",
    "serialize",
    "validate",
]
