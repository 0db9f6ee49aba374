"""High-precision scissors congruence invariants.

Inputs are expression strings ("0.3+0.4i", "exp(i*pi/3)", "acos(1/3)").
Reals come back as Decimal, complex numbers as (re, im) pairs of Decimal and
rational coefficients as Fraction. Printed digits are truncated, not rounded.
"""

from decimal import Decimal, getcontext
from fractions import Fraction

from . import _scissors
from ._scissors import (
    DEFAULT_BITS,
    PrecisionError,
    ScissorsError,
    builtin_class_names,
    builtin_class_text,
    figure_eight_text,
)

__all__ = [
    "DEFAULT_BITS",
    "PrecisionError",
    "ScissorsError",
    "bloch_wigner",
    "borel_regulator",
    "builtin_class_names",
    "builtin_class_text",
    "dehn_invariant",
    "dilog",
    "ell",
    "ell_inverse",
    "figure_eight_text",
    "find_relation",
    "five_term_residual",
    "flattened_sum",
    "gromov_upper_bound",
    "report",
    "rogers",
    "volume",
    "volume_combination_search",
]

getcontext().prec = max(getcontext().prec, 120)


def _c(pair):
    return Decimal(pair[0]), Decimal(pair[1])


def dilog(z, side="", bits=DEFAULT_BITS, digits=30):
    return _c(_scissors.dilog(str(z), side, bits, digits))


def bloch_wigner(z, bits=DEFAULT_BITS, digits=30):
    return Decimal(_scissors.bloch_wigner(str(z), bits, digits))


def rogers(z, side="", p=None, q=None, bits=DEFAULT_BITS, digits=30):
    """R(z), or the lifted R(z; p, q) when p or q is given."""
    return _c(_scissors.rogers(str(z), side, p, q, bits, digits))


def five_term_residual(x, y, bits=DEFAULT_BITS):
    return Decimal(_scissors.five_term_residual(str(x), str(y), bits))


def dehn_invariant(edges, bits=DEFAULT_BITS, maxden=64, digits=30):
    """edges: iterable of (length, angle) expression pairs."""
    text = "\n".join(f"{l} {a}" for l, a in edges)
    d = _scissors.dehn_invariant(text, bits, maxden, digits)
    d["terms"] = [(Decimal(l), Decimal(a)) for l, a in d["terms"]]
    return d


def ell(z, p=0, q=0, side="", bits=DEFAULT_BITS, digits=30):
    return tuple(_c(w) for w in _scissors.ell(str(z), p, q, side, bits, digits))


def ell_inverse(w0, w1, w2, bits=DEFAULT_BITS, digits=30):
    """Returns (z, p, q, side) from flattening components given as strings."""
    z, p, q, side = _scissors.ell_inverse(w0, w1, w2, bits, digits)
    return _c(z), p, q, side


def flattened_sum(text, bits=DEFAULT_BITS, maxden=64, digits=30):
    d = _scissors.flattened_sum(text, bits, maxden, digits)
    d["rogers"] = _c(d["rogers"])
    d["rogers_residual"] = Decimal(d["rogers_residual"])
    return d


def borel_regulator(cls, bits=DEFAULT_BITS, digits=30):
    """cls: a built-in class name or formal sum text over a number field."""
    return [Decimal(v) for v in _scissors.borel_regulator(cls, bits, digits)]


def volume(text, bits=DEFAULT_BITS, digits=30):
    return Decimal(_scissors.volume(text, bits, digits))


def gromov_upper_bound(text, k=1):
    return Fraction(_scissors.gromov_upper_bound(text, k))


def _relation(d, conv):
    if "coeffs" in d:
        d["coeffs"] = [conv(c) for c in d["coeffs"]]
        d["residual"] = Decimal(d["residual"])
    return d


def find_relation(xs, bound=10**6, bits=DEFAULT_BITS, tolerance=None):
    """Integer relation among the reals xs. status is found, none or inconclusive."""
    tol = None if tolerance is None else str(tolerance)
    return _relation(_scissors.find_relation([str(x) for x in xs], str(bound), bits, tol), int)


def volume_combination_search(target, basis, maxden=64, bits=DEFAULT_BITS, tolerance="auto"):
    """Rational coefficients c with target = sum c_i basis_i.

    tolerance="auto" takes the precision of the printed target literal.
    """
    if tolerance == "auto":
        u = Fraction(_scissors.literal_uncertainty(str(target)))
        tolerance = None if u == 0 else f"{u.numerator}/{u.denominator}"
    tol = None if tolerance is None else str(tolerance)
    d = _scissors.volume_combination_search(str(target), [str(b) for b in basis], maxden, bits, tol)
    return _relation(d, Fraction)


def report(text, bits=DEFAULT_BITS, maxden=64, digits=30):
    """Invariants of a triangulation given in the .tri text format."""
    d = _scissors.report(text, bits, maxden, digits)
    d["volume"] = Decimal(d["volume"])
    d["angle_residuals"] = [Decimal(a) for a in d["angle_residuals"]]
    d["flattening_residuals"] = [Decimal(f) for f in d["flattening_residuals"]]
    if d["cs"] is not None:
        d["cs"] = Decimal(d["cs"])
    return d
