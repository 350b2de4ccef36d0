"""Mellin transform on the radial span and its exact inverse.

For phi(r) = r^a (ln r)^b the transform phihat(z) = int_0^1 phi(r) r^{z-1} dr
equals (-1)^b b! / (z+a)^{b+1}; extending linearly gives a bijection between
the radial span and the rational functions whose partial fractions have no
polynomial part.  Inversion is termwise on the partial-fraction form.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exactalg import Coeff, GaussianRational
from .radial import RadialFunction
from .ratfun import RationalFn


class MellinInversionError(ValueError):
    pass


def mellin(p: RadialFunction) -> RationalFn:
    """Exact Mellin transform of a radial function, as a RationalFn in z."""
    out = RationalFn.zero
    for (a, b), c in p.terms.items():
        scalar = GaussianRational(Fraction((-1) ** b * math.factorial(b)))
        out = out + RationalFn.fraction(c.scale(scalar), a, b + 1)
    return out


def inverse_mellin(a: RationalFn) -> RadialFunction:
    """The radial function whose Mellin transform is `a`.

    Requires the partial fractions of `a` to have zero polynomial part;
    each c/(z+q)^j inverts to c*(-1)^(j-1)/(j-1)! * r^q (ln r)^(j-1).
    """
    pf = a.partial_fractions()
    if not pf.poly_part.is_zero():
        raise MellinInversionError(
            "not a Mellin image of the radial span (nonzero polynomial part: "
            f"{pf.poly_part})"
        )
    terms = {}
    for (q, j), c in pf.fractions.items():
        scalar = GaussianRational(Fraction((-1) ** (j - 1), math.factorial(j - 1)))
        key = (q, j - 1)
        terms[key] = terms.get(key, Coeff()) + c.scale(scalar)
    return RadialFunction(terms)
