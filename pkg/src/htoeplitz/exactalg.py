"""Exact coefficient arithmetic: Gaussian rationals and polynomials in formal constants.

The coefficient ring used everywhere else in the package is ``Coeff``: a
multivariate polynomial over Gaussian rationals in the formal indeterminates
``C<k>`` / ``Cm<k>`` (undetermined constants, index k an integer) and
``abar<l>`` (the conjugated Taylor coefficients of the co-analytic symbol
part, l >= 1).  Values are immutable and all arithmetic is exact.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rat = Union[int, Fraction]

_NAME_RE = _re.compile(r"^(?:C(?P<cpos>\d+)|Cm(?P<cneg>\d+)|abar(?P<abar>[1-9]\d*))$")


def cname(k: int) -> str:
    """Canonical token for the undetermined constant with index k."""
    return f"C{k}" if k >= 0 else f"Cm{-k}"


def aname(l: int) -> str:
    """Canonical token for the l-th conjugated analytic coefficient."""
    if l < 1:
        raise ValueError("abar index must be >= 1")
    return f"abar{l}"


def indet_key(name: str):
    """Total order on indeterminates: constants first (descending index),
    then abar's by index.  Fixed once, so canonical forms are stable."""
    m = _NAME_RE.match(name)
    if m is None:
        raise ValueError(f"unknown indeterminate {name!r}")
    if m.group("cpos") is not None:
        return (0, -int(m.group("cpos")))
    if m.group("cneg") is not None:
        return (0, int(m.group("cneg")))
    return (1, int(m.group("abar")))


def is_constant_name(name: str) -> bool:
    """True for the C-family (the constants that integrability may force to zero)."""
    return name.startswith("C")


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rat = 0, im: Rat = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(x: "GaussianRational | Rat") -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)

# A monomial is a tuple of (indeterminate name, exponent) pairs, sorted by
# the fixed indeterminate order, with all exponents >= 1.
Monomial = tuple


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for name, e in b:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items(), key=lambda it: indet_key(it[0])))


class Coeff:
    """A polynomial over GaussianRational in the formal indeterminates.

    Stored as a map monomial -> nonzero GaussianRational; the empty monomial
    holds the scalar part.  Canonical by construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Coeff is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(x: GaussianRational | Rat) -> "Coeff":
        x = GaussianRational.coerce(x)
        return Coeff({(): x}) if x else Coeff()

    @staticmethod
    def indet(name: str, exp: int = 1) -> "Coeff":
        indet_key(name)  # validates
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return Coeff.const(1)
        return Coeff({((name, exp),): ONE})

    @staticmethod
    def coerce(x: "Coeff | GaussianRational | Rat") -> "Coeff":
        if isinstance(x, Coeff):
            return x
        return Coeff.const(x)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = Coeff.coerce(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            terms[mono] = terms.get(mono, ZERO) + c
        return Coeff(terms)

    __radd__ = __add__

    def __neg__(self):
        return Coeff({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Coeff.coerce(other))

    def __rsub__(self, other):
        return Coeff.coerce(other) - self

    def __mul__(self, other):
        other = Coeff.coerce(other)
        terms: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                terms[m] = terms.get(m, ZERO) + ca * cb
        return Coeff(terms)

    __rmul__ = __mul__

    def scale(self, s: GaussianRational | Rat) -> "Coeff":
        s = GaussianRational.coerce(s)
        return Coeff({m: c * s for m, c in self.terms.items()})

    def __truediv__(self, s):
        if isinstance(s, Coeff):
            if not s.is_scalar():
                raise TypeError("Coeff division only by scalars")
            s = s.scalar()
        return self.scale(ONE / GaussianRational.coerce(s))

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return all(m == () for m in self.terms)

    def scalar(self) -> GaussianRational:
        if not self.is_scalar():
            raise ValueError(f"not a scalar Coeff: {self}")
        return self.terms.get((), ZERO)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Coeff.const(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- structure ---------------------------------------------------------

    def indeterminates(self) -> set:
        names = set()
        for mono in self.terms:
            names.update(name for name, _ in mono)
        return names

    def constant_names(self) -> set:
        """The C-family indeterminates occurring in this value."""
        return {n for n in self.indeterminates() if is_constant_name(n)}

    def substitute_zero(self, names: Iterable[str]) -> "Coeff":
        """Set the given indeterminates to zero (drop every monomial using them)."""
        names = set(names)
        return Coeff(
            {m: c for m, c in self.terms.items() if not any(n in names for n, _ in m)}
        )

    def bind(self, bindings: Mapping[str, complex]) -> complex:
        """Numeric evaluation with every indeterminate bound to a complex value."""
        total = 0j
        for mono, c in self.terms.items():
            v = c.to_complex()
            for name, e in mono:
                if name not in bindings:
                    raise UnboundIndeterminateError(name)
                v *= bindings[name] ** e
            total += v
        return total

    # -- rendering / serialization ----------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: [indet_key(n) for n, _ in m]):
            c = self.terms[mono]
            factors = [f"{n}^{e}" if e > 1 else n for n, e in mono]
            if not factors:
                parts.append(str(c))
            elif c == ONE:
                parts.append("*".join(factors))
            elif c == GaussianRational(-1):
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([str(c)] + factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Coeff<{self}>"

    def to_json(self):
        return [
            {"monomial": [[n, e] for n, e in mono], "re": str(c.re), "im": str(c.im)}
            for mono, c in sorted(
                self.terms.items(), key=lambda it: [indet_key(n) for n, _ in it[0]]
            )
        ]

    @staticmethod
    def from_json(data) -> "Coeff":
        terms = {}
        for entry in data:
            mono = tuple(sorted(((n, e) for n, e in entry["monomial"]),
                                key=lambda it: indet_key(it[0])))
            terms[mono] = GaussianRational(Fraction(entry["re"]), Fraction(entry["im"]))
        return Coeff(terms)


class UnboundIndeterminateError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound indeterminate {self.name!r}"


def C(k: int) -> Coeff:
    """The constant C_k as a Coeff."""
    return Coeff.indet(cname(k))


def abar(l: int) -> Coeff:
    """The formal conjugated coefficient with index l as a Coeff."""
    return Coeff.indet(aname(l))
