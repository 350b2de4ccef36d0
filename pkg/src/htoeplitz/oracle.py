"""Floating-point cross-checks, independent of the exact engine.

Mellin values come from adaptive quadrature after the substitution
t = -ln r, which turns every r^a (ln r)^b factor into a damped exponential
(-t)^b e^{-(s+a)t} on [0, oo) and removes the endpoint singularity
analytically.  Operator actions are computed by projecting onto the
orthogonal basis {1, z^m, zbar^m}: the angular integral is a Kronecker
delta done exactly, the radial integral is quadrature.  No branch logic
from the symbolic engine is reused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Mapping

from scipy.integrate import quad

from .radial import RadialFunction
from .toeplitz import ANALYTIC, BasisVector, HarmonicVector, z_vec, zbar_vec


class QuadratureDivergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    max_subdivisions: int = 200


DEFAULT_CONFIG = QuadratureConfig()


def mellin_numeric(
    p: RadialFunction,
    s: float,
    bindings: Mapping[str, complex] | None = None,
    config: QuadratureConfig = DEFAULT_CONFIG,
) -> complex:
    """Quadrature value of int_0^1 p(r) r^{s-1} dr, termwise in t = -ln r."""
    bindings = bindings or {}
    total = 0j
    for (a, b), c in p.terms.items():
        decay = s + float(a)
        if decay <= 0:
            raise QuadratureDivergenceError(
                f"integral of r^{a}(ln r)^{b} against r^{s-1} diverges at 0"
            )
        sign = (-1.0) ** b
        val, err = quad(
            lambda t: t ** b * math.exp(-decay * t),
            0.0,
            math.inf,
            epsabs=config.abs_tol,
            epsrel=config.abs_tol,
            limit=config.max_subdivisions,
        )
        if err > 1e-8:
            raise QuadratureDivergenceError(
                f"quadrature failed to converge (error estimate {err:g})"
            )
        total += c.bind(bindings) * sign * val
    return total


def mellin_numeric_interval(
    p: RadialFunction,
    s: float,
    bindings: Mapping[str, complex] | None = None,
    eps: float = 1e-6,
    panels: int = 2000,
) -> complex:
    """Composite Simpson value of int_eps^1 p(r) r^{s-1} dr.

    Used to observe monotone convergence as eps shrinks; the adaptive
    routine above is the primary oracle.
    """
    bindings = bindings or {}
    if panels % 2:
        panels += 1
    h = (1.0 - eps) / panels
    total = 0j

    def integrand(r: float) -> complex:
        return p.eval_numeric(r, bindings) * r ** (s - 1.0)

    for i in range(panels + 1):
        r = eps + i * h
        if r >= 1.0:
            r = 1.0 - 1e-15
        w = 1 if i in (0, panels) else (4 if i % 2 else 2)
        total += w * integrand(r)
    return total * h / 3.0


def apply_numeric(
    k: int,
    phi: RadialFunction,
    v: BasisVector,
    bindings: Mapping[str, complex] | None = None,
    config: QuadratureConfig = DEFAULT_CONFIG,
) -> Dict[BasisVector, complex]:
    """Toeplitz action of e^{ik theta} phi on v, by basis projection.

    The product symbol times basis vector has angular index m + k where
    m is v's signed angular index; projection onto the basis vector with
    that index has coefficient 2(|j|+1) int_0^1 phi r^{|m|+|j|+1} dr.
    """
    m = v.n if v.side == ANALYTIC else -v.n
    j = m + k
    s = abs(m) + abs(j) + 2
    val = 2 * (abs(j) + 1) * mellin_numeric(phi, float(s), bindings, config)
    if j >= 0:
        out = z_vec(j)
    else:
        out = zbar_vec(-j)
    return {out: val}


def compare(
    symbolic: HarmonicVector,
    numeric: Mapping[BasisVector, complex],
    bindings: Mapping[str, complex] | None = None,
    tol: float = 1e-9,
) -> dict:
    """Entrywise comparison; missing entries count as zero."""
    bindings = bindings or {}
    keys = set(symbolic.entries) | set(numeric)
    worst_key, worst = None, 0.0
    for v in keys:
        sym = symbolic.entries[v].bind(bindings) if v in symbolic.entries else 0j
        num = numeric.get(v, 0j)
        d = abs(sym - num)
        if d > worst:
            worst_key, worst = v, d
    return {
        "ok": worst <= tol,
        "max_diff": worst,
        "worst_entry": worst_key.label() if worst_key is not None else None,
        "tol": tol,
    }
