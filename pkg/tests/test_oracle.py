import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htoeplitz import (
    ANALYTIC,
    CONJUGATE,
    BasisVector,
    QuadratureDivergenceError,
    RadialFunction,
    apply_numeric,
    apply_quasi,
    compare,
    mellin,
    mellin_numeric,
)
from htoeplitz.oracle import mellin_numeric_interval

from .conftest import radial_functions


def test_mellin_numeric_matches_table():
    phi = RadialFunction.term(1, 4, 1)
    exact = mellin(phi)
    for s in (3.0, 4.0, 5.0, 7.0):
        assert abs(mellin_numeric(phi, s) - exact.bind_eval(s)) < 1e-10


def test_mellin_numeric_log_squared():
    phi = RadialFunction.term(1, -1, 2)
    exact = mellin(phi)
    assert abs(mellin_numeric(phi, 4.0) - exact.bind_eval(4.0)) < 1e-10


def test_divergence_detected():
    with pytest.raises(QuadratureDivergenceError):
        mellin_numeric(RadialFunction.term(1, -4), 3.0)


def test_interval_quadrature_converges_upward():
    # truncating at eps misses mass near 0; shrinking eps recovers it
    phi = RadialFunction.term(1, -1)
    full = mellin_numeric(phi, 3.0)
    coarse = abs(mellin_numeric_interval(phi, 3.0, eps=1e-2) - full)
    fine = abs(mellin_numeric_interval(phi, 3.0, eps=1e-5) - full)
    assert fine < coarse


def test_apply_numeric_matches_engine():
    phi = RadialFunction.term(Fraction(3, 2), 2) + RadialFunction.term(1, 0, 1)
    for k, v in [(2, BasisVector(ANALYTIC, 3)), (-3, BasisVector(ANALYTIC, 1)),
                 (1, BasisVector(CONJUGATE, 2)), (-2, BasisVector(CONJUGATE, 4))]:
        sym = apply_quasi(k, phi, v)
        num = apply_numeric(k, phi, v)
        result = compare(sym, num, tol=1e-9)
        assert result["ok"], result


def test_compare_flags_disagreement():
    v = BasisVector(ANALYTIC, 2)
    sym = apply_quasi(1, RadialFunction.term(1, 1), v)
    num = {BasisVector(ANALYTIC, 3): 123.0}
    result = compare(sym, num, tol=1e-9)
    assert not result["ok"]
    assert result["worst_entry"] == "z^3"


@given(radial_functions(a_min=-1, a_max=6, b_max=2), st.integers(-4, 4),
       st.integers(0, 8), st.booleans())
@settings(deadline=None, max_examples=60)
def test_engine_oracle_agreement(phi, k, n, analytic):
    v = BasisVector(ANALYTIC if analytic else CONJUGATE, n)
    sym = apply_quasi(k, phi, v)
    num = apply_numeric(k, phi, v)
    assert compare(sym, num, tol=1e-9)["ok"]


def test_bindings_flow_through():
    rng = random.Random(5)
    bindings = {"abar1": complex(rng.uniform(-1, 1), rng.uniform(-1, 1))}
    from htoeplitz import abar

    phi = RadialFunction.term(abar(1), 2)
    v = BasisVector(ANALYTIC, 1)
    sym = apply_quasi(1, phi, v)
    num = apply_numeric(1, phi, v, bindings)
    assert compare(sym, num, bindings, tol=1e-10)["ok"]
