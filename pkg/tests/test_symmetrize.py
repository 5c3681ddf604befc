import math
from fractions import Fraction as F

import numpy as np
from hypothesis import given, settings

from oracles import charpoly, dense_chain
from strategies import chain_params, float_chain_params
from tristoch.eigen import eigenvalues
from tristoch.model import TriStochParams, from_chain_params, from_params
from tristoch.symmetrize import (
    SymTriMatrix,
    char_poly,
    det_recurrence,
    exact_char_poly,
    off_squared,
    symmetrize,
)


def test_first_coupling_half():
    s = symmetrize(from_params(TriStochParams(0.5, 0.5, 0, 0.5, 0, 0.5)))
    assert s.off[0] == 0.5


def test_zero_beta_gives_zero_coupling():
    s = symmetrize(from_params(TriStochParams(0.5, 0.0, 0.5, 0.5, 0, 0.5)))
    assert s.off[0] == 0.0


def test_all_three_couplings():
    # r1 = sqrt(1 * 1/2), r2 = sqrt(1/2 * 1/2), r3 = sqrt(1/2 * 0)
    s = symmetrize(from_params(TriStochParams(0, 0.5, 0, 0.5, 0, 1)))
    assert s.diag == (0, 0, 0, 1)
    assert s.off == (math.sqrt(0.5), 0.5, 0.0)


def test_off_squared_examples():
    assert off_squared(from_params(TriStochParams(0.5, 0.5, 0, 0.5, 0, 0.5)))[0] == 0.25
    assert off_squared(from_params(TriStochParams(1, 0, 1, 0, 1, 1))) == (0, 0, 0)
    p = TriStochParams(F(1, 3), F(1, 7), F(2, 7), F(1, 2), F(1, 4), F(1, 5))
    first = off_squared(from_params(p))[0]
    assert first == F(2, 21) and isinstance(first, F)


def test_exact_mode_has_no_sqrt():
    s = symmetrize(from_chain_params([F(1, 2), F(1, 3), F(1, 3), F(1, 2)]))
    assert s.exact
    try:
        s.off
    except ValueError:
        pass
    else:
        raise AssertionError("exact off should refuse square roots")


def test_char_poly_known():
    # (t^2 - 1)(t^2 - 1/4) for the reflecting walk
    c = exact_char_poly(from_chain_params([0, F(1, 2), 0, F(1, 2), 0, 0]))
    assert c == [F(1, 4), 0, F(-5, 4), 0, 1]


@settings(max_examples=300)
@given(chain_params())
def test_char_poly_matches_dense_oracle(vals):
    """The symmetric form's polynomial equals the dense matrix's, reducible or not."""
    m = from_chain_params(vals)
    s = symmetrize(m)
    assert char_poly(list(s.diag), list(s.off_sq)) == charpoly(dense_chain(vals))


@settings(max_examples=100)
@given(chain_params(n=6))
def test_char_poly_matches_dense_oracle_n6(vals):
    s = symmetrize(from_chain_params(vals))
    assert char_poly(list(s.diag), list(s.off_sq)) == charpoly(dense_chain(vals))


@settings(max_examples=200)
@given(float_chain_params())
def test_eigenvalues_annihilate_det_of_a(vals):
    m = from_chain_params(vals)
    spec = eigenvalues(symmetrize(m), 1e-13)
    a = m.to_numpy()
    for lam in spec.eigenvalues:
        # dense determinant of A - lam I, independent of the band recurrence
        with np.errstate(divide="ignore"):
            assert abs(np.linalg.det(a - lam * np.eye(4))) <= 1e-10


@settings(max_examples=200)
@given(float_chain_params())
def test_off_reconstructs_off_sq(vals):
    s = symmetrize(from_chain_params(vals))
    for o, e in zip(s.off, s.off_sq):
        assert abs(o * o - e) <= 2 * np.spacing(max(e, 1e-300))


def test_det_recurrence_matches_poly():
    s = SymTriMatrix((F(1, 2), F(1, 3), F(1, 5)), (F(1, 7), F(1, 11)), True)
    c = char_poly(list(s.diag), list(s.off_sq))
    x = F(2, 9)
    # det(S - xI) = (-1)^n det(xI - S)
    assert det_recurrence(s.diag, s.off_sq, x) == -sum(ci * x**i for i, ci in enumerate(c))
