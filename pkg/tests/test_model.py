from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from strategies import chain_params, float_chain_params
from tristoch.model import (
    ConstraintError,
    ModeError,
    TriStochMatrix,
    TriStochParams,
    chain_params as to_chain,
    from_chain_params,
    from_dense,
    from_params,
    irreducible_blocks,
    is_irreducible,
    parse_scalar,
    validate,
)

IDENTITY = TriStochParams(1, 0, 1, 0, 1, 1)
MID = TriStochParams(F(1, 2), F(1, 4), F(1, 4), F(1, 4), F(1, 4), F(1, 2))


def test_identity_from_params():
    m = from_params(IDENTITY)
    assert m.diag == (1, 1, 1, 1)
    assert m.super == (0, 0, 0) and m.sub == (0, 0, 0)


def test_bands_by_substitution():
    m = from_params(MID)
    assert m.exact
    assert m.diag == (F(1, 2), F(1, 4), F(1, 4), F(1, 2))
    assert m.super == (F(1, 2), F(1, 2), F(1, 2))
    assert m.sub == (F(1, 4), F(1, 4), F(1, 2))
    assert all(sum(r) == 1 for r in m.dense())


def test_constraint_violation_names_pair():
    with pytest.raises(ConstraintError, match="beta\\+gamma exceeds 1"):
        from_params(TriStochParams(0, 0, 1.2, 0, 0, 0))


@pytest.mark.parametrize("vals, msg", [
    ((-0.1, 0, 0, 0, 0, 0), "alpha is negative"),
    ((0, 0, 0, 0.6, 0.6, 0), "delta\\+phi exceeds 1"),
    ((0, 0, 0, 0, 0, 1.5), "kappa exceeds 1"),
])
def test_other_constraints(vals, msg):
    with pytest.raises(ConstraintError, match=msg):
        from_params(TriStochParams(*vals))


def test_boundary_is_valid():
    m = from_params(TriStochParams(F(0), F(1, 3), F(2, 3), F(1, 2), F(1, 2), F(1)))
    assert validate(m) == []


def test_mixing_modes_rejected():
    with pytest.raises(ModeError):
        from_chain_params([F(1, 2), 0.5, 0, 0, 0, 0])


def test_validate_identity_empty():
    assert validate(from_params(IDENTITY)) == []


def test_validate_flags_negative():
    m = TriStochMatrix((-0.1, 0.5, 0.5, 0.5), (1.1, 0.25, 0.25), (0.25, 0.25, 0.5))
    report = validate(m)
    assert [(v.kind, v.row, v.col) for v in report] == [("negative", 0, 0)]
    assert "negative entry at (0,0)" in str(report[0])


def test_validate_row_sum_tolerance():
    m = TriStochMatrix((0.5 + 1e-16, 0.5, 0.5, 0.5), (0.5, 0.25, 0.25), (0.25, 0.25, 0.5))
    assert validate(m) == []
    bad = TriStochMatrix((0.6, 0.5, 0.5, 0.5), (0.5, 0.25, 0.25), (0.25, 0.25, 0.5))
    assert [v.kind for v in validate(bad)] == ["row-sum"]


def test_validate_exact_row_sum():
    m = TriStochMatrix((F(1, 2), F(1, 2)), (F(1, 2),), (F(1, 3),), exact=True)
    assert [(v.kind, v.row) for v in validate(m)] == [("row-sum", 1)]


def test_irreducibility_examples():
    assert is_irreducible(from_params(MID))
    assert not is_irreducible(from_params(TriStochParams(0.5, 0, 0.25, 0.25, 0.25, 0.5)))
    assert not is_irreducible(from_params(IDENTITY))


def test_blocks_examples():
    assert irreducible_blocks(from_params(IDENTITY)) == [range(0, 1), range(1, 2), range(2, 3), range(3, 4)]
    assert irreducible_blocks(from_params(MID)) == [range(0, 4)]
    delta0 = TriStochParams(F(1, 2), F(1, 4), F(1, 4), F(0), F(1, 2), F(1, 2))
    assert irreducible_blocks(from_params(delta0)) == [range(0, 2), range(2, 4)]


def test_float_split_tolerance():
    m = from_chain_params([0.5, 0.25, 0.25, 1e-15, 0.5, 0.5])
    assert irreducible_blocks(m) == [range(0, 2), range(2, 4)]
    assert is_irreducible(m)


def test_from_dense_rejects_offband():
    a = [[0.5, 0.5, 0.0], [0.5, 0.0, 0.5], [0.1, 0.4, 0.5]]
    with pytest.raises(ValueError, match="off the tridiagonal band"):
        from_dense(a)
    a[2][0] = 0.0
    assert from_dense(a).sub == (0.5, 0.4)


def test_chain_params_roundtrip():
    vals = (F(1, 3), F(1, 7), F(2, 7), F(1, 5), F(1, 5), F(3, 4))
    assert to_chain(from_chain_params(vals)) == vals


def test_parse_scalar():
    assert parse_scalar("1/3") == F(1, 3)
    assert parse_scalar("0.5") == 0.5
    assert parse_scalar("1") == 1


@settings(max_examples=200)
@given(chain_params())
def test_exact_construction_is_valid(vals):
    assert validate(from_chain_params(vals)) == []


@settings(max_examples=200)
@given(float_chain_params())
def test_float_construction_is_valid(vals):
    assert validate(from_chain_params(vals)) == []


@settings(max_examples=200)
@given(chain_params(n=6))
def test_irreducible_iff_single_block(vals):
    m = from_chain_params(vals)
    assert is_irreducible(m) == (len(irreducible_blocks(m)) == 1)
    blocks = irreducible_blocks(m)
    assert [i for r in blocks for i in r] == list(range(m.n))


@settings(max_examples=200)
@given(chain_params())
def test_rational_to_float_roundtrip(vals):
    a = from_chain_params(vals).to_float()
    b = from_chain_params([float(v) for v in vals])
    for x, y in zip((*a.diag, *a.super, *a.sub), (*b.diag, *b.super, *b.sub)):
        assert abs(x - y) <= 1e-15
