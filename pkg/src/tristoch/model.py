"""Tridiagonal row-stochastic matrices (birth-death chains).

A matrix is stored as three bands.  Every entry is either a Python float
or an exact :class:`fractions.Fraction`; the mode is fixed when the matrix
is built and never mixed.

Chain parameters
----------------
An ``n x n`` chain is described by ``2n - 2`` numbers::

    row 0        : diag[0]                       (super = 1 - diag)
    row i (mid)  : sub[i-1], diag[i]             (super = 1 - sub - diag)
    row n-1      : diag[n-1]                     (sub = 1 - diag)

For ``n = 4`` this is exactly ``(alpha, beta, gamma, delta, phi, kappa)``.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

#: relative tolerance on float row sums
ROW_SUM_TOL = 1e-15
#: coupling products at or below ``SPLIT_TOL * max band magnitude`` split blocks
SPLIT_TOL = 1e-14

PARAM_NAMES = ("alpha", "beta", "gamma", "delta", "phi", "kappa")


class ConstraintError(ValueError):
    """Parameters violate a stochasticity constraint."""


class ModeError(TypeError):
    """Float and exact rational values were mixed."""


def parse_scalar(text: str | float | int | Fraction):
    """Parse ``"p/q"`` (exact), a decimal string, or pass numbers through."""
    if isinstance(text, (Fraction, float, int)):
        return text
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    value = float(text)
    return int(value) if value.is_integer() and "." not in text and "e" not in text.lower() else value


def format_scalar(x) -> str:
    """Rationals as ``"p/q"``; floats with 17 significant digits."""
    if isinstance(x, Rational):
        return str(Fraction(x))
    return format(float(x), ".17g")


def infer_exact(values) -> bool:
    """Decide the numeric mode of a collection. Integers are neutral."""
    has_frac = any(isinstance(v, Fraction) for v in values)
    has_float = any(isinstance(v, (float, np.floating)) for v in values)
    if has_frac and has_float:
        raise ModeError("cannot mix float and rational values")
    return has_frac


def coerce(values, exact: bool) -> tuple:
    if exact:
        return tuple(Fraction(v) for v in values)
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class TriStochParams:
    """The six parameters of the 4x4 family."""

    alpha: object
    beta: object
    gamma: object
    delta: object
    phi: object
    kappa: object

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    @classmethod
    def from_sequence(cls, values) -> "TriStochParams":
        values = list(values)
        if len(values) != 6:
            raise ValueError(f"expected 6 parameters, got {len(values)}")
        return cls(*values)

    @property
    def exact(self) -> bool:
        return infer_exact(self.as_tuple())

    def to_exact(self) -> "TriStochParams":
        return TriStochParams(*coerce(self.as_tuple(), True))

    def to_float(self) -> "TriStochParams":
        return TriStochParams(*coerce(self.as_tuple(), False))


def _param_label(n: int, k: int) -> str:
    if n == 4:
        return PARAM_NAMES[k]
    return f"p{k}"


def check_chain_params(values: Sequence) -> None:
    """Raise :class:`ConstraintError` naming the first violated inequality."""
    m = len(values)
    if m < 2 or m % 2:
        raise ConstraintError(f"chain needs an even number >= 2 of parameters, got {m}")
    n = m // 2 + 1
    for k, v in enumerate(values):
        if v < 0:
            raise ConstraintError(f"{_param_label(n, k)} is negative")
    for i in range(1, n - 1):
        s, d = values[2 * i - 1], values[2 * i]
        if s + d > 1:
            # float sums of boundary values like 0.1 + 0.9 are exact enough
            if isinstance(s, Fraction) or s + d - 1 > ROW_SUM_TOL:
                raise ConstraintError(
                    f"{_param_label(n, 2 * i - 1)}+{_param_label(n, 2 * i)} exceeds 1")
    for k, v in enumerate(values):
        if v > 1:
            raise ConstraintError(f"{_param_label(n, k)} exceeds 1")


@dataclass(frozen=True)
class TriStochMatrix:
    """Tridiagonal matrix as bands; ``sub[i]`` is entry ``(i+1, i)``."""

    diag: tuple
    super: tuple
    sub: tuple
    exact: bool = False

    def __post_init__(self):
        n = len(self.diag)
        if n < 1 or len(self.super) != n - 1 or len(self.sub) != n - 1:
            raise ValueError("band lengths must be n, n-1, n-1")
        all_vals = (*self.diag, *self.super, *self.sub)
        if infer_exact(all_vals) and not self.exact:
            raise ModeError("rational entries in a float-mode matrix")
        object.__setattr__(self, "diag", coerce(self.diag, self.exact))
        object.__setattr__(self, "super", coerce(self.super, self.exact))
        object.__setattr__(self, "sub", coerce(self.sub, self.exact))

    @property
    def n(self) -> int:
        return len(self.diag)

    def products(self) -> tuple:
        """Coupling products ``super[i] * sub[i]``."""
        return tuple(u * l for u, l in zip(self.super, self.sub))

    def to_float(self) -> "TriStochMatrix":
        return TriStochMatrix(coerce(self.diag, False), coerce(self.super, False),
                              coerce(self.sub, False), exact=False)

    def to_exact(self) -> "TriStochMatrix":
        return TriStochMatrix(self.diag, self.super, self.sub, exact=True)

    def dense(self) -> list[list]:
        zero = Fraction(0) if self.exact else 0.0
        a = [[zero] * self.n for _ in range(self.n)]
        for i, d in enumerate(self.diag):
            a[i][i] = d
        for i, (u, l) in enumerate(zip(self.super, self.sub)):
            a[i][i + 1] = u
            a[i + 1][i] = l
        return a

    def to_numpy(self) -> np.ndarray:
        return np.array(self.to_float().dense(), dtype=float)

    def max_band(self):
        return max(abs(x) for x in (*self.diag, *self.super, *self.sub))


def from_chain_params(values: Sequence, exact: bool | None = None) -> TriStochMatrix:
    """Build the ``n x n`` chain from its ``2n - 2`` parameters."""
    values = list(values)
    if exact is None:
        exact = infer_exact(values)
    values = list(coerce(values, exact))
    check_chain_params(values)
    n = len(values) // 2 + 1
    one = Fraction(1) if exact else 1.0
    diag = [values[0]]
    sup = [one - values[0]]
    sub = []
    for i in range(1, n - 1):
        s, d = values[2 * i - 1], values[2 * i]
        sub.append(s)
        diag.append(d)
        sup.append(max(one - s - d, 0 * one))
    diag.append(values[-1])
    sub.append(one - values[-1])
    return TriStochMatrix(tuple(diag), tuple(sup), tuple(sub), exact=exact)


def chain_params(m: TriStochMatrix) -> tuple:
    """Inverse of :func:`from_chain_params`."""
    out = [m.diag[0]]
    for i in range(1, m.n - 1):
        out += [m.sub[i - 1], m.diag[i]]
    out.append(m.diag[-1])
    return tuple(out)


def from_params(p: TriStochParams, exact: bool | None = None) -> TriStochMatrix:
    """The 4x4 matrix of the (alpha, ..., kappa) family.

    >>> from_params(TriStochParams(1, 0, 1, 0, 1, 1)).diag
    (1.0, 1.0, 1.0, 1.0)
    """
    return from_chain_params(p.as_tuple(), exact=exact)


def from_dense(a, exact: bool | None = None) -> TriStochMatrix:
    """Extract bands from a square array; anything off the band must be zero."""
    rows = [list(r) for r in a]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(n):
            if abs(i - j) > 1 and rows[i][j] != 0:
                raise ValueError(f"entry ({i},{j}) is off the tridiagonal band")
    flat = [x for r in rows for x in r]
    if exact is None:
        exact = infer_exact(flat)
    return TriStochMatrix(
        tuple(rows[i][i] for i in range(n)),
        tuple(rows[i][i + 1] for i in range(n - 1)),
        tuple(rows[i + 1][i] for i in range(n - 1)),
        exact=exact,
    )


@dataclass(frozen=True)
class Violation:
    kind: str  # "negative" or "row-sum"
    row: int
    col: int | None
    value: object

    def __str__(self):
        if self.kind == "negative":
            return f"negative entry at ({self.row},{self.col}): {format_scalar(self.value)}"
        return f"row {self.row} sums to {format_scalar(self.value)}"


def validate(m: TriStochMatrix) -> list[Violation]:
    """Every violated invariant; an empty list means ``m`` is stochastic."""
    report = []
    a = m.dense()
    for i, row in enumerate(a):
        for j in range(max(0, i - 1), min(m.n, i + 2)):
            if row[j] < 0:
                report.append(Violation("negative", i, j, row[j]))
        total = sum(row[max(0, i - 1):i + 2])
        if m.exact:
            bad = total != 1
        else:
            bad = abs(total - 1.0) > ROW_SUM_TOL * max(1.0, abs(total))
        if bad:
            report.append(Violation("row-sum", i, None, total))
    return report


def split_mask(products, scale, exact: bool) -> list[bool]:
    """True at each coupling that separates two blocks."""
    if exact:
        return [p == 0 for p in products]
    thresh = SPLIT_TOL * float(scale)
    return [p <= thresh for p in products]


def blocks_from_mask(n: int, mask) -> list[range]:
    out, start = [], 0
    for i, cut in enumerate(mask):
        if cut:
            out.append(range(start, i + 1))
            start = i + 1
    out.append(range(start, n))
    return out


def irreducible_blocks(m: TriStochMatrix) -> list[range]:
    """Maximal runs of indices (0-based) coupled by nonzero band products."""
    mask = split_mask(m.products(), m.max_band(), m.exact)
    return blocks_from_mask(m.n, mask)


def is_irreducible(m: TriStochMatrix) -> bool:
    """Strong connectivity: every super- and subdiagonal entry is positive."""
    return all(u > 0 for u in m.super) and all(l > 0 for l in m.sub)
