"""Leading principal minors, sign changes and Sturm counts.

For a symmetric tridiagonal ``S`` the leading minors of ``S - x I`` obey

    D_0 = 1,  D_1 = d_1 - x,  D_k = (d_k - x) D_{k-1} - e_{k-1} D_{k-2}

with ``e`` the squared couplings.  When no ``D_k`` vanishes, the number of
sign changes in ``D_0 .. D_n`` is the number of eigenvalues below ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import TriStochParams, from_params
from .symmetrize import SymTriMatrix, symmetrize

#: stand-in for an exactly zero pivot in float counting
TINY_PIVOT = 1e-300


class NonGenericError(ValueError):
    """A leading minor vanishes, so sign changes do not determine inertia."""


class StructuralDegeneracyError(ValueError):
    """Two consecutive minors vanish; the matrix was not split into blocks."""


@dataclass(frozen=True)
class MinorSequence:
    values: tuple
    shift: object
    generic: bool


@dataclass(frozen=True)
class InertiaReport:
    minors: MinorSequence
    sign_changes: int | None
    # None when the sequence is non-generic; count_below is always defined
    negative_count: int | None
    count_below: int


def _as_sym(s) -> SymTriMatrix:
    if isinstance(s, SymTriMatrix):
        return s
    diag, off_sq = s
    exact = any(isinstance(v, Fraction) for v in (*diag, *off_sq))
    return SymTriMatrix(tuple(diag), tuple(off_sq), exact)


def minor_sequence(s, shift=0) -> MinorSequence:
    """``D_0 .. D_n`` of ``S - shift I``; ``s`` is a SymTriMatrix or ``(diag, off_sq)``."""
    s = _as_sym(s)
    if s.exact:
        shift = Fraction(shift)
    vals = [1 + 0 * shift, s.diag[0] - shift]
    for k in range(1, s.n):
        vals.append((s.diag[k] - shift) * vals[-1] - s.off_sq[k - 1] * vals[-2])
    return MinorSequence(tuple(vals), shift, all(v != 0 for v in vals[1:]))


def sign_changes(seq: MinorSequence) -> int:
    if not seq.generic:
        raise NonGenericError("minor sequence contains a zero; genericize or use count_below")
    v = seq.values
    return sum(1 for a, b in zip(v, v[1:]) if (a < 0) != (b < 0))


def _count_below_float(diag, off_sq, x) -> int:
    count = 0
    q = diag[0] - x
    if q == 0:
        q = -TINY_PIVOT
    if q < 0:
        count += 1
    for k in range(1, len(diag)):
        q = (diag[k] - x) - off_sq[k - 1] / q
        if q == 0:
            q = -TINY_PIVOT
        if q < 0:
            count += 1
    return count


def _count_below_exact(s: SymTriMatrix, x) -> int:
    count = 0
    for r in s.blocks():
        vals = minor_sequence(s.block(r), x).values
        prev_sign = 1
        prev_zero = False
        for v in vals[1:]:
            if v == 0:
                if prev_zero:
                    raise StructuralDegeneracyError("two consecutive zero minors")
                # an infinitesimally smaller shift gives the predecessor's sign
                sign = prev_sign
                prev_zero = True
            else:
                sign = 1 if v > 0 else -1
                prev_zero = False
            if sign != prev_sign:
                count += 1
            prev_sign = sign
    return count


def count_below(s, x) -> int:
    """Number of eigenvalues of ``s`` strictly below ``x``.

    Exact mode is exact everywhere.  Float mode counts negative LDL^T pivots,
    replacing a zero pivot by ``-TINY_PIVOT``; at an eigenvalue that matches
    ``x`` to the last bit the float count may include it.
    """
    s = _as_sym(s)
    if s.exact:
        return _count_below_exact(s, Fraction(x))
    return _count_below_float(s.diag, s.off_sq, float(x))


def inertia_report(s, shift=0) -> InertiaReport:
    s = _as_sym(s)
    seq = minor_sequence(s, shift)
    below = count_below(s, shift)
    if seq.generic:
        changes = sign_changes(seq)
        return InertiaReport(seq, changes, changes, below)
    return InertiaReport(seq, None, None, below)


def _exact_params(p) -> TriStochParams:
    if not isinstance(p, TriStochParams):
        p = TriStochParams.from_sequence(p)
    return p.to_exact()


def verify_sign_lemma(p) -> bool:
    """Check both minor implications exactly at shift 0:

    ``D_2 <= 0  =>  D_3 <= 0``  and  ``D_3 <= 0 and D_2 >= 0  =>  D_4 <= 0``.
    """
    s = symmetrize(from_params(_exact_params(p)))
    _, _, d2, d3, d4 = minor_sequence(s, 0).values
    first = d3 <= 0 if d2 <= 0 else True
    second = d4 <= 0 if (d3 <= 0 and d2 >= 0) else True
    return first and second


def at_most_two_negative(p) -> bool:
    """Whether the 4x4 family member has at most two negative eigenvalues."""
    if not isinstance(p, TriStochParams):
        p = TriStochParams.from_sequence(p)
    return count_below(symmetrize(from_params(p)), 0) <= 2
