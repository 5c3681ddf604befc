"""Symmetric tridiagonal form of a tridiagonal stochastic matrix.

The characteristic polynomial of a tridiagonal matrix sees its off-diagonal
entries only through the products ``super[i] * sub[i]``.  Replacing both by
``sqrt(super[i] * sub[i])`` therefore preserves the spectrum, whether or not
the chain is irreducible.  Exact mode never takes square roots: it carries
the squared couplings instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import TriStochMatrix, blocks_from_mask, coerce, infer_exact, split_mask


@dataclass(frozen=True)
class SymTriMatrix:
    """Symmetric tridiagonal matrix held as ``diag`` and squared couplings.

    ``off`` is derived from ``off_sq`` and is only available in float mode.
    """

    diag: tuple
    off_sq: tuple
    exact: bool = False

    def __post_init__(self):
        if len(self.off_sq) != max(len(self.diag) - 1, 0):
            raise ValueError("off_sq must have length n-1")
        if infer_exact((*self.diag, *self.off_sq)) and not self.exact:
            raise ValueError("rational entries in a float-mode matrix")
        object.__setattr__(self, "diag", coerce(self.diag, self.exact))
        object.__setattr__(self, "off_sq", coerce(self.off_sq, self.exact))
        if any(e < 0 for e in self.off_sq):
            raise ValueError("squared couplings must be nonnegative")

    @classmethod
    def from_off(cls, diag, off) -> "SymTriMatrix":
        return cls(tuple(diag), tuple(float(e) * float(e) for e in off))

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def off(self) -> tuple:
        if self.exact:
            raise ValueError("off-diagonals need square roots; use off_sq in exact mode")
        return tuple(math.sqrt(e) for e in self.off_sq)

    def to_float(self) -> "SymTriMatrix":
        return SymTriMatrix(coerce(self.diag, False), coerce(self.off_sq, False))

    def shifted(self, x) -> "SymTriMatrix":
        return SymTriMatrix(tuple(d - x for d in self.diag), self.off_sq, self.exact)

    def max_band(self):
        mags = [abs(d) for d in self.diag]
        mags += [e if self.exact else math.sqrt(e) for e in self.off_sq]
        return max(mags)

    def blocks(self) -> list[range]:
        """Unreduced blocks.  Float mode drops couplings ``off <= SPLIT_TOL * scale``,
        which moves no eigenvalue by more than that amount."""
        if self.exact:
            return blocks_from_mask(self.n, split_mask(self.off_sq, 0, True))
        return blocks_from_mask(self.n, split_mask(self.off, self.max_band(), False))

    def block(self, r: range) -> "SymTriMatrix":
        return SymTriMatrix(self.diag[r.start:r.stop], self.off_sq[r.start:r.stop - 1], self.exact)

    def trace(self):
        return sum(self.diag)


def off_squared(m: TriStochMatrix) -> tuple:
    """Squared couplings ``super[i] * sub[i]``; exact in rational mode."""
    return m.products()


def symmetrize(m: TriStochMatrix) -> SymTriMatrix:
    """Spectrum-preserving symmetric form; irreducibility is not required."""
    return SymTriMatrix(m.diag, off_squared(m), m.exact)


def char_poly(diag, off_sq) -> list:
    """Ascending coefficients of ``det(t I - M)`` by the three-term recurrence.

    Works unchanged for ``(A.diag, A.products())`` and for a symmetric form.
    """
    zero = 0 * (diag[0] if diag else 0)
    one = zero + 1
    prev2 = [one]
    prev = [-diag[0], one]
    for k in range(1, len(diag)):
        # p_k = (t - d_k) p_{k-1} - e_{k-1} p_{k-2}
        cur = [zero] * (k + 2)
        for i, c in enumerate(prev):
            cur[i + 1] += c
            cur[i] -= diag[k] * c
        for i, c in enumerate(prev2):
            cur[i] -= off_sq[k - 1] * c
        prev2, prev = prev, cur
    return prev


def poly_eval(coeffs, x):
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def det_recurrence(diag, off_sq, x):
    """``det(M - x I)`` via the leading-minor recurrence (no coefficient expansion)."""
    prev2, prev = 1, diag[0] - x
    for k in range(1, len(diag)):
        prev2, prev = prev, (diag[k] - x) * prev - off_sq[k - 1] * prev2
    return prev


def exact_char_poly(m: TriStochMatrix) -> list:
    """Characteristic polynomial of ``m`` as exact rationals."""
    m = m.to_exact() if not m.exact else m
    return char_poly(list(m.diag), list(m.products()))

