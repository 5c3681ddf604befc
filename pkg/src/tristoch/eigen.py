"""Real spectra of symmetric tridiagonal matrices by Sturm-count bisection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .inertia import TINY_PIVOT
from .model import TriStochMatrix, TriStochParams, from_chain_params, from_params
from .symmetrize import SymTriMatrix, symmetrize

MIN_TOL = 1e-14
DEFAULT_TOL = 1e-12
_MAX_STEPS = 200


class ToleranceError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple  # descending
    abs_tolerance: float
    block_structure: tuple  # (start, stop) pairs

    def __getitem__(self, k):
        return self.eigenvalues[k]

    def __len__(self):
        return len(self.eigenvalues)


def count_below_batch(diag: np.ndarray, off_sq: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Sturm counts for many shifts at once.

    ``diag`` is ``(N, n)``, ``off_sq`` is ``(N, n-1)`` and ``x`` is ``(N, m)``;
    returns ``(N, m)`` counts of eigenvalues below each shift.
    """
    n = diag.shape[1]
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        q = diag[:, :1] - x
        q[q == 0] = -TINY_PIVOT
        count = (q < 0).astype(np.int64)
        for j in range(1, n):
            q = (diag[:, j:j + 1] - x) - off_sq[:, j - 1:j] / q
            q[q == 0] = -TINY_PIVOT
            count += q < 0
    return count


def bisect_batch(diag, off_sq, tol: float = DEFAULT_TOL) -> np.ndarray:
    """All eigenvalues of ``N`` symmetric tridiagonal matrices, ascending.

    Each eigenvalue is bisected inside its own Gershgorin bracket until the
    bracket is narrower than ``2 * tol``.  Brackets stop moving once they
    converge, so a row's result does not depend on the rest of the batch.
    """
    diag = np.asarray(diag, dtype=float)
    off_sq = np.asarray(off_sq, dtype=float)
    if diag.ndim == 1:
        diag, off_sq = diag[None, :], off_sq[None, :]
    N, n = diag.shape
    off = np.sqrt(off_sq)
    radius = np.zeros_like(diag)
    radius[:, 1:] += off
    radius[:, :-1] += off
    lo = (diag - radius).min(axis=1)
    hi = (diag + radius).max(axis=1)
    pad = 2 * tol + 4 * np.finfo(float).eps * n * np.maximum(np.abs(lo), np.abs(hi))
    lo = np.repeat((lo - pad)[:, None], n, axis=1)
    hi = np.repeat((hi + pad)[:, None], n, axis=1)
    k = np.arange(n)[None, :]
    for _ in range(_MAX_STEPS):
        active = (hi - lo) >= 2 * tol
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        left = count_below_batch(diag, off_sq, mid) > k
        hi = np.where(active & left, mid, hi)
        lo = np.where(active & ~left, mid, lo)
    return 0.5 * (lo + hi)


def _as_sym(s) -> SymTriMatrix:
    if isinstance(s, SymTriMatrix):
        return s.to_float()
    if isinstance(s, TriStochMatrix):
        return symmetrize(s).to_float()
    if isinstance(s, TriStochParams):
        return symmetrize(from_params(s)).to_float()
    return symmetrize(from_chain_params(s)).to_float()


def eigenvalues(s, tol: float = DEFAULT_TOL) -> Spectrum:
    """Descending eigenvalues of a symmetric tridiagonal matrix.

    Accepts a :class:`SymTriMatrix`, a stochastic matrix or chain parameters
    (those are symmetrized first).
    """
    if tol < MIN_TOL:
        raise ToleranceError(f"tol must be >= {MIN_TOL:g}, got {tol:g}")
    s = _as_sym(s)
    out = []
    blocks = s.blocks()
    for r in blocks:
        b = s.block(r)
        if b.n == 1:
            out.append(b.diag[0])
        else:
            out.extend(bisect_batch(b.diag, b.off_sq, tol)[0].tolist())
    out.sort(reverse=True)
    return Spectrum(tuple(out), tol, tuple((r.start, r.stop) for r in blocks))


def lambda2(p, tol: float = DEFAULT_TOL) -> float:
    """Second largest eigenvalue."""
    return eigenvalues(p, tol)[1]


def spectral_gap(p, tol: float = DEFAULT_TOL) -> float:
    return 1.0 - lambda2(p, tol)
