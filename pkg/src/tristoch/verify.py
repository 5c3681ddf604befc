"""Sampling campaigns over tridiagonal stochastic chains.

Every sample is a dyadic rational with denominator ``2**30`` (or a grid
denominator), so the float pipeline and the exact pipeline see the very
same matrix.  Samples are drawn in blocks of :data:`BLOCK`; block ``b`` uses
its own generator seeded with ``(seed, b)``, which makes sample ``i`` a pure
function of ``(seed, i)`` and lets blocks run in any order.
"""
from __future__ import annotations

import csv
import os
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .eigen import DEFAULT_TOL, bisect_batch, eigenvalues
from .inertia import count_below, minor_sequence, sign_changes
from .model import (
    PARAM_NAMES,
    TriStochParams,
    coerce,
    format_scalar,
    from_chain_params,
    is_irreducible,
)
from .perturb import genericize, mix
from .symmetrize import symmetrize

DENOM = 2**30
BLOCK = 1024
SAMPLERS = ("uniform", "boundary-biased", "grid")
MODES = ("float", "rational", "both")
THREADS_ENV = "TRISTOCH_THREADS"
MAX_LISTED_VIOLATIONS = 100


@dataclass(frozen=True)
class CampaignConfig:
    n: int = 4
    sample_count: int = 1000
    sampler: str = "uniform"
    seed: int = 0
    tol: float = 1e-9
    numeric_mode: str = "float"
    grid_resolution: int | None = None  # grid points per parameter axis
    eig_tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"sampler must be one of {SAMPLERS}")
        if self.numeric_mode not in MODES:
            raise ValueError(f"numeric_mode must be one of {MODES}")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.sampler == "grid" and (self.grid_resolution is None or self.grid_resolution < 2):
            raise ValueError("grid sampler needs grid_resolution >= 2")

    @property
    def width(self) -> int:
        return 2 * self.n - 2

    @property
    def denominator(self) -> int:
        return self.grid_resolution - 1 if self.sampler == "grid" else DENOM

    def total(self) -> int:
        """Samples actually run (grids are capped at their size)."""
        if self.sampler == "grid":
            return min(self.sample_count, grid_size(self.n, self.grid_resolution))
        return self.sample_count


def param_names(n: int) -> list[str]:
    return list(PARAM_NAMES) if n == 4 else [f"p{k}" for k in range(2 * n - 2)]


def _pair_columns(n: int):
    return [(2 * i - 1, 2 * i) for i in range(1, n - 1)]


def grid_size(n: int, r: int) -> int:
    return r * r * (r * (r + 1) // 2) ** (n - 2)


def _grid_block(cfg: CampaignConfig, start: int, stop: int) -> np.ndarray:
    r = cfg.grid_resolution
    tri = [(i, j) for i in range(r) for j in range(r - i)]
    radices = [r] + [len(tri)] * (cfg.n - 2) + [r]
    out = np.zeros((stop - start, cfg.width), dtype=np.int64)
    for row, idx in enumerate(range(start, stop)):
        digits = []
        for base in reversed(radices):
            idx, d = divmod(idx, base)
            digits.append(d)
        digits.reverse()
        out[row, 0] = digits[0]
        out[row, -1] = digits[-1]
        for (c1, c2), d in zip(_pair_columns(cfg.n), digits[1:-1]):
            out[row, c1], out[row, c2] = tri[d]
    return out


def _random_block(cfg: CampaignConfig, block: int) -> np.ndarray:
    rng = np.random.default_rng([cfg.seed, block])
    raw = rng.integers(0, DENOM + 1, size=(BLOCK, cfg.width), dtype=np.int64)
    coins = rng.integers(0, 4, size=(BLOCK, cfg.width), dtype=np.int64)
    for c1, c2 in _pair_columns(cfg.n):
        s, d = raw[:, c1].copy(), raw[:, c2].copy()
        flip = s + d > DENOM
        raw[:, c1] = np.where(flip, DENOM - s, s)
        raw[:, c2] = np.where(flip, DENOM - d, d)
    if cfg.sampler == "boundary-biased":
        # coin 2 snaps to the lower face, coin 3 to the upper one
        for c in (0, cfg.width - 1):
            raw[:, c] = np.where(coins[:, c] == 2, 0, raw[:, c])
            raw[:, c] = np.where(coins[:, c] == 3, DENOM, raw[:, c])
        for c1, c2 in _pair_columns(cfg.n):
            s = raw[:, c1]
            s = np.where(coins[:, c1] == 2, 0, s)
            s = np.where(coins[:, c1] == 3, DENOM - raw[:, c2], s)
            d = raw[:, c2]
            d = np.where(coins[:, c2] == 2, 0, d)
            d = np.where(coins[:, c2] == 3, DENOM - s, d)
            raw[:, c1], raw[:, c2] = s, d
    return raw


def sample_numerators(cfg: CampaignConfig, start: int, stop: int) -> np.ndarray:
    """Integer numerators (over ``cfg.denominator``) for samples ``start:stop``."""
    if cfg.sampler == "grid":
        return _grid_block(cfg, start, stop)
    parts = []
    for b in range(start // BLOCK, (stop - 1) // BLOCK + 1):
        blk = _random_block(cfg, b)
        lo = max(start - b * BLOCK, 0)
        hi = min(stop - b * BLOCK, BLOCK)
        parts.append(blk[lo:hi])
    return np.concatenate(parts, axis=0)


def sample_params(cfg: CampaignConfig, index: int) -> tuple:
    """Sample ``index`` as exact rationals; a pure function of ``(seed, index)``."""
    row = sample_numerators(cfg, index, index + 1)[0]
    return tuple(Fraction(int(v), cfg.denominator) for v in row)


def bands_from_numerators(nums: np.ndarray, denom: int):
    """Float ``(diag, off_sq, irreducible)`` arrays, bitwise equal to the scalar path."""
    v = nums.astype(float) / denom
    N, m = v.shape
    n = m // 2 + 1
    diag = np.empty((N, n))
    sup = np.empty((N, n - 1))
    sub = np.empty((N, n - 1))
    diag[:, 0] = v[:, 0]
    sup[:, 0] = 1.0 - v[:, 0]
    for i in range(1, n - 1):
        sub[:, i - 1] = v[:, 2 * i - 1]
        diag[:, i] = v[:, 2 * i]
        sup[:, i] = np.maximum(1.0 - v[:, 2 * i - 1] - v[:, 2 * i], 0.0)
    diag[:, -1] = v[:, -1]
    sub[:, -1] = 1.0 - v[:, -1]
    irreducible = (sup > 0).all(axis=1) & (sub > 0).all(axis=1)
    return diag, sup * sub, irreducible


def exact_negative_count(params) -> int:
    return count_below(symmetrize(from_chain_params(params)), 0)


@dataclass
class _Chunk:
    start: int
    lambdas: np.ndarray  # (B, n) descending
    neg: np.ndarray
    irreducible: np.ndarray
    exact_neg: list | None
    nums: np.ndarray


def _run_chunk(cfg: CampaignConfig, start: int, stop: int) -> _Chunk:
    nums = sample_numerators(cfg, start, stop)
    diag, off_sq, irr = bands_from_numerators(nums, cfg.denominator)
    lam = bisect_batch(diag, off_sq, cfg.eig_tol)[:, ::-1]
    neg = (lam < -cfg.tol).sum(axis=1)
    exact_neg = None
    if cfg.numeric_mode != "float":
        exact_neg = [exact_negative_count([Fraction(int(v), cfg.denominator) for v in row])
                     for row in nums]
    return _Chunk(start, lam, neg, irr, exact_neg, nums)


@dataclass
class CampaignReport:
    n: int
    sampler: str
    seed: int
    numeric_mode: str
    tol: float
    samples_run: int
    contract: str
    min_lambda2: float
    min_lambda2_index: int
    min_lambda2_params: list
    violations: list
    violation_count: int
    negative_count_histogram: dict
    exact_negative_count_histogram: dict | None
    irreducible_samples: int
    reducible_samples: int
    reducible_min_lambda2: float | None
    grid_resolution: int | None = None
    timing: float | None = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "n": self.n,
            "sampler": self.sampler,
            "seed": self.seed,
            "numeric_mode": self.numeric_mode,
            "tol": self.tol,
            "samples_run": self.samples_run,
            "contract": self.contract,
            "min_lambda2": _num(self.min_lambda2),
            "min_lambda2_reproducer": {
                "seed": self.seed,
                "index": self.min_lambda2_index,
                "params": self.min_lambda2_params,
            },
            "violation_count": self.violation_count,
            "violations": self.violations,
            "negative_count_histogram": self.negative_count_histogram,
            "exact_negative_count_histogram": self.exact_negative_count_histogram,
            "irreducible_samples": self.irreducible_samples,
            "reducible_samples": self.reducible_samples,
            "reducible_min_lambda2": _num(self.reducible_min_lambda2),
        }
        if self.grid_resolution is not None:
            out["grid_resolution"] = self.grid_resolution
        if include_timing:
            out["timing_seconds"] = self.timing
        return out


def _num(x):
    return None if x is None else float(x)


def _histogram(values) -> dict:
    return {str(k): v for k, v in sorted(Counter(int(x) for x in values).items())}


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _write_csv_rows(writer, cfg: CampaignConfig, chunk: _Chunk) -> None:
    for r in range(len(chunk.nums)):
        params = [format_scalar(int(v) / cfg.denominator) for v in chunk.nums[r]]
        lams = [format_scalar(x) for x in chunk.lambdas[r]]
        neg = chunk.exact_neg[r] if chunk.exact_neg is not None else int(chunk.neg[r])
        writer.writerow([chunk.start + r, *params, *lams, neg, int(bool(chunk.irreducible[r]))])


def csv_header(n: int) -> list[str]:
    return ["index", *param_names(n), *[f"lambda{k}" for k in range(1, n + 1)],
            "neg_count", "irreducible"]


def run_campaign(cfg: CampaignConfig, csv_file=None) -> CampaignReport:
    """Sample, solve and aggregate.  For ``n = 4`` any violation is a bug.

    ``csv_file`` (a text stream) optionally receives one row per sample.
    """
    t0 = time.perf_counter()
    total = cfg.total()
    bounds = [(s, min(s + BLOCK, total)) for s in range(0, total, BLOCK)]
    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(lambda b: _run_chunk(cfg, *b), bounds))
    else:
        chunks = [_run_chunk(cfg, *b) for b in bounds]

    writer = None
    if csv_file is not None:
        writer = csv.writer(csv_file, lineterminator="\n")
        writer.writerow(csv_header(cfg.n))

    lam2 = np.concatenate([c.lambdas[:, 1] for c in chunks])
    irr = np.concatenate([c.irreducible for c in chunks])
    neg = np.concatenate([c.neg for c in chunks])
    exact_neg = None
    if cfg.numeric_mode != "float":
        exact_neg = [x for c in chunks for x in c.exact_neg]
    if writer is not None:
        for c in chunks:
            _write_csv_rows(writer, cfg, c)

    def exact_params(i):
        c = chunks[i // BLOCK]
        return [format_scalar(Fraction(int(v), cfg.denominator)) for v in c.nums[i - c.start]]

    imin = int(np.argmin(lam2))  # first index on ties
    bad = np.flatnonzero(lam2 < -cfg.tol)
    violations = [{"index": int(i), "params": exact_params(int(i)), "lambda2": float(lam2[i])}
                  for i in bad[:MAX_LISTED_VIOLATIONS]]
    if cfg.numeric_mode == "float":
        hist, exact_hist = _histogram(neg), None
    elif cfg.numeric_mode == "rational":
        hist, exact_hist = None, _histogram(exact_neg)
    else:
        hist, exact_hist = _histogram(neg), _histogram(exact_neg)
    red = lam2[~irr]
    return CampaignReport(
        n=cfg.n, sampler=cfg.sampler, seed=cfg.seed, numeric_mode=cfg.numeric_mode,
        tol=cfg.tol, samples_run=total,
        contract="lambda2 >= -tol" if cfg.n == 4 else "none (exploration)",
        min_lambda2=float(lam2[imin]), min_lambda2_index=imin,
        min_lambda2_params=exact_params(imin),
        violations=violations, violation_count=int(len(bad)),
        negative_count_histogram=hist, exact_negative_count_histogram=exact_hist,
        irreducible_samples=int(irr.sum()), reducible_samples=int((~irr).sum()),
        reducible_min_lambda2=float(red.min()) if len(red) else None,
        grid_resolution=cfg.grid_resolution if cfg.sampler == "grid" else None,
        timing=time.perf_counter() - t0,
    )


def explore_higher(cfg: CampaignConfig, csv_file=None) -> CampaignReport:
    """The same pipeline for ``n >= 5``, where no sign contract is known."""
    if cfg.n < 5:
        raise ValueError("explore_higher is for n >= 5")
    return run_campaign(cfg, csv_file)


@dataclass(frozen=True)
class CrossCheck:
    float_count: int
    sign_change_count: int
    exact_count: int
    generic: bool
    route: str  # "direct", "genericize" or "mix+genericize"

    @property
    def agree(self) -> bool:
        return self.float_count == self.sign_change_count == self.exact_count


def cross_check(p, n: int = 2**20) -> CrossCheck:
    """Negative-eigenvalue count three ways.

    Float LDL^T pivots, exact sign changes of the leading minors, and the
    exact Sturm count.  A non-generic chain is first moved by less than
    ``1/(n+1)`` with :func:`genericize` (after :func:`mix` if reducible);
    this only preserves the count if no eigenvalue lies that close to zero.
    """
    vals = list(p.as_tuple()) if isinstance(p, TriStochParams) else list(p)
    exact_vals = coerce(vals, True)
    m = from_chain_params(exact_vals)
    s = symmetrize(m)
    seq = minor_sequence(s, 0)
    route = "direct"
    if not seq.generic:
        q = exact_vals
        route = "genericize"
        if not is_irreducible(m):
            q = mix(q, Fraction(1, n + 1)).perturbed
            route = "mix+genericize"
        seq = minor_sequence(symmetrize(from_chain_params(genericize(q, n).perturbed)), 0)
    return CrossCheck(
        float_count=count_below(s.to_float(), 0),
        sign_change_count=sign_changes(seq),
        exact_count=count_below(s, 0),
        generic=route == "direct",
        route=route,
    )


def region_rows(resolution: int, tol: float = DEFAULT_TOL):
    """Grid over the 4x4 family: yields ``(params, eigenvalues descending)``."""
    cfg = CampaignConfig(n=4, sample_count=grid_size(4, resolution), sampler="grid",
                         grid_resolution=resolution)
    nums = sample_numerators(cfg, 0, cfg.total())
    for row in nums:
        params = tuple(Fraction(int(v), cfg.denominator) for v in row)
        yield params, eigenvalues(params, tol).eigenvalues

