"""Two nearby-matrix constructions.

``mix`` pulls any chain towards an irreducible one by convex combination.
``genericize`` moves the diagonal of an irreducible chain by less than
``1/(n+1)`` so that no leading minor of its symmetric form vanishes; the
nonvanishing is certified with exact rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .inertia import minor_sequence
from .model import (
    TriStochParams,
    coerce,
    format_scalar,
    from_chain_params,
    infer_exact,
    is_irreducible,
)
from .symmetrize import symmetrize


class NotIrreducibleError(ValueError):
    pass


@dataclass(frozen=True)
class PerturbationTrace:
    original: tuple
    perturbed: tuple
    epsilon: object
    scheme: str  # "mix" or "genericize"
    certificates: tuple | None = None  # exact D_1 .. D_n for genericize
    distance: object = None  # max entrywise change of the matrix

    def params(self) -> TriStochParams:
        return TriStochParams.from_sequence(self.perturbed)

    def to_json(self) -> dict:
        out = {
            "scheme": self.scheme,
            "epsilon": format_scalar(self.epsilon),
            "original": [format_scalar(v) for v in self.original],
            "perturbed": [format_scalar(v) for v in self.perturbed],
            "distance": format_scalar(self.distance),
        }
        if self.certificates is not None:
            out["certificates"] = [format_scalar(v) for v in self.certificates]
        return out


def _values(p) -> list:
    if isinstance(p, TriStochParams):
        return list(p.as_tuple())
    return list(p)


def matrix_distance(p, q):
    """Largest entrywise difference between the matrices of two chains."""
    a, b = from_chain_params(p).dense(), from_chain_params(q).dense()
    return max(abs(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mix(p, epsilon) -> PerturbationTrace:
    """Convex pull towards an irreducible chain.

    Scalar diagonals (first and last row) and subdiagonal parameters become
    ``(1 - eps) v + eps/2``; interior diagonals become ``(1 - eps) v``.  Every
    off-diagonal entry of the result is at least ``eps/2``.
    """
    vals = _values(p)
    exact = infer_exact([*vals, epsilon])
    vals = list(coerce(vals, exact))
    eps = Fraction(epsilon) if exact else float(epsilon)
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    half = eps / 2
    out = []
    last = len(vals) - 1
    for k, v in enumerate(vals):
        if k == 0 or k == last or k % 2 == 1:
            out.append((1 - eps) * v + half)
        else:
            out.append((1 - eps) * v)
    return PerturbationTrace(tuple(vals), tuple(out), eps, "mix",
                             distance=matrix_distance(vals, out))


def _candidates(lo: Fraction, hi: Fraction):
    """Midpoint of (lo, hi), then midpoints of its halves, breadth first."""
    level = [(lo, hi)]
    while True:
        nxt = []
        for a, b in level:
            m = (a + b) / 2
            yield m
            nxt += [(a, m), (m, b)]
        level = nxt


def _choose(value: Fraction, upper: Fraction, eps: Fraction, nonzero) -> Fraction:
    """A point of ``(0, upper) & (value - eps, value + eps)`` where ``nonzero`` holds.

    The original value is kept when it already qualifies.
    """
    lo, hi = max(Fraction(0), value - eps), min(upper, value + eps)
    if lo < value < hi and nonzero(value):
        return value
    for x in _candidates(lo, hi):
        if nonzero(x):
            return x
    raise AssertionError("unreachable: an affine function has at most one root")


def genericize(p, n: int) -> PerturbationTrace:
    """Nearby irreducible chain whose leading minors are all nonzero.

    Follows the row-by-row construction: the first diagonal becomes
    ``1/(n+1)`` if it was zero, and each later diagonal is moved within
    ``1/(n+1)`` to avoid the single root of the (affine) next minor.
    Subdiagonal parameters are untouched.  Works for any chain length; for
    the 4x4 family it perturbs exactly alpha, gamma, phi and kappa.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    vals = list(coerce(_values(p), True))
    m = from_chain_params(vals)
    if not is_irreducible(m):
        raise NotIrreducibleError("genericize needs an irreducible chain; apply mix first")
    eps = Fraction(1, n + 1)
    size = m.n
    new = list(vals)
    new[0] = vals[0] if vals[0] > 0 else eps
    minors = [Fraction(1), new[0]]
    for row in range(1, size):
        if row < size - 1:
            k, sub = 2 * row, vals[2 * row - 1]
            # coupling to the previous row is fixed by earlier choices
            e_prev = _super(new, row - 1) * sub
            upper = 1 - sub

            def d_k(x, e=e_prev):
                return x * minors[-1] - e * minors[-2]
        else:
            k = len(vals) - 1
            up_prev = _super(new, row - 1)
            upper = Fraction(1)

            def d_k(x, u=up_prev):
                return x * minors[-1] - u * (1 - x) * minors[-2]
        new[k] = _choose(vals[k], upper, eps, lambda x: d_k(x) != 0)
        minors.append(d_k(new[k]))
    out = from_chain_params(new)
    certs = minor_sequence(symmetrize(out), 0).values[1:]
    assert all(c != 0 for c in certs) and tuple(certs) == tuple(minors[1:])
    return PerturbationTrace(tuple(vals), tuple(new), eps, "genericize",
                             certificates=tuple(certs),
                             distance=matrix_distance(vals, new))


def _super(vals, row):
    """Superdiagonal entry of ``row`` in chain parameter coordinates."""
    if row == 0:
        return 1 - vals[0]
    return 1 - vals[2 * row - 1] - vals[2 * row]
