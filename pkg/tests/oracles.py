"""Independent exact oracles used to derive frozen expected values.

Nothing here imports the package: dense matrices, Faddeev-LeVerrier
characteristic polynomials and classical Sturm chains, all over Fraction.
"""
from fractions import Fraction


def dense_chain(params):
    """Dense row-stochastic tridiagonal matrix from chain parameters."""
    v = [Fraction(x) for x in params]
    n = len(v) // 2 + 1
    a = [[Fraction(0)] * n for _ in range(n)]
    a[0][0] = v[0]
    a[0][1] = 1 - v[0]
    for i in range(1, n - 1):
        sub, d = v[2 * i - 1], v[2 * i]
        a[i][i - 1] = sub
        a[i][i] = d
        a[i][i + 1] = 1 - sub - d
    a[n - 1][n - 1] = v[-1]
    a[n - 1][n - 2] = 1 - v[-1]
    return a


def _matmul(x, y):
    n = len(x)
    return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def charpoly(a):
    """Coefficients c[0..n] (ascending) of det(tI - A), via Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = _matmul(a, m)
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        am = _matmul(a, m)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def _peval(c, x):
    r = Fraction(0)
    for coef in reversed(c):
        r = r * x + coef
    return r


def _pdiv_rem(num, den):
    num = list(num)
    while len(num) >= len(den):
        if num[-1] == 0:
            num.pop()
            continue
        f = num[-1] / den[-1]
        shift = len(num) - len(den)
        for i, d in enumerate(den):
            num[shift + i] -= f * d
        num.pop()
    while num and num[-1] == 0:
        num.pop()
    return num


def _deriv(c):
    return [i * c[i] for i in range(1, len(c))]


def _squarefree(c):
    # gcd(p, p') then p / gcd, so repeated roots count once
    a, b = list(c), _deriv(c)
    while b:
        a, b = b, _pdiv_rem(a, b)
    if len(a) <= 1:
        return list(c)
    q = [Fraction(0)] * (len(c) - len(a) + 1)
    r = list(c)
    while len(r) >= len(a) and any(r):
        f = r[-1] / a[-1]
        shift = len(r) - len(a)
        q[shift] = f
        for i, d in enumerate(a):
            r[shift + i] -= f * d
        r.pop()
    return q


def _sturm_chain(c):
    chain = [list(c), _deriv(c)]
    while True:
        r = _pdiv_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _variations(chain, x):
    signs = [s for s in (_peval(p, x) for p in chain) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def distinct_roots_in(c, lo, hi):
    """Number of distinct real roots of c in the half-open interval (lo, hi]."""
    chain = _sturm_chain(_squarefree(c))
    return _variations(chain, lo) - _variations(chain, hi)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdiv(num, den):
    """Exact quotient of polynomials (remainder must vanish)."""
    num, den = _trim(num), _trim(den)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and num:
        f = num[-1] / den[-1]
        shift = len(num) - len(den)
        q[shift] = f
        for i, d in enumerate(den):
            num[shift + i] -= f * d
        num = _trim(num)
    assert not num, "inexact polynomial division"
    return _trim(q)


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pdiv_rem(a, b)
    return [x / a[-1] for x in a]


def _sub(a, b):
    m = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (m - len(a))
    b = list(b) + [Fraction(0)] * (m - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def yun(c):
    """Square-free factors f_1, f_2, ... with c = lc * prod f_i^i."""
    c = [Fraction(x) for x in c]
    a0 = _gcd(c, _deriv(c))
    b = _pdiv(c, a0)
    cc = _pdiv(_deriv(c), a0)
    d = _sub(cc, _deriv(b))
    out = []
    while len(b) > 1:
        a = _gcd(b, d) if d else b
        out.append(a)
        b = _pdiv(b, a)
        cc = _pdiv(d, a) if d else []
        d = _sub(cc, _deriv(b))
    return out


def roots_below(c, x):
    """Number of real roots of c strictly below x, counted with multiplicity."""
    x = Fraction(x)
    bound = 1 + max(abs(Fraction(v) / c[-1]) for v in c[:-1])
    total = 0
    for mult, f in enumerate(yun(c), start=1):
        if len(f) < 2:
            continue
        chain = _sturm_chain(f)
        k = _variations(chain, -bound) - _variations(chain, x)
        if _peval(f, x) == 0:
            k -= 1
        total += mult * k
    return total


def _multiplicity(c, interval):
    k, p = 0, list(c)
    lo, hi = interval
    while len(p) > 1 and distinct_roots_in(p, lo, hi):
        k += 1
        p = _deriv(p)
    return k


def isolate_roots(c, width):
    """Isolating intervals (lo, hi] of width <= width for each distinct real root."""
    bound = 1 + max(abs(x / c[-1]) for x in c[:-1])
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = distinct_roots_in(c, lo, hi)
        if k == 0:
            continue
        if k == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def eigenvalues_exact(params, width=Fraction(1, 10**20)):
    """Eigenvalues (descending, with multiplicity) as interval midpoints."""
    c = charpoly(dense_chain(params))
    vals = []
    for r in isolate_roots(c, width):
        mid = (r[0] + r[1]) / 2
        vals.extend([mid] * _multiplicity(c, r))
    return sorted(vals, reverse=True)
