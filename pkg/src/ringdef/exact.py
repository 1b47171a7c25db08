"""Exact integer linear algebra, dense polynomials, and order finding.

Everything in this module is pure and exact: matrices are sequences of
equal-length rows of Python integers, a lattice is the set of integer
combinations of a matrix's rows, and no floating point is ever involved.

Hermite normal form (HNF) convention used as the canonical lattice basis
throughout the package: row style, upper staircase, positive pivots,
entries above each pivot reduced into [0, pivot).  With this convention
two row lattices are equal iff their HNFs are bit-identical.
"""

from __future__ import annotations

import math
from fractions import Fraction

from sympy import factorint, isprime

TRIAL_DIVISION_BOUND = 10**6
ORDER_ITERATION_CAP = 10**6
CONTINUED_FRACTION_CAP = 10**6


class NotInvertible(ArithmeticError):
    """The element has no inverse in the ring at hand."""


class CapExceeded(RuntimeError):
    """A bounded search passed its configured cap."""


# ---------------------------------------------------------------------------
# basic matrix helpers


def mat_identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    nb = len(b[0])
    return [
        [sum(ra[k] * b[k][j] for k in range(len(b))) for j in range(nb)]
        for ra in a
    ]


def vec_mat(v, rows):
    """Row vector times matrix: sum_i v[i] * rows[i]."""
    n = len(rows[0])
    out = [0] * n
    for vi, row in zip(v, rows):
        if vi:
            for j, rj in enumerate(row):
                if rj:
                    out[j] += vi * rj
    return tuple(out)


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def det(rows):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form and lattice arithmetic


def _hnf_inplace(a, u=None):
    """Reduce ``a`` to HNF in place; mirror row operations on ``u``.

    Returns the rank.  Rows at index >= rank are zero afterwards.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    r = 0
    for c in range(n):
        if r >= m:
            break
        if all(a[i][c] == 0 for i in range(r, m)):
            continue
        while True:
            piv = min(
                (i for i in range(r, m) if a[i][c] != 0),
                key=lambda i: abs(a[i][c]),
            )
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                if u is not None:
                    u[r], u[piv] = u[piv], u[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if u is not None:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if u is not None:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return r


def hnf(rows):
    """Hermite normal form of the lattice spanned by ``rows``.

    Zero rows are dropped; the result is a tuple of tuples.
    """
    if not rows:
        return ()
    a = [list(r) for r in rows]
    rank = _hnf_inplace(a)
    return tuple(tuple(r) for r in a[:rank])


def hnf_with_transform(rows):
    """Return ``(h, u, rank)`` with ``u`` unimodular and ``u * rows`` in HNF.

    ``h`` holds the nonzero rows only; rows of ``u`` at index >= rank span
    the left kernel of the input.
    """
    a = [list(r) for r in rows]
    u = mat_identity(len(a))
    rank = _hnf_inplace(a, u)
    return tuple(tuple(r) for r in a[:rank]), [tuple(r) for r in u], rank


def left_kernel(rows):
    """Basis of {x : x * rows = 0} as a tuple of integer rows."""
    _, u, rank = hnf_with_transform(rows)
    return tuple(u[rank:])


def solve_over_hnf(hrows, v):
    """Coefficients expressing ``v`` over HNF rows, or None if not in the lattice."""
    w = list(v)
    coeffs = []
    for row in hrows:
        pc = next(j for j, x in enumerate(row) if x != 0)
        if w[pc] % row[pc] != 0:
            return None
        q = w[pc] // row[pc]
        coeffs.append(q)
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    if any(w):
        return None
    return coeffs


def solve_int_rows(rows, v):
    """Integer x with x * rows == v, or None.  Rows need not be independent."""
    h, u, rank = hnf_with_transform(rows)
    coeffs = solve_over_hnf(h, v)
    if coeffs is None:
        return None
    x = [0] * len(rows)
    for c, urow in zip(coeffs, u[:rank]):
        if c:
            x = [xi + c * ui for xi, ui in zip(x, urow)]
    return tuple(x)


def lattice_contains(hrows, v):
    return solve_over_hnf(hrows, v) is not None


def reduce_mod_hnf(hrows, v):
    """Canonical coset representative of ``v`` modulo a full-rank square HNF."""
    w = list(v)
    for i, row in enumerate(hrows):
        q = w[i] // row[i]
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return tuple(w)


def lattice_index(hrows):
    """Index of a full-rank square HNF lattice in Z^n (product of pivots)."""
    out = 1
    for i, row in enumerate(hrows):
        out *= row[i]
    return out


def lattice_sum(rows_a, rows_b):
    return hnf(list(rows_a) + list(rows_b))


def lattice_intersect(rows_a, rows_b):
    """HNF of the intersection of two row lattices."""
    ma = len(rows_a)
    stacked = [list(r) for r in rows_a] + [[-x for x in r] for r in rows_b]
    gens = [vec_mat(k[:ma], rows_a) for k in left_kernel(stacked)]
    return hnf(gens)


def solve_rational(rows, v):
    """Fraction solution x of x * rows == v for square nonsingular rows, else None."""
    n = len(rows)
    # Gaussian elimination on the transpose with an augmented column.
    m = [[Fraction(rows[j][i]) for j in range(n)] + [Fraction(v[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][n] for i in range(n))


# ---------------------------------------------------------------------------
# linear algebra over a prime field


def fp_rref(rows, p):
    """Row-reduced echelon form mod p; returns (rows, pivot_columns)."""
    m = [[x % p for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m if any(row)], pivots


def fp_rank(rows, p):
    reduced, _ = fp_rref(rows, p)
    return len(reduced)


def fp_in_span(v, rows, p):
    """Is v in the F_p row span of ``rows``?"""
    reduced, pivots = fp_rref(rows, p)
    w = [x % p for x in v]
    for row, c in zip(reduced, pivots):
        if w[c]:
            f = w[c]
            w = [(x - f * y) % p for x, y in zip(w, row)]
    return not any(w)


def fp_solve_left(rows, v, p):
    """x with x * rows == v (mod p), or None."""
    m = len(rows)
    n = len(rows[0])
    aug = [[rows[j][i] % p for j in range(m)] + [v[i] % p] for i in range(n)]
    x = [0] * m
    r = 0
    pivots = []
    for c in range(m):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(y * inv) % p for y in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(y - f * z) % p for y, z in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][m]:
            return None
    for row, c in zip(aug[:r], pivots):
        x[c] = row[m]
    return tuple(x)


# ---------------------------------------------------------------------------
# factoring and multiplicative orders


def factor_bounded(n, bound=TRIAL_DIVISION_BOUND):
    """Factor ``n`` with trial division up to ``bound``.

    Returns a {prime: exponent} dict, or None when a composite cofactor
    survives the bound (the caller should then fall back to iteration).
    """
    if n <= 0:
        raise ValueError("factor_bounded needs a positive integer")
    if n == 1:
        return {}
    fac = factorint(n, limit=bound)
    out = {}
    for q, e in fac.items():
        if not isprime(q):
            return None
        out[int(q)] = int(e)
    return out


def _merge_lcm(acc, fac):
    for q, e in fac.items():
        if acc.get(q, 0) < e:
            acc[q] = e


def group_exponent_multiple(index, degree, bound=TRIAL_DIVISION_BOUND):
    """A factored multiple of the exponent of (O/m)^x.

    ``index`` is the additive index [O:m] and ``degree`` the rank of O.
    Residue fields of O/m have order p^f with f <= degree, and the
    one-units form p-groups killed by the p-part of the index, so
    lcm_p( p^{v_p(index)} * lcm_{f<=degree}(p^f - 1) ) works.  Returns
    (E, factorization) or None when factoring fails within the bound.
    """
    fac = factor_bounded(index, bound)
    if fac is None:
        return None
    e_factors = {}
    for p, e in fac.items():
        _merge_lcm(e_factors, {p: e})
        for f in range(1, degree + 1):
            part = factor_bounded(p**f - 1, bound)
            if part is None:
                return None
            _merge_lcm(e_factors, part)
    e = 1
    for q, k in e_factors.items():
        e *= q**k
    return e, e_factors


def multiplicative_order(g, ring, cap=ORDER_ITERATION_CAP):
    """Least k >= 1 with g^k = 1 in a finite commutative quotient ring.

    ``ring`` must provide one, mul, pow, reduce, is_invertible and
    exponent_multiple (see orders.QuotientRing / exact.ZModRing).  Uses
    the factored group exponent when the modulus factors within the trial
    division bound, otherwise bounded iteration.
    """
    g = ring.reduce(g)
    if not ring.is_invertible(g):
        raise NotInvertible("not invertible")
    one = ring.one
    em = ring.exponent_multiple()
    if em is not None:
        e, fac = em
        if ring.pow(g, e) != one:
            raise ArithmeticError("exponent multiple failed; quotient ring is inconsistent")
        o = e
        for q in sorted(fac):
            while o % q == 0 and ring.pow(g, o // q) == one:
                o //= q
        return o
    acc = g
    for k in range(1, cap + 1):
        if acc == one:
            return k
        acc = ring.mul(acc, g)
    raise CapExceeded("cap exceeded")


class ZModRing:
    """Z/nZ with the quotient-ring protocol used by multiplicative_order."""

    def __init__(self, n):
        if n <= 0:
            raise ValueError("modulus must be positive")
        self.n = n
        self.one = 1 % n
        self.index = n

    def reduce(self, a):
        return a % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def pow(self, a, e):
        if e < 0:
            a = self.invert(a)
            e = -e
        return pow(a, e, self.n)

    def is_invertible(self, a):
        return math.gcd(a, self.n) == 1

    def invert(self, a):
        if not self.is_invertible(a):
            raise NotInvertible("not invertible")
        return pow(a, -1, self.n)

    def exponent_multiple(self):
        return group_exponent_multiple(self.n, 1)


# ---------------------------------------------------------------------------
# dense polynomials


def _strip(coeffs):
    k = len(coeffs)
    while k and not coeffs[k - 1]:
        k -= 1
    return tuple(coeffs[:k])


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree.

    Coefficients may be Python ints or any exact ring elements supporting
    +, -, * and truthiness; the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(list(coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self, one=1):
        return bool(self.coeffs) and self.coeffs[-1] == one

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return Poly()
        zero = self.coeffs[0] * 0
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    def scale(self, c):
        return Poly([a * c for a in self.coeffs])

    def eval_at(self, x):
        if self.is_zero():
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        """Substitute ``other`` for the variable."""
        if self.is_zero():
            return Poly()
        acc = Poly([self.coeffs[-1]])
        for c in reversed(self.coeffs[:-1]):
            acc = acc * other + Poly([c])
        return acc

    def exact_div(self, divisor, one=1):
        """Exact quotient by a monic divisor; raises if a remainder is left."""
        if not divisor.is_monic(one):
            raise ValueError("divisor must be monic")
        if self.is_zero():
            return Poly()
        rem = list(self.coeffs)
        dd = divisor.degree
        qcoeffs = [self.coeffs[0] * 0] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and any(bool(c) for c in rem):
            if not rem[-1]:
                rem.pop()
                continue
            lead = rem[-1]
            k = len(rem) - 1 - dd
            qcoeffs[k] = qcoeffs[k] + lead
            for i, c in enumerate(divisor.coeffs):
                rem[k + i] = rem[k + i] - lead * c
            rem.pop()
        if any(bool(c) for c in rem):
            raise ValueError("division is not exact")
        return Poly(qcoeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [f"{c!r}*X^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Poly(" + " + ".join(terms) + ")"


def affine_compose(f, mu, beta, one=1):
    """Monic g with g(X) = mu^d * f((X - beta)/mu), computed without division.

    Requires monic f of degree d; then g(mu*X + beta) = mu^d * f(X).
    """
    d = f.degree
    if d < 0 or not f.is_monic(one):
        raise ValueError("f must be monic")
    lin = Poly([-beta, one])
    mu_pows = [one]
    for _ in range(d):
        mu_pows.append(mu_pows[-1] * mu)
    g = Poly()
    base = Poly([one])
    for k, c in enumerate(f.coeffs):
        if c:
            g = g + base.scale(c * mu_pows[d - k])
        base = base * lin
    return g


def affine_identity_holds(f, g, mu, beta, one=1):
    """Check g(mu*X + beta) == mu^d f(X) coefficient by coefficient."""
    d = f.degree
    lhs = g.compose(Poly([beta, one * mu]))
    return lhs == f.scale(mu**d if isinstance(mu, int) else one * mu**d)


def power_congruence_quotient(w):
    """Integer polynomial pair (P, h) with P = (X-1)^2 * h certifying that
    E^w - 1 - w(E-1) lies in (E-1)^2 * O for every unit E of any ring.

    For w >= 0, P(X) = X^w - 1 - w(X-1); for w < 0 the identity is scaled
    by X^|w| (a unit power), giving P(X) = 1 + (w-1)X^|w| - w X^{|w|+1}.
    """
    if w >= 0:
        coeffs = [0] * (w + 1)
        coeffs[0] -= 1
        if w >= 1:
            coeffs[w] += 1
            coeffs[1] -= w
            coeffs[0] += w
        else:
            coeffs[0] += 1
        p = Poly(coeffs)
    else:
        m = -w
        coeffs = [0] * (m + 2)
        coeffs[0] = 1
        coeffs[m] += w - 1
        coeffs[m + 1] -= w
        p = Poly(coeffs)
    sq = Poly([1, -2, 1])
    h = p.exact_div(sq)
    if sq * h != p:
        raise ArithmeticError("power congruence certificate failed")
    return p, h


# ---------------------------------------------------------------------------
# Pell equation via continued fractions


def is_square(n):
    return n >= 0 and math.isqrt(n) ** 2 == n


def int_cbrt(n):
    """Floor cube root for n >= 0."""
    if n < 0:
        raise ValueError("negative input")
    if n == 0:
        return 0
    x = int(round(n ** (1.0 / 3.0))) + 1
    while x**3 > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def pell_fundamental(d, cap=CONTINUED_FRACTION_CAP):
    """Least (x, y) with y >= 1 and x^2 - d y^2 = +-1.

    Computed from the continued fraction of sqrt(d); this is the
    fundamental unit x + y*sqrt(d) of Z[sqrt(d)].
    """
    if d <= 0:
        raise ValueError("d must be positive")
    a0 = math.isqrt(d)
    if a0 * a0 == d:
        raise ValueError("d must not be a perfect square")
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    if p * p - d * q * q in (1, -1):
        return p, q
    m, den, a = 0, 1, a0
    for _ in range(cap):
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        if p * p - d * q * q in (1, -1):
            return p, q
    raise CapExceeded("cap exceeded")
