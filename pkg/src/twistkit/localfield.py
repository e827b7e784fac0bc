"""Root-of-unity bounds over local fields and a power-conjugacy oracle.

For a prime ell, the extensions of Q_ell of degree <= D contain a largest
finite group of roots of unity; its order is max over f >= 1, a >= 0 with
f * phi(ell^a) <= D of (ell^f - 1) * ell^a, attained by the unramified
field of degree f with a primitive ell^a-th root of unity adjoined.  From
that bound two uniform exponents are derived: the factorial one (m0!) and
the sharp lcm of all achievable group orders.

The matrix oracle answers: given semisimple invertible rational matrices
A, B, what is the least m >= 1 with charpoly(A^m) = charpoly(B^m)?  For
semisimple matrices equal characteristic polynomials mean conjugacy over
the algebraic closure, so this is exactly power-conjugacy.  Any valid m is
the lcm of orders of eigenvalue ratios that are roots of unity; those
orders are read off exactly from the resultant polynomial whose roots are
all pairwise eigenvalue ratios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm

from .arith import divisors, is_prime
from .errors import NotInvertibleError, NotSemisimpleError, UsageError
from .exactnum import cyclotomic_polynomial, poly_divmod_monic, poly_mul, poly_trim

Matrix = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# root-of-unity counts and uniform exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalFieldSpec:
    """A finite extension of Q_ell, known only through ell and its degree."""

    ell: int
    degree: int

    def __post_init__(self):
        if not is_prime(self.ell):
            raise UsageError(f"ell = {self.ell} is not prime")
        if self.degree < 1:
            raise UsageError("field degree must be >= 1")


@dataclass(frozen=True)
class ExponentReport:
    """Uniform exponents for n x n power-conjugacy over a local field.

    ``paper_exponent`` (= m0!) is huge even for modest inputs, so it is
    materialized lazily; ``sharp_exponent`` is the operational bound.  Both
    are reported, never substituted for one another.
    """

    ell: int
    field_degree: int
    n: int
    degree_bound: int
    m0: int
    witness: tuple[int, int]
    sharp_exponent: int

    @property
    def paper_exponent(self) -> int:
        return factorial(self.m0)


def _ramified_phi(ell: int, a: int) -> int:
    """phi(ell^a) with phi(ell^0) = 1."""
    return 1 if a == 0 else (ell - 1) * ell ** (a - 1)


def _order_enumeration(ell: int, D: int):
    """Yield (order, f, a) for all f >= 1, a >= 0 with f * phi(ell^a) <= D."""
    for f in range(1, D + 1):
        a = 0
        while f * _ramified_phi(ell, a) <= D:
            yield (ell**f - 1) * ell**a, f, a
            a += 1


def max_roots_of_unity(ell: int, D: int) -> tuple[int, tuple[int, int]]:
    """Largest root-of-unity group order over extensions of Q_ell of degree <= D.

    Returns (m0, (f, a)) where the unramified-degree-f field with zeta_{ell^a}
    adjoined attains the maximum.
    """
    if not is_prime(ell):
        raise UsageError(f"ell = {ell} is not prime")
    if D < 1:
        raise UsageError("degree bound must be >= 1")
    best = max(_order_enumeration(ell, D), key=lambda t: (t[0], -t[1], -t[2]))
    return best[0], (best[1], best[2])


def root_of_unity_orders(ell: int, D: int) -> list[int]:
    """Sorted distinct orders (ell^f - 1) * ell^a achievable within degree D."""
    if not is_prime(ell):
        raise UsageError(f"ell = {ell} is not prime")
    if D < 1:
        raise UsageError("degree bound must be >= 1")
    return sorted({order for order, _, _ in _order_enumeration(ell, D)})


def uniform_exponent(n: int, field: LocalFieldSpec) -> ExponentReport:
    """Exponent report for n x n elements over extensions of the given field.

    The eigenvalue field of a pair of semisimple n x n elements has degree
    at most (n!)^2, so roots of unity are bounded within degree
    D = field.degree * (n!)^2; the sharp exponent is the lcm of every
    achievable root-of-unity group order in that range.
    """
    if n < 1:
        raise UsageError("n must be >= 1")
    D = field.degree * factorial(n) ** 2
    m0, witness = max_roots_of_unity(field.ell, D)
    sharp = 1
    for order in root_of_unity_orders(field.ell, D):
        sharp = lcm(sharp, order)
    return ExponentReport(
        ell=field.ell,
        field_degree=field.degree,
        n=n,
        degree_bound=D,
        m0=m0,
        witness=witness,
        sharp_exponent=sharp,
    )


def _phi_table(limit: int) -> list[int]:
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p prime
            for k in range(p, limit + 1, p):
                phi[k] -= phi[k] // p
    return phi


def candidate_global_exponents(n: int) -> set[int]:
    """All w >= 1 with phi(w) <= (n!)^2; finite since phi(w) >= sqrt(w/2)."""
    if n < 1:
        raise UsageError("n must be >= 1")
    bound = factorial(n) ** 2
    limit = 2 * bound * bound
    phi = _phi_table(limit)
    return {w for w in range(1, limit + 1) if phi[w] <= bound}


# ---------------------------------------------------------------------------
# exact rational matrices
# ---------------------------------------------------------------------------


def as_matrix(rows) -> Matrix:
    mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(row) != n for row in mat):
        raise UsageError("matrix must be square and nonempty")
    return mat


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_add_scaled_identity(a: Matrix, c: Fraction) -> Matrix:
    return tuple(
        tuple(x + c if i == j else x for j, x in enumerate(row)) for i, row in enumerate(a)
    )


def mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)

def mat_pow(a: Matrix, k: int) -> Matrix:
    """a^k for k >= 0 by exponentiation-by-squaring with exact entries."""
    if k < 0:
        raise UsageError("negative matrix powers not supported")
    result = mat_identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def mat_trace(a: Matrix) -> Fraction:
    return sum(a[i][i] for i in range(len(a)))


def mat_is_zero(a: Matrix) -> bool:
    return all(x == 0 for row in a for x in row)


def charpoly(a: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(xI - A), ascending coefficients, monic.

    Faddeev-LeVerrier recurrence: exact over Q, divisions only by 1..n.
    """
    n = len(a)
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    m = tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        m = mat_add_scaled_identity(mat_mul(a, m), coeffs[n - k + 1])
        coeffs[n - k] = -mat_trace(mat_mul(a, m)) / k
    return coeffs


# ---------------------------------------------------------------------------
# univariate polynomial helpers over Q (ascending coefficient lists)
# ---------------------------------------------------------------------------


def _poly_deriv(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _poly_monic(p: list[Fraction]) -> list[Fraction]:
    p = poly_trim(list(p))
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = poly_trim(list(a)), poly_trim(list(b))
    while b:
        b_monic = _poly_monic(b)
        _, r = poly_divmod_monic(a, b_monic)
        a, b = b_monic, r
    return _poly_monic(a)


def _poly_squarefree_part(p: list[Fraction]) -> list[Fraction]:
    g = _poly_gcd(p, _poly_deriv(p))
    quo, rem = poly_divmod_monic(_poly_monic(p), g)
    assert not rem
    return _poly_monic(quo)


def _poly_eval_matrix(p: list[Fraction], a: Matrix) -> Matrix:
    n = len(a)
    acc = mat_scale(mat_identity(n), p[-1])
    for c in reversed(p[:-1]):
        acc = mat_add_scaled_identity(mat_mul(acc, a), c)
    return acc


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by exact Gaussian elimination with row swaps."""
    n = len(rows)
    rows = [row[:] for row in rows]
    sign = 1
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        det *= rows[c][c]
        inv = rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det * sign


def _resultant(f: list[Fraction], g: list[Fraction]) -> Fraction:
    """Res(f, g) via the Sylvester determinant; leading coefficients nonzero."""
    f, g = poly_trim(list(f)), poly_trim(list(g))
    m, n = len(f) - 1, len(g) - 1
    assert m >= 1 and n >= 1
    fd, gd = f[::-1], g[::-1]  # descending
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fd + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gd + [Fraction(0)] * (size - n - 1 - i))
    return _det(rows)


def _interpolate(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Exact Newton interpolation; returns ascending coefficients."""
    k = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [coef[-1]]
    for i in range(k - 2, -1, -1):
        poly = poly_mul(poly, [Fraction(-xs[i]), Fraction(1)])
        if not poly:
            poly = [Fraction(0)]
        poly[0] += coef[i]
    return poly_trim(poly)


def eigenvalue_ratio_polynomial(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    """Monic polynomial whose roots are all ratios alpha/beta of roots of p and q.

    Computed as the resultant Res_y(q(y), p(x*y)) by evaluation at n^2 + 1
    nonzero points and exact interpolation; requires q(0) != 0.
    """
    n = len(p) - 1
    assert len(q) - 1 == n and q[0] != 0
    points = list(range(1, n * n + 2))
    values = []
    for t in points:
        pt = [c * Fraction(t) ** i for i, c in enumerate(p)]
        values.append(_resultant(q, pt))
    return _poly_monic(_interpolate(points, values))


def _root_of_unity_orders_dividing(r: list[Fraction]) -> list[int]:
    """Orders w with Phi_w | r, i.e. some root of r is a primitive w-th root of unity."""
    deg = len(r) - 1
    limit = 2 * deg * deg + 2
    phi = _phi_table(limit)
    out = []
    for w in range(1, limit + 1):
        if phi[w] > deg:
            continue
        cyc = [Fraction(c) for c in cyclotomic_polynomial(w)]
        _, rem = poly_divmod_monic(list(r), cyc)
        if not rem:
            out.append(w)
    return out


# ---------------------------------------------------------------------------
# the oracle
# ---------------------------------------------------------------------------


def _require_semisimple_invertible(a: Matrix, name: str) -> list[Fraction]:
    p = charpoly(a)
    if p[0] == 0:
        raise NotInvertibleError(f"matrix {name} is singular")
    radical = _poly_squarefree_part(p)
    if not mat_is_zero(_poly_eval_matrix(radical, a)):
        raise NotSemisimpleError(f"matrix {name} is not semisimple")
    return p


def power_conjugate_exponent(a, b) -> int | None:
    """Least m >= 1 with charpoly(a^m) = charpoly(b^m); None if no power works.

    Any valid exponent is an lcm of orders of eigenvalue ratios that are
    roots of unity, so only divisors of the lcm of the detected ratio
    orders are scanned; every such order w satisfies phi(w) <= n^2, hence
    the search stays inside the global candidate-exponent set.
    """
    a, b = as_matrix(a), as_matrix(b)
    if len(a) != len(b):
        raise UsageError("matrices must have equal dimension")
    pa = _require_semisimple_invertible(a, "A")
    pb = _require_semisimple_invertible(b, "B")
    ratio = eigenvalue_ratio_polynomial(pa, pb)
    orders = _root_of_unity_orders_dividing(ratio)
    if not orders:
        return None
    bound = 1
    for w in orders:
        bound = lcm(bound, w)
    for m in divisors(bound):
        if charpoly(mat_pow(a, m)) == charpoly(mat_pow(b, m)):
            return m
    return None
