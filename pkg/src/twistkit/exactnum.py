"""Exact arithmetic substrate: roots of unity, cyclotomic numbers, Laurent polynomials.

No floating point anywhere: integers are Python ints, rationals are
``fractions.Fraction``, and algebraic values live in Q(zeta_m) represented
over the power basis 1, zeta, ..., zeta^(phi(m)-1) reduced modulo the m-th
cyclotomic polynomial.  All values are immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .arith import divisors, euler_phi
from .errors import RankMismatchError

# ---------------------------------------------------------------------------
# dense univariate polynomials, ascending coefficients
# ---------------------------------------------------------------------------


def poly_trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return poly_trim(out)


def poly_divmod_monic(num: list, den: list) -> tuple[list, list]:
    """Quotient and remainder by a monic divisor; exact in the coefficient ring."""
    assert den and den[-1] == 1
    rem = list(num)
    dn = len(den) - 1
    quo = [0] * max(0, len(rem) - dn)
    for i in range(len(rem) - dn - 1, -1, -1):
        c = rem[i + dn]
        if c:
            quo[i] = c
            for j, d in enumerate(den):
                rem[i + j] -= c * d
    return poly_trim(quo), poly_trim(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, ascending.

    Computed as (x^m - 1) divided by the product of the proper-divisor
    cyclotomic polynomials; all divisions are exact over Z.
    """
    if m < 1:
        raise ValueError("order must be positive")
    num = [0] * m + [1]
    num[0] = -1
    den = [1]
    for d in divisors(m):
        if d < m:
            den = poly_mul(den, list(cyclotomic_polynomial(d)))
    quo, rem = poly_divmod_monic(num, den)
    assert not rem
    return tuple(quo)


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------


class RootOfUnity:
    """exp(2*pi*i * exponent/order) stored with exponent/order in lowest terms."""

    __slots__ = ("order", "exponent")

    def __init__(self, order: int, exponent: int = 1):
        if order < 1:
            raise ValueError("order must be positive")
        e = exponent % order
        g = gcd(e, order)
        if e == 0:
            order, e = 1, 0
        elif g > 1:
            order //= g
            e //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponent", e)

    def __setattr__(self, *args):
        raise AttributeError("RootOfUnity is immutable")

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(1, 0)

    @classmethod
    def minus_one(cls) -> "RootOfUnity":
        return cls(2, 1)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        m = lcm(self.order, other.order)
        return RootOfUnity(m, self.exponent * (m // self.order) + other.exponent * (m // other.order))

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.order, self.exponent * k)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def is_one(self) -> bool:
        return self.order == 1

    def is_real(self) -> bool:
        return self.order <= 2

    def as_int(self) -> int:
        """The value as an integer; only defined for order 1 or 2."""
        if self.order == 1:
            return 1
        if self.order == 2:
            return -1
        raise ValueError(f"root of unity of order {self.order} is not rational")

    def as_cyclotomic(self, order: int | None = None) -> "CyclotomicNumber":
        m = self.order if order is None else order
        if m % self.order:
            raise ValueError(f"order {m} does not embed a {self.order}-th root of unity")
        return CyclotomicNumber.from_power(m, self.exponent * (m // self.order))

    def __eq__(self, other) -> bool:
        if isinstance(other, RootOfUnity):
            return self.order == other.order and self.exponent == other.exponent
        if other == 1:
            return self.order == 1
        if other == -1:
            return self.order == 2
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.exponent))

    def __repr__(self) -> str:
        return f"RootOfUnity({self.order}, {self.exponent})"


def rou_pow(z: RootOfUnity, k: int) -> RootOfUnity:
    """z^k in canonical primitive form."""
    return z**k


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------


class CyclotomicNumber:
    """Element of Q(zeta_m) as a rational vector over the power basis.

    The coefficient vector always has length exactly phi(m); sums and
    products are re-reduced modulo the m-th cyclotomic polynomial.  Mixed
    orders embed into the lcm order before combining or comparing.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        phi = euler_phi(order)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coefficients for order {order}, got {len(coeffs)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *args):
        raise AttributeError("CyclotomicNumber is immutable")

    # -- construction

    @classmethod
    def _reduce(cls, order: int, dense: list) -> "CyclotomicNumber":
        phi = cyclotomic_polynomial(order)
        folded = [Fraction(0)] * order  # zeta^order = 1, so fold exponents first
        for i, c in enumerate(dense):
            if c:
                folded[i % order] += c
        _, rem = poly_divmod_monic(folded, list(phi))
        rem = list(rem) + [Fraction(0)] * (len(phi) - 1 - len(rem))
        return cls(order, rem)

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "CyclotomicNumber":
        dense = [Fraction(value)] + [Fraction(0)] * (euler_phi(order) - 1)
        return cls._reduce(order, dense)

    @classmethod
    def from_power(cls, order: int, exponent: int) -> "CyclotomicNumber":
        """zeta_order ^ exponent."""
        e = exponent % order
        return cls._reduce(order, [Fraction(0)] * e + [Fraction(1)])

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(0, order)

    # -- order changes

    def embed(self, order: int) -> "CyclotomicNumber":
        """The same number viewed in Q(zeta_order); requires self.order | order."""
        if order % self.order:
            raise ValueError(f"{self.order} does not divide {order}")
        if order == self.order:
            return self
        step = order // self.order
        dense = [Fraction(0)] * (euler_phi(self.order) * step)
        for i, c in enumerate(self.coeffs):
            if c:
                dense[i * step] = c
        return CyclotomicNumber._reduce(order, dense)

    def retract(self, order: int) -> "CyclotomicNumber":
        """Express the number in Q(zeta_order) for order | self.order.

        Solves the exact linear system over the embedded power basis;
        raises ValueError if the number does not lie in the subfield.
        """
        if self.order % order:
            raise ValueError(f"{order} does not divide {self.order}")
        if order == self.order:
            return self
        basis = [CyclotomicNumber.from_power(order, j).embed(self.order) for j in range(euler_phi(order))]
        n = euler_phi(self.order)
        k = len(basis)
        # columns: basis vectors, augmented with the target
        rows = [[basis[j].coeffs[i] for j in range(k)] + [self.coeffs[i]] for i in range(n)]
        sol = _solve_exact(rows, k)
        if sol is None:
            raise ValueError(f"value does not lie in Q(zeta_{order})")
        return CyclotomicNumber(order, sol)

    # -- arithmetic

    def _paired(self, other) -> tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other)
        m = lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other) -> "CyclotomicNumber":
        a, b = self._paired(other)
        return CyclotomicNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other) -> "CyclotomicNumber":
        if not isinstance(other, CyclotomicNumber):
            other = CyclotomicNumber.from_rational(other)
        return self + (-other)

    def __rsub__(self, other) -> "CyclotomicNumber":
        return -(self - other)

    def __mul__(self, other) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [c * other for c in self.coeffs])
        a, b = self._paired(other)
        dense = poly_mul(list(a.coeffs), list(b.coeffs))
        return CyclotomicNumber._reduce(a.order, dense)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is irrational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._paired(other)
        return a.coeffs == b.coeffs

    # equality is decided after embedding, so a structural hash would violate
    # the hash/eq contract; these values are never used as dict keys
    __hash__ = None

    def __repr__(self) -> str:
        return f"CyclotomicNumber(order={self.order}, coeffs={[str(c) for c in self.coeffs]})"


def _solve_exact(rows: list[list[Fraction]], k: int) -> list[Fraction] | None:
    """Solve the augmented k-unknown system by Gaussian elimination; None if inconsistent."""
    n = len(rows)
    rows = [row[:] for row in rows]
    pivots = []
    r = 0
    for c in range(k):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if rows[i][k] != 0:
            return None
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = rows[i][k]
    return sol


def cyclo_eq(x: CyclotomicNumber, y: CyclotomicNumber) -> bool:
    """Equality as complex algebraic numbers, via the lcm-order embedding."""
    return x == y


# ---------------------------------------------------------------------------
# multivariate Laurent polynomials
# ---------------------------------------------------------------------------


class LaurentPolynomial:
    """Integer-coefficient Laurent polynomial in ``rank`` variables.

    Terms map exponent vectors (tuples of ints, length = rank) to nonzero
    integer coefficients; the canonical term order is descending
    lexicographic on exponent vectors.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict[tuple[int, ...], int] | None = None):
        if rank < 0:
            raise ValueError("rank must be nonnegative")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != rank:
                raise ValueError(f"exponent vector {exps} has length != rank {rank}")
            if coeff:
                clean[exps] = clean.get(exps, 0) + int(coeff)
        clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("LaurentPolynomial is immutable")

    @classmethod
    def zero(cls, rank: int) -> "LaurentPolynomial":
        return cls(rank, {})

    @classmethod
    def constant(cls, rank: int, value: int) -> "LaurentPolynomial":
        return cls(rank, {(0,) * rank: value})

    @classmethod
    def monomial(cls, exponents, coeff: int = 1) -> "LaurentPolynomial":
        exponents = tuple(int(e) for e in exponents)
        return cls(len(exponents), {exponents: coeff})

    def _check_rank(self, other: "LaurentPolynomial"):
        if self.rank != other.rank:
            raise RankMismatchError(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_rank(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.rank, out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_rank(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPolynomial(self.rank, out)

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            raise ValueError("negative powers are not defined for general terms")
        result = LaurentPolynomial.constant(self.rank, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    __hash__ = None  # mutable-dict backed; equality only

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_sum(self) -> int:
        return sum(self.terms.values())

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending lexicographic exponent order."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def leading_exponent(self) -> tuple[int, ...]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentPolynomial(0)"
        bits = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(f"x{i}^{e}" for i, e in enumerate(exps) if e)
            bits.append(f"{coeff}" + (f"*{mono}" if mono else ""))
        return "LaurentPolynomial(" + " + ".join(bits) + ")"


def laurent_pow_eq(f: LaurentPolynomial, g: LaurentPolynomial, m: int) -> bool:
    """Whether f^m = g^m, by exact expansion and comparison."""
    if f.rank != g.rank:
        raise RankMismatchError(f"rank {f.rank} vs {g.rank}")
    if m < 1:
        raise ValueError("power must be positive")
    return f**m == g**m
