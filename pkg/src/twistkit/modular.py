"""Eigenvalue tables from elliptic curves, Dirichlet characters, twist search.

Weight-2 eigenvalue data is generated by exact point counting on short
Weierstrass curves: a_p = -sum_x legendre(x^3 + ax + b, p) = p + 1 - #E(F_p).
Two tables are compared through their power-equality locus (for integers,
a^n = b^n for some n >= 1 iff a = +-b) and a search over primitive
Dirichlet characters recovers the twist relation a_p(g) = chi(p) a_p(f).

Quadratic characters follow the Kronecker-symbol convention: the character
attached to a squarefree d evaluates at odd good p as the Legendre symbol
of the fundamental discriminant (d if d = 1 mod 4, else 4d).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .arith import (
    crt_pair,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_squarefree,
    primitive_root,
    radical,
    sieve_primes,
)
from .density import DensityReport, _report_from_checkpoints
from .errors import (
    EmptyIntersectionError,
    HasseViolationError,
    SingularCurveError,
    UsageError,
)
from .exactnum import CyclotomicNumber, RootOfUnity

# ---------------------------------------------------------------------------
# curves and eigenvalue tables
# ---------------------------------------------------------------------------


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    if p == 2 or not is_prime(p):
        raise UsageError(f"{p} is not an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    if t == 0:
        return 0
    return 1 if t == 1 else -1


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = x^3 + ax + b with 4a^3 + 27b^2 != 0."""

    a: int
    b: int

    def __post_init__(self):
        if self.discriminant_factor == 0:
            raise SingularCurveError(f"4*{self.a}^3 + 27*{self.b}^2 = 0")

    @property
    def discriminant_factor(self) -> int:
        return 4 * self.a**3 + 27 * self.b**2

    @property
    def bad_prime_product(self) -> int:
        """Radical of 6 * (4a^3 + 27b^2): a sound over-approximation of the bad primes."""
        return radical(6 * abs(self.discriminant_factor))


def quadratic_twist(curve: EllipticCurve, d: int) -> EllipticCurve:
    """The twist (a d^2, b d^3) for squarefree nonzero d."""
    if d == 0 or not is_squarefree(d):
        raise UsageError(f"twist parameter {d} must be nonzero and squarefree")
    return EllipticCurve(curve.a * d * d, curve.b * d**3)


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for squarefree d: d if d = 1 (mod 4), else 4d."""
    if d == 0 or not is_squarefree(d):
        raise UsageError(f"{d} must be nonzero and squarefree")
    return d if d % 4 == 1 else 4 * d


def curve_trace(curve: EllipticCurve, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for an odd good prime p, by the Legendre sum.

    The cubic is swept with finite differences (three additions per value)
    against a quadratic-residue table, so the cost is O(p) cheap ops.
    """
    if p == 2 or not is_prime(p):
        raise UsageError(f"{p} is not an odd prime")
    if curve.discriminant_factor % p == 0:
        raise UsageError(f"{p} divides the discriminant")
    qr = bytearray(p)
    for x in range(1, p // 2 + 1):
        qr[x * x % p] = 1
    a, b = curve.a % p, curve.b % p
    # f(x) = x^3 + ax + b: forward differences 3x^2+3x+1+a, 6x+6, 6
    v = b
    d1 = (1 + a) % p
    six = 6 % p  # keep the constant increment reduced so one subtraction suffices
    d2 = six
    s = 0
    for _ in range(p):
        if v:
            s += 1 if qr[v] else -1
        v += d1
        if v >= p:
            v -= p
        d1 += d2
        if d1 >= p:
            d1 -= p
        d2 += six
        if d2 >= p:
            d2 -= p
    return -s


@dataclass(frozen=True)
class EigenvalueTable:
    """Prime-indexed exact eigenvalues; entries are ints (or cyclotomic values)."""

    label: str
    level_hint: int
    weight: int
    entries: dict[int, object] = field(compare=False)

    def __post_init__(self):
        for p in self.entries:
            if not is_prime(p):
                raise UsageError(f"table key {p} is not prime")
            if gcd(p, self.level_hint) > 1:
                raise UsageError(f"prime {p} divides the level hint {self.level_hint}")

    @property
    def primes(self) -> list[int]:
        return sorted(self.entries)

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self.entries.values())

    def verify_hasse(self) -> None:
        """Hard check of a_p^2 <= 4p; meaningful for weight-2 integral data."""
        for p, ap in sorted(self.entries.items()):
            if isinstance(ap, int) and ap * ap > 4 * p:
                raise HasseViolationError(f"{self.label}: a_{p} = {ap} violates a_p^2 <= 4p")


def _trace_worker(job: tuple[int, int, int]) -> int:
    a, b, p = job
    return curve_trace(EllipticCurve(a, b), p)


def ap_table(
    curve: EllipticCurve, x: int, label: str | None = None, threads: int = 1
) -> EigenvalueTable:
    """Eigenvalue table over all primes p <= x not dividing 6*(4a^3+27b^2).

    The per-prime work is independent; threads > 1 shards it over a process
    pool and merges in prime order, so output is identical either way.
    """
    if x < 5:
        raise UsageError("cutoff must be >= 5")
    bad = 6 * curve.discriminant_factor
    primes = [p for p in sieve_primes(x) if bad % p != 0]
    if threads > 1:
        jobs = [(curve.a, curve.b, p) for p in primes]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            traces = list(pool.map(_trace_worker, jobs, chunksize=32))
    else:
        traces = [curve_trace(curve, p) for p in primes]
    table = EigenvalueTable(
        label=label or f"ec_{curve.a}_{curve.b}",
        level_hint=curve.bad_prime_product,
        weight=2,
        entries=dict(zip(primes, traces)),
    )
    table.verify_hasse()
    return table


# ---------------------------------------------------------------------------
# power-equality locus
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerLocus:
    """Primes where some power of the eigenvalues agrees, with minimal exponents."""

    primes: dict[int, int] = field(compare=False)
    density_report: DensityReport


def _decile_checkpoints(values: list[int]) -> list[int]:
    """Ten (or fewer) evenly spaced prefix positions, always ending at the last."""
    n = len(values)
    cuts = sorted({max(1, (n * i) // 10) for i in range(1, 10)} | {n})
    return [values[c - 1] for c in cuts]


def common_primes(f: EigenvalueTable, g: EigenvalueTable) -> list[int]:
    common = sorted(set(f.entries) & set(g.entries))
    if not common:
        raise EmptyIntersectionError(f"{f.label} and {g.label} share no primes")
    return common


def power_locus(f: EigenvalueTable, g: EigenvalueTable) -> PowerLocus:
    """Over shared primes: n_p = 1 where a_p(f) = a_p(g), 2 where a_p(f) = -a_p(g) != 0.

    For integers a^n = b^n for some n >= 1 iff a = +-b (even n needed for
    the sign flip), so everything else is excluded; a zero against a
    nonzero never matches any power.
    """
    if not (f.is_integral() and g.is_integral()):
        raise UsageError("power locus needs integer-valued tables")
    common = common_primes(f, g)
    exponents: dict[int, int] = {}
    for p in common:
        af, ag = f.entries[p], g.entries[p]
        if af == ag:
            exponents[p] = 1
        elif af == -ag:
            exponents[p] = 2
    checks = []
    count = 0
    idx = 0
    for cp in _decile_checkpoints(common):
        while idx < len(common) and common[idx] <= cp:
            if common[idx] in exponents:
                count += 1
            idx += 1
        checks.append((cp, count, idx))
    return PowerLocus(primes=exponents, density_report=_report_from_checkpoints(checks))


# ---------------------------------------------------------------------------
# Dirichlet characters
# ---------------------------------------------------------------------------


class UnitBasis:
    """Fixed CRT generator basis of (Z/qZ)^* with brute-force discrete logs.

    Odd prime powers contribute one cyclic factor on the least primitive
    root; 4 contributes <3>; 2^e for e >= 3 contributes <-1> x <5>.
    """

    def __init__(self, modulus: int):
        if modulus < 1:
            raise UsageError("modulus must be positive")
        self.modulus = modulus
        gens: list[int] = []
        orders: list[int] = []
        for p, e in sorted(factorize(modulus).items()) if modulus > 1 else []:
            pe = p**e
            rest = modulus // pe
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    gens.append(crt_pair(3, pe, 1, rest) if rest > 1 else 3)
                    orders.append(2)
                else:
                    for g0, n in ((pe - 1, 2), (5, 2 ** (e - 2))):
                        gens.append(crt_pair(g0, pe, 1, rest) if rest > 1 else g0)
                        orders.append(n)
            else:
                g0 = primitive_root(pe)
                gens.append(crt_pair(g0, pe, 1, rest) if rest > 1 else g0)
                orders.append(euler_phi(pe))
        self.generators = gens
        self.orders = orders
        dlog: dict[int, tuple[int, ...]] = {}
        for exps in product(*(range(n) for n in orders)):
            val = 1
            for g, k in zip(gens, exps):
                val = val * pow(g, k, modulus) % modulus
            dlog[val % modulus] = exps
        assert len(dlog) == euler_phi(modulus)
        self.dlog = dlog


class DirichletCharacter:
    """Character of (Z/qZ)^*, zero on non-units, with exact root-of-unity values."""

    __slots__ = ("basis", "exponents", "order")

    def __init__(self, basis: UnitBasis, exponents):
        exponents = tuple(int(e) % n for e, n in zip(exponents, basis.orders))
        if len(exponents) != len(basis.orders):
            raise UsageError("exponent vector length mismatch")
        order = 1
        for e, n in zip(exponents, basis.orders):
            order = lcm(order, n // gcd(n, e))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "exponents", exponents)
        object.__setattr__(self, "order", order)

    def __setattr__(self, *args):
        raise AttributeError("DirichletCharacter is immutable")

    @property
    def modulus(self) -> int:
        return self.basis.modulus

    def root(self, a: int) -> RootOfUnity | None:
        """chi(a) as a root of unity, or None when gcd(a, q) > 1."""
        q = self.modulus
        a %= q
        if q > 1 and gcd(a, q) > 1:
            return None
        ks = self.basis.dlog[a % q]
        val = RootOfUnity.one()
        for e, k, n in zip(self.exponents, ks, self.basis.orders):
            val = val * RootOfUnity(n, e * k)
        return val

    def value(self, a: int) -> CyclotomicNumber:
        """chi(a) in the cyclotomic field of the character's order; zero on non-units."""
        r = self.root(a)
        if r is None:
            return CyclotomicNumber.zero(self.order)
        return r.as_cyclotomic(self.order)  # value orders always divide the character order

    def __call__(self, a: int) -> CyclotomicNumber:
        return self.value(a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash((self.modulus, self.exponents))

    def __repr__(self) -> str:
        return f"DirichletCharacter(mod {self.modulus}, exponents={list(self.exponents)}, order={self.order})"


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, trivial first, in generator-exponent order."""
    basis = UnitBasis(q)
    return [DirichletCharacter(basis, exps) for exps in product(*(range(n) for n in basis.orders))]


def conductor(chi: DirichletCharacter) -> int:
    """Smallest q' | q with chi trivial on units congruent to 1 mod q'."""
    q = chi.modulus
    units = [a for a in range(1, q + 1) if gcd(a, q) == 1] if q > 1 else [1]
    for d in divisors(q):
        if all(chi.root(a) == 1 for a in units if a % d == 1 % d):
            return d
    return q


def primitive_characters(max_conductor: int) -> list[tuple[DirichletCharacter, int]]:
    """All (chi, conductor) with chi primitive of conductor <= max_conductor."""
    out = []
    for q in range(1, max_conductor + 1):
        for chi in enumerate_characters(q):
            if conductor(chi) == q:
                out.append((chi, q))
    return out


# ---------------------------------------------------------------------------
# twist search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwistReport:
    matches: tuple[tuple[DirichletCharacter, int], ...]
    primes_checked: int
    search_bound: int


def _as_cyclo(v) -> CyclotomicNumber:
    if isinstance(v, CyclotomicNumber):
        return v
    return CyclotomicNumber.from_rational(v)


def _twist_matches(chi: DirichletCharacter, f: EigenvalueTable, g: EigenvalueTable, common) -> bool:
    q = chi.modulus
    for p in common:
        if gcd(p, q) > 1:
            continue
        af, ag = f.entries[p], g.entries[p]
        root = chi.root(p)
        if isinstance(af, int) and isinstance(ag, int):
            # rational chi(p) forces +-1; higher-order values match only 0 = 0
            if root.order == 1:
                ok = ag == af
            elif root.order == 2:
                ok = ag == -af
            else:
                ok = af == 0 and ag == 0
        else:
            ok = _as_cyclo(ag) == root.as_cyclotomic() * _as_cyclo(af)
        if not ok:
            return False
    return True


def find_twist(f: EigenvalueTable, g: EigenvalueTable, qmax: int) -> TwistReport:
    """All primitive characters chi of conductor <= qmax with a_p(g) = chi(p) a_p(f).

    Each candidate is verified on every shared prime coprime to its
    conductor, with equality taken in the cyclotomic field of the values;
    several matches are legitimate output, not an error.
    """
    if qmax < 1:
        raise UsageError("conductor bound must be >= 1")
    common = common_primes(f, g)
    matches = tuple(
        (chi, cond)
        for chi, cond in primitive_characters(qmax)
        if _twist_matches(chi, f, g, common)
    )
    return TwistReport(matches=matches, primes_checked=len(common), search_bound=qmax)


@dataclass(frozen=True)
class TwistPipelineResult:
    locus: PowerLocus
    twist: TwistReport
    anomaly: bool
    non_cm_declared: bool


# a locus this dense with no matching character is flagged as an anomaly;
# sparser loci are ordinary finite-scale noise between unrelated forms
ANOMALY_DENSITY = Fraction(1, 2)


def twist_pipeline(
    f: EigenvalueTable,
    g: EigenvalueTable,
    qmax: int,
    non_cm_declared: bool = True,
    anomaly_threshold: Fraction = ANOMALY_DENSITY,
) -> TwistPipelineResult:
    """Run the locus, then the character search when the locus is nonempty.

    A nonempty match list is the expected conclusion for genuinely related
    tables; an empty list against a dense locus is reported as an anomaly.
    The non-CM hypothesis cannot be checked from finite data and is carried
    through as a declared flag.
    """
    locus = power_locus(f, g)
    if locus.density_report.empirical > 0:
        twist = find_twist(f, g, qmax)
    else:
        twist = TwistReport(matches=(), primes_checked=0, search_bound=qmax)
    anomaly = locus.density_report.empirical >= anomaly_threshold and not twist.matches
    return TwistPipelineResult(locus=locus, twist=twist, anomaly=anomaly, non_cm_declared=non_cm_declared)
