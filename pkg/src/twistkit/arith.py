"""Elementary integer arithmetic: sieves, factorization, totients, CRT.

Everything here is exact integer work sized for desk-scale inputs
(moduli up to ~10^6, sieve cutoffs up to ~10^6).
"""

from __future__ import annotations

from math import gcd, isqrt


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i in range(2, limit + 1) if flags[i]]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the base set covers all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division, {p: exponent}."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def radical(n: int) -> int:
    """Product of the distinct primes dividing n >= 1."""
    r = 1
    for p in factorize(n):
        r *= p
    return r


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(abs(n)).values())


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x = r1 (mod m1), x = r2 (mod m2); moduli coprime."""
    inv = pow(m1, -1, m2)
    return (r1 + (r2 - r1) * inv % m2 * m1) % (m1 * m2)


def primitive_root(q: int) -> int:
    """Smallest generator of (Z/qZ)^* for q an odd prime power or 2 or 4."""
    if q in (2, 4):
        return q - 1
    fac = factorize(q)
    if len(fac) != 1 or 2 in fac:
        raise ValueError(f"(Z/{q}Z)^* is not cyclic")
    (p, e), = fac.items()
    phi_p = p - 1
    prime_parts = list(factorize(phi_p))
    g = None
    for cand in range(2, p):
        if all(pow(cand, phi_p // r, p) != 1 for r in prime_parts):
            g = cand
            break
    assert g is not None
    if e == 1:
        return g
    # g lifts to a generator mod p^e unless g^(p-1) = 1 (mod p^2)
    if pow(g, p - 1, p * p) == 1:
        g += p
    return g
