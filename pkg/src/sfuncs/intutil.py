"""Small integer helpers: primality, factoring, divisors, Moebius, CRT.

Everything here is exact and deterministic.  The Miller-Rabin witness set is
the standard one that is provably correct for numbers below 3.3 * 10**24,
far beyond anything this package touches.
"""
from __future__ import annotations

import math
from functools import lru_cache

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test.

    >>> [k for k in range(2, 30) if is_prime(k)]
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of an odd composite n."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to factor {n}")


def prime_factors(n: int) -> dict[int, int]:
    """Full factorization of |n| as a prime -> multiplicity map.

    >>> prime_factors(360)
    {2: 3, 3: 2, 5: 1}
    """
    n = abs(n)
    out: dict[int, int] = {}
    if n <= 1:
        return out
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    # trial division with a 2,4 wheel up to 2**20, Pollard rho beyond
    step = 4
    while f * f <= n and f < 1 << 20:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return dict(sorted(out.items()))


def ord_p(n: int, p: int) -> int:
    """Exponent of the prime p in n; n must be nonzero."""
    if n == 0:
        raise ValueError("ord_p(0) is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n.

    >>> divisors(12)
    [1, 2, 3, 4, 6, 12]
    """
    out = [1]
    for p, e in prime_factors(n).items():
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def moebius(n: int) -> int:
    """Moebius function: (-1)**r on squarefree n with r prime factors, else 0."""
    if n < 1:
        raise ValueError("moebius needs a positive argument")
    fac = prime_factors(n)
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def crt(residues: list[int], moduli: list[int]) -> int:
    """Unique r in [0, prod(moduli)) with r = residues[i] mod moduli[i].

    Moduli must be pairwise coprime.

    >>> crt([1, 2], [4, 9])
    29
    """
    r, m = 0, 1
    for ri, mi in zip(residues, moduli):
        g = math.gcd(m, mi)
        if g != 1:
            raise ValueError("moduli are not pairwise coprime")
        # r + m*t = ri mod mi
        t = (ri - r) * pow(m, -1, mi) % mi
        r += m * t
        m *= mi
    return r % m


@lru_cache(maxsize=None)
def primes_up_to(n: int) -> tuple[int, ...]:
    """All primes <= n, by sieve."""
    if n < 2:
        return ()
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i, b in enumerate(sieve) if b)
