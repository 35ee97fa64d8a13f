"""Machine-word modular arithmetic, primality, sieves and quadratic symbols.

Every modulus handled here satisfies 2 <= m < 2**62, so the product of two
residues stays below 2**124 and is reduced exactly. Python integers never wrap;
the cap is enforced at the boundary so that a modulus which would not fit a
machine word is reported instead of silently accepted.
"""

import logging
import math
from collections.abc import Iterator

import numpy as np

from fermat_first_case import utils
from fermat_first_case.errors import (
    InvalidModulusError,
    NotInvertibleError,
    OrderUnavailableError,
    WordOverflowError,
)

logger = logging.getLogger(__name__)

MODULUS_LIMIT = 1 << 62

# Deterministic Miller-Rabin witnesses; correct for every n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def check_modulus(m: int) -> int:
    """Validates a modulus and returns it unchanged."""
    if m >= MODULUS_LIMIT:
        logger.error(f"check_modulus() function failed - modulus {m} exceeds 2^62")
        raise WordOverflowError(f"modulus {m} does not fit below 2^62")
    if m < 2:
        raise InvalidModulusError(f"modulus must be at least 2, got {m}")
    return m


def mod_mul(a: int, b: int, m: int) -> int:
    check_modulus(m)
    return (a * b) % m


def mod_pow(a: int, e: int, m: int) -> int:
    """Returns a**e mod m. The empty product a**0 is 1, also for a = 0."""
    check_modulus(m)
    return pow(a, e, m)


def mod_inv(a: int, m: int) -> int:
    check_modulus(m)
    if math.gcd(a, m) != 1:
        raise NotInvertibleError(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**62."""
    if n >= MODULUS_LIMIT:
        logger.error(f"is_prime() function failed - {n} exceeds 2^62")
        raise WordOverflowError(f"primality is only decided below 2^62, got {n}")
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def iter_prime_segments(bound: int, segment_size: int | None = None, start: int = 2) -> Iterator[np.ndarray]:
    """
    Streams the primes in [start, bound] as ascending numpy arrays, one per segment.

    Memory stays at O(sqrt(bound) + segment_size): only the base primes up to
    sqrt(bound) and the current segment's flags are held. Segments are
    independent of each other once the base primes are known.
    """
    segment_size = segment_size or utils.sieve_segment()
    if segment_size < 1:
        raise ValueError(f"segment size must be positive, got {segment_size}")
    low = max(start, 2)
    if bound < low:
        return
    base = _simple_sieve(math.isqrt(bound))
    logger.debug(f"iter_prime_segments() - bound {bound}, {len(base)} base primes, segment {segment_size}")
    while low <= bound:
        high = min(low + segment_size, bound + 1)
        flags = np.ones(high - low, dtype=bool)
        for p in base.tolist():
            if p * p >= high:
                break
            first = max(p * p, -(-low // p) * p)
            flags[first - low :: p] = False
        primes = np.flatnonzero(flags).astype(np.int64) + low
        if primes.size:
            yield primes
        low = high


def primes_up_to(bound: int, segment_size: int | None = None) -> list[int]:
    primes: list[int] = []
    for segment in iter_prime_segments(bound, segment_size):
        primes.extend(segment.tolist())
    return primes


def smallest_prime_factors(limit: int) -> np.ndarray:
    """Returns spf with spf[k] the least prime dividing k for 2 <= k <= limit; spf[0] = spf[1] = 0."""
    spf = np.zeros(max(limit, 1) + 1, dtype=np.int64)
    for p in _simple_sieve(math.isqrt(limit)).tolist():
        block = spf[p * p :: p]
        block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    rest = rest[rest >= 2]
    spf[rest] = rest
    return spf


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    if n == 1:
        return 1
    acc = 1
    while True:
        a %= n
        if a == 0:
            return 0
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        if a == 1:
            return acc
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a, n = n, a


def kronecker(a: int, n: int) -> int:
    """The Kronecker symbol (a|n), extended to even and negative n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    sign = 1
    while n % 2 == 0:
        n //= 2
        # (a|2) for odd a
        if a % 8 in (3, 5):
            sign = -sign
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    return sign * _jacobi(a, n)


def prime_factors(m: int, hint: int | None = None) -> list[int]:
    """
    Distinct prime factors of m by trial division.

    A known prime factor passed as `hint` is divided out first, so q - 1 = n*p
    only needs trial division up to sqrt(n).
    """
    factors: set[int] = set()
    if hint is not None and hint > 1 and m % hint == 0:
        factors.add(hint)
        while m % hint == 0:
            m //= hint
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.add(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        factors.add(m)
    return sorted(factors)


def primitive_root(q: int, hint: int | None = None) -> int:
    """Least generator of the multiplicative group modulo the prime q."""
    check_modulus(q)
    if q == 2:
        return 1
    order = q - 1
    factors = prime_factors(order, hint)
    g = 2
    while any(pow(g, order // ell, q) == 1 for ell in factors):
        g += 1
    return g


def element_of_order(q: int, n: int, hint: int | None = None) -> int:
    """
    Returns a residue of multiplicative order exactly n modulo the prime q.

    Raises:
        OrderUnavailableError: If n does not divide q - 1
    """
    check_modulus(q)
    if n < 1 or (q - 1) % n != 0:
        raise OrderUnavailableError(f"no element of order {n} modulo {q}: {n} does not divide {q - 1}")
    if n == 1:
        return 1
    g = primitive_root(q, hint)
    return pow(g, (q - 1) // n, q)
