"""Condition (1) through Fermat quotients, vectorized with numpy.

With q_p(a) = (a^(p-1) - 1)/p mod p, a^p = a(1 + p q_p(a)) mod p^2, so
1 + a^p = (1 + a)^p mod p^2 reduces to a q_p(a) = (a + 1) q_p(a + 1) mod p.
The quotient is additive, q_p(ab) = q_p(a) + q_p(b) mod p, so it only has
to be exponentiated at primes; composites are filled in from a
smallest-prime-factor table.
"""

import functools
import logging

import numpy as np

from fermat_first_case.arith_core import smallest_prime_factors

logger = logging.getLogger(__name__)

# int64 products stay exact while the modulus is below 2**42 (21-bit limbs)
VECTOR_MODULUS_LIMIT = 1 << 42
_LIMB = 21
_LIMB_MASK = (1 << _LIMB) - 1


@functools.lru_cache(maxsize=4)
def spf_table(limit: int) -> np.ndarray:
    return smallest_prime_factors(limit)


def _mulmod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    low = (a * (b & _LIMB_MASK)) % m
    high = (a * (b >> _LIMB)) % m
    return ((high << _LIMB) % m + low) % m


def _powmod(bases: np.ndarray, e: int, m: int) -> np.ndarray:
    result = np.ones_like(bases)
    square = bases % m
    while e:
        if e & 1:
            result = _mulmod(result, square, m)
        e >>= 1
        if e:
            square = _mulmod(square, square, m)
    return result


def fermat_quotients(p: int, upto: int, spf: np.ndarray | None = None) -> np.ndarray:
    """
    Returns q with q[a] = q_p(a) for 1 <= a <= upto < p (q[0] unused).

    `spf` must cover [0, upto]; it is built when omitted.
    """
    if spf is None or len(spf) <= upto:
        spf = spf_table(max(upto, 1))
    quotients = np.zeros(upto + 1, dtype=np.int64)
    if upto < 2:
        return quotients
    m = p * p
    idx = np.arange(upto + 1, dtype=np.int64)
    factor = spf[: upto + 1]
    primes = idx[2:][factor[2:] == idx[2:]]
    if m < VECTOR_MODULUS_LIMIT:
        powers = _powmod(primes, p - 1, m)
    else:
        powers = np.array([pow(int(ell), p - 1, m) for ell in primes], dtype=object)
    quotients[primes] = np.asarray(((powers - 1) // p) % p, dtype=np.int64)
    # a // spf(a) <= a/2, so the block [2^k, 2^(k+1)) only reads earlier blocks
    low = 4
    while low <= upto:
        high = min(2 * low, upto + 1)
        block = idx[low:high]
        s = factor[low:high]
        composite = block[s != block]
        if composite.size:
            first = factor[composite]
            quotients[composite] = (quotients[first] + quotients[composite // first]) % p
        low = high
    return quotients


def condition1_witnesses_by_quotients(p: int, spf: np.ndarray | None = None) -> np.ndarray:
    """Every a in [1, (p-3)/2] violating condition (1), computed from Fermat quotients."""
    top = (p - 3) // 2
    if top < 1:
        return np.array([], dtype=np.int64)
    quotients = fermat_quotients(p, top + 1, spf)
    a = np.arange(1, top + 1, dtype=np.int64)
    lhs = (a * quotients[1 : top + 1]) % p
    rhs = ((a + 1) * quotients[2 : top + 2]) % p
    return a[lhs == rhs]


def condition1_holds_by_quotients(p: int, spf: np.ndarray | None = None) -> bool:
    return condition1_witnesses_by_quotients(p, spf).size == 0
