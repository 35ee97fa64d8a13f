"""The Wendt resultant W_n = Res(X^n - 1, (X+1)^n - 1).

Two independent evaluations are kept: an exact one (Bareiss elimination of the
Sylvester matrix over the integers) and a modular one (product over the n-th
roots of unity mod a prime q = 1 mod n). The criteria only use the modular one.
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from fermat_first_case import utils
from fermat_first_case.arith_core import MODULUS_LIMIT, element_of_order
from fermat_first_case.errors import ArgumentError, CapExceededError, WordOverflowError

logger = logging.getLogger(__name__)


class WendtEvaluation(BaseModel):
    """W_n either exactly (`value`) or modulo a prime (`modulus`, `residue`)."""

    model_config = ConfigDict(frozen=True)

    n: int
    value: int | None = None
    modulus: int | None = None
    residue: int | None = None
    divisible: bool | None = None

    @model_validator(mode="after")
    def _one_mode(self):
        exact = self.value is not None
        modular = self.modulus is not None and self.residue is not None
        if exact == modular:
            raise ValueError("a Wendt evaluation is either exact or modular")
        return self

    @field_serializer("value")
    def _value_as_decimal(self, value: int | None):
        # exact W_n overflows 64-bit Json readers
        return None if value is None else str(value)


def wendt_polynomials(n: int) -> tuple[list[int], list[int]]:
    """Coefficients, highest degree first, of X^n - 1 and (X+1)^n - 1."""
    f = [1] + [0] * (n - 1) + [-1]
    g = [math.comb(n, n - i) for i in range(n + 1)]
    g[-1] -= 1
    return f, g


def sylvester_matrix(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix of f (deg m) and g (deg k): k shifted rows of f, then m rows of g."""
    m = len(f) - 1
    k = len(g) - 1
    size = m + k
    rows = []
    for i in range(k):
        rows.append([0] * i + f + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + g + [0] * (size - k - 1 - i))
    return rows


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    M = [row[:] for row in matrix]
    size = len(M)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if M[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if M[i][k] != 0), None)
            if pivot is None:
                return 0
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        pivot_value = M[k][k]
        row_k = M[k]
        for i in range(k + 1, size):
            row_i = M[i]
            lead = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot_value - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot_value
    return sign * M[-1][-1]


def wendt_exact(n: int) -> int:
    """
    Exact W_n for 1 <= n <= FERMAT_WENDT_EXACT_CAP.

    Raises:
        CapExceededError: If n is above the configured cap
    """
    cap = utils.wendt_exact_cap()
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    if n > cap:
        logger.error(f"wendt_exact() function failed - n={n} above cap {cap}")
        raise CapExceededError(f"exact W_n is capped at n = {cap}, got {n}")
    logger.debug(f"wendt_exact() function started - n={n}")
    value = bareiss_determinant(sylvester_matrix(*wendt_polynomials(n)))
    logger.debug(f"wendt_exact() function completed - n={n}, {value.bit_length()} bits")
    return value


def _roots_of_unity(n: int, q: int, hint: int | None):
    zeta = element_of_order(q, n, hint)
    u = 1
    for _ in range(n):
        yield u
        u = u * zeta % q


def wendt_mod(n: int, q: int, hint: int | None = None) -> int:
    """
    W_n mod q for a prime q = 1 mod n, as the product of (u+1)^n - 1 over u^n = 1.

    Raises:
        OrderUnavailableError: If n does not divide q - 1
    """
    residue = 1
    for u in _roots_of_unity(n, q, hint):
        residue = residue * (pow(u + 1, n, q) - 1) % q
    return residue


def wendt_divides(n: int, q: int, hint: int | None = None) -> bool:
    """
    True iff the prime q divides W_n, i.e. some n-th root of unity u mod q has (u+1)^n = 1.

    Raises:
        OrderUnavailableError: If n does not divide q - 1
    """
    for u in _roots_of_unity(n, q, hint):
        if pow(u + 1, n, q) == 1:
            return True
    return False


def dickson_bound(p: int) -> int:
    """
    (p-1)^2 (p-2)^2 + 6p - 2: every prime q = np + 1 above it divides W_n.

    Raises:
        WordOverflowError: If the bound does not fit below 2^62
    """
    bound = dickson_bound_exact(p)
    if bound >= MODULUS_LIMIT:
        logger.error(f"dickson_bound() function failed - bound for p={p} exceeds 2^62")
        raise WordOverflowError(f"Dickson bound for p = {p} exceeds 2^62")
    return bound


def dickson_bound_exact(p: int) -> int:
    return (p - 1) ** 2 * (p - 2) ** 2 + 6 * p - 2


def evaluate(n: int, modulus: int | None = None) -> WendtEvaluation:
    if modulus is None:
        return WendtEvaluation(n=n, value=wendt_exact(n))
    residue = wendt_mod(n, modulus)
    return WendtEvaluation(n=n, modulus=modulus, residue=residue, divisible=residue == 0)
