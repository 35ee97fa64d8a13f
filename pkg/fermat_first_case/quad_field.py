"""Imaginary quadratic fields Q(sqrt(d)): discriminants, class numbers, splitting of primes."""

import logging
import math
import threading
from enum import Enum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict

from fermat_first_case import utils
from fermat_first_case.arith_core import kronecker
from fermat_first_case.errors import CapExceededError, NotImaginaryError, NotSquarefreeError

logger = logging.getLogger(__name__)


class SplittingType(str, Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"


class ReducedForm(NamedTuple):
    a: int
    b: int
    c: int


class FieldSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    discriminant: int
    class_number: int


def is_squarefree(d: int) -> bool:
    d = abs(d)
    if d == 0:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def fundamental_discriminant(d: int) -> int:
    """
    Discriminant of Q(sqrt(d)) for squarefree d not in {0, 1}: d if d = 1 mod 4, else 4d.

    Real fields are accepted here; only the imaginary ones get a field object.
    """
    if d in (0, 1):
        raise NotSquarefreeError(f"Q(sqrt({d})) is not a quadratic field")
    if not is_squarefree(d):
        raise NotSquarefreeError(f"{d} is not squarefree")
    return d if d % 4 == 1 else 4 * d


class ImaginaryQuadraticField:
    """
    The field K = Q(sqrt(d)) for a squarefree d < 0.

    The class number is computed on first use and cached on the instance;
    concurrent first calls compute it once.
    """

    __slots__ = ("d", "D", "_h", "_lock")

    def __init__(self, d: int):
        if d >= 0:
            logger.error(f"ImaginaryQuadraticField() failed - d={d} is not negative")
            raise NotImaginaryError(f"Q(sqrt({d})) is not imaginary quadratic")
        self.d = d
        self.D = fundamental_discriminant(d)
        self._h: int | None = None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"ImaginaryQuadraticField(d={self.d}, D={self.D})"

    def __eq__(self, other):
        return isinstance(other, ImaginaryQuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("ImaginaryQuadraticField", self.d))

    @property
    def h(self) -> int:
        if self._h is None:
            with self._lock:
                if self._h is None:
                    self._h = class_number(self)
        return self._h


def make_field(d: int) -> ImaginaryQuadraticField:
    return ImaginaryQuadraticField(d)


def reduced_forms(K: ImaginaryQuadraticField) -> list[ReducedForm]:
    """
    Reduced primitive positive-definite forms (a, b, c) of discriminant D.

    Reduced means |b| <= a <= c, with b >= 0 whenever |b| = a or a = c.
    """
    D = K.D
    cap = utils.class_number_cap()
    if abs(D) > cap:
        logger.error(f"reduced_forms() function failed - |D|={abs(D)} above cap {cap}")
        raise CapExceededError(f"|D| = {abs(D)} exceeds the class number cap {cap}")
    forms = []
    a_max = math.isqrt(abs(D) // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append(ReducedForm(a, b, c))
    return forms


def class_number(K: ImaginaryQuadraticField) -> int:
    logger.debug(f"class_number() function started - D={K.D}")
    h = len(reduced_forms(K))
    logger.debug(f"class_number() function completed - h({K.D}) = {h}")
    return h


def splitting_type(K: ImaginaryQuadraticField, q: int) -> SplittingType:
    """Decomposition of the prime q in K, read off the Kronecker symbol (D|q)."""
    if K.D % q == 0:
        return SplittingType.RAMIFIED
    if kronecker(K.D, q) == 1:
        return SplittingType.SPLIT
    return SplittingType.INERT


def describe(K: ImaginaryQuadraticField) -> FieldSummary:
    return FieldSummary(d=K.d, discriminant=K.D, class_number=K.h)
