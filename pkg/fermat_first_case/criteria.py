"""Decision procedures for the first case of Fermat's Last Theorem over number fields.

Two families of local obstructions are implemented:

- the Wendt-type criterion over an imaginary quadratic field K, which needs
  p not dividing h_K and a prime q = np + 1 split in K with
  (n^n - 1) W_n nonzero mod q (with the n = 2 and Gaussian-field shortcuts);
- the criterion modulo p^2, which needs a degree-1 prime above p with small
  ramification and 1 + a^p != (1 + a)^p mod p^2 for a = 1 .. (p-3)/2.

All criteria are one-sided. NotEstablished means the criterion is silent,
never that a solution of x^p + y^p + z^p = 0 exists.
"""

import logging
import math
from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from fermat_first_case import utils
from fermat_first_case.arith_core import MODULUS_LIMIT, is_prime, kronecker
from fermat_first_case.errors import (
    NotCubefreeError,
    NotPrimeError,
    UnsupportedFieldError,
    WordOverflowError,
)
from fermat_first_case.quad_field import (
    ImaginaryQuadraticField,
    SplittingType,
    fundamental_discriminant,
    is_squarefree,
    make_field,
    splitting_type,
)
from fermat_first_case.wendt import dickson_bound_exact, wendt_divides

logger = logging.getLogger(__name__)

COROLLARY2_EXPONENTS = (4, 8, 16)


class CriterionStatus(str, Enum):
    ESTABLISHED = "Established"
    NOT_ESTABLISHED = "NotEstablished"


class PureFieldCase(str, Enum):
    UNRAMIFIED = "Unramified"
    CUBIC = "Cubic"
    CONGRUENT_EXPONENT = "CongruentExponent"


class Theorem1Witness(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    n: int
    q: int

    @model_validator(mode="after")
    def _shape(self):
        if self.q != self.n * self.p + 1:
            raise ValueError(f"q = {self.q} is not n*p + 1 for n = {self.n}, p = {self.p}")
        if self.n % 2 or self.n % 6 == 0:
            raise ValueError(f"n = {self.n} must be even and not divisible by 6")
        return self


class CriterionOutcome(BaseModel):
    """
    Verdict of one criterion for one exponent p.

    `reason` names the first hypothesis that failed, or "established";
    `message` spells it out for humans.
    """

    model_config = ConfigDict(frozen=True)

    criterion: str
    p: int
    status: CriterionStatus
    reason: str
    message: str = ""
    witness: Theorem1Witness | None = None
    case: PureFieldCase | None = None

    @property
    def established(self) -> bool:
        return self.status is CriterionStatus.ESTABLISHED


class SearchReason(str, Enum):
    ESTABLISHED = "established"
    EXHAUSTED = "exhausted"
    CLASS_NUMBER_DIVISIBLE = "class_number_divisible"


class Theorem1SearchReport(BaseModel):
    """
    Result of the smallest-n search. `exhausted` is true only when every
    admissible n up to `n_cap` was tried without success; a class number
    divisible by p stops the search before any n is tried.
    """

    model_config = ConfigDict(frozen=True)

    d: int
    p: int
    n_cap: int
    exhausted: bool
    reason: SearchReason
    witness: Theorem1Witness | None = None

    @model_validator(mode="after")
    def _reason_matches(self):
        if (self.witness is not None) != (self.reason is SearchReason.ESTABLISHED):
            raise ValueError("a search has a witness exactly when its reason is established")
        if self.exhausted != (self.reason is SearchReason.EXHAUSTED):
            raise ValueError("a search is exhausted exactly when its reason is exhausted")
        return self


class Condition1Report(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    holds: bool
    witnesses: list[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _holds_iff_empty(self):
        if self.holds == bool(self.witnesses):
            raise ValueError("condition (1) holds exactly when there is no witness")
        return self


class Condition1Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    holds: bool


class QuadraticHypothesis(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["quadratic"] = "quadratic"
    d: int


class PureFieldHypothesis(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["pure"] = "pure"
    d: int
    n: int = Field(gt=0)

    @model_validator(mode="after")
    def _proper_radicand(self):
        if self.d in (-1, 0, 1):
            raise ValueError(f"the radicand of a pure field must differ from 0 and +-1, got {self.d}")
        return self


class TotallyRamifiedHypothesis(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["totally_ramified"] = "totally_ramified"
    degree: int = Field(gt=0)


class AssertedHypothesis(BaseModel):
    model_config = ConfigDict(frozen=True)
    kind: Literal["asserted"] = "asserted"
    e: int = Field(gt=0)
    f: int = Field(gt=0)


FieldHypothesis = Annotated[
    Union[QuadraticHypothesis, PureFieldHypothesis, TotallyRamifiedHypothesis, AssertedHypothesis],
    Field(discriminator="kind"),
]


class PureFieldRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: int
    p: int
    n: int
    case: PureFieldCase | None
    status: CriterionStatus


def require_odd_prime(p: int) -> int:
    if p < 3 or p >= MODULUS_LIMIT or not is_prime(p):
        logger.error(f"require_odd_prime() function failed - {p} is not an odd prime")
        raise NotPrimeError(f"{p} is not an odd prime")
    return p


def _outcome(criterion: str, p: int, reason: str, message: str, **extra) -> CriterionOutcome:
    status = CriterionStatus.ESTABLISHED if reason == "established" else CriterionStatus.NOT_ESTABLISHED
    return CriterionOutcome(criterion=criterion, p=p, status=status, reason=reason, message=message, **extra)


def _check_theorem1(K: ImaginaryQuadraticField, p: int, n: int, criterion: str = "theorem1") -> CriterionOutcome:
    # hypotheses from cheap to expensive; p already validated
    if n < 1:
        return _outcome(criterion, p, "n_not_positive", f"n = {n} is not positive")
    if n % 6 == 0:
        return _outcome(criterion, p, "n_multiple_of_six", f"6 divides n = {n}, so W_n = 0")
    if K.h % p == 0:
        return _outcome(criterion, p, "class_number_divisible", f"p = {p} divides h_K = {K.h}")
    q = n * p + 1
    if q >= MODULUS_LIMIT:
        logger.error(f"_check_theorem1() function failed - q = {q} exceeds 2^62")
        raise WordOverflowError(f"q = {n}*{p} + 1 exceeds 2^62")
    if not is_prime(q):
        return _outcome(criterion, p, "q_not_prime", f"q = {q} is not prime")
    split = splitting_type(K, q)
    if split is not SplittingType.SPLIT:
        return _outcome(criterion, p, "q_not_split", f"q = {q} is {split.value.lower()} in Q(sqrt({K.d}))")
    if pow(n % q, n, q) == 1:
        return _outcome(criterion, p, "n_power_is_one", f"n^n = 1 mod q = {q}")
    if wendt_divides(n, q, hint=p):
        return _outcome(criterion, p, "wendt_divisible", f"q = {q} divides W_{n}")
    witness = Theorem1Witness(p=p, n=n, q=q)
    return _outcome(criterion, p, "established", f"q = {q} certifies n = {n}", witness=witness)


def theorem1_check(K: ImaginaryQuadraticField, p: int, n: int) -> CriterionOutcome:
    """
    Checks the Wendt-type criterion over K for the exponent p with the given n.

    Established iff p does not divide h_K, q = np + 1 is a prime split in K,
    n^n != 1 mod q and q does not divide W_n. Multiples of 6 are rejected
    at once since W_n = 0 for them.

    Raises:
        NotPrimeError: If p is not an odd prime
        WordOverflowError: If q = np + 1 does not fit below 2^62
    """
    logger.info(f"theorem1_check() function started - d={K.d}, p={p}, n={n}")
    require_odd_prime(p)
    outcome = _check_theorem1(K, p, n)
    logger.info(f"theorem1_check() function completed - {outcome.status.value} ({outcome.reason})")
    return outcome


def search_exponents(limit: int):
    """Even n <= limit not divisible by 6: 2, 4, 8, 10, 14, 16, ..."""
    for n in range(2, limit + 1, 2):
        if n % 6:
            yield n


def search_limit(p: int, n_max: int | None = None) -> int:
    n_max = utils.search_cap() if n_max is None else n_max
    return min(n_max, dickson_bound_exact(p))


def find_theorem1_witness(K: ImaginaryQuadraticField, p: int, limit: int) -> Theorem1Witness | None:
    if K.h % p == 0:
        return None
    for n in search_exponents(limit):
        if n * p + 1 >= MODULUS_LIMIT:
            break
        outcome = _check_theorem1(K, p, n)
        if outcome.established:
            return outcome.witness
    return None


def theorem1_search(K: ImaginaryQuadraticField, p: int, n_max: int | None = None) -> Theorem1Witness | None:
    """
    Smallest even n <= min(n_max, Dickson bound), 6 not dividing n, for which
    theorem1_check succeeds; None when the range holds no witness.

    Odd n are never tried: q = np + 1 would be even.
    """
    require_odd_prime(p)
    limit = search_limit(p, n_max)
    logger.debug(f"theorem1_search() function started - d={K.d}, p={p}, n up to {limit}")
    witness = find_theorem1_witness(K, p, limit)
    logger.debug(f"theorem1_search() function completed - d={K.d}, p={p}, witness={witness}")
    return witness


def theorem1_search_report(K: ImaginaryQuadraticField, p: int, n_max: int | None = None) -> Theorem1SearchReport:
    require_odd_prime(p)
    n_cap = search_limit(p, n_max)
    if K.h % p == 0:
        logger.info(f"theorem1_search_report() function completed - p={p} divides h_K={K.h}, no n tried")
        return Theorem1SearchReport(
            d=K.d, p=p, n_cap=n_cap, exhausted=False, reason=SearchReason.CLASS_NUMBER_DIVISIBLE
        )
    witness = theorem1_search(K, p, n_max)
    if witness is None:
        return Theorem1SearchReport(d=K.d, p=p, n_cap=n_cap, exhausted=True, reason=SearchReason.EXHAUSTED)
    return Theorem1SearchReport(
        d=K.d, p=p, n_cap=n_cap, exhausted=False, reason=SearchReason.ESTABLISHED, witness=witness
    )


def sophie_germain_check(K: ImaginaryQuadraticField, p: int) -> CriterionOutcome:
    """
    The n = 2 case of theorem1_check.

    W_2 = -3 and 2^2 - 1 = 3 while q = 2p + 1 >= 7, so only the class number,
    the primality of q and its splitting can fail.
    """
    require_odd_prime(p)
    return _check_theorem1(K, p, 2, criterion="germain")


def corollary2_check(p: int) -> CriterionOutcome:
    """Over Q(i), tries n = 4, 8, 16 in order; Established with the first that works."""
    require_odd_prime(p)
    K = make_field(-1)
    failures = []
    for n in COROLLARY2_EXPONENTS:
        outcome = _check_theorem1(K, p, n, criterion="corollary2")
        if outcome.established:
            return outcome
        failures.append(f"n={n}: {outcome.message}")
    return _outcome("corollary2", p, "no_listed_exponent", "; ".join(failures))


def _condition1_bound(p: int) -> int:
    if p >= 1 << 31:
        logger.error(f"condition1() failed - p = {p} has p^2 above 2^62")
        raise WordOverflowError(f"p = {p} is too large: p^2 exceeds 2^62")
    return (p - 3) // 2


def condition1_violations(p: int, upper: int | None = None) -> list[int]:
    """
    Every a in [1, upper] with 1 + a^p = (1 + a)^p mod p^2, ascending.

    `upper` defaults to (p-3)/2, the range of condition (1); p - 2 gives the
    extended scan whose violation set is symmetric under a -> p - 1 - a.
    """
    bound = _condition1_bound(p)
    upper = bound if upper is None else upper
    m = p * p
    return [a for a in range(1, upper + 1) if (1 + pow(a, p, m)) % m == pow(1 + a, p, m)]


def condition1_check(p: int) -> Condition1Report:
    """
    Full report on condition (1) for p: all a in [1, (p-3)/2] with
    1 + a^p = (1 + a)^p mod p^2. For p = 3 the range is empty and the
    condition holds.

    Raises:
        NotPrimeError: If p is not an odd prime
        WordOverflowError: If p >= 2^31
    """
    require_odd_prime(p)
    witnesses = condition1_violations(p)
    return Condition1Report(p=p, holds=not witnesses, witnesses=witnesses)


def condition1_holds(p: int) -> bool:
    """Boolean form of condition1_check that stops at the first witness."""
    require_odd_prime(p)
    m = p * p
    for a in range(1, _condition1_bound(p) + 1):
        if (1 + pow(a, p, m)) % m == pow(1 + a, p, m):
            return False
    return True


def _is_cubefree(d: int) -> bool:
    d = abs(d)
    k = 2
    while k * k * k <= d:
        if d % (k * k * k) == 0:
            return False
        k += 1
    return True


def pure_field_residue_degree_one(d: int, n: int, p: int) -> tuple[bool, PureFieldCase]:
    """
    Decides whether Q(d^(1/n)) has a prime above p of residue degree 1 and
    ramification index at most p - 1, in the cases where this is known:

    - n = 3, p = 2 mod 3, p >= 5, d cubefree: always (Cubic);
    - n = 1 mod p - 1, p not dividing dn, d squarefree: d is a root of X^n - d mod p (CongruentExponent);
    - p not dividing dn: iff X^n - d has a root mod p, i.e.
      d^((p-1)/g) = 1 mod p with g = gcd(n, p - 1) (Unramified).

    A non-squarefree d with n = 1 mod p - 1 is decided by the Unramified test.

    Raises:
        UnsupportedFieldError: Outside these cases
        NotCubefreeError: If d is not cubefree in the cubic case
    """
    if d in (-1, 0, 1):
        raise UnsupportedFieldError(f"Q({d}^(1/{n})) is not a pure field")
    if n == 3 and p >= 5 and p % 3 == 2:
        if not _is_cubefree(d):
            raise NotCubefreeError(f"{d} is not cubefree")
        return True, PureFieldCase.CUBIC
    if (d * n) % p == 0:
        logger.error(f"pure_field_residue_degree_one() function failed - p={p} divides d*n={d * n}")
        raise UnsupportedFieldError(f"p = {p} divides d*n = {d * n} outside the cubic case")
    if n % (p - 1) == 1 % (p - 1) and is_squarefree(d):
        return True, PureFieldCase.CONGRUENT_EXPONENT
    g = math.gcd(n, p - 1)
    return pow(d % p, (p - 1) // g, p) == 1, PureFieldCase.UNRAMIFIED


def _hypothesis1(hypothesis, p: int) -> tuple[bool, str, PureFieldCase | None]:
    match hypothesis:
        case QuadraticHypothesis(d=d):
            D = fundamental_discriminant(d)
            symbol = kronecker(D, p)
            if D % p == 0 or symbol == 1:
                return True, f"p is {'ramified' if symbol == 0 else 'split'} in Q(sqrt({d}))", None
            return False, f"p is inert in Q(sqrt({d}))", None
        case PureFieldHypothesis(d=d, n=n):
            ok, case = pure_field_residue_degree_one(d, n, p)
            verdict = "has" if ok else "has no"
            return ok, f"Q({d}^(1/{n})) {verdict} a residue degree 1 prime above p ({case.value})", case
        case TotallyRamifiedHypothesis(degree=degree):
            if degree <= p - 1:
                return True, f"totally ramified of degree {degree} <= p - 1", None
            return False, f"degree {degree} exceeds p - 1 = {p - 1}", None
        case AssertedHypothesis(e=e, f=f):
            if f == 1 and e <= p - 1:
                return True, f"asserted e = {e}, f = 1", None
            return False, f"asserted e = {e}, f = {f} needs f = 1 and e <= {p - 1}", None
    raise UnsupportedFieldError(f"unknown field hypothesis {hypothesis!r}")


def theorem2_check(hypothesis: FieldHypothesis, p: int) -> CriterionOutcome:
    """
    Checks the criterion modulo p^2: Established iff the field meets the
    residue-degree-1 hypothesis at p and condition (1) holds for p.

    Quadratic fields qualify when p splits or ramifies (e <= 2 <= p - 1).
    For p = 3 condition (1) holds vacuously. Condition (1) is tested first:
    when it fails the field description is never consulted, so an
    unsupported field is only reported for exponents that pass it.
    """
    logger.info(f"theorem2_check() function started - {hypothesis!r}, p={p}")
    require_odd_prime(p)
    if not condition1_holds(p):
        outcome = _outcome("theorem2", p, "condition1_failed", f"condition (1) fails for p = {p}")
    else:
        ok, message, case = _hypothesis1(hypothesis, p)
        reason = "established" if ok else "hypothesis1_failed"
        outcome = _outcome("theorem2", p, reason, message, case=case)
    logger.info(f"theorem2_check() function completed - {outcome.status.value} ({outcome.reason})")
    return outcome


def pure_field_family(d: int, p: int, n_limit: int) -> list[PureFieldRow]:
    """
    theorem2_check over Q(d^(1/n)) for every odd n in [3, n_limit] not divisible by p.

    With d = 3 and p = 5 every row is Established.
    """
    require_odd_prime(p)
    rows = []
    holds = condition1_holds(p)
    for n in range(3, n_limit + 1, 2):
        if n % p == 0:
            continue
        try:
            ok, case = pure_field_residue_degree_one(d, n, p)
        except UnsupportedFieldError:
            ok, case = False, None
        status = CriterionStatus.ESTABLISHED if ok and holds else CriterionStatus.NOT_ESTABLISHED
        rows.append(PureFieldRow(d=d, p=p, n=n, case=case, status=status))
    return rows
