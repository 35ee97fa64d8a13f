import pytest
import sympy
from pydantic import TypeAdapter

from fermat_first_case.criteria import (
    AssertedHypothesis,
    CriterionStatus,
    FieldHypothesis,
    PureFieldCase,
    PureFieldHypothesis,
    QuadraticHypothesis,
    SearchReason,
    Theorem1SearchReport,
    Theorem1Witness,
    TotallyRamifiedHypothesis,
    condition1_check,
    condition1_holds,
    condition1_violations,
    corollary2_check,
    pure_field_family,
    pure_field_residue_degree_one,
    search_exponents,
    sophie_germain_check,
    theorem1_check,
    theorem1_search,
    theorem1_search_report,
    theorem2_check,
)
from fermat_first_case.errors import NotCubefreeError, NotPrimeError, UnsupportedFieldError, WordOverflowError
from fermat_first_case.quad_field import make_field

CONDITION1_PRIMES_BELOW_150 = [3, 5, 11, 17, 23, 29, 41, 47, 53, 71, 89, 101, 107, 113, 131, 137, 149]


@pytest.fixture(scope="module")
def gaussian():
    return make_field(-1)


def test_theorem1_examples(gaussian):
    outcome = theorem1_check(gaussian, 3, 4)
    assert outcome.status is CriterionStatus.ESTABLISHED
    assert outcome.witness == Theorem1Witness(p=3, n=4, q=13)

    outcome = theorem1_check(gaussian, 5, 4)
    assert outcome.status is CriterionStatus.NOT_ESTABLISHED
    assert outcome.reason == "q_not_prime"

    assert not theorem1_check(make_field(-3), 5, 2).established


def test_theorem1_rejects_bad_exponents(gaussian):
    assert theorem1_check(gaussian, 3, 6).reason == "n_multiple_of_six"
    assert theorem1_check(gaussian, 3, 0).reason == "n_not_positive"
    with pytest.raises(NotPrimeError):
        theorem1_check(gaussian, 9, 4)
    with pytest.raises(NotPrimeError):
        theorem1_check(gaussian, 2, 4)


def test_theorem1_reports_word_overflow(gaussian):
    p = 2**61 - 1
    with pytest.raises(WordOverflowError):
        theorem1_check(gaussian, p, 4)


def test_theorem1_class_number_gate():
    # h(Q(sqrt(-23))) = 3
    K = make_field(-23)
    assert K.h == 3
    for n in (2, 4, 8, 10):
        outcome = theorem1_check(K, 3, n)
        assert outcome.reason == "class_number_divisible"
    assert theorem1_search(K, 3) is None


def test_search_exponents():
    assert list(search_exponents(20)) == [2, 4, 8, 10, 14, 16, 20]


@pytest.mark.parametrize("p, n", [(3, 4), (19, 40), (31, 76), (97, 4)])
def test_theorem1_search_over_gaussian_field(gaussian, p, n):
    witness = theorem1_search(gaussian, p)
    assert witness.n == n
    assert witness.q == n * p + 1


def test_search_report_when_cap_too_small(gaussian):
    report = theorem1_search_report(gaussian, 19, n_max=38)
    assert report.exhausted
    assert report.reason is SearchReason.EXHAUSTED
    assert report.witness is None
    assert report.n_cap == 38


def test_search_report_when_class_number_divisible():
    report = theorem1_search_report(make_field(-23), 3)
    assert report.reason is SearchReason.CLASS_NUMBER_DIVISIBLE
    assert not report.exhausted
    assert report.witness is None


def test_search_report_with_witness(gaussian):
    report = theorem1_search_report(gaussian, 19)
    assert report.reason is SearchReason.ESTABLISHED
    assert not report.exhausted
    assert report.witness == Theorem1Witness(p=19, n=40, q=761)


def test_search_report_rejects_inconsistent_reason():
    with pytest.raises(ValueError):
        Theorem1SearchReport(d=-23, p=3, n_cap=10, exhausted=True, reason=SearchReason.CLASS_NUMBER_DIVISIBLE)
    with pytest.raises(ValueError):
        Theorem1SearchReport(d=-1, p=19, n_cap=38, exhausted=False, reason=SearchReason.EXHAUSTED)
    with pytest.raises(ValueError):
        Theorem1SearchReport(d=-1, p=19, n_cap=100, exhausted=False, reason=SearchReason.ESTABLISHED)


def test_sophie_germain_examples(gaussian):
    outcome = sophie_germain_check(make_field(-7), 5)
    assert outcome.established
    assert outcome.witness.q == 11
    assert outcome.criterion == "germain"

    outcome = sophie_germain_check(gaussian, 5)
    assert not outcome.established
    assert outcome.reason == "q_not_split"


@pytest.mark.parametrize("d", [-1, -2, -7, -11])
def test_sophie_germain_is_theorem1_at_two(d):
    K = make_field(d)
    for p in sympy.primerange(3, 200):
        assert sophie_germain_check(K, p).status == theorem1_check(K, p, 2).status


@pytest.mark.parametrize("p, n", [(3, 4), (5, 8), (7, 4)])
def test_corollary2_examples(p, n):
    outcome = corollary2_check(p)
    assert outcome.established
    assert outcome.witness.n == n


def test_corollary2_without_listed_exponent():
    # 4*19+1 = 77, 8*19+1 = 153 and 16*19+1 = 305 are all composite
    outcome = corollary2_check(19)
    assert not outcome.established
    assert outcome.reason == "no_listed_exponent"


def test_condition1_examples():
    report = condition1_check(5)
    assert report.holds and report.witnesses == []
    assert condition1_check(3).holds
    report = condition1_check(7)
    assert not report.holds
    assert 2 in report.witnesses


def test_condition1_prime_list_below_150():
    holds = [p for p in sympy.primerange(3, 150) if condition1_holds(p)]
    assert holds == CONDITION1_PRIMES_BELOW_150


def test_condition1_holds_matches_report():
    for p in sympy.primerange(3, 400):
        assert condition1_holds(p) == condition1_check(p).holds


def test_condition1_fails_for_primes_one_mod_three():
    for p in sympy.primerange(5, 1000):
        if p % 3 == 1:
            assert not condition1_holds(p), p


def test_extended_violations_are_symmetric():
    for p in sympy.primerange(3, 500):
        violations = set(condition1_violations(p, p - 2))
        assert violations == {p - 1 - a for a in violations}, p
        if (p - 1) // 2 in violations:
            assert 1 in violations, p


def test_pure_field_cases():
    assert pure_field_residue_degree_one(3, 7, 5) == (True, PureFieldCase.UNRAMIFIED)
    assert pure_field_residue_degree_one(2, 9, 5) == (True, PureFieldCase.CONGRUENT_EXPONENT)
    assert pure_field_residue_degree_one(12, 3, 5) == (True, PureFieldCase.CUBIC)
    assert pure_field_residue_degree_one(2, 2, 5) == (False, PureFieldCase.UNRAMIFIED)
    with pytest.raises(UnsupportedFieldError):
        pure_field_residue_degree_one(5, 4, 5)
    with pytest.raises(NotCubefreeError):
        pure_field_residue_degree_one(16, 3, 5)


def test_pure_field_radicand_need_not_be_squarefree():
    assert pure_field_residue_degree_one(4, 5, 7) == (True, PureFieldCase.UNRAMIFIED)
    assert pure_field_residue_degree_one(4, 5, 17) == (True, PureFieldCase.UNRAMIFIED)
    # the cubes mod 7 are 0, 1 and 6
    assert pure_field_residue_degree_one(4, 3, 7) == (False, PureFieldCase.UNRAMIFIED)
    # 9 = 1 mod 4 but 4 is a square, so the root test decides
    assert pure_field_residue_degree_one(4, 9, 5) == (True, PureFieldCase.UNRAMIFIED)
    assert pure_field_residue_degree_one(12, 9, 5) == (True, PureFieldCase.UNRAMIFIED)


def test_pure_field_unramified_matches_root_count():
    for p in sympy.primerange(3, 60):
        for d in (2, 3, 4, 8, 12, 18, 25, -4, -12):
            for n in range(2, 13):
                if n == 3 and p >= 5 and p % 3 == 2:
                    continue
                if (d * n) % p == 0:
                    continue
                ok, _ = pure_field_residue_degree_one(d, n, p)
                assert ok == any((pow(x, n, p) - d) % p == 0 for x in range(p)), (d, n, p)


def test_theorem2_end_to_end():
    assert theorem2_check(PureFieldHypothesis(d=3, n=7), 5).established
    assert theorem2_check(TotallyRamifiedHypothesis(degree=4), 5).established
    outcome = theorem2_check(PureFieldHypothesis(d=3, n=7), 7)
    assert not outcome.established
    assert outcome.reason == "condition1_failed"


def test_theorem2_over_pure_field_with_square_radicand():
    outcome = theorem2_check(PureFieldHypothesis(d=4, n=5), 17)
    assert outcome.established
    assert outcome.case is PureFieldCase.UNRAMIFIED


def test_theorem2_hypothesis_gates():
    outcome = theorem2_check(AssertedHypothesis(e=5, f=1), 5)
    assert outcome.reason == "hypothesis1_failed"
    assert theorem2_check(AssertedHypothesis(e=4, f=1), 5).established
    assert not theorem2_check(TotallyRamifiedHypothesis(degree=5), 5).established
    # 5 splits in Q(i), 11 is inert, 5 ramifies in Q(sqrt(5))
    assert theorem2_check(QuadraticHypothesis(d=-1), 5).established
    assert not theorem2_check(QuadraticHypothesis(d=-1), 11).established
    assert theorem2_check(QuadraticHypothesis(d=5), 5).established


def test_theorem2_reports_pure_case():
    outcome = theorem2_check(PureFieldHypothesis(d=3, n=7), 5)
    assert outcome.case is PureFieldCase.UNRAMIFIED


def test_field_hypothesis_dispatch():
    adapter = TypeAdapter(FieldHypothesis)
    hypothesis = adapter.validate_python({"kind": "pure", "d": 3, "n": 7})
    assert hypothesis == PureFieldHypothesis(d=3, n=7)
    with pytest.raises(ValueError):
        PureFieldHypothesis(d=1, n=3)


def test_pure_field_family_is_established_for_three_at_five():
    rows = pure_field_family(3, 5, 49)
    assert [row.n for row in rows] == [n for n in range(3, 50, 2) if n % 5]
    assert all(row.status is CriterionStatus.ESTABLISHED for row in rows)
    assert rows[0].case is PureFieldCase.CUBIC


def test_gaussian_rational_field_never_succeeds_for_cube_roots():
    K = make_field(-3)
    for p in sympy.primerange(5, 100):
        assert theorem1_search(K, p, n_max=200) is None, p
