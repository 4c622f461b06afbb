"""Tests for bound certificates, the certificate LP and the bound theorem."""

import random
from fractions import Fraction

import pytest

from padic_codes.calculations.certificates import (
    CertificateForm,
    PfenderCertificate,
    ThresholdPiece,
    certificate_bound,
    kissing_interval_certificate,
    synthesize_certificate_lp,
    trivial_tight_certificate,
    verify_certificate,
)
from padic_codes.calculations.codes import (
    CodeVariant,
    PAdicCode,
    SeparationSpec,
    off_diagonal_values,
)
from padic_codes.calculations.padic import PAdicAbs, PAdicVector, abs_p
from padic_codes.calculations.search import search_max_code
from padic_codes.core.errors import (
    CertificateError,
    PrimeMismatchError,
    SeparationMismatchError,
)

KISSING = SeparationSpec.kissing()
K4 = [(0, 1), (0, -1), (1, 0), (-1, 0)]


def make_code(rows, p=3, spec=KISSING):
    vectors = tuple(PAdicVector.of(row, p) for row in rows)
    return PAdicCode(p, len(rows[0]), vectors, spec)


def finite_certificate(c, phi0, values, p=3):
    phi = {PAdicAbs.zero(p): Fraction(phi0)}
    phi.update({key: Fraction(v) for key, v in values.items()})
    return PfenderCertificate(c=Fraction(c), phi=phi)


@pytest.fixture(scope="module")
def code_pool():
    """Valid codes of several primes and sizes, with every sub-code."""
    codes = [make_code(K4), make_code([(1,), (-1,)])]
    for p, dim in ((5, 2), (7, 2), (3, 3)):
        codes.append(search_max_code(p, dim, KISSING).code)
    pool = []
    for code in codes:
        for size in range(1, code.size + 1):
            pool.append(
                PAdicCode(
                    code.prime,
                    code.dim,
                    code.vectors[:size],
                    code.spec,
                    code.variant,
                )
            )
    return pool


def test_trivial_certificate_is_tight_for_k4():
    """Test c = 1, phi(0) = 3, phi(1) = -1: the pair sum is 0 and the bound 4."""
    code = make_code(K4)
    cert = trivial_tight_certificate(4, off_diagonal_values(code), 3)
    result = verify_certificate(code, cert)
    assert result.hypotheses_ok
    assert result.pair_sum == 0
    assert result.bound == 4
    assert result.implied_n_cap == 4
    assert not result.special_case


def test_broken_certificate_fails_the_pair_sum():
    """Test phi(0) = 2: 4 * 2 - 12 = -4 < 0."""
    code = make_code(K4)
    cert = finite_certificate(1, 2, {abs_p(1, 3): -1})
    result = verify_certificate(code, cert)
    assert not result.sum_ok
    assert result.pair_sum == -4
    assert result.tail_ok
    assert not result.hypotheses_ok
    assert result.bound is None


def test_tail_failure_is_reported_with_its_value():
    """Test that phi(v) + c > 0 names the offending value."""
    code = make_code(K4)
    cert = finite_certificate(1, 3, {abs_p(1, 3): Fraction(-1, 2)})
    result = verify_certificate(code, cert)
    assert not result.tail_ok
    assert result.tail_failures == ["3^0"]


def test_undefined_phi_value_is_an_error():
    """Test that a finite certificate must cover every off-diagonal value."""
    cert = trivial_tight_certificate(4, [], 3)
    with pytest.raises(CertificateError):
        verify_certificate(make_code(K4), cert)


def test_invalid_code_is_refused():
    """Test that certificates are only checked against valid codes."""
    code = make_code([(0, 1), (1, 0), (0, 1)])
    with pytest.raises(CertificateError):
        verify_certificate(code, trivial_tight_certificate(3, [abs_p(1, 3)], 3))


def test_prime_mismatch():
    """Test a p = 5 certificate against a p = 3 code."""
    with pytest.raises(PrimeMismatchError):
        verify_certificate(make_code(K4), trivial_tight_certificate(1, [], 5))


@pytest.mark.parametrize(
    "kwargs",
    [
        {"c": 0, "phi": {PAdicAbs.zero(3): Fraction(1)}},
        {"c": 1, "phi": {abs_p(1, 3): Fraction(-1)}},
        {"c": 1, "form": CertificateForm.INTERVAL, "rule": ()},
        {
            "c": 1,
            "form": CertificateForm.INTERVAL,
            "rule": (ThresholdPiece(Fraction(1), Fraction(-1)),),
        },
        {
            "c": 1,
            "form": CertificateForm.INTERVAL,
            "rule": (
                ThresholdPiece(Fraction(0), Fraction(2)),
                ThresholdPiece(Fraction(1), Fraction(-1)),
                ThresholdPiece(Fraction(1), Fraction(-2)),
            ),
        },
    ],
)
def test_malformed_certificates(kwargs):
    """Test construction checks on c, phi(0) and the threshold rule."""
    with pytest.raises(CertificateError):
        PfenderCertificate(**kwargs)


@pytest.mark.parametrize(
    "c, phi0, expected",
    [(1, 3, 4), (Fraction(1, 2), 1, 3), (2, 0, 1), (Fraction(1, 3), Fraction(5, 3), 6)],
)
def test_certificate_bound(c, phi0, expected):
    """Test (phi(0) + c) / c."""
    assert certificate_bound(finite_certificate(c, phi0, {})) == expected


def test_special_case_cap():
    """Test phi(0) + c <= 1 also reports floor(1/c)."""
    code = make_code([(1, 0)])
    result = verify_certificate(code, finite_certificate(Fraction(1, 2), 0, {}))
    assert result.bound == 1
    assert result.special_case
    assert result.special_cap == 2
    assert result.implied_n_cap <= result.special_cap


@pytest.mark.parametrize(
    "rows, p, expected_phi0",
    [
        (K4, 3, 3),
        ([(1, 0)], 3, 0),
        ([(1, 0), (0, 1)], 3, 1),
        ([(1,), (-1,)], 5, 1),
    ],
)
def test_lp_synthesis_is_tight(rows, p, expected_phi0):
    """Test that the LP optimum is phi(0) = n - 1 and the bound is n."""
    code = make_code(rows, p=p)
    cert = synthesize_certificate_lp(off_diagonal_values(code), code.size, p)
    assert cert.phi_zero == expected_phi0
    result = verify_certificate(code, cert)
    assert result.hypotheses_ok
    assert result.bound == code.size


@pytest.mark.parametrize("p, dim", [(3, 2), (5, 2), (7, 2), (3, 3), (5, 1)])
def test_search_witnesses_are_certified_tight(p, dim):
    """Test that every kissing witness gets a certificate equal to its size."""
    outcome = search_max_code(p, dim, KISSING)
    code = outcome.code
    cert = synthesize_certificate_lp(off_diagonal_values(code), code.size, p)
    assert verify_certificate(code, cert).bound == outcome.size


def test_interval_certificate_for_kissing():
    """Test phi = 3 on [0, 1) and -1 on [1, inf) for the p = 3 kissing code."""
    code = make_code(K4)
    cert = kissing_interval_certificate(4)
    assert cert.value_at(PAdicAbs.zero(3)) == 3
    assert cert.value_at(abs_p(1, 3)) == -1
    assert cert.value_at(abs_p(3, 3)) == 3
    result = verify_certificate(code, cert)
    assert result.hypotheses_ok
    assert result.bound == 4


def test_interval_tail_failure():
    """Test that a non-negative piece above the threshold fails (ii)."""
    cert = PfenderCertificate(
        c=Fraction(1),
        form=CertificateForm.INTERVAL,
        rule=(
            ThresholdPiece(Fraction(0), Fraction(3)),
            ThresholdPiece(Fraction(1), Fraction(-1)),
            ThresholdPiece(Fraction(3), Fraction(0)),
        ),
        threshold=Fraction(1),
    )
    result = verify_certificate(make_code(K4), cert)
    assert result.tail_failures == ["[3, inf)"]
    assert not result.hypotheses_ok


def test_interval_threshold_must_match_the_code():
    """Test b = 2 for cos theta = 0 against a certificate built for b = 1."""
    code = make_code([(1, 0)], spec=SeparationSpec(cos_theta=Fraction(0)))
    with pytest.raises(SeparationMismatchError):
        verify_certificate(code, kissing_interval_certificate(1))


def test_interval_needs_an_exact_separation():
    """Test that approximate theta cannot feed the interval form."""
    code = make_code([(1, 0)], spec=SeparationSpec(theta="1.2"))
    with pytest.raises(SeparationMismatchError):
        verify_certificate(code, kissing_interval_certificate(1))


@pytest.mark.parametrize(
    "variant",
    [CodeVariant(use_pe=False), CodeVariant(require_unit_self_product=False)],
)
def test_certificates_need_pe_codes_with_unit_self_products(variant):
    """Test that codes outside (PE) with unit self-products are refused."""
    rows = [
        (Fraction(-31, 33), Fraction(-8, 33), Fraction(-8, 33)),
        (Fraction(-12, 13), Fraction(-3, 13), Fraction(4, 13)),
    ]
    vectors = tuple(PAdicVector.of(row, 5) for row in rows)
    code = PAdicCode(5, 3, vectors, SeparationSpec(cos_theta=Fraction(1, 2)), variant)
    with pytest.raises(CertificateError):
        verify_certificate(code, kissing_interval_certificate(2))


def _random_fraction(rng, low, high):
    return Fraction(rng.randint(low * 12, high * 12), rng.randint(1, 12))


def _random_certificate(rng, code):
    """phi(v) <= -c on the code's values and phi(0) near the feasibility edge."""
    values = off_diagonal_values(code)
    c = Fraction(rng.randint(1, 20), rng.randint(1, 10))
    phi = {v: -c - abs(_random_fraction(rng, 0, 3)) for v in values}
    if rng.random() < 0.2:
        # occasionally break (ii)
        for v in phi:
            phi[v] = -c + Fraction(1, 5)
            break
    needed = -sum((values[v] * phi[v] for v in values), Fraction(0)) / code.size
    phi0 = needed + _random_fraction(rng, -1, 2)
    return finite_certificate(c, phi0, phi, code.prime.value)


def test_bound_never_falls_below_code_size(code_pool):
    """Test n <= bound on 10,000 random (code, certificate) pairs."""
    rng = random.Random(2024)
    feasible = 0
    for _ in range(10_000):
        code = rng.choice(code_pool)
        result = verify_certificate(code, _random_certificate(rng, code))
        if result.hypotheses_ok:
            feasible += 1
            assert code.size <= result.bound
    assert feasible > 1000


@pytest.mark.parametrize("factor", [Fraction(1, 7), Fraction(3), Fraction(22, 5)])
def test_scaling_leaves_verdict_and_bound_unchanged(code_pool, factor):
    """Test (phi, c) -> (l phi, l c) on 1,000 random certificates."""
    rng = random.Random(77)
    for _ in range(1000):
        code = rng.choice(code_pool)
        cert = _random_certificate(rng, code)
        scaled = cert.scaled(factor)
        assert certificate_bound(scaled) == certificate_bound(cert)
        original = verify_certificate(code, cert)
        rescaled = verify_certificate(code, scaled)
        assert rescaled.hypotheses_ok == original.hypotheses_ok
        assert rescaled.pair_sum == factor * original.pair_sum
        assert rescaled.bound == original.bound
