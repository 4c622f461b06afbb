"""Tests for the code, certificate and polynomial text formats."""

from fractions import Fraction
from pathlib import Path

import pytest
import sympy as sp

from padic_codes.calculations.certificates import (
    CertificateForm,
    kissing_interval_certificate,
    trivial_tight_certificate,
)
from padic_codes.calculations.classical import RealCode
from padic_codes.calculations.codes import PAdicCode, validate_code
from padic_codes.calculations.padic import PAdicAbs, abs_p
from padic_codes.calculations.search import loosest_spec, search_max_code
from padic_codes.core.errors import FormatError
from padic_codes.io.formats import (
    format_certificate,
    format_code,
    parse_certificate_text,
    parse_code_text,
    parse_poly_tokens,
    parse_real_certificate_text,
    parse_real_entry,
)

FIXTURES = Path(__file__).parent / "fixtures"

HEADER = "prime 3\ndim 2\ncos_theta 1/2\n"


def read(name):
    return (FIXTURES / name).read_text()


def test_k4_fixture():
    """Test the p = 3 kissing fixture parses to a valid code."""
    code = parse_code_text(read("k4.code"))
    assert isinstance(code, PAdicCode)
    assert code.prime.value == 3
    assert code.size == 4
    assert code.spec.cos_theta == Fraction(1, 2)
    assert [v.values for v in code.vectors] == [(0, 1), (0, -1), (1, 0), (-1, 0)]
    assert validate_code(code).valid


@pytest.mark.parametrize(
    "text, line",
    [
        (read("truncated.code"), 7),
        (HEADER + "prime 5\n1 0\n", 4),
        (HEADER + "1 0\ndim 2\n", 5),
        (HEADER + "foo 1\n1 0\n", 4),
        (HEADER + "1 0\n1/0 1\n", 5),
        (HEADER + "1 0\nx 1\n", 5),
        ("prime 4\ndim 1\ncos_theta 1/2\n1\n", 1),
        ("prime 3\ndim 0\ncos_theta 1/2\n1\n", 2),
        ("prime 3\ndim 1\ncos_theta 3/2\n1\n", 3),
        ("prime 3\ndim 1\ntheta pi/3\n1\n", 3),
        (HEADER + "variant pq 1 1\n1 0\n", 4),
        (HEADER + "precision 0\n1 0\n", 4),
        ("prime 3\ncos_theta 1/2\n1\n", 4),
        (HEADER, 4),
    ],
)
def test_code_errors_carry_line_numbers(text, line):
    """Test malformed code files name the offending line."""
    with pytest.raises(FormatError) as info:
        parse_code_text(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}: ")


def test_comments_and_blank_lines_are_ignored():
    """Test that numbering still follows the physical lines."""
    text = "# header\n\nprime 5   # p\ndim 1\ncos_theta 1/2\n\n1\n-1\n"
    code = parse_code_text(text)
    assert code.size == 2
    with pytest.raises(FormatError) as info:
        parse_code_text(text + "1 2\n")
    assert info.value.line == 9


def test_variant_and_precision_headers():
    """Test the optional headers."""
    code = parse_code_text(HEADER + "variant pn 0 1\nprecision 4\n1 9\n")
    assert not code.variant.use_pe
    assert not code.variant.require_unit_norm
    assert code.variant.require_unit_self_product
    assert code.variant.self_product_precision == 4


def test_approximate_theta_header():
    """Test a decimal theta selects approximate mode."""
    code = parse_code_text("prime 3\ndim 1\ntheta 1.0471975511965976\n1\n")
    assert not code.spec.exact


def test_real_code_fixture():
    """Test 'prime real' and radical entries."""
    code = parse_code_text(read("hexagon.code"))
    assert isinstance(code, RealCode)
    assert code.size == 6
    assert code.vectors[1] == (sp.Rational(1, 2), sp.sqrt(3) / 2)


@pytest.mark.parametrize("token", ["__import__('os')", "exp(1)", "1/2+x", "sqrt(-1)"])
def test_real_entries_are_whitelisted(token):
    """Test that only rationals and square roots are accepted."""
    with pytest.raises(FormatError):
        parse_real_entry(token)


def test_real_entry_simplifies():
    """Test 1/sqrt(2) and sqrt(2)/2 parse to the same value."""
    assert parse_real_entry("1/sqrt(2)") == parse_real_entry("sqrt(2)/2")


def test_real_code_must_use_unit_vectors():
    """Test a non-unit real vector becomes a format error."""
    with pytest.raises(FormatError):
        parse_code_text("prime real\ndim 2\ncos_theta 1/2\n1 1\n")


def test_search_witness_round_trip(tmp_path):
    """Test format_code output parses back to the same code."""
    outcome = search_max_code(5, 2, loosest_spec(5, 1))
    path = tmp_path / "witness.code"
    path.write_text(format_code(outcome.code))
    parsed = parse_code_text(path.read_text())
    assert parsed == outcome.code
    assert validate_code(parsed).valid


def test_certificate_fixture():
    """Test the finite certificate format."""
    cert = parse_certificate_text(read("k4_trivial.cert"), 3)
    assert cert.c == 1
    assert cert.phi == {PAdicAbs.zero(3): Fraction(3), abs_p(1, 3): Fraction(-1)}
    assert format_certificate(cert) == read("k4_trivial.cert")


def test_interval_certificate_fixture():
    """Test the interval certificate format."""
    cert = parse_certificate_text(read("k4_interval.cert"), 3)
    assert cert.form is CertificateForm.INTERVAL
    assert cert == kissing_interval_certificate(4)
    assert format_certificate(cert) == read("k4_interval.cert")


def test_synthesized_certificate_text():
    """Test a built certificate formats with sorted labels."""
    cert = trivial_tight_certificate(3, [abs_p(1, 3), abs_p(3, 3)], 3)
    assert format_certificate(cert) == "c 1\nphi 0 2\nphi 3^-1 -1\nphi 3^0 -1\n"


@pytest.mark.parametrize(
    "text, line",
    [
        ("c 1\nphi 0 3\nphi 5^0 -1\n", 3),
        ("c 1\nphi 0 3\nphi 0 2\n", 3),
        ("c 1\nc 2\nphi 0 1\n", 2),
        ("c 1\nform wide\n", 2),
        ("c 1\nphi 0 1 2\n", 2),
        ("phi 0 1\n", 2),
    ],
)
def test_certificate_errors(text, line):
    """Test malformed certificates name the offending line."""
    with pytest.raises(FormatError) as info:
        parse_certificate_text(text, 3)
    assert info.value.line == line


@pytest.mark.parametrize(
    "text",
    ["c 0\nphi 0 1\n", "c 1\nphi 3^0 -1\n", "c 1\nrule 0 1\n", "c 1\nform interval\nphi 0 1\n"],
)
def test_inconsistent_certificates(text):
    """Test content errors without a specific line."""
    with pytest.raises(FormatError):
        parse_certificate_text(text, 3)


def test_real_certificate_fixture():
    """Test phi keys are exact reals."""
    phi, c = parse_real_certificate_text(read("hexagon.cert"))
    assert c == Fraction(1, 2)
    assert phi[sp.Integer(1)] == Fraction(5, 2)
    assert phi[sp.Rational(-1, 2)] == Fraction(-1, 2)
    assert len(phi) == 4


def test_poly_tokens():
    """Test ascending coefficients with an optional 'poly' keyword."""
    assert parse_poly_tokens(["poly", "1/2", "1"]) == [Fraction(1, 2), Fraction(1)]
    assert parse_poly_tokens(["-1", "0", "3"]) == [-1, 0, 3]
    with pytest.raises(FormatError):
        parse_poly_tokens(["poly"])
    with pytest.raises(FormatError):
        parse_poly_tokens(["x"])
