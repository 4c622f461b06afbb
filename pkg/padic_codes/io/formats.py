"""Line-oriented text formats for codes, certificates and polynomials.

Code file::

    prime 3              # or "prime real"
    dim 2
    cos_theta 1/2        # or "theta <radians>" (approximate mode)
    variant pe 1 1       # pe|pn, unit norm 0|1, unit self-product 0|1
    precision 6          # optional: (ii) checked modulo p^6
    0 1
    1 0

Certificate file::

    c 1
    form finite          # optional; "interval" uses threshold/rule lines
    phi 0 3
    phi 3^0 -1

Interval certificates replace the ``phi`` lines by ``threshold <b>`` and
``rule <cutoff> <value>`` lines. Real certificates use ``phi <expr> <value>``
with an exact expression such as ``-1/2`` or ``sqrt(2)/2``. Blank lines and
``#`` comments are ignored everywhere; errors carry 1-based line numbers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

import sympy as sp

from padic_codes.calculations.certificates import (
    CertificateForm,
    PfenderCertificate,
    ThresholdPiece,
)
from padic_codes.calculations.classical import RealCode, canonical
from padic_codes.calculations.codes import CodeVariant, PAdicCode, SeparationSpec
from padic_codes.calculations.padic import (
    PAdicVector,
    Prime,
    format_rational,
    parse_abs_label,
    parse_rational,
)
from padic_codes.core.errors import FormatError, PadicCodesError

_REAL_TOKEN_RE = re.compile(r"^[0-9a-z()+\-*/.^]+$")
_REAL_NAMES = {"sqrt"}
_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


def read_text(path: "str | Path") -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise FormatError(f"{path} is not UTF-8 text") from e


def _rational(token: str, line: int) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError as e:
        raise FormatError(str(e), line) from e


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise FormatError(f"{what} must be an integer, got {token!r}", line) from e


def parse_real_entry(token: str, line: int | None = None) -> sp.Expr:
    """Exact real number such as ``1/2`` or ``-sqrt(3)/2``."""
    names = set(re.findall(r"[a-z]+", token))
    if not _REAL_TOKEN_RE.match(token) or not names <= _REAL_NAMES:
        raise FormatError(f"not an exact real entry: {token!r}", line)
    try:
        value = sp.sympify(token, rational=True)
    except (sp.SympifyError, SyntaxError, TypeError) as e:
        raise FormatError(f"not an exact real entry: {token!r}", line) from e
    if not value.is_number or not value.is_real:
        raise FormatError(f"not a real number: {token!r}", line)
    return canonical(value)


def parse_code_text(text: str) -> "PAdicCode | RealCode":
    """Parse a code file; ``prime real`` yields a :class:`RealCode`."""
    header: dict[str, tuple[int, list[str]]] = {}
    rows: list[tuple[int, list[str]]] = []
    last_line = 0
    for number, tokens in _lines(text):
        last_line = number
        key = tokens[0]
        if key in ("prime", "dim", "cos_theta", "theta", "variant", "precision"):
            if rows:
                raise FormatError(f"header {key!r} after vector lines", number)
            if key in header:
                raise FormatError(f"duplicate header {key!r}", number)
            header[key] = (number, tokens[1:])
        elif key[0].isalpha() and not key.startswith("sqrt"):
            raise FormatError(f"unknown header {key!r}", number)
        else:
            rows.append((number, tokens))

    for required in ("prime", "dim"):
        if required not in header:
            raise FormatError(f"missing {required!r} header", last_line + 1)
    if ("cos_theta" in header) == ("theta" in header):
        raise FormatError("give exactly one of 'cos_theta' or 'theta'", last_line + 1)
    for key, (number, args) in header.items():
        expected = 3 if key == "variant" else 1
        if len(args) != expected:
            raise FormatError(f"{key!r} takes {expected} value(s)", number)

    dim_line, (dim_token,) = header["dim"]
    dim = _int(dim_token, dim_line, "dim")
    if dim < 1:
        raise FormatError("dim must be at least 1", dim_line)
    if not rows:
        raise FormatError("no vector lines", last_line + 1)
    for number, tokens in rows:
        if len(tokens) != dim:
            raise FormatError(f"expected {dim} entries, found {len(tokens)}", number)

    prime_line, (prime_token,) = header["prime"]
    if "cos_theta" in header:
        number, (token,) = header["cos_theta"]
        cos_theta = _rational(token, number)
        if not -1 <= cos_theta <= 1:
            raise FormatError(f"cos_theta {token} lies outside [-1, 1]", number)
        spec = SeparationSpec(cos_theta=cos_theta)
    else:
        number, (token,) = header["theta"]
        if not _DECIMAL_RE.match(token):
            raise FormatError(f"theta must be a decimal, got {token!r}", number)
        spec = SeparationSpec(theta=token)

    if prime_token == "real":
        if not spec.exact:
            raise FormatError("real codes need an exact cos_theta", prime_line)
        vectors = tuple(
            tuple(parse_real_entry(t, number) for t in tokens) for number, tokens in rows
        )
        try:
            return RealCode(dim, vectors, spec.cos_theta)
        except ValueError as e:
            raise FormatError(str(e)) from e

    try:
        prime = Prime(_int(prime_token, prime_line, "prime"))
    except PadicCodesError as e:
        raise FormatError(str(e), prime_line) from e
    variant = CodeVariant()
    if "variant" in header:
        number, (form, unit_norm, unit_self) = header["variant"]
        if form not in ("pe", "pn") or unit_norm not in ("0", "1") or unit_self not in ("0", "1"):
            raise FormatError("variant is '<pe|pn> <0|1> <0|1>'", number)
        variant = CodeVariant(form == "pe", unit_norm == "1", unit_self == "1")
    if "precision" in header:
        number, (token,) = header["precision"]
        precision = _int(token, number, "precision")
        if precision < 1:
            raise FormatError("precision must be positive", number)
        variant = variant.with_precision(precision)
    vectors = tuple(
        PAdicVector.of([_rational(t, number) for t in tokens], prime)
        for number, tokens in rows
    )
    return PAdicCode(prime, dim, vectors, spec, variant)


def format_code(code: "PAdicCode | RealCode") -> str:
    if isinstance(code, RealCode):
        lines = ["prime real", f"dim {code.dim}", f"cos_theta {format_rational(code.cos_theta)}"]
        lines += [" ".join(sp.sstr(x).replace(" ", "") for x in v) for v in code.vectors]
        return "\n".join(lines) + "\n"
    variant = code.variant
    lines = [f"prime {code.prime}", f"dim {code.dim}"]
    if code.spec.exact:
        lines.append(f"cos_theta {format_rational(code.spec.cos_theta)}")
    else:
        lines.append(f"theta {code.spec.theta}")
    lines.append(
        f"variant {'pe' if variant.use_pe else 'pn'} "
        f"{int(variant.require_unit_norm)} {int(variant.require_unit_self_product)}"
    )
    if variant.self_product_precision is not None:
        lines.append(f"precision {variant.self_product_precision}")
    lines += [str(v) for v in code.vectors]
    return "\n".join(lines) + "\n"


def parse_certificate_text(text: str, prime: "Prime | int") -> PfenderCertificate:
    """Parse a p-adic certificate; ``prime`` resolves the label ``0``."""
    c = None
    form = CertificateForm.FINITE
    phi = {}
    rule = []
    threshold = None
    last_line = 0
    for number, tokens in _lines(text):
        last_line = number
        key, args = tokens[0], tokens[1:]
        if key == "c" and len(args) == 1:
            if c is not None:
                raise FormatError("duplicate 'c' line", number)
            c = _rational(args[0], number)
        elif key == "form" and len(args) == 1:
            try:
                form = CertificateForm(args[0])
            except ValueError as e:
                raise FormatError(f"unknown certificate form {args[0]!r}", number) from e
        elif key == "phi" and len(args) == 2:
            try:
                label = parse_abs_label(args[0], prime)
            except (ValueError, PadicCodesError) as e:
                raise FormatError(str(e), number) from e
            if label in phi:
                raise FormatError(f"phi given twice at {args[0]}", number)
            phi[label] = _rational(args[1], number)
        elif key == "threshold" and len(args) == 1:
            threshold = _rational(args[0], number)
        elif key == "rule" and len(args) == 2:
            rule.append(ThresholdPiece(_rational(args[0], number), _rational(args[1], number)))
        else:
            raise FormatError(f"unrecognised certificate line {' '.join(tokens)!r}", number)
    if c is None:
        raise FormatError("missing 'c' line", last_line + 1)
    if form is CertificateForm.FINITE and (rule or threshold is not None):
        raise FormatError("rule and threshold lines need 'form interval'")
    if form is CertificateForm.INTERVAL and phi:
        raise FormatError("interval certificates use rule lines, not phi")
    try:
        return PfenderCertificate(
            c=c, form=form, phi=phi, rule=tuple(rule), threshold=threshold
        )
    except PadicCodesError as e:
        raise FormatError(str(e)) from e


def format_certificate(cert: PfenderCertificate) -> str:
    lines = [f"c {format_rational(cert.c)}"]
    if cert.form is CertificateForm.INTERVAL:
        lines.append("form interval")
        if cert.threshold is not None:
            lines.append(f"threshold {format_rational(cert.threshold)}")
        lines += [
            f"rule {format_rational(p.cutoff)} {format_rational(p.value)}"
            for p in cert.rule
        ]
    else:
        lines += [
            f"phi {key.label()} {format_rational(value)}"
            for key, value in sorted(cert.phi.items(), key=lambda kv: kv[0])
        ]
    return "\n".join(lines) + "\n"


def parse_real_certificate_text(text: str) -> tuple[dict[sp.Expr, Fraction], Fraction]:
    """``c <a/b>`` and ``phi <expr> <a/b>`` lines of a real certificate."""
    c = None
    phi: dict[sp.Expr, Fraction] = {}
    last_line = 0
    for number, tokens in _lines(text):
        last_line = number
        key, args = tokens[0], tokens[1:]
        if key == "c" and len(args) == 1:
            c = _rational(args[0], number)
        elif key == "phi" and len(args) == 2:
            point = parse_real_entry(args[0], number)
            if point in phi:
                raise FormatError(f"phi given twice at {args[0]}", number)
            phi[point] = _rational(args[1], number)
        else:
            raise FormatError(f"unrecognised certificate line {' '.join(tokens)!r}", number)
    if c is None:
        raise FormatError("missing 'c' line", last_line + 1)
    return phi, c


def parse_poly_tokens(tokens: Sequence[str]) -> list[Fraction]:
    """Ascending rational coefficients; a leading ``poly`` keyword is allowed."""
    tokens = list(tokens)
    if tokens and tokens[0] == "poly":
        tokens = tokens[1:]
    if not tokens:
        raise FormatError("a polynomial needs at least one coefficient")
    coefficients = []
    for token in tokens:
        try:
            coefficients.append(parse_rational(token))
        except ValueError as e:
            raise FormatError(str(e)) from e
    return coefficients
