"""Command drivers: run a calculation, build its report model, render text."""

from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import List

import pandas as pd
from pydantic import BaseModel

from padic_codes.calculations.certificates import (
    BoundResult,
    synthesize_certificate_lp,
    verify_certificate,
)
from padic_codes.calculations.classical import (
    RealCode,
    delsarte_bound,
    real_pfender_check,
    validate_real_code,
)
from padic_codes.calculations.codes import (
    PAdicCode,
    SeparationSpec,
    off_diagonal_values,
    validate_code,
)
from padic_codes.calculations.gegenbauer import (
    expand_in_gegenbauer,
    gegenbauer_eval,
    weighted_inner_product,
)
from padic_codes.calculations.padic import format_rational, parse_rational
from padic_codes.calculations.search import SearchOutcome, search_max_code
from padic_codes.core.config import settings
from padic_codes.core.errors import FormatError
from padic_codes.io.formats import (
    format_certificate,
    format_code,
    parse_certificate_text,
    parse_code_text,
    parse_poly_tokens,
    parse_real_certificate_text,
    read_text,
)
from padic_codes.models.config import RunConfig
from padic_codes.models.reports import (
    CertificateSummary,
    DelsarteSummary,
    OrthogonalityRow,
    RealPfenderSummary,
    SearchStats,
    SearchSummary,
    ValidationSummary,
    ViolationRow,
)

logger = logging.getLogger(__name__)


def _text(value) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def render_report(config: RunConfig, summary: BaseModel) -> str:
    """Header echoing the flags, then one ``key value`` line per field.

    Lists of rows become TSV blocks, lists of vectors one line each.
    """
    lines = config.header_lines()
    for name, value in summary:
        if value is None:
            continue
        if isinstance(value, list):
            if value and isinstance(value[0], BaseModel):
                lines.append(f"{name}:")
                frame = pd.DataFrame([row.model_dump() for row in value])
                lines.append(tsv_text(frame).rstrip("\n"))
            elif value and isinstance(value[0], list):
                lines += [f"{name} {' '.join(row)}" for row in value]
            else:
                lines.append(f"{name} {' '.join(_text(v) for v in value)}".rstrip())
        elif isinstance(value, dict):
            lines += [f"{name} {key} {_text(v)}" for key, v in value.items()]
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{name}:")
            lines.append(value.rstrip("\n"))
        else:
            lines.append(f"{name} {_text(value)}")
    return "\n".join(lines) + "\n"


def tsv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(sep="\t", index=False, lineterminator="\n")


def write_tsv(frame: pd.DataFrame, path: "str | Path"):
    Path(path).write_text(tsv_text(frame), encoding="utf-8")
    logger.info("✓ wrote %s", path)


def load_code(path: "str | Path") -> "PAdicCode | RealCode":
    return parse_code_text(read_text(path))


def validate_file(path: "str | Path") -> ValidationSummary:
    code = load_code(path)
    if isinstance(code, RealCode):
        report = validate_real_code(code)
        return ValidationSummary(
            kind="real",
            prime="real",
            dim=code.dim,
            size=code.size,
            separation=f"cos_theta={format_rational(code.cos_theta)}",
            valid=report.sci_ok,
            conditions={
                "SCI": "pass" if report.sci_ok else "fail",
                "SCN": "pass" if report.scn_ok else "fail",
            },
            violations=[
                ViolationRow(condition="SCI", j=j, k=k, value=value)
                for j, k, value in report.violations
            ],
        )

    report = validate_code(code)
    return ValidationSummary(
        kind="padic",
        prime=str(code.prime),
        dim=code.dim,
        size=code.size,
        separation=code.spec.describe(),
        valid=report.valid,
        indeterminate=report.indeterminate,
        conditions={name: verdict.value for name, verdict in report.conditions.items()},
        violations=[
            ViolationRow(
                condition=v.condition, j=v.j, k=v.k, value=v.value, verdict=v.verdict.value
            )
            for v in report.violations
        ],
    )


def violations_frame(summary: ValidationSummary) -> pd.DataFrame:
    columns = list(ViolationRow.model_fields)
    return pd.DataFrame([v.model_dump() for v in summary.violations], columns=columns)


def _search_spec(config: RunConfig) -> SeparationSpec:
    if config.level is not None and (config.kissing or config.cos_theta is not None):
        raise FormatError("--level replaces the separation; drop --kissing and --cos-theta")
    if config.kissing:
        return SeparationSpec.kissing()
    if config.cos_theta is not None:
        return SeparationSpec(cos_theta=parse_rational(config.cos_theta))
    if config.level is not None:
        # replaced by the loosest separation of the level
        return SeparationSpec.kissing()
    raise FormatError("search needs --kissing, --cos-theta or --level")


def run_search(config: RunConfig) -> tuple[SearchSummary, SearchStats, SearchOutcome]:
    outcome = search_max_code(
        config.prime,
        config.dim,
        _search_spec(config),
        level_override=config.level,
        precision=config.precision,
        budget=config.budget,
        threads=config.threads,
    )
    if config.output:
        Path(config.output).write_text(format_code(outcome.code), encoding="utf-8")
        logger.info("✓ witness written to %s", config.output)
    summary = SearchSummary(
        prime=outcome.prime,
        dim=outcome.dim,
        separation=outcome.spec.describe(),
        level=str(outcome.level),
        size=outcome.size,
        lower_bound_only=outcome.lower_bound_only,
        exact_code=outcome.exact_code,
        vertices=outcome.vertices,
        edges=outcome.edges,
        witness=[[str(x) for x in v.entries] for v in outcome.code.vectors],
    )
    stats = SearchStats(
        p=outcome.prime,
        d=outcome.dim,
        level=str(outcome.level),
        vertices=outcome.vertices,
        edges=outcome.edges,
        clique=outcome.size,
        nodes=outcome.node_count,
        millis=outcome.millis,
    )
    if config.stats:
        write_tsv(pd.DataFrame([stats.model_dump()]), config.stats)
    return summary, stats, outcome


def _certificate_summary(result: BoundResult, form: str, synthesized: bool) -> CertificateSummary:
    return CertificateSummary(
        code_size=result.code_size,
        form=form,
        synthesized=synthesized,
        hypotheses_ok=result.hypotheses_ok,
        sum_ok=result.sum_ok,
        pair_sum=format_rational(result.pair_sum),
        tail_ok=result.tail_ok,
        tail_failures=result.tail_failures,
        bound=format_rational(result.bound) if result.bound is not None else None,
        implied_n_cap=result.implied_n_cap,
        special_case=result.special_case,
        special_cap=result.special_cap,
    )


def run_certify(config: RunConfig) -> CertificateSummary:
    code = load_code(config.code)
    if not isinstance(code, PAdicCode):
        raise FormatError("certify needs a p-adic code; use 'classical pfender' for real codes")
    if config.synthesize:
        cert = synthesize_certificate_lp(off_diagonal_values(code), code.size, code.prime)
    else:
        if config.cert is None:
            raise FormatError("certify needs --cert or --synthesize")
        cert = parse_certificate_text(read_text(config.cert), code.prime)
    result = verify_certificate(code, cert)
    summary = _certificate_summary(result, cert.form.value, config.synthesize)
    if config.synthesize:
        text = format_certificate(cert)
        summary.certificate = text
        if config.output:
            Path(config.output).write_text(text, encoding="utf-8")
            logger.info("✓ certificate written to %s", config.output)
    return summary


def run_gegenbauer(config: RunConfig) -> str:
    r = parse_rational(config.point)
    return format_rational(gegenbauer_eval(config.degree, config.dim_param, r))


def run_delsarte(config: RunConfig) -> DelsarteSummary:
    coefficients = parse_poly_tokens(config.poly)
    report = delsarte_bound(coefficients, parse_rational(config.cos_theta), config.dim_param)
    return DelsarteSummary(
        dim_param=report.dim_param,
        cos_theta=format_rational(report.cos_theta),
        coefficients=[format_rational(a) for a in report.expansion.coefficients],
        nonpositive_ok=report.nonpositive_ok,
        coefficients_ok=report.coefficients_ok,
        failing_coefficients=report.failing_coefficients,
        value_at_one=format_rational(report.value_at_one),
        bound=format_rational(report.bound) if report.bound is not None else None,
    )


def run_real_pfender(config: RunConfig) -> RealPfenderSummary:
    code = load_code(config.code)
    if not isinstance(code, RealCode):
        raise FormatError("classical pfender needs a code file with 'prime real'")
    phi, c = parse_real_certificate_text(read_text(config.cert))
    report = real_pfender_check(code, phi, c)
    return RealPfenderSummary(
        code_size=report.code_size,
        hypotheses_ok=report.hypotheses_ok,
        sum_ok=report.sum_ok,
        pair_sum=format_rational(report.pair_sum),
        tail_ok=report.tail_ok,
        tail_failures=report.tail_failures,
        bound=format_rational(report.bound) if report.bound is not None else None,
        implied_n_cap=report.implied_n_cap,
    )


def expansion_frame(config: RunConfig) -> pd.DataFrame:
    expansion = expand_in_gegenbauer(parse_poly_tokens(config.poly), config.dim_param)
    return pd.DataFrame(
        {
            "k": list(range(len(expansion.coefficients))),
            "a_k": [format_rational(a) for a in expansion.coefficients],
        }
    )


def run_orthogonality(config: RunConfig) -> List[OrthogonalityRow]:
    j, k, n = config.degree, config.other_degree, config.dim_param
    value, nodes = weighted_inner_product(j, k, n)
    return [
        OrthogonalityRow(
            j=j,
            k=k,
            dim_param=n,
            defect=abs(value),
            nodes=nodes,
            tolerance=settings.quadrature_tolerance,
        )
    ]


def rows_frame(rows: List[BaseModel]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows])
