"""Calculation modules for p-adic and real spherical codes."""

from padic_codes.calculations.certificates import (
    PfenderCertificate,
    certificate_bound,
    synthesize_certificate_lp,
    trivial_tight_certificate,
    verify_certificate,
)
from padic_codes.calculations.classical import (
    delsarte_bound,
    real_pfender_check,
    validate_real_code,
)
from padic_codes.calculations.codes import (
    PAdicCode,
    SeparationSpec,
    effective_level,
    validate_code,
)
from padic_codes.calculations.search import (
    exhaustive_max_code,
    kissing_number,
    search_max_code,
)

__all__ = [
    "PAdicCode",
    "PfenderCertificate",
    "SeparationSpec",
    "certificate_bound",
    "delsarte_bound",
    "effective_level",
    "exhaustive_max_code",
    "kissing_number",
    "real_pfender_check",
    "search_max_code",
    "synthesize_certificate_lp",
    "trivial_tight_certificate",
    "validate_code",
    "validate_real_code",
    "verify_certificate",
]
