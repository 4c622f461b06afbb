"""Run configuration echoed at the top of every report."""

from typing import List, Optional

from pydantic import BaseModel, Field

# Fields that change how a run is scheduled but not what it reports
_NOT_ECHOED = {"threads"}


class RunConfig(BaseModel):
    """Parsed command-line flags.

    Rationals stay as the text the user typed so the header echoes them
    verbatim.
    """

    command: str = Field(..., description="Command path, e.g. 'search' or 'classical delsarte'")
    code: Optional[str] = Field(None, description="Code file")
    cert: Optional[str] = Field(None, description="Certificate file")
    synthesize: bool = Field(False, description="Synthesize the certificate by LP")
    prime: Optional[int] = Field(None, ge=2, description="Prime p")
    dim: Optional[int] = Field(None, ge=1, description="Dimension d")
    kissing: bool = Field(False, description="Use theta = pi/3")
    cos_theta: Optional[str] = Field(None, description="Rational cos theta")
    level: Optional[int] = Field(None, ge=0, description="Level override")
    precision: Optional[int] = Field(None, ge=1, description="Hensel precision K'")
    budget: Optional[int] = Field(None, ge=1, description="Residue tuple budget")
    degree: Optional[int] = Field(None, ge=0, description="Gegenbauer degree k")
    other_degree: Optional[int] = Field(None, ge=0, description="Second Gegenbauer degree")
    dim_param: Optional[int] = Field(None, ge=3, description="Gegenbauer parameter n")
    point: Optional[str] = Field(None, description="Evaluation point r")
    poly: Optional[List[str]] = Field(None, description="Ascending polynomial coefficients")
    output: Optional[str] = Field(None, description="Output file")
    stats: Optional[str] = Field(None, description="Statistics TSV file")
    tsv: Optional[str] = Field(None, description="Violation TSV file")
    threads: int = Field(1, ge=1, description="Worker threads for the clique search")

    def header_lines(self) -> List[str]:
        lines = []
        for name in type(self).model_fields:
            if name in _NOT_ECHOED:
                continue
            value = getattr(self, name)
            if value is None or value is False:
                continue
            if value is True:
                lines.append(f"# {name}")
            elif isinstance(value, list):
                lines.append(f"# {name} {' '.join(value)}")
            else:
                lines.append(f"# {name} {value}")
        return lines
