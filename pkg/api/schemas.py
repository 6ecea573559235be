"""
Pydantic models for carpetcalc report documents
"""
from typing import Any, Dict, List, Literal, Optional, Type, TypeVar

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from lib.config import Config
from lib.errors import UsageError


# ============================================================================
# Command Schemas
# ============================================================================

OutputFormat = Literal["json", "text", "tsv"]
CommandName = Literal["cohomology", "carpet", "sweep", "join", "lattice"]


class CommandEcho(BaseModel):
    """The command and parameters a report was produced from"""
    model_config = ConfigDict(frozen=True)

    command: CommandName
    params: Dict[str, Any] = Field(default_factory=dict, description="Parsed command parameters")
    format: OutputFormat = Field(default="json")


# ============================================================================
# Report Schemas
# ============================================================================

class Provenance(BaseModel):
    """Where a reported value comes from"""
    model_config = ConfigDict(frozen=True)

    path: str = Field(..., description="Dotted path into results, e.g. 'smoothness.chi_normal'")
    source: Literal["paper", "derived"] = Field(..., description="Asserted in print, or derived here")
    note: str = Field(default="")


class ReportDocument(BaseModel):
    """Complete output of one carpetcalc command"""
    model_config = ConfigDict(frozen=True)

    schema_version: str = Field(default=Config.SCHEMA_VERSION)
    command: CommandEcho
    results: Dict[str, Any] = Field(..., description="JSON-ready records from the services")
    provenance: List[Provenance] = Field(default_factory=list)
    table: Optional[List[Dict[str, Any]]] = Field(
        default=None, description="Row records for commands with tabular output"
    )


# ============================================================================
# Parameter parsing
# ============================================================================

ParamModel = TypeVar("ParamModel", bound=BaseModel)


def parse_params(model: Type[ParamModel], **values: Any) -> ParamModel:
    """Build a parameter model from command-line values; bad values are a UsageError."""
    try:
        return model(**values)
    except ValidationError as e:
        raise UsageError(f"invalid parameters: {e.errors()[0]['msg']}")
