"""Pydantic schemas for result records and corpus items."""

from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict


class ResultRecord(BaseModel):
    """Envelope around every command result written by the CLI."""
    model_config = ConfigDict(frozen=True)

    tool: str
    version: str
    command: str
    seed: int
    result: Any


class CorpusItem(BaseModel):
    """One generated corpus entry: the object, how it was made and its certificate."""
    item_id: str
    domain: str
    kind: str
    payload: Dict[str, Any]
    certificate: Optional[str] = None
    expected_stable: Optional[bool] = None
    curve_svg: Optional[str] = None
