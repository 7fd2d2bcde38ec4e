from datetime import datetime
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from mlad.models.cooling import SummaryRow


class RunManifest(BaseModel):
  """Everything needed to reproduce one CLI run's output files."""

  command: str
  config: Dict[str, Any]
  seed: Optional[int] = None
  version: str
  outputs: List[str] = Field(default_factory=list)
  started_at: datetime
  duration_seconds: float
  summary: List[SummaryRow] = Field(default_factory=list)
