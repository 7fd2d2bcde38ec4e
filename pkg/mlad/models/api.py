from typing import List, Optional, Tuple

from pydantic import BaseModel

from mlad.models.cooling import (
  CycleHistogram,
  DecayModel,
  EnsembleConfig,
  Frame,
  InitialDistribution,
  SummaryRow,
)
from mlad.models.gates import GCheckResult, VerificationReport
from mlad.models.sequence import PulseCounts


class MacroInfo(BaseModel):
  name: str
  display_name: Optional[str] = None
  description: str = ''
  source: str
  uncorrected_phases: bool = False


class MacroListResponse(BaseModel):
  success: bool
  data: Optional[List[MacroInfo]] = None
  error: Optional[str] = None


class ExpandRequest(BaseModel):
  """Either DSL ``text`` or a macro ``name``."""

  text: Optional[str] = None
  name: Optional[str] = None
  omega_tau: Optional[str] = None


class ExpandResult(BaseModel):
  primitives: List[str]
  count: int
  pulse_counts: PulseCounts


class ExpandResponse(BaseModel):
  success: bool
  data: Optional[ExpandResult] = None
  error: Optional[str] = None


class VerifyAllResponse(BaseModel):
  success: bool
  data: Optional[List[VerificationReport]] = None
  error: Optional[str] = None


class VerifyResponse(BaseModel):
  success: bool
  data: Optional[VerificationReport] = None
  error: Optional[str] = None


class GCheckResponse(BaseModel):
  success: bool
  data: Optional[GCheckResult] = None
  error: Optional[str] = None


class SimulateRequest(BaseModel):
  """Partial ensemble configuration; omitted fields use config defaults."""

  atom_count: Optional[int] = None
  cycles: Optional[int] = None
  seed: Optional[int] = None
  initial_span: Optional[Tuple[float, float]] = None
  initial_distribution: Optional[InitialDistribution] = None
  decay_model: Optional[DecayModel] = None
  emission: Optional[bool] = None
  frame: Optional[Frame] = None
  window: Optional[Tuple[int, int]] = None
  bin_width: Optional[float] = None
  omega_tau: Optional[str] = None
  record_cycles: Optional[List[int]] = None


class SimulateResult(BaseModel):
  config: EnsembleConfig
  histograms: List[CycleHistogram]
  summary: List[SummaryRow]


class SimulateResponse(BaseModel):
  success: bool
  data: Optional[SimulateResult] = None
  error: Optional[str] = None
