import math
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from mlad.errors import EnsembleConfigError

DecayModel = Literal['uniform', 'dipole']
InitialDistribution = Literal['flat', 'even_integers']
Frame = Literal['register', 'ladder']

# Ladder indices an atom may move per cooling cycle, and edge indices kept clear.
BLOCK = 8
EDGE = 2


class EnsembleConfig(BaseModel):
  """Parameters of one Monte Carlo cooling run.

  Momenta are in photon recoils. ``window`` is the ladder index range every
  atom is simulated on; when unset it is derived from the span and the cycle
  count. In the ``register`` frame each atom is moved back by whole blocks of
  eight after every cycle so that it stays in the block around the RR3 fixed
  point, and recorded momenta are read modulo the block in [origin - 4,
  origin + 4). In the ``ladder`` frame atoms keep their absolute momenta.
  """

  atom_count: int = Field(gt=0)
  cycles: int = Field(ge=0)
  seed: int = Field(ge=0, lt=2**64)
  initial_span: Tuple[float, float] = (0.0, 8.0)
  initial_distribution: InitialDistribution = 'flat'
  decay_model: DecayModel = 'uniform'
  emission: bool = True
  frame: Frame = 'register'
  window: Optional[Tuple[int, int]] = None
  bin_width: float = Field(default=0.25, gt=0)
  omega_tau: str = '5/2'
  chunk_size: int = Field(default=256, gt=0)
  threads: Optional[int] = Field(default=None, gt=0)
  record_cycles: Optional[List[int]] = None

  @field_validator('omega_tau', mode='before')
  @classmethod
  def _rational_text(cls, value: Any) -> str:
    try:
      return str(Fraction(str(value)))
    except (ValueError, ZeroDivisionError) as e:
      raise ValueError(f'omega_tau must be a rational, got {value!r}') from e

  @model_validator(mode='after')
  def _check_geometry(self) -> 'EnsembleConfig':
    lo, hi = self.initial_span
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
      raise ValueError(f'initial_span must be a finite interval, got {self.initial_span}')
    if self.window is not None:
      n_min, n_max = self.window
      need_min, need_max = self.required_window
      if n_min > need_min or n_max < need_max:
        raise ValueError(
          f'window {self.window} too narrow for span {self.initial_span} over '
          f'{self.cycles} cycles; needs at least ({need_min}, {need_max})'
        )
    if self.record_cycles is not None:
      bad = [c for c in self.record_cycles if not 0 <= c <= self.cycles]
      if bad:
        raise ValueError(f'record_cycles outside 0..{self.cycles}: {bad}')
    return self

  @property
  def required_window(self) -> Tuple[int, int]:
    """Smallest window that keeps every atom clear of the edges for all cycles."""
    lo, hi = self.initial_span
    top = lo + 6 if self.initial_distribution == 'even_integers' else hi
    reach = BLOCK * (self.cycles + 1) + EDGE
    return 2 * math.floor(lo / 2) - reach, 2 * math.floor(top / 2) + 1 + reach

  @property
  def ladder_window(self) -> Tuple[int, int]:
    return self.window if self.window is not None else self.required_window

  @property
  def register_origin(self) -> int:
    """First index of the eight-block holding the span's lower end."""
    return BLOCK * math.floor(self.initial_span[0] / BLOCK)

  @property
  def omega_tau_fraction(self) -> Fraction:
    return Fraction(self.omega_tau)

  @property
  def recorded(self) -> List[int]:
    if self.record_cycles is None:
      return list(range(self.cycles + 1))
    return sorted(set(self.record_cycles))

  @classmethod
  def from_settings(cls, defaults: Dict[str, Any], **overrides: Any) -> 'EnsembleConfig':
    """Fold non-None overrides over a defaults section.

    Raises:
        EnsembleConfigError: the merged values are invalid
    """
    merged = dict(defaults)
    merged.update({key: value for key, value in overrides.items() if value is not None})
    try:
      return cls(**merged)
    except ValidationError as e:
      raise EnsembleConfigError(str(e)) from e


class HistogramBin(BaseModel):
  center: float
  density: float


class DistributionStats(BaseModel):
  mean: float
  std: float
  iqr: float
  std_error: float = 0.0


class CycleHistogram(BaseModel):
  """Momentum density after ``cycle`` cooling cycles (cycle 0 is the initial draw)."""

  cycle: int
  atom_count: int
  bin_width: float
  bins: List[HistogramBin]
  stats: Optional[DistributionStats] = None


class SummaryRow(BaseModel):
  cycle: int
  mean: float
  std: float
  iqr: float
