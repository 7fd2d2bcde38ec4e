from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel

from mlad.models.sequence import PulseCounts

EquivalenceClass = Literal['global', 'diagonal', 'basis_phase']

# Strongest first.
EQUIVALENCE_ORDER: List[EquivalenceClass] = ['global', 'diagonal', 'basis_phase']


@dataclass(frozen=True)
class IdealGate:
  """Logical gate on 2**qubit_span states; ``unitary[new, old]``.

  State value v reads Q_{n-1}...Q_0 with Q_0 the electronic level.
  """

  name: str
  qubit_span: int
  unitary: np.ndarray = field(repr=False)

  def __post_init__(self):
    entries = np.array(self.unitary, dtype=complex)
    size = 2**self.qubit_span
    if entries.shape != (size, size):
      raise ValueError(f'{self.name}: expected {size}x{size} unitary, got {entries.shape}')
    entries.setflags(write=False)
    object.__setattr__(self, 'unitary', entries)

  @property
  def size(self) -> int:
    return 2**self.qubit_span

  def tiled(self, dim: int) -> np.ndarray:
    """Block-diagonal copy acting on every aligned block of a ``dim`` window."""
    if dim % self.size:
      raise ValueError(f'{self.name}: dim {dim} is not a multiple of {self.size}')
    return np.kron(np.eye(dim // self.size), self.unitary)


class VerificationReport(BaseModel):
  """Outcome of comparing one composed opcode with its ideal gate.

  Angles are in units of pi. ``residual_phases`` is the diagonal D with
  U = D V (diagonal class); ``left_phases``/``right_phases`` are D1, D2 with
  U = D1 V D2 (basis_phase class). Both are reported on the first checked dim.
  """

  opcode: str
  display_name: Optional[str] = None
  nominal_class: EquivalenceClass
  equivalence: Optional[EquivalenceClass] = None
  passed: bool
  flagged: bool = False
  fidelity: float
  fidelities: Dict[int, float]
  global_phase_angle: float
  residual_phases: Optional[List[float]] = None
  left_phases: Optional[List[float]] = None
  right_phases: Optional[List[float]] = None
  window_stable: bool
  dims: List[int]
  primitive_count: int
  pulse_counts: PulseCounts
  reference_pulse_counts: Optional[Dict[str, int]] = None
  pulse_count_note: Optional[str] = None


class GCheckResult(BaseModel):
  """Open-window comparison of the basic G sequence with exact kinetic phases."""

  theta_g: str
  omega_tau: str
  literal_g: bool = False
  window: List[int]
  block: List[int]
  fidelity: float
  global_phase_angle: float
  passed: bool
