"""Value types of the momentum ladder: states, primitives and operators.

Angles are exact ``Fraction`` multiples of pi throughout; they only become
floating point when a matrix element or phase factor is evaluated.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Literal, Optional, Union

import numpy as np

from mlad.errors import DimensionMismatchError, LadderError

PulseDirection = Literal['up', 'down']
Angle = Union[Fraction, int, str]


def as_fraction(value: Angle) -> Fraction:
  """Coerce an int, str ('3/8') or Fraction to a reduced Fraction."""
  if isinstance(value, Fraction):
    return value
  if isinstance(value, float):
    raise LadderError(f'Angles must be exact rationals, got float {value!r}')
  return Fraction(value)


class PrimitiveKind(str, Enum):
  PULSE_UP = 'W+'
  PULSE_DOWN = 'W-'
  FREE_ELECTRONIC = 'F'
  FREE_KINETIC = 'G'
  FREE_COMBINED = 'FG'


@dataclass(frozen=True)
class Primitive:
  """One pulse or free-evolution instruction.

  Only the fields relevant to ``kind`` are meaningful; the rest stay zero.
  ``omega_tau`` is only used by FREE_COMBINED, where the electronic angle is
  ``omega_tau * theta_g``; ``None`` means "use the configured default".
  """

  kind: PrimitiveKind
  alpha: Fraction = Fraction(0)
  phi: Fraction = Fraction(0)
  theta_f: Fraction = Fraction(0)
  theta_g: Fraction = Fraction(0)
  omega_tau: Optional[Fraction] = None

  def __post_init__(self):
    object.__setattr__(self, 'kind', PrimitiveKind(self.kind))
    for name in ('alpha', 'phi', 'theta_f', 'theta_g'):
      object.__setattr__(self, name, as_fraction(getattr(self, name)))
    if self.omega_tau is not None:
      object.__setattr__(self, 'omega_tau', as_fraction(self.omega_tau))

  @classmethod
  def pulse(cls, direction: PulseDirection, alpha: Angle, phi: Angle = 0) -> 'Primitive':
    kind = PrimitiveKind.PULSE_UP if direction == 'up' else PrimitiveKind.PULSE_DOWN
    return cls(kind, alpha=alpha, phi=phi)

  @classmethod
  def free_electronic(cls, theta_f: Angle) -> 'Primitive':
    return cls(PrimitiveKind.FREE_ELECTRONIC, theta_f=theta_f)

  @classmethod
  def free_kinetic(cls, theta_g: Angle) -> 'Primitive':
    return cls(PrimitiveKind.FREE_KINETIC, theta_g=theta_g)

  @classmethod
  def free_combined(cls, theta_g: Angle, omega_tau: Optional[Angle] = None) -> 'Primitive':
    return cls(PrimitiveKind.FREE_COMBINED, theta_g=theta_g, omega_tau=omega_tau)

  @property
  def is_pulse(self) -> bool:
    return self.kind in (PrimitiveKind.PULSE_UP, PrimitiveKind.PULSE_DOWN)

  @property
  def direction(self) -> Optional[PulseDirection]:
    if self.kind == PrimitiveKind.PULSE_UP:
      return 'up'
    if self.kind == PrimitiveKind.PULSE_DOWN:
      return 'down'
    return None

  @property
  def kinetic_angle(self) -> Fraction:
    if self.kind in (PrimitiveKind.FREE_KINETIC, PrimitiveKind.FREE_COMBINED):
      return self.theta_g
    return Fraction(0)

  @property
  def electronic_angle(self) -> Fraction:
    if self.kind == PrimitiveKind.FREE_ELECTRONIC:
      return self.theta_f
    if self.kind == PrimitiveKind.FREE_COMBINED:
      if self.omega_tau is None:
        raise LadderError('FG primitive has no omega_tau; expand it with a default first')
      return self.omega_tau * self.theta_g
    return Fraction(0)

  def with_omega_tau(self, omega_tau: Angle) -> 'Primitive':
    """Fill in omega_tau on a combined evolution that lacks one."""
    if self.kind != PrimitiveKind.FREE_COMBINED or self.omega_tau is not None:
      return self
    return Primitive.free_combined(self.theta_g, omega_tau)


@dataclass(frozen=True)
class LadderState:
  """Amplitudes over ladder indices n_min..n_max; momentum of index n is n + offset.

  Even indices are ground, odd indices excited, independent of the offset.
  """

  window: tuple[int, int]
  offset: float
  amplitudes: np.ndarray = field(repr=False)

  def __post_init__(self):
    n_min, n_max = self.window
    if n_max < n_min:
      raise LadderError(f'Empty window {self.window}')
    amps = np.array(self.amplitudes, dtype=complex)
    if amps.shape != (n_max - n_min + 1,):
      raise DimensionMismatchError(
        f'Window {self.window} needs {n_max - n_min + 1} amplitudes, got {amps.shape}'
      )
    amps.setflags(write=False)
    object.__setattr__(self, 'window', (int(n_min), int(n_max)))
    object.__setattr__(self, 'offset', float(self.offset))
    object.__setattr__(self, 'amplitudes', amps)

  @property
  def n_min(self) -> int:
    return self.window[0]

  @property
  def n_max(self) -> int:
    return self.window[1]

  @property
  def size(self) -> int:
    return self.n_max - self.n_min + 1

  @property
  def indices(self) -> np.ndarray:
    return np.arange(self.n_min, self.n_max + 1)

  @property
  def momenta(self) -> np.ndarray:
    return self.indices + self.offset

  @property
  def excited_mask(self) -> np.ndarray:
    return self.indices % 2 == 1

  @property
  def probabilities(self) -> np.ndarray:
    return np.abs(self.amplitudes) ** 2

  @property
  def norm(self) -> float:
    return float(np.sqrt(self.probabilities.sum()))

  def amplitude(self, n: int) -> complex:
    if not self.n_min <= n <= self.n_max:
      raise LadderError(f'Index {n} outside window {self.window}')
    return complex(self.amplitudes[n - self.n_min])

  def with_amplitudes(self, amplitudes: np.ndarray) -> 'LadderState':
    return LadderState(self.window, self.offset, amplitudes)


@dataclass(frozen=True)
class Cyclic:
  """Ring of ``size`` states, index 0 ground; size must be 8 * 2**k."""

  size: int

  def __post_init__(self):
    blocks, rest = divmod(self.size, 8)
    if rest or blocks < 1 or blocks & (blocks - 1):
      raise LadderError(f'Cyclic size must be 8 * 2**k, got {self.size}')

  @property
  def dim(self) -> int:
    return self.size

  @property
  def indices(self) -> np.ndarray:
    return np.arange(self.size)

  @property
  def offset(self) -> float:
    return 0.0


@dataclass(frozen=True)
class OpenWindow:
  """Finite stretch n_min..n_max of the ladder with a momentum offset."""

  n_min: int
  n_max: int
  offset: float = 0.0

  def __post_init__(self):
    if self.n_max < self.n_min:
      raise LadderError(f'Empty window ({self.n_min}, {self.n_max})')

  @property
  def dim(self) -> int:
    return self.n_max - self.n_min + 1

  @property
  def indices(self) -> np.ndarray:
    return np.arange(self.n_min, self.n_max + 1)


Topology = Union[Cyclic, OpenWindow]


@dataclass(frozen=True)
class UnitaryMatrix:
  """Dense operator on a cyclic or open window; entries[i, j] maps state j to i."""

  entries: np.ndarray = field(repr=False)
  topology: Topology

  def __post_init__(self):
    entries = np.array(self.entries, dtype=complex)
    dim = self.topology.dim
    if entries.shape != (dim, dim):
      raise DimensionMismatchError(f'Expected {dim}x{dim} entries, got {entries.shape}')
    entries.setflags(write=False)
    object.__setattr__(self, 'entries', entries)

  @classmethod
  def identity(cls, topology: Topology) -> 'UnitaryMatrix':
    return cls(np.eye(topology.dim, dtype=complex), topology)

  @property
  def dim(self) -> int:
    return self.topology.dim

  def adjoint(self) -> 'UnitaryMatrix':
    return UnitaryMatrix(self.entries.conj().T, self.topology)

  def unitarity_error(self) -> float:
    """Max-norm distance of U^dagger U from the identity."""
    product = self.entries.conj().T @ self.entries
    return float(np.max(np.abs(product - np.eye(self.dim))))

  def __matmul__(self, other: 'UnitaryMatrix') -> 'UnitaryMatrix':
    if self.topology != other.topology:
      raise DimensionMismatchError(f'Cannot multiply {self.topology} by {other.topology}')
    return UnitaryMatrix(self.entries @ other.entries, self.topology)

  def restrict(self, lo: int, hi: int) -> 'UnitaryMatrix':
    """Sub-block on window indices lo..hi (inclusive).

    The block is only unitary when no amplitude inside it couples outside.
    """
    first = int(self.topology.indices[0])
    if lo < first or hi > first + self.dim - 1 or hi < lo:
      raise DimensionMismatchError(f'Block ({lo}, {hi}) not inside {self.topology}')
    rows = slice(lo - first, hi - first + 1)
    if isinstance(self.topology, OpenWindow):
      block = OpenWindow(lo, hi, self.topology.offset)
    else:
      block = OpenWindow(lo, hi, 0.0)
    return UnitaryMatrix(self.entries[rows, rows], block)
