"""Momentum ladder operations: the four primitive unitaries and their matrices.

Pulse coupling follows the 4x4 convention
    excited' = cos(a) e + i e^{+i phi} sin(a) g
    ground'  = cos(a) g + i e^{-i phi} sin(a) e
with upward pulses pairing (g n, e n+1) and downward pulses (g n, e n-1).
Free evolution multiplies excited amplitudes by e^{-i theta_f} (electronic)
and every amplitude by e^{-i p^2 theta_g} (kinetic, p = n + offset).
"""

import cmath
import logging
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from mlad.config_loader import config_loader
from mlad.errors import (
  BoundaryLeakageError,
  CyclicTopologyError,
  DimensionMismatchError,
  LadderError,
)
from mlad.models.ladder import (
  Angle,
  Cyclic,
  LadderState,
  Primitive,
  PrimitiveKind,
  PulseDirection,
  Topology,
  UnitaryMatrix,
  as_fraction,
)

logger = logging.getLogger(__name__)

_SQRT_HALF = math.sqrt(0.5)
# cos/sin of k*pi/4 for k = 0..7
_EIGHTH_TURNS = [
  (1.0, 0.0),
  (_SQRT_HALF, _SQRT_HALF),
  (0.0, 1.0),
  (-_SQRT_HALF, _SQRT_HALF),
  (-1.0, 0.0),
  (-_SQRT_HALF, -_SQRT_HALF),
  (0.0, -1.0),
  (_SQRT_HALF, -_SQRT_HALF),
]


def cos_sin(angle: Fraction) -> tuple[float, float]:
  """cos and sin of angle*pi, exact for multiples of pi/4."""
  turns = angle * 4
  if turns.denominator == 1:
    return _EIGHTH_TURNS[int(turns) % 8]
  radians = math.pi * float(angle)
  return math.cos(radians), math.sin(radians)


def unit_phase(angle: Fraction) -> complex:
  """e^{i angle*pi}."""
  c, s = cos_sin(angle)
  return complex(c, s)


def _pulse_coefficients(alpha: Fraction, phi: Fraction) -> tuple[float, complex, complex]:
  """(diagonal, ground->excited, excited->ground) pulse matrix elements."""
  c, s = cos_sin(alpha)
  up = 1j * unit_phase(phi) * s
  down = 1j * unit_phase(-phi) * s
  return c, up, down


def _pulse_pairs(n_min: int, size: int, direction: PulseDirection, cyclic: bool):
  """Positions (ground, excited) of the coupled pairs inside a window."""
  first_ground = (-n_min) % 2
  ground = np.arange(first_ground, size, 2)
  excited = ground + (1 if direction == 'up' else -1)
  if cyclic:
    return ground, excited % size
  inside = (excited >= 0) & (excited < size)
  return ground[inside], excited[inside]


def pulse_kernel(
  amps: np.ndarray, n_min: int, direction: PulseDirection, alpha: Fraction, phi: Fraction
) -> np.ndarray:
  """Apply a pulse along the last axis of ``amps`` (open window).

  Members of pairs cut by the window edge are left untouched.
  """
  c, up, down = _pulse_coefficients(alpha, phi)
  ground, excited = _pulse_pairs(n_min, amps.shape[-1], direction, cyclic=False)
  out = amps.copy()
  ag = amps[..., ground]
  ae = amps[..., excited]
  out[..., ground] = c * ag + down * ae
  out[..., excited] = c * ae + up * ag
  return out


def kinetic_phases(
  indices: np.ndarray, offset: Union[float, np.ndarray], theta_g: Fraction
) -> np.ndarray:
  """e^{-i p^2 theta_g pi} for p = indices + offset.

  Integer momenta are reduced exactly modulo 2 pi before evaluation. A 1-D
  ``offset`` array gives one row of phases per offset.
  """
  if np.ndim(offset) == 0 and float(offset) == 0.0:
    squares = indices.astype(np.int64) ** 2
    residues = (squares * theta_g.numerator) % (2 * theta_g.denominator)
    angles = residues / theta_g.denominator
    return np.exp(-1j * math.pi * angles)
  momenta = indices[np.newaxis, :] + np.atleast_1d(offset)[:, np.newaxis]
  phases = np.exp(-1j * math.pi * float(theta_g) * momenta**2)
  return phases if np.ndim(offset) else phases[0]


def electronic_phases(indices: np.ndarray, theta_f: Fraction) -> np.ndarray:
  phases = np.ones(len(indices), dtype=complex)
  phases[indices % 2 == 1] = unit_phase(-theta_f)
  return phases


def boundary_probability(state: LadderState, margin: Optional[int] = None) -> float:
  """Probability on the ``margin`` outermost indices at each end of the window."""
  if margin is None:
    margin = config_loader.boundary_margin
  probs = state.probabilities
  if 2 * margin >= state.size:
    return float(probs.sum())
  return float(probs[:margin].sum() + probs[-margin:].sum())


def check_leakage(state: LadderState, tolerance: Optional[float] = None) -> LadderState:
  """Raise BoundaryLeakageError if probability crowds the window edges."""
  if tolerance is None:
    tolerance = config_loader.leakage_tolerance
  edge = boundary_probability(state)
  if edge > tolerance:
    logger.error(f'Boundary leakage {edge:.3e} on window {state.window}')
    raise BoundaryLeakageError(edge, tolerance)
  return state


def new_state(
  window: tuple[int, int], offset: float, initial: Iterable[tuple[int, complex]]
) -> LadderState:
  """Build a normalized state from (index, amplitude) pairs.

  Raises:
      LadderError: empty amplitude list, index outside the window, or zero norm
  """
  n_min, n_max = window
  if n_max < n_min:
    raise LadderError(f'Empty window {window}')
  amps = np.zeros(n_max - n_min + 1, dtype=complex)
  entries = list(initial)
  if not entries:
    raise LadderError('Initial amplitude list is empty')
  for index, value in entries:
    if not n_min <= index <= n_max:
      raise LadderError(f'Index {index} outside window {window}')
    amps[index - n_min] += complex(value)
  norm = np.linalg.norm(amps)
  if norm == 0:
    raise LadderError('Initial amplitudes are not normalizable (zero norm)')
  return LadderState((n_min, n_max), offset, amps / norm)


def ground_state_at(momentum: float, window: tuple[int, int]) -> LadderState:
  """Pure ground state at an arbitrary real momentum.

  The atom is placed on the even index 2*floor(p/2) with offset in [0, 2).
  """
  index = 2 * math.floor(momentum / 2)
  return new_state(window, momentum - index, [(index, 1.0)])


def apply_pulse(
  s: LadderState,
  direction: PulseDirection,
  alpha: Angle,
  phi: Angle = 0,
  tolerance: Optional[float] = None,
) -> LadderState:
  """Short laser pulse with matrix parameter alpha (a pi pulse is alpha = 1/2)."""
  alpha = as_fraction(alpha)
  phi = as_fraction(phi)
  out = s.with_amplitudes(pulse_kernel(s.amplitudes, s.n_min, direction, alpha, phi))
  if cos_sin(alpha)[1] != 0.0:
    check_leakage(out, tolerance)
  return out


def apply_free_electronic(s: LadderState, theta_f: Angle) -> LadderState:
  theta_f = as_fraction(theta_f)
  return s.with_amplitudes(s.amplitudes * electronic_phases(s.indices, theta_f))


def apply_free_kinetic(s: LadderState, theta_g: Angle) -> LadderState:
  theta_g = as_fraction(theta_g)
  return s.with_amplitudes(s.amplitudes * kinetic_phases(s.indices, s.offset, theta_g))


def apply_free_combined(s: LadderState, theta_g: Angle, omega_tau: Angle) -> LadderState:
  """Kinetic evolution theta_g followed by electronic evolution omega_tau * theta_g."""
  theta_g = as_fraction(theta_g)
  kinetic = apply_free_kinetic(s, theta_g)
  return apply_free_electronic(kinetic, as_fraction(omega_tau) * theta_g)


def apply_primitive(s: LadderState, prim: Primitive, tolerance: Optional[float] = None):
  if prim.is_pulse:
    return apply_pulse(s, prim.direction, prim.alpha, prim.phi, tolerance)
  if prim.kind == PrimitiveKind.FREE_ELECTRONIC:
    return apply_free_electronic(s, prim.theta_f)
  if prim.kind == PrimitiveKind.FREE_KINETIC:
    return apply_free_kinetic(s, prim.theta_g)
  omega_tau = prim.omega_tau if prim.omega_tau is not None else config_loader.omega_tau
  return apply_free_combined(s, prim.theta_g, omega_tau)


def apply_sequence(
  s: LadderState, prims: Sequence[Primitive], tolerance: Optional[float] = None
) -> LadderState:
  """Apply primitives in application order (first element first)."""
  for prim in prims:
    s = apply_primitive(s, prim, tolerance)
  return s


def excited_population(s: LadderState) -> float:
  return float(s.probabilities[s.excited_mask].sum())


def relative_phase(s: LadderState, i: int, j: int) -> float:
  """Phase of amplitude i relative to amplitude j, in radians (-pi, pi]."""
  return cmath.phase(s.amplitude(i) / s.amplitude(j))


def momentum_histogram(s: LadderState, bin_width: float) -> list[tuple[float, float]]:
  """Probability per momentum bin, bins centred on multiples of bin_width.

  Only bins with non-zero probability are listed, in increasing momentum.
  """
  if bin_width <= 0:
    raise LadderError(f'bin_width must be positive, got {bin_width}')
  bins: dict[int, float] = {}
  for momentum, prob in zip(s.momenta, s.probabilities):
    if prob == 0.0:
      continue
    key = int(np.floor(momentum / bin_width + 0.5))
    bins[key] = bins.get(key, 0.0) + float(prob)
  total = sum(bins.values())
  return [(key * bin_width, prob / total) for key, prob in sorted(bins.items())]


def _check_cyclic(prim: Primitive):
  if (prim.kinetic_angle * 8).denominator != 1:
    raise CyclicTopologyError(
      f'{prim.kind.value} angle {prim.kinetic_angle} pi is not a multiple of pi/8; '
      'the cyclic identification p = p + 8 does not hold'
    )


def matrix_of(prim: Primitive, dim: int, topology: Optional[Topology] = None) -> UnitaryMatrix:
  """Dense matrix of one primitive on a cyclic (default) or open window.

  Raises:
      CyclicTopologyError: kinetic angle not a multiple of pi/8 on a cyclic window
      DimensionMismatchError: ``dim`` disagrees with the topology
  """
  if topology is None:
    topology = Cyclic(dim)
  if topology.dim != dim:
    raise DimensionMismatchError(f'dim {dim} does not match {topology}')
  cyclic = isinstance(topology, Cyclic)
  if cyclic:
    _check_cyclic(prim)
  indices = topology.indices

  if prim.is_pulse:
    c, up, down = _pulse_coefficients(prim.alpha, prim.phi)
    ground, excited = _pulse_pairs(int(indices[0]), dim, prim.direction, cyclic)
    entries = np.eye(dim, dtype=complex)
    entries[ground, ground] = c
    entries[excited, excited] = c
    entries[excited, ground] = up
    entries[ground, excited] = down
    return UnitaryMatrix(entries, topology)

  if prim.kind == PrimitiveKind.FREE_COMBINED and prim.omega_tau is None:
    prim = prim.with_omega_tau(config_loader.omega_tau)
  diagonal = kinetic_phases(indices, topology.offset, prim.kinetic_angle)
  diagonal = diagonal * electronic_phases(indices, prim.electronic_angle)
  return UnitaryMatrix(np.diag(diagonal), topology)


def compose(matrices: Sequence[UnitaryMatrix]) -> UnitaryMatrix:
  """Product in textual order: compose([A, B]) applies B first, then A."""
  if not matrices:
    raise DimensionMismatchError('compose needs at least one matrix')
  result = matrices[0]
  for matrix in matrices[1:]:
    result = result @ matrix
  return result


def sequence_matrix(
  prims: Sequence[Primitive], dim: int, topology: Optional[Topology] = None
) -> UnitaryMatrix:
  """Operator of an application-order primitive list (identity if empty)."""
  if topology is None:
    topology = Cyclic(dim)
  if not prims:
    return UnitaryMatrix.identity(topology)
  return compose([matrix_of(prim, dim, topology) for prim in reversed(prims)])


def shift_amplitudes(row: np.ndarray, shift: int, tolerance: Optional[float] = None) -> np.ndarray:
  """Move a window's amplitudes ``shift`` indices up; what falls off must be negligible.

  Raises:
      LadderError: odd shift, which would swap ground and excited levels
      BoundaryLeakageError: probability pushed past the window exceeds tolerance
  """
  if shift % 2:
    raise LadderError(f'Shift must be even, got {shift}')
  if tolerance is None:
    tolerance = config_loader.leakage_tolerance
  size = row.shape[-1]
  if shift == 0:
    return row.copy()
  if abs(shift) >= size:
    lost = row
  else:
    lost = row[-shift:] if shift > 0 else row[:-shift]
  leaked = float(np.sum(np.abs(lost) ** 2))
  if leaked > tolerance:
    logger.error(f'Shift by {shift} pushes {leaked:.3e} off a window of {size}')
    raise BoundaryLeakageError(leaked, tolerance)
  out = np.zeros_like(row)
  if abs(shift) < size:
    if shift > 0:
      out[shift:] = row[:-shift]
    else:
      out[:shift] = row[-shift:]
  return out


def translate(s: LadderState, shift: int, tolerance: Optional[float] = None) -> LadderState:
  """Same state moved ``shift`` ladder steps up on the same window.

  A shift by a multiple of 8 commutes with every built-in sequence up to a
  global phase: the built-in kinetic angles are multiples of 1/8 and pulses
  act on index parity only.
  """
  return s.with_amplitudes(shift_amplitudes(np.array(s.amplitudes), shift, tolerance))


def evolve_batch(
  amps: np.ndarray,
  n_min: int,
  offsets: np.ndarray,
  prims: Sequence[Primitive],
  tolerance: Optional[float] = None,
  margin: Optional[int] = None,
) -> np.ndarray:
  """Apply primitives to many atoms at once; row k has momentum offset offsets[k].

  ``amps`` has shape (atoms, window size). Each row evolves as
  apply_sequence would evolve it alone.

  Raises:
      BoundaryLeakageError: any row puts probability on the window edges
  """
  if tolerance is None:
    tolerance = config_loader.leakage_tolerance
  if margin is None:
    margin = config_loader.boundary_margin
  indices = np.arange(n_min, n_min + amps.shape[-1])
  offsets = np.asarray(offsets, dtype=float)
  for prim in prims:
    if prim.is_pulse:
      amps = pulse_kernel(amps, n_min, prim.direction, prim.alpha, prim.phi)
      if cos_sin(prim.alpha)[1] != 0.0:
        probs = np.abs(amps[:, :margin]) ** 2
        edge = probs.sum(axis=1) + (np.abs(amps[:, -margin:]) ** 2).sum(axis=1)
        worst = float(edge.max(initial=0.0))
        if worst > tolerance:
          logger.error(f'Boundary leakage {worst:.3e} in batch on window starting {n_min}')
          raise BoundaryLeakageError(worst, tolerance)
      continue
    if prim.kind == PrimitiveKind.FREE_COMBINED and prim.omega_tau is None:
      prim = prim.with_omega_tau(config_loader.omega_tau)
    if prim.kinetic_angle != 0:
      amps = amps * kinetic_phases(indices, offsets, prim.kinetic_angle)
    if prim.electronic_angle != 0:
      amps = amps * electronic_phases(indices, prim.electronic_angle)
  return amps
