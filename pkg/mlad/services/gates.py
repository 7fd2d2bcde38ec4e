"""Ideal logical gates and verification of composed opcodes against them."""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from mlad.config_loader import config_loader
from mlad.errors import DimensionMismatchError, UnknownGateError
from mlad.models.gates import (
  EQUIVALENCE_ORDER,
  EquivalenceClass,
  GCheckResult,
  IdealGate,
  VerificationReport,
)
from mlad.models.ladder import Angle, OpenWindow, UnitaryMatrix, as_fraction
from mlad.models.sequence import MacroTable
from mlad.services.ladder import kinetic_phases, sequence_matrix
from mlad.services.sequences import (
  builtin_table,
  expand,
  expand_name,
  gbasic_program,
  pulse_counts,
)

logger = logging.getLogger(__name__)

_HADAMARD = np.array([[1, 1], [1, -1]]) / np.sqrt(2)

# RR3 as new value of each old value: {Q2, Q1, Q0} -> {Q0, Q2, Q1}.
_RR3_IMAGE = [0, 4, 1, 5, 2, 6, 3, 7]


def _permutation(images: Sequence[int]) -> np.ndarray:
  """Matrix sending basis state ``old`` to ``images[old]``."""
  size = len(images)
  matrix = np.zeros((size, size), dtype=complex)
  for old, new in enumerate(images):
    matrix[new, old] = 1.0
  return matrix


def _transposition(size: int, a: int, b: int) -> np.ndarray:
  images = list(range(size))
  images[a], images[b] = b, a
  return _permutation(images)


def _phase_flip_zero(size: int) -> np.ndarray:
  diagonal = np.ones(size, dtype=complex)
  diagonal[0] = -1.0
  return np.diag(diagonal)


def _gbasic_ideal() -> np.ndarray:
  return np.diag(kinetic_phases(np.arange(8), 0.0, config_loader.gbasic_theta))


def _rr3_inverse() -> np.ndarray:
  return _permutation(_RR3_IMAGE).T


_IDEAL_BUILDERS = {
  'GBASIC': (3, _gbasic_ideal),
  'NOT0': (1, lambda: _transposition(2, 0, 1)),
  'CP1_0': (1, lambda: _phase_flip_zero(2)),
  'HAD0': (1, lambda: _HADAMARD),
  'EX10': (2, lambda: _transposition(4, 1, 2)),
  'CNOT10': (2, lambda: _transposition(4, 2, 3)),
  'CNOTBAR10': (2, lambda: _transposition(4, 0, 1)),
  'CP2_0': (2, lambda: _phase_flip_zero(4)),
  'HAD10': (2, lambda: np.kron(_HADAMARD, _HADAMARD)),
  'SW3_23': (3, lambda: _transposition(8, 2, 3)),
  'SW3_34': (3, lambda: _transposition(8, 3, 4)),
  'SW3_45': (3, lambda: _transposition(8, 4, 5)),
  'EX21': (3, lambda: _permutation([0, 1, 4, 5, 2, 3, 6, 7])),
  'RR3': (3, lambda: _permutation(_RR3_IMAGE)),
  'RL3': (3, _rr3_inverse),
  'CP3_0': (3, lambda: _phase_flip_zero(8)),
}

GATE_NAMES: List[str] = list(_IDEAL_BUILDERS)


def ideal_gate(name: str) -> IdealGate:
  """Exact logical unitary of a named opcode.

  Raises:
      UnknownGateError: no ideal gate with this name
  """
  try:
    span, build = _IDEAL_BUILDERS[name]
  except KeyError:
    raise UnknownGateError(name) from None
  return IdealGate(name, span, build())


def _check_dims(U: UnitaryMatrix, V: UnitaryMatrix):
  if U.dim != V.dim:
    raise DimensionMismatchError(f'Cannot compare dim {U.dim} with dim {V.dim}')


def fidelity_up_to_global_phase(U: UnitaryMatrix, V: UnitaryMatrix) -> Tuple[float, complex]:
  """|tr(U^dagger V)| / dim and the unit phase of the trace (1 when the trace vanishes)."""
  _check_dims(U, V)
  trace = np.trace(U.entries.conj().T @ V.entries)
  magnitude = abs(trace)
  phase = trace / magnitude if magnitude > 1e-15 else complex(1.0)
  return float(magnitude / U.dim), complex(phase)


def diagonal_residual(
  U: UnitaryMatrix, V: UnitaryMatrix, tol: Optional[float] = None
) -> Optional[np.ndarray]:
  """Diagonal unitary D with U = D V, or None when no such D exists within ``tol``."""
  _check_dims(U, V)
  if tol is None:
    tol = float(config_loader.verification_config.get('diagonal_tolerance', 1e-9))
  product = U.entries @ V.entries.conj().T
  diagonal = np.diag(product).copy()
  off_diagonal = product - np.diag(diagonal)
  if np.max(np.abs(off_diagonal), initial=0.0) > tol:
    return None
  if np.max(np.abs(np.abs(diagonal) - 1.0)) > tol:
    return None
  return diagonal


def basis_phase_residual(
  U: UnitaryMatrix, V: UnitaryMatrix, tol: Optional[float] = None
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
  """Diagonal unitaries (D1, D2) with U = D1 V D2, or None.

  Each non-zero V[i, j] fixes the product D1[i] D2[j]; phases are propagated
  over the connected rows and columns of V's support, then the candidate is
  checked entrywise.
  """
  _check_dims(U, V)
  if tol is None:
    tol = float(config_loader.verification_config.get('diagonal_tolerance', 1e-9))
  u, v = U.entries, V.entries
  if np.max(np.abs(np.abs(u) - np.abs(v))) > tol:
    return None

  dim = U.dim
  support = np.abs(v) > tol
  left: List[Optional[complex]] = [None] * dim
  right: List[Optional[complex]] = [None] * dim
  for start in range(dim):
    if left[start] is not None:
      continue
    left[start] = complex(1.0)
    rows = [start]
    while rows:
      i = rows.pop()
      for j in np.flatnonzero(support[i]):
        if right[j] is None:
          right[j] = u[i, j] / (v[i, j] * left[i])
          for k in np.flatnonzero(support[:, j]):
            if left[k] is None:
              left[k] = u[k, j] / (v[k, j] * right[j])
              rows.append(k)

  d1 = np.array([1.0 if x is None else x for x in left], dtype=complex)
  d2 = np.array([1.0 if x is None else x for x in right], dtype=complex)
  d1 /= np.abs(d1)
  d2 /= np.abs(d2)
  if np.max(np.abs(d1[:, np.newaxis] * v * d2[np.newaxis, :] - u)) > tol:
    return None
  return d1, d2


def _angles(phases: np.ndarray) -> List[float]:
  return [float(x) for x in np.angle(phases) / np.pi]


def _classify(
  U: UnitaryMatrix, V: UnitaryMatrix, fidelity_tol: float, diagonal_tol: float
) -> Tuple[Optional[EquivalenceClass], dict]:
  """Strongest class in which U matches V, with the residuals found on the way."""
  fidelity, phase = fidelity_up_to_global_phase(U, V)
  found = {'fidelity': fidelity, 'phase': phase}
  diagonal = diagonal_residual(U, V, diagonal_tol)
  if diagonal is not None:
    found['diagonal'] = diagonal
  if fidelity > 1.0 - fidelity_tol:
    return 'global', found
  if diagonal is not None:
    return 'diagonal', found
  basis = basis_phase_residual(U, V, diagonal_tol)
  if basis is not None:
    found['basis'] = basis
    return 'basis_phase', found
  return None, found


def verify_named(
  name: str,
  table: Optional[MacroTable] = None,
  dims: Optional[Sequence[int]] = None,
) -> VerificationReport:
  """Compose a table entry on cyclic windows and compare it with its ideal gate.

  The row passes in the strongest class that holds on every dim; it is
  flagged when that class is weaker than the row's nominal class. A failure
  is reported, not raised.

  Raises:
      UnknownGateError: no ideal gate for ``name``
      UnknownMacroError: ``name`` is not in the table
      CyclicTopologyError: the expansion has a kinetic angle off the pi/8 grid
  """
  settings = config_loader.verification_config
  fidelity_tol = float(settings.get('fidelity_tolerance', 1e-9))
  diagonal_tol = float(settings.get('diagonal_tolerance', 1e-9))
  stability_tol = float(settings.get('window_stability_tolerance', 1e-10))
  dims = list(dims or settings.get('dims', [8, 16]))

  if table is None:
    table = builtin_table()
  gate = ideal_gate(name)
  macro = table[name]
  nominal: EquivalenceClass = 'diagonal' if macro.uncorrected_phases else 'global'
  prims = expand_name(name, table)

  fidelities: Dict[int, float] = {}
  classes: List[Optional[EquivalenceClass]] = []
  first: dict = {}
  for dim in dims:
    U = sequence_matrix(prims, dim)
    V = UnitaryMatrix(gate.tiled(dim), U.topology)
    found_class, found = _classify(U, V, fidelity_tol, diagonal_tol)
    fidelities[dim] = found['fidelity']
    classes.append(found_class)
    if not first:
      first = found

  if any(c is None for c in classes):
    equivalence = None
  else:
    equivalence = max(classes, key=EQUIVALENCE_ORDER.index)
  window_stable = max(fidelities.values()) - min(fidelities.values()) <= stability_tol
  passed = equivalence is not None and window_stable
  flagged = passed and EQUIVALENCE_ORDER.index(equivalence) > EQUIVALENCE_ORDER.index(nominal)

  counts = pulse_counts(prims)
  reference = settings.get('reference_pulse_counts', {}).get(name)
  note = None
  if reference and (reference.get('half_pi'), reference.get('pi')) != (counts.half_pi, counts.pi):
    note = (
      f'Expansion has {counts.half_pi} pi/2 and {counts.pi} pi pulses; '
      f'quoted figure is {reference.get("half_pi")} pi/2 and {reference.get("pi")} pi'
    )

  report = VerificationReport(
    opcode=name,
    display_name=macro.display_name,
    nominal_class=nominal,
    equivalence=equivalence,
    passed=passed,
    flagged=flagged,
    fidelity=fidelities[dims[0]],
    fidelities=fidelities,
    global_phase_angle=float(np.angle(first['phase']) / np.pi),
    residual_phases=_angles(first['diagonal']) if 'diagonal' in first else None,
    left_phases=_angles(first['basis'][0]) if 'basis' in first else None,
    right_phases=_angles(first['basis'][1]) if 'basis' in first else None,
    window_stable=window_stable,
    dims=dims,
    primitive_count=len(prims),
    pulse_counts=counts,
    reference_pulse_counts=reference,
    pulse_count_note=note,
  )
  if not passed:
    logger.warning(f'{name} failed verification (fidelity {report.fidelity:.9f})')
  elif flagged:
    logger.warning(f'{name} passes only in class {equivalence} (nominal {nominal})')
  else:
    logger.info(f'{name} verified in class {equivalence}')
  return report


def verify_all(
  table: Optional[MacroTable] = None, dims: Optional[Sequence[int]] = None
) -> List[VerificationReport]:
  """Reports for every table entry that has an ideal gate, in table order."""
  if table is None:
    table = builtin_table()
  return [verify_named(name, table, dims) for name in table if name in _IDEAL_BUILDERS]


def check_gbasic(
  theta_g: Angle,
  omega_tau: Angle,
  literal_g: bool = False,
  window: Optional[Sequence[int]] = None,
  block: Optional[Sequence[int]] = None,
) -> GCheckResult:
  """Compare the basic G sequence with exact kinetic phases for any angle.

  The sequence is composed on an open window so angles off the pi/8 grid are
  allowed; only an interior block is compared.
  """
  settings = config_loader.g_check_config
  n_min, n_max = window or settings.get('window', [-8, 15])
  lo, hi = block or settings.get('block', [0, 7])
  theta_g, omega_tau = as_fraction(theta_g), as_fraction(omega_tau)
  fidelity_tol = float(config_loader.verification_config.get('fidelity_tolerance', 1e-9))

  topology = OpenWindow(n_min, n_max)
  prims = expand(gbasic_program(theta_g, omega_tau, literal_g=literal_g), MacroTable())
  U = sequence_matrix(prims, topology.dim, topology).restrict(lo, hi)
  exact = np.diag(kinetic_phases(np.arange(lo, hi + 1), 0.0, theta_g))
  fidelity, phase = fidelity_up_to_global_phase(U, UnitaryMatrix(exact, U.topology))
  passed = fidelity > 1.0 - fidelity_tol
  logger.info(
    f'Basic G check theta_g={theta_g} omega_tau={omega_tau} literal={literal_g}: '
    f'fidelity {fidelity:.12f}'
  )
  return GCheckResult(
    theta_g=str(theta_g),
    omega_tau=str(omega_tau),
    literal_g=literal_g,
    window=[n_min, n_max],
    block=[lo, hi],
    fidelity=fidelity,
    global_phase_angle=float(np.angle(phase) / np.pi),
    passed=passed,
  )
