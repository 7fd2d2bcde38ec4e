"""Macro expansion, the built-in opcode table and generated sequences."""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional

from mlad.config_loader import config_loader
from mlad.data.builtin_macros import BUILTIN_MACROS
from mlad.errors import LadderError, MacroCycleError, UnknownMacroError
from mlad.models.ladder import Angle, Primitive, as_fraction
from mlad.models.sequence import (
  Macro,
  MacroCall,
  MacroTable,
  PrimitiveCall,
  PulseCounts,
  SequenceProgram,
)
from mlad.services.sequences.parser import format_program, parse

logger = logging.getLogger(__name__)


class _Expander:
  def __init__(self, table: MacroTable, omega_tau: Fraction):
    self.table = table
    self.omega_tau = omega_tau
    self.cache: Dict[str, List[Primitive]] = {}
    self.stack: List[str] = []

  def program(self, prog: SequenceProgram) -> List[Primitive]:
    prims: List[Primitive] = []
    for term in reversed(prog.items):
      if isinstance(term, PrimitiveCall):
        prims.append(term.primitive.with_omega_tau(self.omega_tau))
      else:
        prims.extend(self.macro(term.name))
    return prims

  def macro(self, name: str) -> List[Primitive]:
    if name in self.stack:
      raise MacroCycleError(self.stack[self.stack.index(name) :] + [name])
    if name not in self.cache:
      if name not in self.table:
        raise UnknownMacroError(name, list(self.table))
      self.stack.append(name)
      self.cache[name] = self.program(self.table[name].program)
      self.stack.pop()
    return self.cache[name]


def expand(
  prog: SequenceProgram,
  table: Optional[MacroTable] = None,
  omega_tau: Optional[Angle] = None,
) -> List[Primitive]:
  """Flatten a program into primitives in application order.

  The rightmost textual term comes first. Macros declared in the program
  itself are added to ``table`` before expansion. Combined free evolutions
  without an explicit ratio receive ``omega_tau`` (default from config).

  Raises:
      UnknownMacroError: a referenced name is not in the table
      MacroCycleError: macro definitions refer to each other recursively
  """
  if table is None:
    table = builtin_table()
  table = table.with_program_definitions(prog)
  ratio = config_loader.omega_tau if omega_tau is None else as_fraction(omega_tau)
  return _Expander(table, ratio).program(prog)


def expand_name(
  name: str, table: Optional[MacroTable] = None, omega_tau: Optional[Angle] = None
) -> List[Primitive]:
  return expand(SequenceProgram((MacroCall(name),)), table, omega_tau)


def gbasic_program(
  theta_g: Angle, omega_tau: Optional[Angle] = None, literal_g: bool = False
) -> SequenceProgram:
  """Basic G row for an arbitrary kinetic angle.

  Four FG(theta_g/4) quarters are separated by pulse pairs so each state spends
  equal time in both levels. ``literal_g`` uses alpha = pi pulses as printed
  instead of true pi pulses (alpha = pi/2).
  """
  theta_g = as_fraction(theta_g)
  quarter = Primitive.free_combined(theta_g / 4, omega_tau)
  alpha = Fraction(1) if literal_g else Fraction(1, 2)
  items = []
  for direction in ('down', 'down', 'up', 'up'):
    items.append(PrimitiveCall(Primitive.pulse(direction, alpha, 0)))
    items.append(PrimitiveCall(quarter))
  return SequenceProgram(tuple(items))


def interferometric_cooling_sequence(T: Angle, Tprime: Angle, omega_tau: Angle) -> List[Primitive]:
  """Interferometric cooling sequence in application order (10 primitives).

  Durations are kinetic angles in units of pi (T/tau); the electronic angle
  of each segment is ``omega_tau`` times its duration.

  Raises:
      LadderError: a duration is not positive, or 2T - T' is negative
  """
  T, Tprime, omega_tau = as_fraction(T), as_fraction(Tprime), as_fraction(omega_tau)
  if T <= 0 or Tprime <= 0:
    raise LadderError(f'Durations must be positive, got T={T}, Tprime={Tprime}')
  first = 2 * T - Tprime
  if first < 0:
    raise LadderError(f'Segment 2T - Tprime = {first} is negative')
  return [
    Primitive.pulse('up', Fraction(1, 4), 0),
    Primitive.free_electronic(omega_tau * Tprime),
    Primitive.free_kinetic(Tprime),
    Primitive.pulse('down', Fraction(1, 2), 0),
    Primitive.free_electronic(2 * omega_tau * T),
    Primitive.free_kinetic(2 * T),
    Primitive.pulse('down', Fraction(1, 2), 0),
    Primitive.free_electronic(omega_tau * first),
    Primitive.free_kinetic(first),
    Primitive.pulse('up', Fraction(1, 4), 0),
  ]


def pulse_counts(prims: List[Primitive]) -> PulseCounts:
  """Tally pulses by Rabi angle 2*alpha (pi/2, pi, 2pi, other) and free evolutions."""
  counts = PulseCounts()
  by_alpha = {Fraction(1, 4): 'half_pi', Fraction(1, 2): 'pi', Fraction(1): 'two_pi'}
  for prim in prims:
    if not prim.is_pulse:
      counts.free += 1
      continue
    bucket = by_alpha.get(abs(prim.alpha), 'other')
    setattr(counts, bucket, getattr(counts, bucket) + 1)
  return counts


def validate_table(table: MacroTable) -> MacroTable:
  """Expand every entry once so unresolved names and cycles fail at load."""
  expander = _Expander(table, config_loader.omega_tau)
  for name in table:
    expander.macro(name)
  return table


@lru_cache(maxsize=2)
def builtin_table(literal_g: bool = False) -> MacroTable:
  """The sixteen built-in opcodes.

  GBASIC is generated by ``gbasic_program`` from the configured
  ``gbasic_theta``, the same angle its ideal gate uses.

  Args:
      literal_g: build GBASIC with the pulse argument exactly as printed
          (alpha = pi) instead of true pi pulses

  Returns:
      Validated, immutable macro table
  """
  macros = []
  for entry in BUILTIN_MACROS:
    if entry.source is None:
      program = gbasic_program(config_loader.gbasic_theta, literal_g=literal_g)
      source = format_program(program)
    else:
      program = parse(entry.source)
      source = entry.source
    macros.append(
      Macro(
        name=entry.name,
        program=program,
        uncorrected_phases=entry.uncorrected_phases,
        display_name=entry.display_name,
        description=entry.description,
        source=source,
        builtin=True,
      )
    )
  table = validate_table(MacroTable(macros))
  logger.info(f'Loaded {len(table)} built-in macros (literal_g={literal_g})')
  return table


def kinetic_angles_cyclic_safe(prims: List[Primitive]) -> bool:
  """True when every kinetic angle is a multiple of pi/8."""
  return all((prim.kinetic_angle * 8).denominator == 1 for prim in prims)
