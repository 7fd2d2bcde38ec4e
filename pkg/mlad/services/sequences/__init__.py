from .expand import (
  builtin_table,
  expand,
  expand_name,
  gbasic_program,
  interferometric_cooling_sequence,
  kinetic_angles_cyclic_safe,
  pulse_counts,
)
from .parser import format_primitive, format_program, parse, parse_rational

__all__ = [
  'builtin_table',
  'expand',
  'expand_name',
  'format_primitive',
  'format_program',
  'gbasic_program',
  'interferometric_cooling_sequence',
  'kinetic_angles_cyclic_safe',
  'parse',
  'parse_rational',
  'pulse_counts',
]
