"""Built-in opcode table, written in the sequence DSL.

Each body is transcribed in printed order: the leftmost term is applied last.
Angles are in units of pi.
"""

from typing import NamedTuple, Optional


class MacroSource(NamedTuple):
  name: str
  display_name: str
  description: str
  source: Optional[str]
  uncorrected_phases: bool = False


BUILTIN_MACROS = [
  # Generated from the verification gbasic_theta: four FG quarters between pulse pairs.
  MacroSource('GBASIC', 'G(t/tau)', 'kinetic evolution without electronic phase', None),
  MacroSource('NOT0', 'NOT(0)', 'Q0 -> not Q0', 'F(1/2) . W+(1/2, 0) . F(1/2)'),
  MacroSource('CP1_0', 'CP1(0)', 'if state=0, invert phase', 'F(1) . W+(1, 0)'),
  MacroSource('HAD0', 'HAD(0)', 'Walsh-Hadamard on Q0', 'W+(1/4, 1/2) . F(1) . W+(1, 0)'),
  MacroSource(
    'EX10',
    'EX(1,0)',
    '{Q1, Q0} -> {Q0, Q1}',
    'F(1/2) . W-(1/4, 1) . G(1/4) . W-(1/4, 1/4) . F(5/4)',
  ),
  MacroSource(
    'CNOT10',
    'CNOT(1,0)',
    '{Q1, Q0} -> {Q1, Q1 xor Q0}',
    'F(1/2) . W+(1/4, 1) . G(1/4) . W+(1/4, 1/4) . F(5/4)',
  ),
  MacroSource(
    'CNOTBAR10',
    'CNOTbar(1,0)',
    '{Q1, Q0} -> {Q1, not (Q1 xor Q0)}',
    'W+(1, 0) . F(3/2) . W+(1/4, 0) . G(1/4) . W+(1/4, 1/4) . F(5/4)',
  ),
  MacroSource('CP2_0', 'CP2(0)', 'if state=0, invert phase', 'F(3/4) . G(1/4) . W+(1, 0)'),
  MacroSource(
    'HAD10', 'HAD(1,0)', 'Walsh-Hadamard on Q1, Q0', 'EX10 . HAD0 . EX10 . HAD0'
  ),
  MacroSource(
    'SW3_23',
    'SW3(2,3)',
    'swap states 2, 3',
    'W+(1/4, 0) . G(1/8) . W+(1/4, 9/8) . F(5/4) . G(1/8) .\n'
    '  W+(1/4, 0) . G(1/8) . W+(1/4, 9/8) . F(13/8) . G(1/4)',
    uncorrected_phases=True,
  ),
  MacroSource(
    'SW3_34',
    'SW3(3,4)',
    'swap states 3, 4',
    'F(1) . W-(1/4, 0) . G(1/8) . W-(1/4, 5/8) . F(5/4) . G(1/8) .\n'
    '  W-(1/4, 0) . G(1/8) . W-(1/4, 5/8) . F(13/8) . G(1/4)',
    uncorrected_phases=True,
  ),
  MacroSource(
    'SW3_45',
    'SW3(4,5)',
    'swap states 4, 5',
    'W+(1/4, 0) . G(1/8) . W+(1/4, 5/8) . F(5/4) . G(1/8) .\n'
    '  W+(1/4, 0) . G(1/8) . W+(1/4, 5/8) . F(1/8) . G(1/4)',
    uncorrected_phases=True,
  ),
  MacroSource(
    'EX21',
    'EX(2,1)',
    '{Q2, Q1} -> {Q1, Q2}',
    'W+(1, 0) . CNOTBAR10 . EX10 . G(3/8) . F(13/8) . EX10 . CNOTBAR10 .\n'
    '  SW3_34 . NOT0 . F(1) . NOT0 . SW3_45 .\n'
    '  NOT0 . F(1) . NOT0 . SW3_23 . SW3_34 . G(3/8) . F(5/8)',
  ),
  MacroSource('RR3', 'RR3', '{Q2, Q1, Q0} -> {Q0, Q2, Q1}', 'EX21 . EX10'),
  MacroSource('RL3', 'RL3', '{Q2, Q1, Q0} -> {Q1, Q0, Q2}', 'RR3 . RR3'),
  MacroSource(
    'CP3_0',
    'CP3(0)',
    'if state=0, invert phase',
    'NOT0 . RL3 . NOT0 . RL3 . F(5/8) . G(3/8) . RR3 . SW3_45 . F(3/2) .\n'
    '  SW3_45 . F(1/2) . NOT0 . RR3 . NOT0 . W+(1, 0)',
  ),
]

DISPLAY_NAMES = {macro.name: macro.display_name for macro in BUILTIN_MACROS}
