"""Sequence DSL grammar, parser and canonical printer.

Angles are rationals in units of pi. A line is a macro definition
(``def NAME = terms``) or a run of terms joined by ``.`` or U+00B7; a line
ending in a separator continues on the next one. ``#`` starts a comment that
runs to the end of the line.
"""

import logging
import re
import threading
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Tuple

from parglare import Grammar, ParseError, Parser

from mlad.errors import SequenceSyntaxError
from mlad.models.ladder import Primitive, PrimitiveKind
from mlad.models.sequence import MacroCall, PrimitiveCall, SequenceProgram, Term

logger = logging.getLogger(__name__)

SEQUENCE_GRAMMAR = r"""
program: lines;
lines: line | lines NEWLINE line;
line: definition | terms | EMPTY;
definition: DEF NAME EQUALS terms;
terms: term | terms separator term;
separator: SEP | separator NEWLINE;
term: PULSE LPAREN arguments RPAREN
    | FREE LPAREN arguments RPAREN
    | NAME;
arguments: rational | arguments COMMA rational;
rational: INT | INT SLASH INT;

terminals
NEWLINE: /\n/;
SEP: /[.·]/;
DEF: /def\b/ {prefer};
PULSE: /W[+-]/;
FREE: /FG|F|G/ {prefer};
NAME: /[A-Za-z_][A-Za-z0-9_]*/;
INT: /-?\d+/;
LPAREN: '(';
RPAREN: ')';
COMMA: ',';
SLASH: '/';
EQUALS: '=';
"""

_COMMENT = re.compile(r'#[^\n]*')
_LAYOUT = ' \t\r'
_RESERVED = {'def', 'F', 'G', 'FG'}
_ARITY = {'W+': 2, 'W-': 2, 'F': 1, 'G': 1, 'FG': 2}


class _Lexeme(NamedTuple):
  text: str
  offset: int


class _ErrorAt(Exception):
  def __init__(self, message: str, offset: int):
    self.message = message
    self.offset = offset
    super().__init__(message)


def _line_column(text: str, offset: int) -> Tuple[int, int]:
  line = text.count('\n', 0, offset) + 1
  return line, offset - (text.rfind('\n', 0, offset) + 1) + 1


def _lexeme(context, value: str) -> _Lexeme:
  return _Lexeme(value, context.start_position)


def _rational(_, nodes) -> Fraction:
  numerator = nodes[0]
  if len(nodes) == 1:
    return Fraction(int(numerator.text))
  denominator = nodes[2]
  if int(denominator.text) <= 0:
    raise _ErrorAt(
      f'Malformed rational {numerator.text}/{denominator.text}', denominator.offset
    )
  return Fraction(int(numerator.text), int(denominator.text))


def _primitive(head: _Lexeme, args: List[Fraction]) -> Primitive:
  if len(args) > _ARITY[head.text]:
    raise _ErrorAt(f'Too many arguments for {head.text}', head.offset)
  if head.text in ('W+', 'W-'):
    direction = 'up' if head.text == 'W+' else 'down'
    return Primitive.pulse(direction, args[0], args[1] if len(args) > 1 else 0)
  if head.text == 'F':
    return Primitive.free_electronic(args[0])
  if head.text == 'G':
    return Primitive.free_kinetic(args[0])
  return Primitive.free_combined(args[0], args[1] if len(args) > 1 else None)


def _term(context, nodes) -> Term:
  head = nodes[0]
  line, column = _line_column(context.input_str, head.offset)
  if len(nodes) == 1:
    return MacroCall(head.text, line, column)
  return PrimitiveCall(_primitive(head, nodes[2]), line, column)


def _definition(_, nodes) -> Tuple[str, SequenceProgram]:
  name = nodes[1]
  if name.text in _RESERVED:
    raise _ErrorAt(f'Reserved word {name.text!r} cannot name a macro', name.offset)
  return name.text, SequenceProgram(tuple(nodes[3]))


def _program(_, nodes) -> SequenceProgram:
  items: List[Term] = []
  definitions = []
  for line in nodes[0]:
    if isinstance(line, tuple):
      definitions.append(line)
    elif line:
      items.extend(line)
  return SequenceProgram(tuple(items), tuple(definitions))


def _first(_, nodes):
  return nodes[0]


def _single(_, nodes) -> list:
  return [nodes[0]]


def _append(_, nodes) -> list:
  return nodes[0] + [nodes[2]]


ACTIONS = {
  'program': _program,
  'lines': [_single, _append],
  'line': [_first, _first, lambda _, nodes: None],
  'definition': _definition,
  'terms': [_single, _append],
  'separator': lambda _, nodes: None,
  'term': _term,
  'arguments': [_single, _append],
  'rational': _rational,
  'DEF': _lexeme,
  'PULSE': _lexeme,
  'FREE': _lexeme,
  'NAME': _lexeme,
  'INT': _lexeme,
}


@lru_cache(maxsize=1)
def sequence_grammar() -> Grammar:
  return Grammar.from_string(SEQUENCE_GRAMMAR)


# parglare parsers keep per-parse state, so each thread gets its own
_local = threading.local()


def _parser() -> Parser:
  parser = getattr(_local, 'parser', None)
  if parser is None:
    parser = Parser(sequence_grammar(), ws=_LAYOUT, actions=ACTIONS)
    _local.parser = parser
  return parser


def _error_offset(text: str, error: ParseError) -> int:
  location = error.location
  offset = getattr(location, 'start_position', None)
  if offset is None:
    offset = getattr(getattr(location, 'context', None), 'position', None) or 0
  while offset < len(text) and text[offset] in _LAYOUT:
    offset += 1
  return offset


def _describe(text: str, offset: int) -> str:
  if offset >= len(text):
    return 'end of input'
  if text[offset] == '\n':
    return 'end of line'
  return repr(text[offset])


def parse(text: str) -> SequenceProgram:
  """Parse DSL text into a program that keeps textual order.

  Raises:
      SequenceSyntaxError: with the 1-based line and column of the offending input
  """
  source = _COMMENT.sub(lambda m: ' ' * len(m.group()), text)
  try:
    program = _parser().parse(source)
  except _ErrorAt as e:
    raise SequenceSyntaxError(e.message, *_line_column(source, e.offset)) from None
  except ParseError as e:
    offset = _error_offset(source, e)
    raise SequenceSyntaxError(
      f'Unexpected {_describe(source, offset)}', *_line_column(source, offset)
    ) from None
  logger.debug(f'Parsed {len(program)} terms, {len(program.definitions)} definitions')
  return program


def parse_rational(text: str) -> Fraction:
  """Parse a standalone rational such as '3/8' (used for CLI and HTTP arguments)."""
  try:
    (term,) = parse(f'F({text})').items
  except (SequenceSyntaxError, ValueError):
    raise SequenceSyntaxError(f'Malformed rational {text!r}', 1, 1) from None
  if not isinstance(term, PrimitiveCall) or term.primitive.kind != PrimitiveKind.FREE_ELECTRONIC:
    raise SequenceSyntaxError(f'Malformed rational {text!r}', 1, 1)
  return term.primitive.theta_f


def format_primitive(prim: Primitive) -> str:
  """Canonical text of one primitive, e.g. ``W+(1/2,0)`` or ``FG(1/8,5/2)``."""
  if prim.is_pulse:
    return f'{prim.kind.value}({prim.alpha},{prim.phi})'
  if prim.kind == PrimitiveKind.FREE_ELECTRONIC:
    return f'F({prim.theta_f})'
  if prim.kind == PrimitiveKind.FREE_KINETIC:
    return f'G({prim.theta_g})'
  if prim.omega_tau is None:
    return f'FG({prim.theta_g})'
  return f'FG({prim.theta_g},{prim.omega_tau})'


def _format_terms(items) -> str:
  return ' . '.join(
    format_primitive(term.primitive) if isinstance(term, PrimitiveCall) else term.name
    for term in items
  )


def format_program(prog: SequenceProgram) -> str:
  """Canonical text; ``parse(format_program(p)) == p``."""
  lines = [f'def {name} = {_format_terms(body.items)}' for name, body in prog.definitions]
  if prog.items:
    lines.append(_format_terms(prog.items))
  return '\n'.join(lines)
