"""Sequence programs and macro tables."""

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union

from pydantic import BaseModel

from mlad.errors import UnknownMacroError
from mlad.models.ladder import Primitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimitiveCall:
  primitive: Primitive
  line: int = field(default=0, compare=False)
  column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MacroCall:
  name: str
  line: int = field(default=0, compare=False)
  column: int = field(default=0, compare=False)


Term = Union[PrimitiveCall, MacroCall]


@dataclass(frozen=True)
class SequenceProgram:
  """Terms in textual order; the last term is applied first.

  ``definitions`` holds user macros declared with ``def NAME = ...`` in the
  order they appear.
  """

  items: tuple[Term, ...] = ()
  definitions: tuple[tuple[str, 'SequenceProgram'], ...] = ()

  def __post_init__(self):
    object.__setattr__(self, 'items', tuple(self.items))
    object.__setattr__(self, 'definitions', tuple(self.definitions))

  def __len__(self) -> int:
    return len(self.items)

  def __iter__(self) -> Iterator[Term]:
    return iter(self.items)

  @property
  def is_empty(self) -> bool:
    return not self.items

  def macro_names(self) -> list[str]:
    return [term.name for term in self.items if isinstance(term, MacroCall)]


@dataclass(frozen=True)
class Macro:
  name: str
  program: SequenceProgram
  uncorrected_phases: bool = False
  display_name: Optional[str] = None
  description: str = ''
  source: str = ''
  builtin: bool = False


class MacroTable(Mapping[str, Macro]):
  """Immutable name -> Macro mapping."""

  def __init__(self, macros: Iterable[Macro] = ()):
    self._macros: dict[str, Macro] = {}
    for macro in macros:
      self._macros[macro.name] = macro

  def __getitem__(self, name: str) -> Macro:
    try:
      return self._macros[name]
    except KeyError:
      raise UnknownMacroError(name, list(self._macros)) from None

  def __contains__(self, name: object) -> bool:
    return name in self._macros

  def get(self, name: str, default: Optional[Macro] = None) -> Optional[Macro]:
    return self._macros.get(name, default)

  def __iter__(self) -> Iterator[str]:
    return iter(self._macros)

  def __len__(self) -> int:
    return len(self._macros)

  def __repr__(self) -> str:
    return f'MacroTable({", ".join(self._macros)})'

  def is_flagged(self, name: str) -> bool:
    """True for rows whose phases are left uncorrected (asterisked)."""
    return self[name].uncorrected_phases

  def with_macros(self, macros: Iterable[Macro]) -> 'MacroTable':
    """New table with ``macros`` added; a user macro may shadow a built-in."""
    merged = dict(self._macros)
    for macro in macros:
      existing = merged.get(macro.name)
      if existing is not None and existing.builtin:
        logger.warning(f'User macro {macro.name} shadows the built-in definition')
      merged[macro.name] = macro
    return MacroTable(merged.values())

  def with_program_definitions(self, prog: SequenceProgram) -> 'MacroTable':
    if not prog.definitions:
      return self
    return self.with_macros(Macro(name, body) for name, body in prog.definitions)


class PulseCounts(BaseModel):
  """Primitive tally of an expansion, pulses grouped by Rabi angle."""

  half_pi: int = 0
  pi: int = 0
  two_pi: int = 0
  other: int = 0
  free: int = 0

  @property
  def pulses(self) -> int:
    return self.half_pi + self.pi + self.two_pi + self.other
