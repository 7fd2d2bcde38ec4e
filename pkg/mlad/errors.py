"""Domain errors.

Every error raised on purpose by the package subclasses ``ValueError``.
"""

from typing import Optional


class LadderError(ValueError):
  """Invalid ladder state or primitive."""


class BoundaryLeakageError(LadderError):
  """Probability reached the edge of an open window."""

  def __init__(self, probability: float, tolerance: float):
    self.probability = probability
    self.tolerance = tolerance
    super().__init__(
      f'Boundary leakage {probability:.3e} exceeds tolerance {tolerance:.1e}; '
      'widen the window'
    )


class CyclicTopologyError(LadderError):
  """Primitive cannot be represented on a cyclic window."""


class DimensionMismatchError(LadderError):
  """Operands live on different spaces."""


class SequenceSyntaxError(ValueError):
  """Malformed sequence text."""

  def __init__(self, message: str, line: int, column: int):
    self.line = line
    self.column = column
    super().__init__(f'{message} (line {line}, column {column})')


class UnknownMacroError(ValueError):
  """Macro name not present in the active table."""

  def __init__(self, name: str, known: Optional[list[str]] = None):
    self.name = name
    hint = f'; known: {", ".join(sorted(known))}' if known else ''
    super().__init__(f'Unknown macro: {name}{hint}')


class MacroCycleError(ValueError):
  """Macro definitions reference each other recursively."""

  def __init__(self, chain: list[str]):
    self.chain = chain
    super().__init__(f'Recursive macro definition: {" -> ".join(chain)}')


class UnknownGateError(ValueError):
  """No ideal gate with this name."""

  def __str__(self) -> str:
    return f'Unknown gate: {self.args[0]}'


class EnsembleConfigError(ValueError):
  """Inconsistent Monte Carlo configuration."""
