"""Macro table and sequence expansion endpoints."""

import logging

from fastapi import APIRouter

from mlad.models.api import (
  ExpandRequest,
  ExpandResponse,
  ExpandResult,
  MacroInfo,
  MacroListResponse,
)
from mlad.services.sequences import (
  builtin_table,
  expand,
  expand_name,
  format_primitive,
  parse,
  parse_rational,
  pulse_counts,
)

logger = logging.getLogger(__name__)
router = APIRouter(prefix='/sequences', tags=['sequences'])


@router.get('/macros', response_model=MacroListResponse)
def list_macros():
  """Built-in opcode table with sources and asterisk flags."""
  try:
    table = builtin_table()
    macros = [
      MacroInfo(
        name=macro.name,
        display_name=macro.display_name,
        description=macro.description,
        source=macro.source,
        uncorrected_phases=macro.uncorrected_phases,
      )
      for macro in table.values()
    ]
    return MacroListResponse(success=True, data=macros)
  except Exception as e:
    logger.error(f'Error listing macros: {e}')
    return MacroListResponse(success=False, error=str(e))


@router.post('/expand', response_model=ExpandResponse)
def expand_sequence(body: ExpandRequest):
  """Expand DSL text or a macro name into primitives in application order."""
  try:
    if (body.text is None) == (body.name is None):
      raise ValueError('Provide exactly one of text or name')
    omega_tau = parse_rational(body.omega_tau) if body.omega_tau else None
    if body.name is not None:
      prims = expand_name(body.name, builtin_table(), omega_tau)
    else:
      prims = expand(parse(body.text), builtin_table(), omega_tau)
    result = ExpandResult(
      primitives=[format_primitive(p) for p in prims],
      count=len(prims),
      pulse_counts=pulse_counts(prims),
    )
    return ExpandResponse(success=True, data=result)
  except Exception as e:
    logger.error(f'Error expanding sequence: {e}')
    return ExpandResponse(success=False, error=str(e))
