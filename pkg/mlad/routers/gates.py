"""Gate verification endpoints."""

import logging

from fastapi import APIRouter

from mlad.models.api import GCheckResponse, VerifyAllResponse, VerifyResponse
from mlad.services.gates import check_gbasic, verify_all, verify_named
from mlad.services.sequences import builtin_table, parse_rational

logger = logging.getLogger(__name__)
router = APIRouter(prefix='/gates', tags=['gates'])


@router.get('/verify', response_model=VerifyAllResponse)
def verify_table(literal_g: bool = False):
  """Verification reports for every built-in opcode."""
  try:
    return VerifyAllResponse(success=True, data=verify_all(builtin_table(literal_g)))
  except Exception as e:
    logger.error(f'Error verifying table: {e}')
    return VerifyAllResponse(success=False, error=str(e))


@router.get('/verify/{name}', response_model=VerifyResponse)
def verify_opcode(name: str, literal_g: bool = False):
  try:
    return VerifyResponse(success=True, data=verify_named(name, builtin_table(literal_g)))
  except Exception as e:
    logger.error(f'Error verifying {name}: {e}')
    return VerifyResponse(success=False, error=str(e))


@router.get('/check-g', response_model=GCheckResponse)
def check_g(theta: str = '1/8', omega_tau: str = '1/3', literal_g: bool = False):
  """Open-window comparison of the basic G sequence with exact kinetic phases."""
  try:
    result = check_gbasic(parse_rational(theta), parse_rational(omega_tau), literal_g=literal_g)
    return GCheckResponse(success=True, data=result)
  except Exception as e:
    logger.error(f'Error in basic G check: {e}')
    return GCheckResponse(success=False, error=str(e))
