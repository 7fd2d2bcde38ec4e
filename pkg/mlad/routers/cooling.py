"""Cooling ensemble endpoint."""

import logging

from fastapi import APIRouter

from mlad.config_loader import config_loader
from mlad.errors import EnsembleConfigError
from mlad.models.api import SimulateRequest, SimulateResponse, SimulateResult
from mlad.models.cooling import EnsembleConfig
from mlad.services.cooling import run_ensemble, summarize

logger = logging.getLogger(__name__)
router = APIRouter(prefix='/cooling', tags=['cooling'])


@router.post('/simulate', response_model=SimulateResponse)
def simulate(body: SimulateRequest):
  """Run a cooling ensemble; the atom count is capped by ``api.max_atoms``."""
  try:
    cfg = EnsembleConfig.from_settings(
      config_loader.ensemble_config, **body.model_dump(exclude_none=True)
    )
    max_atoms = int(config_loader.api_config.get('max_atoms', 2000))
    if cfg.atom_count > max_atoms:
      raise EnsembleConfigError(f'atom_count {cfg.atom_count} exceeds the limit of {max_atoms}')
    histograms = run_ensemble(cfg)
    result = SimulateResult(config=cfg, histograms=histograms, summary=summarize(histograms))
    return SimulateResponse(success=True, data=result)
  except Exception as e:
    logger.error(f'Error running ensemble: {e}')
    return SimulateResponse(success=False, error=str(e))
