"""Effective configuration endpoint."""

import logging

from fastapi import APIRouter

from mlad.config_loader import config_loader

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get('/config')
async def get_config():
  """Return the defaults loaded from config/app.json."""
  try:
    return config_loader.app_config
  except Exception as e:
    logger.error(f'Error loading config: {str(e)}')
    return {'error': f'Failed to load configuration: {str(e)}'}
