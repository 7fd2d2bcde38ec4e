"""Health check endpoint."""

import logging
import time

from fastapi import APIRouter

from mlad import __version__

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get('/health')
async def health_check():
  """Report liveness and the package version."""
  try:
    return {
      'status': 'healthy',
      'version': __version__,
      'timestamp': int(time.time() * 1000),
    }
  except Exception as e:
    logger.error(f'Health check failed: {str(e)}')
    return {'status': 'unhealthy', 'error': str(e), 'timestamp': int(time.time() * 1000)}
