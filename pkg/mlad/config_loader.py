"""Configuration loader for the simulator.

Loads unified configuration from config/app.json at startup.
All defaults (ladder, verification, G check, ensemble, api) live in one file.
"""

import json
import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class ConfigLoader:
  """Loads and caches simulator configuration from app.json."""

  def __init__(self, config_dir: Optional[Path] = None):
    """Initialize the config loader.

    Args:
        config_dir: Path to config directory. Defaults to $MLAD_CONFIG_DIR, then
            /config in the project root.
    """
    if config_dir is None:
      env_dir = os.getenv('MLAD_CONFIG_DIR')
      config_dir = Path(env_dir) if env_dir else Path(__file__).parent.parent / 'config'

    self.config_dir = config_dir
    self._app_config: Optional[Dict[str, Any]] = None

    self._load_all()

  def _load_json_file(self, filename: str) -> Dict[str, Any]:
    """Load a JSON file from the config directory.

    Args:
        filename: Name of the JSON file to load

    Returns:
        Dictionary with file contents, or empty dict if file not found
    """
    file_path = self.config_dir / filename

    if not file_path.exists():
      logger.warning(f'Config file not found: {file_path}')
      return {}

    try:
      with open(file_path, 'r') as f:
        data = json.load(f)
        logger.debug(f'Loaded config: {filename}')
        return data
    except json.JSONDecodeError as e:
      logger.error(f'Failed to parse {filename}: {e}')
      return {}

  def _load_all(self):
    """Load configuration from app.json."""
    self._app_config = self._load_json_file('app.json')
    sections = ', '.join(sorted(self._app_config)) or 'none'
    logger.debug(f'Configuration loaded: sections {sections}')

  @property
  def app_config(self) -> Dict[str, Any]:
    """Get full configuration."""
    if self._app_config is None:
      self._app_config = self._load_json_file('app.json')
    return self._app_config

  def section(self, name: str) -> Dict[str, Any]:
    """Get one top-level section, empty if absent."""
    return dict(self.app_config.get(name, {}))

  @property
  def ladder_config(self) -> Dict[str, Any]:
    """Ladder defaults (leakage tolerance, boundary margin, omega_tau)."""
    return self.section('ladder')

  @property
  def verification_config(self) -> Dict[str, Any]:
    """Gate verification tolerances and dims."""
    return self.section('verification')

  @property
  def g_check_config(self) -> Dict[str, Any]:
    """Open-window basic-G check layout."""
    return self.section('g_check')

  @property
  def ensemble_config(self) -> Dict[str, Any]:
    """Monte Carlo ensemble defaults."""
    return self.section('ensemble')

  @property
  def api_config(self) -> Dict[str, Any]:
    """HTTP surface limits."""
    return self.section('api')

  @property
  def leakage_tolerance(self) -> float:
    return float(self.ladder_config.get('leakage_tolerance', 1e-9))

  @property
  def boundary_margin(self) -> int:
    return int(self.ladder_config.get('boundary_margin', 2))

  @property
  def omega_tau(self) -> Fraction:
    """Default electronic-to-kinetic ratio for combined free evolution."""
    return Fraction(str(self.ladder_config.get('omega_tau', '5/2')))

  @property
  def gbasic_theta(self) -> Fraction:
    """Kinetic angle of the built-in basic G row and of its ideal gate."""
    return Fraction(str(self.verification_config.get('gbasic_theta', '1/2')))

  def reload(self):
    """Reload configuration from disk."""
    logger.info('Reloading configuration...')
    self._app_config = None
    self._load_all()


def thread_cap() -> Optional[int]:
  """Worker thread cap from MLAD_THREADS, None when unset or invalid."""
  raw = os.getenv('MLAD_THREADS')
  if not raw:
    return None
  try:
    value = int(raw)
  except ValueError:
    logger.warning(f'Ignoring non-integer MLAD_THREADS={raw!r}')
    return None
  return max(1, value)


# Global config loader instance
config_loader = ConfigLoader()
