"""Optional MLflow experiment tracking for simulation runs.

Tracking is off unless requested with ``--track`` or MLAD_TRACKING=1. The
experiment comes from MLFLOW_EXPERIMENT_NAME or MLFLOW_EXPERIMENT_ID and the
server from MLFLOW_TRACKING_URI (MLflow's own default otherwise).
"""

import logging
import os
from pathlib import Path
from typing import Iterable, List

from mlad.models.cooling import CycleHistogram, EnsembleConfig

logger = logging.getLogger(__name__)


def tracking_enabled(requested: bool = False) -> bool:
  return requested or os.getenv('MLAD_TRACKING', '').lower() in ('1', 'true', 'yes')


def configure_tracking():
  """Point MLflow at the configured server and experiment."""
  import mlflow

  tracking_uri = os.environ.get('MLFLOW_TRACKING_URI')
  if tracking_uri:
    mlflow.set_tracking_uri(tracking_uri)

  experiment_name = os.environ.get('MLFLOW_EXPERIMENT_NAME')
  experiment_id = os.environ.get('MLFLOW_EXPERIMENT_ID')
  if experiment_name:
    mlflow.set_experiment(experiment_name=experiment_name)
    logger.info(f'MLflow experiment name: {experiment_name}')
  elif experiment_id:
    mlflow.set_experiment(experiment_id=experiment_id)
    logger.info(f'MLflow experiment ID: {experiment_id}')
  else:
    logger.warning(
      'Neither MLFLOW_EXPERIMENT_NAME nor MLFLOW_EXPERIMENT_ID set - '
      'runs will go to the default experiment'
    )


def log_simulation_run(
  cfg: EnsembleConfig, histograms: List[CycleHistogram], artifacts: Iterable[Path]
) -> bool:
  """Log config, per-cycle statistics and output files as one MLflow run.

  Returns:
      True if the run was logged; failures are logged and never raised
  """
  try:
    import mlflow

    configure_tracking()
    with mlflow.start_run(run_name=f'ensemble-seed-{cfg.seed}'):
      mlflow.log_params(cfg.model_dump(mode='json'))
      for h in histograms:
        if h.stats is None:
          continue
        mlflow.log_metric('mean', h.stats.mean, step=h.cycle)
        mlflow.log_metric('std', h.stats.std, step=h.cycle)
        mlflow.log_metric('iqr', h.stats.iqr, step=h.cycle)
      for path in artifacts:
        mlflow.log_artifact(str(path))
    logger.info('Simulation run logged to MLflow')
    return True
  except Exception as e:
    logger.error(f'MLflow tracking failed: {e}')
    return False
