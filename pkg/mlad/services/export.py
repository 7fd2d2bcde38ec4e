"""CSV and manifest output for simulation runs."""

import logging
from pathlib import Path
from typing import List, Sequence, Tuple

import pandas as pd

from mlad.models.cooling import CycleHistogram
from mlad.models.manifest import RunManifest

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['cycle', 'bin_center', 'probability_density']


def histograms_to_frame(histograms: Sequence[CycleHistogram]) -> pd.DataFrame:
  """One row per (cycle, bin), cycles in recorded order."""
  rows = [(h.cycle, b.center, b.density) for h in histograms for b in h.bins]
  return pd.DataFrame(rows, columns=CSV_COLUMNS)


def output_paths(out: Path) -> Tuple[Path, Path]:
  """CSV path and its manifest path for an ``--out`` argument (suffix optional)."""
  out = Path(out)
  csv_path = out if out.suffix == '.csv' else out.with_name(out.name + '.csv')
  manifest_path = csv_path.with_name(csv_path.stem + '.manifest.json')
  return csv_path, manifest_path


def write_csv(histograms: Sequence[CycleHistogram], path: Path) -> Path:
  """Write histograms with a '.' decimal point and '\\n' line endings.

  Raises:
      OSError: the file cannot be written
  """
  frame = histograms_to_frame(histograms)
  frame.to_csv(path, index=False, lineterminator='\n', float_format='%.6f')
  logger.info(f'Wrote {len(frame)} histogram rows to {path}')
  return path


def write_manifest(manifest: RunManifest, path: Path) -> Path:
  Path(path).write_text(manifest.model_dump_json(indent=2) + '\n', encoding='utf-8')
  logger.info(f'Wrote run manifest to {path}')
  return path


def export_run(
  histograms: List[CycleHistogram], manifest: RunManifest, out: Path
) -> Tuple[Path, Path]:
  """Write the CSV and its manifest side by side; the manifest lists both files."""
  csv_path, manifest_path = output_paths(out)
  write_csv(histograms, csv_path)
  manifest.outputs = [str(csv_path), str(manifest_path)]
  write_manifest(manifest, manifest_path)
  return csv_path, manifest_path
