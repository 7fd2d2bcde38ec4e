"""Tests for CSV and manifest output."""

import json
from datetime import datetime, timezone
from pathlib import Path

import pytest

from mlad.models.cooling import CycleHistogram, HistogramBin, SummaryRow
from mlad.models.manifest import RunManifest
from mlad.services.export import (
  CSV_COLUMNS,
  export_run,
  histograms_to_frame,
  output_paths,
  write_csv,
)


@pytest.fixture
def histograms():
  return [
    CycleHistogram(
      cycle=cycle,
      atom_count=4,
      bin_width=0.5,
      bins=[HistogramBin(center=0.0, density=1.0), HistogramBin(center=0.5, density=1.0)],
    )
    for cycle in (0, 2)
  ]


def manifest() -> RunManifest:
  return RunManifest(
    command='simulate',
    config={'atom_count': 4},
    seed=1,
    version='0.1.0',
    started_at=datetime(2026, 1, 1, tzinfo=timezone.utc),
    duration_seconds=0.5,
    summary=[SummaryRow(cycle=0, mean=0.25, std=0.25, iqr=0.5)],
  )


class TestOutputPaths:
  """Where a run's files go."""

  def test_suffix_added(self):
    """Test that a bare stem gets .csv and .manifest.json."""
    assert output_paths(Path('out/run')) == (
      Path('out/run.csv'),
      Path('out/run.manifest.json'),
    )

  def test_csv_suffix_kept(self):
    """Test that an existing .csv suffix is not doubled."""
    assert output_paths(Path('run.csv')) == (Path('run.csv'), Path('run.manifest.json'))


class TestWrite:
  """File contents."""

  def test_frame_rows(self, histograms):
    """Test that histograms flatten to one row per bin."""
    frame = histograms_to_frame(histograms)
    assert list(frame.columns) == CSV_COLUMNS
    assert list(frame['cycle']) == [0, 0, 2, 2]

  def test_csv_text(self, histograms, tmp_path):
    """Test that the CSV has a header, fixed precision and LF endings."""
    path = write_csv(histograms, tmp_path / 'run.csv')
    lines = path.read_text().split('\n')
    assert lines[0] == 'cycle,bin_center,probability_density'
    assert lines[1] == '0,0.000000,1.000000'
    assert lines[-1] == ''
    assert '\r' not in path.read_text()

  def test_export_run_writes_both(self, histograms, tmp_path):
    """Test that export_run writes the CSV and a manifest naming both files."""
    csv_path, manifest_path = export_run(histograms, manifest(), tmp_path / 'run')
    assert csv_path.exists()
    data = json.loads(manifest_path.read_text())
    assert data['outputs'] == [str(csv_path), str(manifest_path)]
    assert data['seed'] == 1
    assert data['summary'][0]['std'] == 0.25

  def test_missing_directory(self, histograms, tmp_path):
    """Test that a missing directory raises OSError."""
    with pytest.raises(OSError):
      export_run(histograms, manifest(), tmp_path / 'missing' / 'run')
