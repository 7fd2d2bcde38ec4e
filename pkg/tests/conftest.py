"""Shared fixtures."""

import pytest

from mlad.services.sequences import builtin_table


@pytest.fixture(scope='session')
def table():
  return builtin_table()


@pytest.fixture
def small_ensemble():
  """Overrides for a quick cooling run."""
  return {'atom_count': 64, 'cycles': 3, 'seed': 7, 'chunk_size': 16}
