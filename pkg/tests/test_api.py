"""Tests for the HTTP API."""

import pytest
from fastapi.testclient import TestClient

from mlad.app import app


@pytest.fixture(scope='module')
def client():
  with TestClient(app) as test_client:
    yield test_client


class TestHealthAndConfig:
  """Service status and configuration."""

  def test_health(self, client):
    """Test that the health endpoint reports healthy."""
    body = client.get('/api/health').json()
    assert body['status'] == 'healthy'

  def test_config(self, client):
    """Test that the config endpoint exposes the ladder omega_tau."""
    body = client.get('/api/config').json()
    assert body['ladder']['omega_tau'] == '5/2'


class TestSequences:
  """Macro listing and expansion."""

  def test_macros(self, client):
    """Test that all sixteen built-in macros are listed, GBASIC first."""
    body = client.get('/api/sequences/macros').json()
    assert body['success']
    names = [m['name'] for m in body['data']]
    assert len(names) == 16
    assert names[0] == 'GBASIC'

  def test_expand_name(self, client):
    """Test that a macro name expands in application order with pulse counts."""
    body = client.post('/api/sequences/expand', json={'name': 'NOT0'}).json()
    assert body['success']
    assert body['data']['primitives'] == ['F(1/2)', 'W+(1/2,0)', 'F(1/2)']
    assert body['data']['pulse_counts']['pi'] == 1

  def test_expand_text(self, client):
    """Test that inline text expands with the requested omega_tau."""
    body = client.post(
      '/api/sequences/expand', json={'text': 'FG(1/8)', 'omega_tau': '1/3'}
    ).json()
    assert body['data']['primitives'] == ['FG(1/8,1/3)']

  def test_expand_needs_exactly_one_input(self, client):
    """Test that giving both text and name is an error."""
    body = client.post('/api/sequences/expand', json={'text': 'F(1)', 'name': 'NOT0'}).json()
    assert not body['success']
    assert body['error']

  def test_expand_unknown(self, client):
    """Test that an unknown macro name is reported."""
    body = client.post('/api/sequences/expand', json={'name': 'BOGUS'}).json()
    assert not body['success']
    assert 'BOGUS' in body['error']


class TestGates:
  """Verification endpoints."""

  def test_verify_one(self, client):
    """Test that CNOT10 verifies up to a global phase."""
    body = client.get('/api/gates/verify/CNOT10').json()
    assert body['success']
    assert body['data']['passed']
    assert body['data']['equivalence'] == 'global'

  def test_verify_unknown(self, client):
    """Test that an unknown gate gives an error envelope."""
    body = client.get('/api/gates/verify/BOGUS').json()
    assert not body['success']
    assert body['error'] == 'Unknown gate: BOGUS'

  def test_verify_table(self, client):
    """Test that the whole table verifies in one call."""
    body = client.get('/api/gates/verify').json()
    assert body['success']
    assert len(body['data']) == 16

  def test_check_g(self, client):
    """Test that the G check passes for theta 1/3 at omega_tau 7."""
    body = client.get('/api/gates/check-g', params={'theta': '1/3', 'omega_tau': '7'}).json()
    assert body['success']
    assert body['data']['passed']


class TestCooling:
  """Ensemble endpoint."""

  def test_simulate(self, client):
    """Test that a small ensemble returns one histogram per cycle."""
    body = client.post(
      '/api/cooling/simulate', json={'atom_count': 32, 'cycles': 1, 'seed': 3}
    ).json()
    assert body['success'], body['error']
    assert [h['cycle'] for h in body['data']['histograms']] == [0, 1]
    assert body['data']['config']['seed'] == 3

  def test_atom_limit(self, client):
    """Test that an oversized ensemble is refused."""
    body = client.post('/api/cooling/simulate', json={'atom_count': 100000}).json()
    assert not body['success']
    assert 'exceeds' in body['error']

  def test_invalid(self, client):
    """Test that a negative cycle count is refused."""
    body = client.post('/api/cooling/simulate', json={'cycles': -1}).json()
    assert not body['success']

  def test_narrow_window(self, client):
    """Test that an explicit window too narrow for the cycles is refused."""
    body = client.post('/api/cooling/simulate', json={'cycles': 8, 'window': [-2, 9]}).json()
    assert not body['success']
    assert 'too narrow' in body['error']

  def test_ladder_frame(self, client):
    """Test that the ladder frame is accepted and echoed in the config."""
    body = client.post(
      '/api/cooling/simulate', json={'atom_count': 16, 'cycles': 1, 'frame': 'ladder'}
    ).json()
    assert body['success'], body['error']
    assert body['data']['config']['frame'] == 'ladder'
