"""Monte Carlo ensemble of the coherent cooling cycle with spontaneous emission.

Every cycle applies the RR3 right-rotation coherently to each atom, then lets
an excited atom decay once with a random recoil. In the register frame the
atom is then moved back by whole blocks of eight into the block around the RR3
fixed point, which the cycle treats identically, and momenta are read modulo
the block. Atoms are independent and
each draws from its own random stream, seeded from (seed, atom index), so a
run is reproducible whatever the chunking across threads.
"""

import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from mlad.config_loader import config_loader, thread_cap
from mlad.errors import BoundaryLeakageError
from mlad.models.cooling import (
  BLOCK,
  CycleHistogram,
  DecayModel,
  DistributionStats,
  EnsembleConfig,
  HistogramBin,
  SummaryRow,
)
from mlad.models.ladder import Angle, LadderState, Primitive
from mlad.services.ladder import apply_sequence, evolve_batch, shift_amplitudes
from mlad.services.sequences import builtin_table, expand_name

logger = logging.getLogger(__name__)


def rr3_primitives(omega_tau: Optional[Angle] = None) -> List[Primitive]:
  return expand_name('RR3', builtin_table(), omega_tau)


def coherent_cooling_step(
  s: LadderState, prims: Optional[Sequence[Primitive]] = None
) -> LadderState:
  """One RR3 right-rotation with the atom's true momenta in every kinetic phase.

  Raises:
      BoundaryLeakageError: probability reaches the window edges
  """
  return apply_sequence(s, prims if prims is not None else rr3_primitives())


def sample_recoil(rng: np.random.Generator, model: DecayModel = 'uniform') -> float:
  """Recoil along the ladder axis, in [-1, 1].

  ``uniform`` is flat; ``dipole`` has density 3/8 (1 + u^2), drawn by rejection.
  """
  if model == 'uniform':
    return float(rng.uniform(-1.0, 1.0))
  while True:
    u = rng.uniform(-1.0, 1.0)
    if 2.0 * rng.random() <= 1.0 + u * u:
      return float(u)


def _collapse_row(
  row: np.ndarray,
  offset: float,
  n_min: int,
  rng: np.random.Generator,
  model: DecayModel,
) -> Tuple[np.ndarray, float]:
  size = row.shape[0]
  excited = (np.arange(n_min, n_min + size) % 2) == 1
  probs = np.abs(row) ** 2
  p_excited = float(probs[excited].sum())
  ground_norm = math.sqrt(float(probs[~excited].sum()))
  if rng.random() >= p_excited and ground_norm > 0.0:
    out = np.where(excited, 0.0, row) / ground_norm
    return out.astype(complex), offset

  conditional = np.where(excited, probs, 0.0)
  position = int(rng.choice(size, p=conditional / conditional.sum()))
  momentum = n_min + position + offset + sample_recoil(rng, model)
  index = 2 * math.floor(momentum / 2)
  margin = config_loader.boundary_margin
  if not n_min + margin <= index <= n_min + size - 1 - margin:
    logger.error(f'Recoil placed an atom at index {index}, outside usable window')
    raise BoundaryLeakageError(1.0, config_loader.leakage_tolerance)
  out = np.zeros(size, dtype=complex)
  out[index - n_min] = 1.0
  return out, momentum - index


def spontaneous_emission_collapse(
  s: LadderState, rng: np.random.Generator, decay_model: DecayModel = 'uniform'
) -> LadderState:
  """Measure the electronic level; an excited atom decays once with a random recoil.

  With probability equal to the excited population the atom ends as a pure
  ground state at (sampled excited momentum + recoil). Otherwise the state is
  projected on the ground manifold and renormalized, keeping its coherences.
  """
  row, offset = _collapse_row(np.array(s.amplitudes), s.offset, s.n_min, rng, decay_model)
  return LadderState(s.window, offset, row)


def recentre_row(row: np.ndarray, offset: float, n_min: int, origin: int) -> np.ndarray:
  """Shift an atom by whole blocks so its mean momentum lies in [origin - 4, origin + 4).

  The cooling cycle commutes with such moves up to a global phase, so this only
  changes which copy of the block the atom is followed in.
  """
  probs = np.abs(row) ** 2
  indices = np.arange(n_min, n_min + row.shape[0])
  mean = float(probs @ indices) / float(probs.sum()) + offset
  blocks = math.floor((mean - origin + BLOCK / 2) / BLOCK)
  if blocks == 0:
    return row
  return shift_amplitudes(row, -BLOCK * blocks)


def fold_momenta(momenta: np.ndarray, origin: int) -> np.ndarray:
  """Read momenta modulo the block, in [origin - 4, origin + 4)."""
  low = origin - BLOCK // 2
  return low + np.mod(momenta - low, BLOCK)


def _measure_row(row: np.ndarray, offset: float, n_min: int, rng: np.random.Generator) -> float:
  probs = np.abs(row) ** 2
  position = int(rng.choice(row.shape[0], p=probs / probs.sum()))
  return n_min + position + offset


def _initial_momentum(cfg: EnsembleConfig, rng: np.random.Generator) -> float:
  lo, hi = cfg.initial_span
  if cfg.initial_distribution == 'even_integers':
    return lo + 2.0 * int(rng.integers(0, 4))
  return float(rng.uniform(lo, hi))


def _run_chunk(
  cfg: EnsembleConfig, start: int, stop: int, prims: Sequence[Primitive]
) -> Dict[int, np.ndarray]:
  n_min, n_max = cfg.ladder_window
  size = n_max - n_min + 1
  count = stop - start
  rngs = [
    np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(atom,)))
    for atom in range(start, stop)
  ]

  amps = np.zeros((count, size), dtype=complex)
  offsets = np.zeros(count)
  momenta = np.zeros(count)
  for k, rng in enumerate(rngs):
    momentum = _initial_momentum(cfg, rng)
    index = 2 * math.floor(momentum / 2)
    amps[k, index - n_min] = 1.0
    offsets[k] = momentum - index
    momenta[k] = momentum

  def readout() -> np.ndarray:
    if cfg.frame == 'register':
      return fold_momenta(momenta, cfg.register_origin)
    return momenta.copy()

  recorded = set(cfg.recorded)
  records: Dict[int, np.ndarray] = {}
  if 0 in recorded:
    records[0] = readout()
  for cycle in range(1, cfg.cycles + 1):
    amps = evolve_batch(amps, n_min, offsets, prims)
    for k, rng in enumerate(rngs):
      if cfg.emission:
        amps[k], offsets[k] = _collapse_row(amps[k], offsets[k], n_min, rng, cfg.decay_model)
      if cfg.frame == 'register':
        amps[k] = recentre_row(amps[k], offsets[k], n_min, cfg.register_origin)
      momenta[k] = _measure_row(amps[k], offsets[k], n_min, rng)
    if cycle in recorded:
      records[cycle] = readout()
  return records


def _resolve_threads(cfg: EnsembleConfig) -> int:
  threads = cfg.threads or os.cpu_count() or 1
  cap = thread_cap()
  return min(threads, cap) if cap else threads


def run_ensemble(cfg: EnsembleConfig) -> List[CycleHistogram]:
  """Simulate ``cfg.atom_count`` atoms and histogram the recorded cycles.

  Atoms are processed in fixed chunks of ``cfg.chunk_size``; the thread count
  only changes how chunks are scheduled.
  """
  prims = rr3_primitives(cfg.omega_tau_fraction)
  chunks = [
    (start, min(start + cfg.chunk_size, cfg.atom_count))
    for start in range(0, cfg.atom_count, cfg.chunk_size)
  ]
  threads = _resolve_threads(cfg)
  logger.info(
    f'Running ensemble: {cfg.atom_count} atoms, {cfg.cycles} cycles, seed {cfg.seed}, '
    f'{len(chunks)} chunks on {threads} threads'
  )
  started = time.perf_counter()
  with ThreadPoolExecutor(max_workers=threads) as executor:
    results = list(executor.map(lambda bounds: _run_chunk(cfg, *bounds, prims), chunks))

  histograms = []
  for cycle in cfg.recorded:
    momenta = np.concatenate([result[cycle] for result in results])
    histograms.append(build_histogram(momenta, cycle, cfg))
  elapsed = time.perf_counter() - started
  final = histograms[-1].stats if histograms else None
  if final is not None:
    logger.info(f'Ensemble finished in {elapsed:.1f}s; final std {final.std:.4f}')
  return histograms


def histogram_edges(window: Tuple[int, int], bin_width: float) -> np.ndarray:
  """Edges with centres at n_min + k * bin_width, covering every momentum in the window."""
  n_min, n_max = window
  count = math.ceil((n_max + 2 - n_min) / bin_width) + 1
  return n_min - bin_width / 2 + bin_width * np.arange(count + 1)


def build_histogram(momenta: np.ndarray, cycle: int, cfg: EnsembleConfig) -> CycleHistogram:
  edges = histogram_edges(cfg.ladder_window, cfg.bin_width)
  counts, _ = np.histogram(momenta, bins=edges)
  densities = counts / (len(momenta) * cfg.bin_width)
  centers = edges[:-1] + cfg.bin_width / 2
  histogram = CycleHistogram(
    cycle=cycle,
    atom_count=len(momenta),
    bin_width=cfg.bin_width,
    bins=[HistogramBin(center=float(c), density=float(d)) for c, d in zip(centers, densities)],
  )
  histogram.stats = distribution_stats(histogram)
  return histogram


def distribution_stats(h: CycleHistogram) -> DistributionStats:
  """Mean and standard deviation from bin centres; IQR interpolated within bins."""
  centers = np.array([b.center for b in h.bins])
  masses = np.array([b.density for b in h.bins]) * h.bin_width
  total = masses.sum()
  if total <= 0:
    return DistributionStats(mean=0.0, std=0.0, iqr=0.0)
  masses = masses / total
  mean = float((masses * centers).sum())
  std = float(math.sqrt(max(0.0, (masses * (centers - mean) ** 2).sum())))

  cumulative = np.cumsum(masses)

  def quantile(q: float) -> float:
    k = int(np.searchsorted(cumulative, q))
    k = min(k, len(masses) - 1)
    before = cumulative[k - 1] if k > 0 else 0.0
    left = centers[k] - h.bin_width / 2
    if masses[k] == 0:
      return float(left)
    return float(left + (q - before) / masses[k] * h.bin_width)

  std_error = std / math.sqrt(2 * h.atom_count) if h.atom_count else 0.0
  return DistributionStats(
    mean=mean, std=std, iqr=quantile(0.75) - quantile(0.25), std_error=std_error
  )


def summarize(histograms: Sequence[CycleHistogram]) -> List[SummaryRow]:
  rows = []
  for h in histograms:
    stats = h.stats or distribution_stats(h)
    rows.append(SummaryRow(cycle=h.cycle, mean=stats.mean, std=stats.std, iqr=stats.iqr))
  return rows
