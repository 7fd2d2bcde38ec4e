"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/parse/unknown name,
3 I/O error. Logs go to stderr; results go to stdout.
"""

import json
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Tuple

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from mlad import __version__
from mlad.config_loader import config_loader
from mlad.errors import (
  BoundaryLeakageError,
  EnsembleConfigError,
  MacroCycleError,
  SequenceSyntaxError,
  UnknownGateError,
  UnknownMacroError,
)
from mlad.models.cooling import EnsembleConfig
from mlad.models.gates import VerificationReport
from mlad.models.manifest import RunManifest
from mlad.services.sequences import (
  builtin_table,
  expand,
  format_primitive,
  parse,
  parse_rational,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

_USAGE_ERRORS = (
  SequenceSyntaxError,
  UnknownMacroError,
  MacroCycleError,
  UnknownGateError,
  EnsembleConfigError,
  BoundaryLeakageError,
)


def _fail(message: str, code: int):
  click.echo(f'error: {message}', err=True)
  sys.exit(code)


def _pair(kind):
  def convert(ctx, param, value: Optional[str]):
    if value is None:
      return None
    try:
      lo, hi = value.split(':')
      return kind(lo), kind(hi)
    except ValueError:
      raise click.BadParameter(f'expected LO:HI, got {value!r}') from None

  return convert


@click.group()
@click.option('-v', '--verbose', is_flag=True, help='Debug logging on stderr.')
@click.version_option(__version__, prog_name='mlad')
def main(verbose: bool):
  """Momentum-ladder quantum computer: expand, verify and simulate pulse sequences."""
  logging.basicConfig(
    level=logging.DEBUG if verbose else logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler(sys.stderr)],
    force=True,
  )
  if load_dotenv(dotenv_path='.env.local'):
    logger.debug('Loaded .env.local')


@main.command('expand')
@click.argument('target', required=False, default='')
@click.option('-e', '--expr', help='Inline sequence text instead of a name or file.')
@click.option('--omega-tau', help='Ratio for FG terms without one, e.g. 5/2.')
def cmd_expand(target: str, expr: Optional[str], omega_tau: Optional[str]):
  """Print the primitives of a macro name, DSL file or inline text, first applied first."""
  if expr is not None:
    text = expr
  elif target and Path(target).is_file():
    try:
      text = Path(target).read_text(encoding='utf-8')
    except OSError as e:
      _fail(str(e), EXIT_IO)
  else:
    text = target
  try:
    ratio = parse_rational(omega_tau) if omega_tau else None
    prims = expand(parse(text), builtin_table(), ratio)
  except _USAGE_ERRORS as e:
    _fail(str(e), EXIT_USAGE)
  for prim in prims:
    click.echo(format_primitive(prim))


def _report_table(reports: List[VerificationReport]) -> Table:
  table = Table(title='Opcode verification')
  for column in ('opcode', 'name', 'result', 'class', 'fidelity', 'prims', 'pi/2', 'pi'):
    table.add_column(column)
  for r in reports:
    result = 'PASS' if r.passed else 'FAIL'
    if r.flagged:
      result += ' *'
    table.add_row(
      r.opcode,
      r.display_name or '',
      result,
      r.equivalence or '-',
      f'{r.fidelity:.9f}',
      str(r.primitive_count),
      str(r.pulse_counts.half_pi),
      str(r.pulse_counts.pi),
    )
  return table


@main.command('verify')
@click.argument('names', nargs=-1)
@click.option('--all', 'verify_every', is_flag=True, help='Verify every built-in opcode.')
@click.option('--json', 'as_json', is_flag=True, help='Print the reports as a JSON array.')
@click.option('--literal-g', is_flag=True, help='Use the basic G row with alpha = pi pulses.')
def cmd_verify(names: Tuple[str, ...], verify_every: bool, as_json: bool, literal_g: bool):
  """Compare composed opcodes with their ideal gates; exit 1 if any fails."""
  from mlad.services.gates import verify_all, verify_named

  if not names and not verify_every:
    _fail('give opcode names or --all', EXIT_USAGE)
  table = builtin_table(literal_g)
  try:
    if verify_every:
      reports = verify_all(table)
    else:
      reports = [verify_named(name, table) for name in names]
  except _USAGE_ERRORS as e:
    _fail(str(e), EXIT_USAGE)

  if as_json:
    click.echo(json.dumps([r.model_dump(mode='json') for r in reports], indent=2))
  elif len(reports) == 1:
    r = reports[0]
    status = 'PASS' if r.passed else 'FAIL'
    line = f'{status} fidelity {r.fidelity:.9f} class {r.equivalence or "none"}'
    if r.flagged:
      line += f' (flagged: nominal {r.nominal_class})'
    click.echo(line)
    if r.pulse_count_note:
      click.echo(r.pulse_count_note)
  else:
    Console().print(_report_table(reports))

  sys.exit(EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED)


@main.command('simulate')
@click.option('--atoms', type=int, help='Number of atoms.')
@click.option('--cycles', type=int, help='Cooling cycles.')
@click.option('--seed', type=int, help='Random seed.')
@click.option('--span', callback=_pair(float), help='Initial momentum interval LO:HI.')
@click.option('--window', callback=_pair(int), help='Ladder index window LO:HI (derived if unset).')
@click.option(
  '--frame',
  type=click.Choice(['register', 'ladder']),
  help='Follow atoms within their eight-block or on the absolute ladder.',
)
@click.option('--decay', type=click.Choice(['uniform', 'dipole']), help='Recoil model.')
@click.option('--initial', type=click.Choice(['flat', 'even_integers']))
@click.option('--bin', 'bin_width', type=float, help='Histogram bin width.')
@click.option('--record', help='Comma-separated cycles to record (default all).')
@click.option('--no-emission', is_flag=True, help='Skip spontaneous emission.')
@click.option('--threads', type=int, help='Worker threads (results do not depend on it).')
@click.option('--out', type=click.Path(path_type=Path), required=True, help='Output CSV path.')
@click.option('--track', is_flag=True, help='Log the run to MLflow.')
def cmd_simulate(
  atoms: Optional[int],
  cycles: Optional[int],
  seed: Optional[int],
  span: Optional[Tuple[float, float]],
  window: Optional[Tuple[int, int]],
  frame: Optional[str],
  decay: Optional[str],
  initial: Optional[str],
  bin_width: Optional[float],
  record: Optional[str],
  no_emission: bool,
  threads: Optional[int],
  out: Path,
  track: bool,
):
  """Run a cooling ensemble and write CSV histograms plus a manifest."""
  from mlad.services.cooling import run_ensemble, summarize
  from mlad.services.export import export_run
  from mlad.tracing import log_simulation_run, tracking_enabled

  try:
    record_cycles = [int(c) for c in record.split(',')] if record else None
  except ValueError:
    _fail(f'--record expects comma-separated integers, got {record!r}', EXIT_USAGE)
  try:
    cfg = EnsembleConfig.from_settings(
      config_loader.ensemble_config,
      atom_count=atoms,
      cycles=cycles,
      seed=seed,
      initial_span=span,
      window=window,
      frame=frame,
      decay_model=decay,
      initial_distribution=initial,
      bin_width=bin_width,
      record_cycles=record_cycles,
      emission=False if no_emission else None,
      threads=threads,
    )
    started_at = datetime.now(timezone.utc)
    clock = time.perf_counter()
    histograms = run_ensemble(cfg)
  except _USAGE_ERRORS as e:
    _fail(str(e), EXIT_USAGE)

  summary = summarize(histograms)
  manifest = RunManifest(
    command='simulate',
    config=cfg.model_dump(mode='json'),
    seed=cfg.seed,
    version=__version__,
    started_at=started_at,
    duration_seconds=time.perf_counter() - clock,
    summary=summary,
  )
  try:
    paths = export_run(histograms, manifest, out)
  except OSError as e:
    _fail(f'cannot write output: {e}', EXIT_IO)

  table = Table(title=f'Cooling ensemble ({cfg.atom_count} atoms, seed {cfg.seed})')
  for column in ('cycle', 'mean', 'std', 'iqr'):
    table.add_column(column, justify='right')
  for row in summary:
    table.add_row(str(row.cycle), f'{row.mean:.4f}', f'{row.std:.4f}', f'{row.iqr:.4f}')
  console = Console()
  console.print(table)
  if summary:
    click.echo(f'final std {summary[-1].std:.4f}')
  click.echo(f'wrote {paths[0]} and {paths[1]}')

  if tracking_enabled(track):
    log_simulation_run(cfg, histograms, paths)


@main.command('check-g')
@click.option('--theta', default='1/8', show_default=True, help='Kinetic angle in units of pi.')
@click.option(
  '--omega-tau', 'omega_taus', multiple=True, help='Ratio(s) to test; default 1/3, 5/2, 7.'
)
@click.option('--literal-g', is_flag=True, help='Use alpha = pi pulses as printed.')
def cmd_check_g(theta: str, omega_taus: Tuple[str, ...], literal_g: bool):
  """Check that the basic G sequence equals G(theta) independent of omega_tau."""
  from mlad.services.gates import check_gbasic

  try:
    angle = parse_rational(theta)
    ratios = [parse_rational(r) for r in omega_taus or ('1/3', '5/2', '7')]
    results = [check_gbasic(angle, ratio, literal_g=literal_g) for ratio in ratios]
  except _USAGE_ERRORS as e:
    _fail(str(e), EXIT_USAGE)
  for result in results:
    status = 'PASS' if result.passed else 'FAIL'
    click.echo(
      f'{status} theta {result.theta_g} omega_tau {result.omega_tau} '
      f'fidelity {result.fidelity:.12f}'
    )
  sys.exit(EXIT_OK if all(r.passed for r in results) else EXIT_FAILED)


@main.command('serve')
@click.option('--host', default='127.0.0.1', show_default=True)
@click.option('--port', default=8000, show_default=True, type=int)
@click.option('--reload', is_flag=True)
def cmd_serve(host: str, port: int, reload: bool):
  """Start the HTTP API."""
  import uvicorn

  uvicorn.run('mlad.app:app', host=host, port=port, reload=reload)


if __name__ == '__main__':
  main()
