#!/usr/bin/env python3
"""Generate requirements.txt from pyproject.toml."""

import sys
import tomllib
from pathlib import Path


def generate_requirements():
  """Extract runtime dependencies from pyproject.toml and write requirements.txt."""
  pyproject_path = Path('pyproject.toml')
  if not pyproject_path.exists():
    print('Error: pyproject.toml not found', file=sys.stderr)
    sys.exit(1)

  with open(pyproject_path, 'rb') as f:
    pyproject = tomllib.load(f)
  dependencies = pyproject.get('project', {}).get('dependencies', [])

  lines = ['# Auto-generated from pyproject.toml by scripts/generate_requirements.py', '']
  lines.extend(dep for dep in dependencies if not dep.strip().startswith('#'))
  lines.append('')
  Path('requirements.txt').write_text('\n'.join(lines))

  print(f'Generated requirements.txt with {len(dependencies)} dependencies')


if __name__ == '__main__':
  generate_requirements()
