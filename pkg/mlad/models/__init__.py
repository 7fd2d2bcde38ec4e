from .cooling import CycleHistogram, DistributionStats, EnsembleConfig
from .gates import GCheckResult, IdealGate, VerificationReport
from .ladder import Cyclic, LadderState, OpenWindow, Primitive, PrimitiveKind, UnitaryMatrix
from .manifest import RunManifest
from .sequence import Macro, MacroCall, MacroTable, PrimitiveCall, PulseCounts, SequenceProgram

__all__ = [
  'CycleHistogram',
  'Cyclic',
  'DistributionStats',
  'EnsembleConfig',
  'GCheckResult',
  'IdealGate',
  'LadderState',
  'Macro',
  'MacroCall',
  'MacroTable',
  'OpenWindow',
  'Primitive',
  'PrimitiveCall',
  'PrimitiveKind',
  'PulseCounts',
  'RunManifest',
  'SequenceProgram',
  'UnitaryMatrix',
  'VerificationReport',
]
