from .errors import (BackreactionError, CriticalLength, EffectiveMassSingular,
                     SingularSystem, ZeroFrequency)
from .state_types import (BOX_COLUMNS, RING_COLUMNS, EnergyBreakdown, HaltReason, MirrorState,
                          ModeState, ModelKind, SimulationRecord)
from .trajectory import (PowerLawTrajectory, SampledTrajectory, ScaleTrajectory,
                         SinusoidTrajectory, StaticTrajectory, TanhRampTrajectory)

__all__ = [
    "BOX_COLUMNS", "RING_COLUMNS", "BackreactionError", "CriticalLength", "EffectiveMassSingular",
    "EnergyBreakdown", "HaltReason", "MirrorState", "ModeState", "ModelKind", "PowerLawTrajectory",
    "SampledTrajectory", "ScaleTrajectory", "SimulationRecord", "SingularSystem",
    "SinusoidTrajectory", "StaticTrajectory", "TanhRampTrajectory", "ZeroFrequency",
]
