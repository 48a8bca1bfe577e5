from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np


class HaltReason(Enum):
    COMPLETED = "completed"
    CRITICAL_LENGTH = "critical_length"
    COLLAPSE = "collapse"
    STEP_UNDERFLOW = "step_underflow"
    EFFECTIVE_MASS_SINGULAR = "effective_mass_singular"

    @property
    def truncated(self) -> bool:
        """Any early stop, physical or numerical, truncates the requested window."""
        return self is not HaltReason.COMPLETED


class ModelKind(Enum):
    RING = "ring"
    BOX = "box"


@dataclass(frozen=True)
class MirrorState:
    t: float
    L: float
    L_dot: float


@dataclass
class ModeState:
    """One field mode: wave vector plus amplitude and its time derivative."""
    k: Tuple[float, ...]
    amplitude: complex
    derivative: complex


@dataclass
class EnergyBreakdown:
    casimir: float = 0.0
    kinetic_anomaly: float = 0.0
    creation: float = 0.0
    kinetic: float = 0.0
    matter_bound: float = 0.0

    @property
    def total(self) -> float:
        return self.casimir + self.kinetic_anomaly + self.creation + self.kinetic


# CSV column order per model
RING_COLUMNS = ["t", "L", "Ldot", "Lddot", "E_casimir", "E_kinetic_anomaly", "E_total"]
BOX_COLUMNS = ["t", "L", "Ldot", "Lddot", "E_creation", "E_kinetic", "ratio_matter_bound"]


@dataclass
class SimulationRecord:
    """Sampled trajectory of one run plus its energies and diagnostics.

    ``energies`` maps a column name (``E_casimir``, ``E_creation``, ...) to
    an array aligned with ``t``.
    """
    model: ModelKind
    t: np.ndarray
    L: np.ndarray
    L_dot: np.ndarray
    L_ddot: np.ndarray
    energies: Dict[str, np.ndarray] = field(default_factory=dict)
    halt_reason: HaltReason = HaltReason.COMPLETED
    halt_time: Optional[float] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    params: Dict[str, Any] = field(default_factory=dict)
    aux: Dict[str, np.ndarray] = field(default_factory=dict)   # series kept out of the CSV

    @property
    def truncated(self) -> bool:
        return self.halt_reason.truncated

    @property
    def n_samples(self) -> int:
        return int(self.t.size)

    @property
    def dt(self) -> float:
        if self.t.size < 2:
            return 0.0
        return float(self.t[1] - self.t[0])

    def states(self) -> List[MirrorState]:
        return [MirrorState(float(t), float(L), float(v))
                for t, L, v in zip(self.t, self.L, self.L_dot)]

    def final_state(self) -> MirrorState:
        return MirrorState(float(self.t[-1]), float(self.L[-1]), float(self.L_dot[-1]))

    def window(self, t_max: float) -> "SimulationRecord":
        """Copy restricted to samples with t <= t_max."""
        keep = self.t <= t_max
        return SimulationRecord(
            model=self.model,
            t=self.t[keep], L=self.L[keep], L_dot=self.L_dot[keep], L_ddot=self.L_ddot[keep],
            energies={name: values[keep] for name, values in self.energies.items()},
            halt_reason=self.halt_reason,
            halt_time=self.halt_time,
            diagnostics=dict(self.diagnostics),
            params=dict(self.params),
            aux={name: values[keep] for name, values in self.aux.items()},
        )

    def energy_breakdown(self, index: int = -1) -> EnergyBreakdown:
        """Energies of one sample; columns the model does not write read as 0."""
        def at(name: str) -> float:
            values = self.energies.get(name)
            return float(values[index]) if values is not None and values.size else 0.0

        breakdown = EnergyBreakdown(casimir=at("E_casimir"), kinetic_anomaly=at("E_kinetic_anomaly"),
                                    creation=at("E_creation"), kinetic=at("E_kinetic"),
                                    matter_bound=at("ratio_matter_bound"))
        if "E_total" in self.energies and "E_kinetic" not in self.energies:
            breakdown.kinetic = at("E_total") - breakdown.casimir - breakdown.kinetic_anomaly
        return breakdown

    def rows(self, columns: List[str]) -> np.ndarray:
        """Stack the named columns into a (n_samples, len(columns)) table."""
        lookup = {"t": self.t, "L": self.L, "Ldot": self.L_dot, "Lddot": self.L_ddot}
        lookup.update(self.energies)
        return np.column_stack([lookup[name] for name in columns])
