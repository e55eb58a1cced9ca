"""
Run Configuration Models

Pydantic models mirroring the YAML run files (sections grid, equation,
stepper, output) plus sweep files. Unknown keys are rejected.
"""

from enum import Enum
import math
import re
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

_PI_LENGTH = re.compile(r"^\s*([0-9]*\.?[0-9]*(?:[eE][-+]?[0-9]+)?)\s*\*?\s*pi\s*$")


class EquationVariant(str, Enum):
    """Evolution law"""
    MODIFIED = "modified"
    WHITHAM_CLASSIC = "whitham_classic"


class StepperKind(str, Enum):
    """Exponential integrators available to evolve.step"""
    INTEGRATING_FACTOR_RK4 = "integrating_factor_rk4"
    ETD_RK2 = "etd_rk2"


class ProfileKind(str, Enum):
    """Named initial data profiles"""
    GAUSSIAN = "gaussian"
    SECH2 = "sech2"
    SINE = "sine"
    FILE = "file"


class InitialData(BaseModel):
    """Initial-data descriptor"""
    model_config = ConfigDict(extra="forbid")

    profile: ProfileKind = ProfileKind.SECH2
    amplitude: float = Field(default=0.1, description="Peak amplitude")
    width: float = Field(default=4.0, gt=0, description="Length scale of gaussian/sech2")
    center: float = Field(default=0.0, description="Center of gaussian/sech2")
    mode: int = Field(default=1, ge=0, description="Sine mode index k, xi = pi k / L")
    path: Optional[str] = Field(default=None, description=".npy samples for the file profile")

    @model_validator(mode='after')
    def check_file_path(self):
        if self.profile == ProfileKind.FILE and not self.path:
            raise ValueError("profile 'file' requires a path")
        return self


class GridSection(BaseModel):
    """[grid] section"""
    model_config = ConfigDict(extra="forbid")

    n_points: int = 256
    half_length: float = 32.0 * math.pi

    @field_validator('n_points')
    @classmethod
    def check_n_points(cls, v: int) -> int:
        if v < 8 or v % 2:
            raise ValueError(f"n_points must be even and >= 8, got {v}")
        return v

    @field_validator('half_length', mode='before')
    @classmethod
    def parse_half_length(cls, v):
        """Accept plain numbers or strings such as '32pi'"""
        if isinstance(v, str):
            match = _PI_LENGTH.match(v)
            if match:
                factor = match.group(1)
                return (float(factor) if factor else 1.0) * math.pi
            return float(v)
        return v

    @field_validator('half_length')
    @classmethod
    def check_half_length(cls, v: float) -> float:
        if not math.isfinite(v) or v <= 0:
            raise ValueError(f"half_length must be positive, got {v}")
        return v


class EquationSection(BaseModel):
    """[equation] section"""
    model_config = ConfigDict(extra="forbid")

    variant: EquationVariant = EquationVariant.MODIFIED
    epsilon: float = Field(default=0.0, ge=0)
    nonlinear: bool = True
    mollify: bool = False
    initial_data: InitialData = Field(default_factory=InitialData)


class StepperSection(BaseModel):
    """[stepper] section"""
    model_config = ConfigDict(extra="forbid")

    kind: StepperKind = StepperKind.INTEGRATING_FACTOR_RK4
    dt: float = Field(default=0.01, gt=0)
    t_end: float = Field(default=1.0, ge=0)
    dealias: bool = True
    cfl_limit: float = Field(default=1.0, gt=0)
    resolution_tol: float = Field(default=1.0e-6, gt=0)
    blowup_threshold: float = Field(default=1.0e8, gt=0)


class OutputSection(BaseModel):
    """[output] section"""
    model_config = ConfigDict(extra="forbid")

    snapshot_stride: int = Field(default=10, ge=1)
    norm_exponents: List[float] = Field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    write_snapshots: bool = True
    checkpoint_stride: int = Field(default=0, ge=0)
    boundary_margin: float = Field(default=0.1, gt=0, lt=1)

    @field_validator('norm_exponents')
    @classmethod
    def check_exponents(cls, v: List[float]) -> List[float]:
        if any(s < 0 for s in v):
            raise ValueError("norm exponents must be >= 0")
        return sorted(set(float(s) for s in v))


class SolverConfig(BaseModel):
    """Complete run configuration"""
    model_config = ConfigDict(extra="forbid")

    grid: GridSection = Field(default_factory=GridSection)
    equation: EquationSection = Field(default_factory=EquationSection)
    stepper: StepperSection = Field(default_factory=StepperSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @property
    def epsilon(self) -> float:
        return self.equation.epsilon

    @property
    def variant(self) -> EquationVariant:
        return self.equation.variant

    def updated(self, **sections) -> "SolverConfig":
        """
        Copy with per-section field updates

        Example: cfg.updated(equation={"epsilon": 0.1}, stepper={"dt": 0.005})
        """
        data = self.model_dump()
        for section, fields in sections.items():
            if section not in data:
                raise ValueError(f"Unknown section: {section}")
            data[section].update(fields)
        return SolverConfig.model_validate(data)


class SweepKind(str, Enum):
    """Parameter swept by cmd_sweep"""
    EPSILON = "epsilon"
    PERTURBATION = "perturbation"


class SweepSection(BaseModel):
    """[sweep] section"""
    model_config = ConfigDict(extra="forbid")

    kind: SweepKind = SweepKind.EPSILON
    values: List[float] = Field(default_factory=list)
    perturbation: InitialData = Field(
        default_factory=lambda: InitialData(profile=ProfileKind.GAUSSIAN, amplitude=1.0, width=2.0)
    )

    @field_validator('values')
    @classmethod
    def check_values(cls, v: List[float]) -> List[float]:
        if any(not math.isfinite(x) or x < 0 for x in v):
            raise ValueError("sweep values must be finite and >= 0")
        return v


class SweepConfig(BaseModel):
    """Sweep file: a base run plus the swept range"""
    model_config = ConfigDict(extra="forbid")

    base: SolverConfig = Field(default_factory=SolverConfig)
    sweep: SweepSection = Field(default_factory=SweepSection)
