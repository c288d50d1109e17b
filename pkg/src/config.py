"""
╔══════════════════════════════════════════════════════════════════════════════╗
║                           STABKIT CONFIGURATION                               ║
║                                                                               ║
║  SampleConfig drives every line-sampling decider; CorpusConfig extends the    ║
║  framework GenerationConfig with the knobs of the random corpus generator.    ║
╚══════════════════════════════════════════════════════════════════════════════╝
"""

import os
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, TypeAdapter, ValidationError, model_validator

from core import GenerationConfig

from .errors import ConfigError

TRIALS_ENV = "STABKIT_TRIALS"
DEFAULT_TRIALS = 200
_TRIALS = TypeAdapter(PositiveInt)


def default_trials() -> int:
    """Default trial count, overridable through the STABKIT_TRIALS variable."""
    raw = os.environ.get(TRIALS_ENV, "").strip()
    if not raw:
        return DEFAULT_TRIALS
    try:
        return _TRIALS.validate_python(raw)
    except ValidationError as exc:
        raise ConfigError(f"{TRIALS_ENV}={raw!r} is not a positive integer") from exc


class SampleConfig(BaseModel):
    """
    Parameters of the rational line sampler.

    Base points alpha are drawn coordinate-wise as k/q with q <= denominator_bound
    inside coordinate_box; direction entries are drawn the same way inside
    the half-open range (v_box[0], v_box[1]], so they are always positive.
    """

    model_config = ConfigDict(frozen=True)

    # ══════════════════════════════════════════════════════════════════════════
    #  SAMPLING
    # ══════════════════════════════════════════════════════════════════════════

    trials: int = Field(
        default_factory=default_trials,
        ge=1,
        description="Number of sampled lines per decision",
    )

    denominator_bound: int = Field(
        default=64,
        ge=1,
        description="Largest denominator of sampled rational coordinates",
    )

    coordinate_box: Tuple[int, int] = Field(
        default=(-4, 4),
        description="Closed range for base-point coordinates",
    )

    v_box: Tuple[int, int] = Field(
        default=(0, 4),
        description="Half-open range (lo, hi] for direction coordinates",
    )

    boundary_probability: float = Field(
        default=0.25,
        ge=0.0,
        lt=1.0,
        description="Chance that a strict-class direction coordinate is zero",
    )

    seed: int = Field(
        default=0,
        description="Seed of the sampling generator",
    )

    @model_validator(mode="after")
    def _check_boxes(self) -> "SampleConfig":
        lo, hi = self.coordinate_box
        if lo > hi:
            raise ValueError("coordinate_box is empty")
        vlo, vhi = self.v_box
        if vlo < 0 or vhi <= vlo:
            raise ValueError("v_box must be a nonempty range of nonnegative numbers")
        return self

    def with_trials(self, trials: int) -> "SampleConfig":
        return self.model_copy(update={"trials": trials})

    def with_seed(self, seed: int) -> "SampleConfig":
        return self.model_copy(update={"seed": seed})


class CorpusConfig(GenerationConfig):
    """
    Random corpus generation settings.

    Inherited from GenerationConfig:
        - num_samples: int            # Number of corpus items
        - domain: str                 # Prefix of item ids
        - random_seed: Optional[int]  # For reproducibility
        - output_dir: Path            # Where to save outputs
        - image_size: tuple[int, int] # Curve raster size
    """

    # ══════════════════════════════════════════════════════════════════════════
    #  OVERRIDE DEFAULTS
    # ══════════════════════════════════════════════════════════════════════════

    domain: str = Field(default="stabkit")

    # ══════════════════════════════════════════════════════════════════════════
    #  CORPUS SHAPE
    # ══════════════════════════════════════════════════════════════════════════

    kinds: List[str] = Field(
        default_factory=lambda: ["pencil", "perturbed", "operator", "refuted_operator", "diagonal"],
        description="Item kinds to cycle through",
    )

    matrix_order: Tuple[int, int] = Field(
        default=(2, 4),
        description="Inclusive range of pencil matrix orders",
    )

    nvars: Tuple[int, int] = Field(
        default=(1, 3),
        description="Inclusive range of pencil variable counts",
    )

    coefficient_bound: int = Field(
        default=3,
        ge=1,
        description="Entries are drawn from [-bound, bound] before scaling",
    )

    denominator_bound: int = Field(
        default=4,
        ge=1,
        description="Largest denominator of generated rational entries",
    )

    # ══════════════════════════════════════════════════════════════════════════
    #  CURVE SETTINGS
    # ══════════════════════════════════════════════════════════════════════════

    render_curves: bool = Field(
        default=True,
        description="Write a symbol-curve SVG next to each operator item",
    )

    curve_window: Tuple[int, int] = Field(
        default=(-3, 3),
        description="Square plotting window for symbol curves",
    )

    curve_resolution: int = Field(
        default=48,
        ge=2,
        description="Grid cells per side for contour extraction",
    )

    @model_validator(mode="after")
    def _check_ranges(self) -> "CorpusConfig":
        for name in ("matrix_order", "nvars"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must be a nonempty range of positive integers")
        if self.matrix_order[1] > 8:
            raise ValueError("matrix orders above 8 are not supported")
        return self
