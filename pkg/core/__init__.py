"""
Core framework utilities for stabkit.

Seeded corpus generation, result envelopes, output writing and curve
rendering. The toolkit itself lives in src/.
"""

from .base_generator import BaseGenerator, GenerationConfig
from .schemas import CorpusItem, ResultRecord
from .image_utils import CurveRenderer
from .output_writer import OutputWriter

__all__ = [
    "BaseGenerator",
    "GenerationConfig",
    "CorpusItem",
    "ResultRecord",
    "CurveRenderer",
    "OutputWriter",
]
