"""Base generator class."""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from .schemas import CorpusItem

logger = logging.getLogger(__name__)


class GenerationConfig(BaseModel):
    """Generation configuration."""
    num_samples: int
    domain: str
    random_seed: Optional[int] = None
    output_dir: Path = Path("data/corpus")
    image_size: tuple[int, int] = (480, 480)


class BaseGenerator(ABC):
    """Base class for seeded corpus generators. Implement generate_item()."""

    def __init__(self, config: GenerationConfig):
        self.config = config
        self.rng = np.random.default_rng(config.random_seed)

    @abstractmethod
    def generate_item(self, item_id: str, index: int) -> CorpusItem:
        """Generate a single corpus item. Implement this in your generator."""

    def generate_dataset(self) -> List[CorpusItem]:
        """Generate the complete corpus."""
        items = []
        for i in range(self.config.num_samples):
            item_id = f"{self.config.domain}_{i:04d}"
            items.append(self.generate_item(item_id, i))
            logger.info("  Generated: %s", item_id)
        return items
