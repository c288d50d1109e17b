"""Output writer for corpora, result records and curve files."""

import csv
import io
import json
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from PIL import Image

from .image_utils import CurveRenderer
from .schemas import CorpusItem, ResultRecord


class OutputWriter:
    """Writes corpus items to a per-item folder structure."""

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def write_item(self, item: CorpusItem) -> Path:
        """Write single corpus item to disk."""
        item_dir = self.output_dir / f"{item.domain}_corpus" / item.item_id
        item_dir.mkdir(parents=True, exist_ok=True)

        document = item.model_dump(mode="json", exclude={"curve_svg"})
        (item_dir / "item.json").write_text(json.dumps(document, sort_keys=True, indent=2) + "\n")

        if item.curve_svg:
            (item_dir / "curve.svg").write_text(item.curve_svg)

        return item_dir

    def write_dataset(self, items: List[CorpusItem]) -> Path:
        """Write all items to disk."""
        for item in items:
            self.write_item(item)
        return self.output_dir

    # ── single-command output ────────────────────────────────────────────────

    @staticmethod
    def dump_record(record: ResultRecord) -> str:
        """Deterministic JSON text: sorted keys, fixed indentation."""
        return json.dumps(record.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def dump_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buffer.getvalue()

    @staticmethod
    def emit_text(text: str, path: Optional[Path], stream) -> None:
        """Write text to `path` when given, otherwise to `stream`."""
        if path is None:
            stream.write(text)
            return
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)

    @staticmethod
    def save_image(image: Image.Image, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        CurveRenderer.ensure_rgb(image).save(path)
        return path
