"""Curve rendering: SVG polylines and Pillow rasters."""

from typing import List, Sequence, Tuple

from PIL import Image, ImageDraw

Point = Tuple[float, float]
Segment = Tuple[Point, Point]


class CurveRenderer:
    """Draws plane-curve segments inside a square window."""

    def __init__(
        self,
        image_size: Tuple[int, int] = (480, 480),
        window: Tuple[float, float] = (-3.0, 3.0),
        margin: int = 16,
    ):
        self.image_size = image_size
        self.window = (float(window[0]), float(window[1]))
        self.margin = margin
        self.axis_color = (200, 200, 200)
        self.diagonal_color = (230, 215, 180)
        self.curve_color = (37, 99, 235)

    def to_pixel(self, point: Point) -> Point:
        """Map (z, w) to image coordinates; w grows upwards."""
        lo, hi = self.window
        width, height = self.image_size
        span_x = width - 2 * self.margin
        span_y = height - 2 * self.margin
        x = self.margin + (point[0] - lo) / (hi - lo) * span_x
        y = height - self.margin - (point[1] - lo) / (hi - lo) * span_y
        return (round(x, 2), round(y, 2))

    def _guides(self) -> List[Tuple[Segment, Tuple[int, int, int]]]:
        lo, hi = self.window
        guides = [
            (((lo, lo), (hi, hi)), self.diagonal_color),
        ]
        if lo < 0 < hi:
            guides.append((((lo, 0.0), (hi, 0.0)), self.axis_color))
            guides.append((((0.0, lo), (0.0, hi)), self.axis_color))
        return guides

    def create_blank_image(self, bg_color: Tuple[int, int, int] = (255, 255, 255)) -> Image.Image:
        """Create blank RGB image."""
        return Image.new('RGB', self.image_size, bg_color)

    def render_png(self, segments: Sequence[Segment]) -> Image.Image:
        image = self.create_blank_image()
        draw = ImageDraw.Draw(image)
        for (a, b), color in self._guides():
            draw.line([self.to_pixel(a), self.to_pixel(b)], fill=color, width=1)
        for a, b in segments:
            draw.line([self.to_pixel(a), self.to_pixel(b)], fill=self.curve_color, width=2)
        return image

    def render_svg(self, segments: Sequence[Segment]) -> str:
        width, height = self.image_size
        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
        ]
        for (a, b), color in self._guides():
            lines.append(self._svg_line(a, b, "rgb(%d,%d,%d)" % color, 1))
        for a, b in segments:
            lines.append(self._svg_line(a, b, "rgb(%d,%d,%d)" % self.curve_color, 2))
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def _svg_line(self, a: Point, b: Point, stroke: str, width: int) -> str:
        (x1, y1), (x2, y2) = self.to_pixel(a), self.to_pixel(b)
        return (
            f'<polyline points="{x1},{y1} {x2},{y2}" fill="none" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    @staticmethod
    def ensure_rgb(image: Image.Image) -> Image.Image:
        """Convert image to RGB."""
        return image.convert('RGB') if image.mode != 'RGB' else image
