"""Minimal SVG document builder on top of ElementTree.

Coordinates are written with two fixed decimals so identical inputs always
produce identical bytes.
"""

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from biblioscope.core.shapes import RenderConfig

SVG_NS = "http://www.w3.org/2000/svg"


def num(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


@dataclass(frozen=True)
class Plot:
    """Plot area inside the margins, mapping data ranges onto it."""

    render: RenderConfig
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    @property
    def left(self) -> float:
        return self.render.margin_left

    @property
    def right(self) -> float:
        return self.render.width - self.render.margin_right

    @property
    def top(self) -> float:
        return self.render.margin_top

    @property
    def bottom(self) -> float:
        return self.render.height - self.render.margin_bottom

    def x(self, value: float) -> float:
        span = self.x_max - self.x_min or 1.0
        return self.left + (value - self.x_min) / span * (self.right - self.left)

    def y(self, value: float) -> float:
        span = self.y_max - self.y_min or 1.0
        return self.bottom - (value - self.y_min) / span * (self.bottom - self.top)


class SvgDocument:
    def __init__(self, render: RenderConfig, title: str):
        self.render = render
        self.root = ET.Element(
            "svg",
            {
                "xmlns": SVG_NS,
                "version": "1.1",
                "width": str(render.width),
                "height": str(render.height),
                "viewBox": f"0 0 {render.width} {render.height}",
                "font-family": render.font_family,
                "font-size": str(render.font_size),
            },
        )
        ET.SubElement(self.root, "title").text = title
        ET.SubElement(
            self.root,
            "rect",
            {"x": "0", "y": "0", "width": str(render.width), "height": str(render.height), "fill": "white"},
        )

    def group(self, css_class: str) -> ET.Element:
        return ET.SubElement(self.root, "g", {"class": css_class})

    @staticmethod
    def rect(parent: ET.Element, x: float, y: float, w: float, h: float, **attrs: str) -> ET.Element:
        return ET.SubElement(
            parent, "rect", {"x": num(x), "y": num(y), "width": num(w), "height": num(h), **_attrs(attrs)}
        )

    @staticmethod
    def line(parent: ET.Element, x1: float, y1: float, x2: float, y2: float, **attrs: str) -> ET.Element:
        return ET.SubElement(
            parent, "line", {"x1": num(x1), "y1": num(y1), "x2": num(x2), "y2": num(y2), **_attrs(attrs)}
        )

    @staticmethod
    def circle(parent: ET.Element, cx: float, cy: float, r: float, **attrs: str) -> ET.Element:
        return ET.SubElement(parent, "circle", {"cx": num(cx), "cy": num(cy), "r": num(r), **_attrs(attrs)})

    @staticmethod
    def text(parent: ET.Element, x: float, y: float, content: str, **attrs: str) -> ET.Element:
        element = ET.SubElement(parent, "text", {"x": num(x), "y": num(y), **_attrs(attrs)})
        element.text = content
        return element

    def axes(self, plot: Plot) -> ET.Element:
        group = self.group("axes")
        self.line(group, plot.left, plot.bottom, plot.right, plot.bottom, stroke="black")
        self.line(group, plot.left, plot.top, plot.left, plot.bottom, stroke="black")
        return group

    def dashed(self, css_class: str, x1: float, y1: float, x2: float, y2: float) -> ET.Element:
        return self.line(
            self.root,
            x1,
            y1,
            x2,
            y2,
            class_=css_class,
            stroke=self.render.line_color,
            stroke_dasharray=self.render.dash_pattern,
        )

    def caption(self, content: str) -> ET.Element:
        return self.text(
            self.root,
            self.render.width / 2,
            self.render.margin_top / 2,
            content,
            class_="caption",
            text_anchor="middle",
            font_weight="bold",
        )

    def to_string(self) -> str:
        ET.indent(self.root)
        body = ET.tostring(self.root, encoding="unicode")
        return f'<?xml version="1.0" encoding="UTF-8"?>\n{body}\n'


def _attrs(attrs: dict[str, str]) -> dict[str, str]:
    """Python-friendly keyword names to SVG attribute names: class_ -> class, stroke_dasharray -> stroke-dasharray."""
    return {key.rstrip("_").replace("_", "-"): str(value) for key, value in attrs.items()}
