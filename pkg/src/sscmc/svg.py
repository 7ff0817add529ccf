"""Static Kruskal-diagram SVG output.

The canvas shows X, T in [-5M, 5M] with T upward.  Horizons (T = +-X) and
the singularity hyperbola T^2 - X^2 = 2M are drawn as reference layers.
Coordinates are printed with fixed precision so output is byte-stable.
"""
import xml.etree.ElementTree as ET

import numpy as np

SIZE = 500
EXTENT = 5.0
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
          "#e377c2", "#17becf")


def _fmt(x):
    return "%.3f" % x


class KruskalCanvas:
    """Maps Kruskal (X, T) in units of M to pixel coordinates."""

    def __init__(self, mass=1.0, size=SIZE, extent=EXTENT):
        self.mass = float(mass)
        self.size = int(size)
        self.half = extent * self.mass
        self.root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                               width=str(self.size), height=str(self.size),
                               viewBox="0 0 %d %d" % (self.size, self.size))
        ET.SubElement(self.root, "rect", x="0", y="0", width=str(self.size),
                      height=str(self.size), fill="white")
        self.reference = ET.SubElement(self.root, "g", id="reference")
        self.curves = ET.SubElement(self.root, "g", id="curves")
        self._draw_reference()

    def px(self, X, T):
        s = self.size / (2.0 * self.half)
        return (np.asarray(X) + self.half) * s, (self.half - np.asarray(T)) * s

    def _segments(self, X, T):
        X = np.asarray(X, dtype=float)
        T = np.asarray(T, dtype=float)
        inside = (np.isfinite(X) & np.isfinite(T) &
                  (np.abs(X) <= self.half) & (np.abs(T) <= self.half))
        segs, cur = [], []
        for ok, x, t in zip(inside, X, T):
            if ok:
                cur.append((x, t))
            elif cur:
                segs.append(cur)
                cur = []
        if cur:
            segs.append(cur)
        return [s for s in segs if len(s) > 1]

    def polyline(self, X, T, parent=None, **attrs):
        parent = self.curves if parent is None else parent
        style = {"fill": "none", "stroke": "black", "stroke-width": "1.5"}
        style.update({k.replace("_", "-"): str(v) for k, v in attrs.items()})
        out = []
        for seg in self._segments(X, T):
            x, t = self.px(*np.array(seg).T)
            pts = " ".join("%s,%s" % (_fmt(a), _fmt(b)) for a, b in zip(x, t))
            out.append(ET.SubElement(parent, "polyline", points=pts, **style))
        return out

    def _draw_reference(self):
        a = self.half
        self.polyline([-a, a], [-a, a], self.reference, stroke="#888888", stroke_dasharray="4 3")
        self.polyline([-a, a], [a, -a], self.reference, stroke="#888888", stroke_dasharray="4 3")
        X = np.linspace(-a, a, 401)
        T = np.sqrt(X * X + 2.0 * self.mass)
        for sgn in (1.0, -1.0):
            self.polyline(X, sgn * T, self.reference, stroke="black", stroke_width="2",
                          stroke_dasharray="2 2")

    def label(self, X, T, text):
        x, t = self.px(X, T)
        el = ET.SubElement(self.root, "text", x=_fmt(float(x)), y=_fmt(float(t)),
                           style="font: 12px sans-serif")
        el.text = text
        return el

    def tostring(self):
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def surface_svg(surfaces, mass=1.0, labels=None):
    """SVG text showing one or more glued surfaces in the Kruskal plane."""
    canvas = KruskalCanvas(mass)
    for i, s in enumerate(surfaces):
        U, V, _ = s.kruskal_arrays()
        canvas.polyline(0.5 * (U + V), 0.5 * (V - U), stroke=COLORS[i % len(COLORS)])
    if labels:
        for i, text in enumerate(labels):
            canvas.label(-0.95 * canvas.half, 0.92 * canvas.half - 0.5 * i * mass, text)
    return canvas.tostring()
