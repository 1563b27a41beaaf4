"""Projective line arrangements over the tower field.

Lines are covectors (a, b, c) for a*x + b*y + c*z = 0, stored in canonical
projective normalization (first nonzero coordinate scaled to 1).  The
intersection lattice is the rank-2 stratum only: the set of multiple points
with their incidences.
"""

from __future__ import annotations

import json

from .errors import (DuplicateLine, ParseError, UnknownBuiltin, UnknownLine,
                     ZeroCovector)
from .field import ONE, ZERO, FieldElement, serialize_element, trig_constants
from .mpoly import MultiPoly, dehomogenize, homogenize
from .exprs import parse_field_element


def _normalize_triple(cov):
    cov = tuple(c if isinstance(c, FieldElement) else FieldElement(c)
                for c in cov)
    for c in cov:
        if not c.is_zero:
            inv = c.inverse()
            return tuple(v * inv for v in cov)
    return None


class Line:
    __slots__ = ("label", "covector")

    def __init__(self, label: str, covector):
        cov = _normalize_triple(covector)
        if cov is None:
            raise ZeroCovector(f"line {label!r} has the zero covector")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "covector", cov)

    def __setattr__(self, name, value):
        raise AttributeError("Line is immutable")

    def linear_form(self) -> MultiPoly:
        a, b, c = self.covector
        return MultiPoly.linear(a, b, c)

    def contains(self, point) -> bool:
        a, b, c = self.covector
        p0, p1, p2 = point
        return (a * p0 + b * p1 + c * p2).is_zero

    @property
    def is_infinity(self) -> bool:
        """True for the line z = 0."""
        return self.covector[0].is_zero and self.covector[1].is_zero

    def __repr__(self):
        return f"Line({self.label!r}, {[str(c) for c in self.covector]})"


class IntersectionPoint:
    __slots__ = ("coords", "incident")

    def __init__(self, coords, incident):
        object.__setattr__(self, "coords", tuple(coords))
        object.__setattr__(self, "incident", tuple(sorted(incident)))

    def __setattr__(self, name, value):
        raise AttributeError("IntersectionPoint is immutable")

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    @property
    def is_at_infinity(self) -> bool:
        return self.coords[2].is_zero

    def __repr__(self):
        cs = ":".join(str(c) for c in self.coords)
        return f"Point[{cs}]{list(self.incident)}"


class Arrangement:
    def __init__(self, lines, name: str = "", degenerate: bool = False):
        self.lines = list(lines)
        self.name = name
        self.degenerate = degenerate
        self._lattice = None

    @property
    def n(self) -> int:
        return len(self.lines)

    def labels(self):
        return [ln.label for ln in self.lines]

    def index_of(self, label: str) -> int:
        for i, ln in enumerate(self.lines):
            if ln.label == label:
                return i
        raise UnknownLine(f"no line labeled {label!r}")

    def lattice(self):
        if self._lattice is None:
            self._lattice = _compute_lattice(self)
        return self._lattice

    def __repr__(self):
        return f"Arrangement({self.name!r}, {self.n} lines)"


def build(lines, name: str = "") -> Arrangement:
    """Construct an arrangement from (label, covector) pairs or Lines."""
    out = []
    seen = {}
    for item in lines:
        ln = item if isinstance(item, Line) else Line(item[0], item[1])
        key = tuple(c.coords() for c in ln.covector)
        if key in seen:
            raise DuplicateLine(
                f"line {ln.label!r} duplicates {seen[key]!r} projectively")
        seen[key] = ln.label
        out.append(ln)
    if len(out) < 2:
        raise ValueError("an arrangement needs at least 2 lines")
    return Arrangement(out, name=name)


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _compute_lattice(A: Arrangement):
    points = {}
    for i in range(A.n):
        for j in range(i + 1, A.n):
            pt = _normalize_triple(_cross(A.lines[i].covector,
                                          A.lines[j].covector))
            if pt is None:
                # cannot happen for projectively distinct lines
                raise ZeroCovector("coincident lines in lattice computation")
            key = tuple(c.coords() for c in pt)
            if key not in points:
                incident = [k for k in range(A.n) if A.lines[k].contains(pt)]
                points[key] = IntersectionPoint(pt, incident)
    return sorted(points.values(), key=lambda p: tuple(
        c.coords() for c in p.coords))


def lattice(A: Arrangement):
    return A.lattice()


def is_essential(A: Arrangement) -> bool:
    return all(p.multiplicity < A.n for p in A.lattice())


def delete(A: Arrangement, label: str) -> Arrangement:
    idx = A.index_of(label)
    rest = [ln for i, ln in enumerate(A.lines) if i != idx]
    name = f"{A.name}-del-{label}" if A.name else f"del-{label}"
    return Arrangement(rest, name=name, degenerate=len(rest) < 2)


# -- builtin catalog -------------------------------------------------------


def _b3_lines():
    one = ONE
    specs = [
        ("x", (1, 0, 0)),
        ("y", (0, 1, 0)),
        ("z", (0, 0, 1)),
        ("x-y", (1, -1, 0)),
        ("x+y", (1, 1, 0)),
        ("x-z", (1, 0, -1)),
        ("x+z", (1, 0, 1)),
        ("y-z", (0, 1, -1)),
        ("y+z", (0, 1, 1)),
    ]
    return [(lab, tuple(FieldElement(v) * one for v in cov))
            for lab, cov in specs]


def double_star_affine_covectors():
    """Raw (unnormalized) affine covectors (a, b, c) of l1..l10.

    The constant coefficient c is the affine constant term; homogenize with z.
    """
    t = trig_constants()
    sin_t, cos_t = t.sin_t, t.cos_t
    sin_2t, cos_2t = t.sin_2t, t.cos_2t
    rc = sin_t * t.ratio  # sin(t) * cos(t)/cos(2t)
    one = FieldElement(1)
    covs = [
        (sin_2t - sin_t, cos_2t - cos_t, -rc),
        (-sin_t, cos_t - one, rc),
        (sin_2t + sin_2t, ZERO, rc),
        (sin_t, cos_t - one, -rc),
        (-(sin_2t - sin_t), cos_2t - cos_t, rc),
        (sin_2t - sin_t, cos_2t - cos_t, -sin_t),
        (-sin_t, cos_t - one, sin_t),
        (sin_2t + sin_2t, ZERO, sin_t),
        (sin_t, cos_t - one, -sin_t),
        (-(sin_2t - sin_t), cos_2t - cos_t, sin_t),
    ]
    return covs


def double_star_data():
    """Exact data of the double star: raw forms, h1, h2, c, group resolution.

    Returns a dict with the ten raw homogeneous linear forms, the printed
    polynomials h1 and h2 (with their 1/c normalization), the constant c,
    and which label group multiplies to which h.  The matching of the two
    5-line groups against h1 and h2 is established by exact computation, not
    assumed.
    """
    covs = double_star_affine_covectors()
    forms = [dehomogenize(MultiPoly.linear(a, b, c)) for (a, b, c) in covs]
    r = FieldElement(0, 1)
    s = FieldElement(0, 0, 1)
    c_const = (FieldElement(5) + FieldElement(0, 3)) * s \
        * FieldElement(32) / FieldElement(125)

    def _printed(sign):
        # the parenthesized quintic with +/- sqrt(5) coefficients
        f = FieldElement
        x, y, z = (MultiPoly.variable(v) for v in "xyz")
        sq5 = f(0, 1) if sign > 0 else -f(0, 1)
        return (x ** 5 * f(2) / f(5) - x ** 3 * y ** 2 * 4 + x * y ** 4 * 2
                + x ** 4 * (1 + sq5) / f(2) + x ** 2 * y ** 2 * (1 + sq5)
                + y ** 4 * (1 + sq5) / f(2)
                - x ** 2 * (2 + sq5) - y ** 2 * (2 + sq5)
                + MultiPoly.constant((f(11) + sq5 * 5) / f(10)))

    p1 = _printed(+1)
    p2 = _printed(-1)
    cinv = c_const.inverse()
    h1 = p1.scale(cinv)
    h2 = p2.scale(cinv)
    prod_first = MultiPoly.constant(1)
    for fm in forms[:5]:
        prod_first = prod_first * fm
    prod_last = MultiPoly.constant(1)
    for fm in forms[5:]:
        prod_last = prod_last * fm
    if prod_last == h1 and prod_first == h2:
        h1_group, h2_group = ["l6", "l7", "l8", "l9", "l10"], \
            ["l1", "l2", "l3", "l4", "l5"]
    elif prod_first == h1 and prod_last == h2:
        h1_group, h2_group = ["l1", "l2", "l3", "l4", "l5"], \
            ["l6", "l7", "l8", "l9", "l10"]
    else:
        raise AssertionError("line groups do not match h1/h2")
    return {
        "affine_forms": forms,
        "homogeneous_forms": [homogenize(f, 1) for f in forms],
        "h1": h1,
        "h2": h2,
        "printed_poly_1": p1,
        "printed_poly_2": p2,
        "c": c_const,
        "sqrt5": r,
        "h1_group": h1_group,
        "h2_group": h2_group,
        "product_first_five": prod_first,
        "product_last_five": prod_last,
    }


def _double_star_lines(include_infinity: bool):
    covs = double_star_affine_covectors()
    lines = [(f"l{i + 1}", (a, b, c)) for i, (a, b, c) in enumerate(covs)]
    if include_infinity:
        lines.append(("z", (ZERO, ZERO, ONE)))
    return lines


def builtin(name: str) -> Arrangement:
    if name == "b3":
        return build(_b3_lines(), name="b3")
    if name == "b3_del_z":
        return delete(build(_b3_lines(), name="b3"), "z")
    if name == "double_star":
        return build(_double_star_lines(True), name="double_star")
    if name == "double_star_affine":
        return build(_double_star_lines(False), name="double_star_affine")
    raise UnknownBuiltin(f"unknown builtin arrangement {name!r}")


BUILTIN_NAMES = ("b3", "b3_del_z", "double_star", "double_star_affine")


# -- file format -----------------------------------------------------------

def arrangement_to_json(A: Arrangement) -> dict:
    return {
        "name": A.name,
        "lines": [{"label": ln.label,
                   "covector": [serialize_element(c) for c in ln.covector]}
                  for ln in A.lines],
    }


def arrangement_from_json(doc: dict) -> Arrangement:
    try:
        lines = [(item["label"],
                  tuple(parse_field_element(e) for e in item["covector"]))
                 for item in doc["lines"]]
        name = doc.get("name", "")
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed arrangement document: {exc}") from exc
    return build(lines, name=name)


def load_arrangement(path: str) -> Arrangement:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read arrangement file: {exc}") from exc
    return arrangement_from_json(doc)


# -- SVG rendering ---------------------------------------------------------

_SVG_SIZE = 600


def _clip_segment(a, b, c, window):
    """Endpoints of {a*x + b*y + c = 0} clipped to the window, or None."""
    xmin, xmax, ymin, ymax = window
    pts = []
    eps = 1e-12
    if abs(b) > eps:
        for x in (xmin, xmax):
            y = -(a * x + c) / b
            if ymin - 1e-9 <= y <= ymax + 1e-9:
                pts.append((x, y))
    if abs(a) > eps:
        for y in (ymin, ymax):
            x = -(b * y + c) / a
            if xmin - 1e-9 <= x <= xmax + 1e-9:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    return uniq[0], uniq[1]


def render_svg(A: Arrangement, window, class_colors=None) -> str:
    """Deterministic SVG of the real traces of the lines in the window.

    Lines with no affine trace (the line at infinity) are listed in a legend
    instead of being drawn.  class_colors maps label -> CSS color.
    """
    xmin, xmax, ymin, ymax = window
    sx = _SVG_SIZE / (xmax - xmin)
    sy = _SVG_SIZE / (ymax - ymin)

    def to_px(p):
        return ((p[0] - xmin) * sx, (ymax - p[1]) * sy)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_SIZE}" '
        f'height="{_SVG_SIZE}" viewBox="0 0 {_SVG_SIZE} {_SVG_SIZE}">',
        f'<rect id="background" width="{_SVG_SIZE}" height="{_SVG_SIZE}" '
        'fill="white"/>',
    ]
    legend = []
    for ln in A.lines:
        color = (class_colors or {}).get(ln.label, "black")
        if ln.is_infinity:
            legend.append(ln.label)
            continue
        a = float(ln.covector[0])
        b = float(ln.covector[1])
        c = float(ln.covector[2])
        seg = _clip_segment(a, b, c, window)
        if seg is None:
            legend.append(ln.label)
            continue
        (x1, y1), (x2, y2) = (to_px(seg[0]), to_px(seg[1]))
        parts.append(
            f'<line id="line-{ln.label}" x1="{x1:.4f}" y1="{y1:.4f}" '
            f'x2="{x2:.4f}" y2="{y2:.4f}" stroke="{color}" '
            'stroke-width="1.5"/>')
    for i, lab in enumerate(legend):
        parts.append(
            f'<text id="legend-{lab}" x="10" y="{20 + 16 * i}" '
            f'font-size="12">{lab}: not drawn (no trace in window)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
