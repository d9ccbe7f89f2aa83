"""Scene data model and numeric mining of basic geometric relations.

A Scene holds labeled points, lines (straight lines, half lines, segments),
and circles.  The miners walk the scene and emit the six basic relation
types -- OnLine, OnCircle, Parallel, Perp, DEqual, AEqual -- plus the three
derived forms (IntersectionOf, MidpointOf, FootOf) introduced later by the
candidate-generation stage.

Relations are value objects normalized at construction so that set
operations downstream are well-defined: symmetric argument slots carry a
canonical order and duplicates compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .config import Tolerances

BASIC_TAGS = ("OnLine", "OnCircle", "Parallel", "Perp", "DEqual", "AEqual")
DERIVED_TAGS = ("IntersectionOf", "MidpointOf", "FootOf")

LINE_KINDS = ("Line", "HalfLine", "Segment")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class LineEnt:
    """A straight line, half line, or segment through points p and q.

    For a HalfLine, p is the initial point.
    """

    kind: str
    p: str
    q: str

    def __post_init__(self):
        if self.kind not in LINE_KINDS:
            raise ValueError(f"unknown line kind {self.kind!r}")
        if self.p == self.q:
            raise ValueError("degenerate line: identical parameter points")

    def params(self) -> tuple[str, ...]:
        return (self.p, self.q)


@dataclass(frozen=True)
class CircleEnt:
    """Circle in center-radius form (center label + radius) or 3-point form."""

    center: str | None = None
    radius: float | None = None
    points: tuple[str, str, str] | None = None

    def __post_init__(self):
        if self.points is not None:
            if len(set(self.points)) != 3:
                raise ValueError("3-point circle needs three distinct points")
        elif self.center is None or self.radius is None or self.radius <= 0:
            raise ValueError("center-radius circle needs center and radius > 0")

    def params(self) -> tuple[str, ...]:
        if self.points is not None:
            return tuple(self.points)
        return (self.center,)


@dataclass
class Scene:
    """Labeled points, lines, and circles recovered from one diagram."""

    points: dict[str, Point] = field(default_factory=dict)
    lines: dict[str, LineEnt] = field(default_factory=dict)
    circles: dict[str, CircleEnt] = field(default_factory=dict)

    def validate(self) -> None:
        for label, line in self.lines.items():
            for p in line.params():
                if p not in self.points:
                    raise ValueError(f"line {label} references unknown point {p}")
        for label, circ in self.circles.items():
            for p in circ.params():
                if p not in self.points:
                    raise ValueError(f"circle {label} references unknown point {p}")

    def copy(self) -> "Scene":
        return Scene(dict(self.points), dict(self.lines), dict(self.circles))

    def circle_center_radius(self, label: str) -> tuple[float, float, float] | None:
        """Numeric (cx, cy, r) for either representation; None if degenerate."""
        c = self.circles[label]
        if c.points is None:
            o = self.points[c.center]
            return o.x, o.y, c.radius
        a, b, d = (self.points[p] for p in c.points)
        return circumcenter(a, b, d)


def circumcenter(a: Point, b: Point, c: Point) -> tuple[float, float, float] | None:
    """Circumcenter and radius by a 2x2 solve on the perpendicular bisectors.

    Returns None when the three points are near-collinear (determinant below
    1e-9 of the coordinate scale).
    """
    ax, ay, bx, by, cx, cy = a.x, a.y, b.x, b.y, c.x, c.y
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    scale = max(abs(v) for v in (ax, ay, bx, by, cx, cy, 1.0)) ** 2
    if abs(d) < 1e-9 * scale:
        return None
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    return ux, uy, math.hypot(ax - ux, ay - uy)


@dataclass(frozen=True)
class Relation:
    """One basic or derived geometric relation over scene labels."""

    tag: str
    args: tuple[str, ...]

    ARITY = {
        "OnLine": 2, "OnCircle": 2, "Parallel": 2, "Perp": 2,
        "DEqual": 4, "AEqual": 6,
        "IntersectionOf": 3, "MidpointOf": 3, "FootOf": 3,
    }

    def __post_init__(self):
        if self.tag not in self.ARITY:
            raise ValueError(f"unknown relation tag {self.tag!r}")
        if len(self.args) != self.ARITY[self.tag]:
            raise ValueError(f"{self.tag} expects {self.ARITY[self.tag]} args, got {len(self.args)}")

    @property
    def is_derived(self) -> bool:
        return self.tag in DERIVED_TAGS

    def defined_label(self) -> str | None:
        return self.args[0] if self.is_derived else None

    def point_occurrences(self, scene: Scene) -> list[str]:
        """Point labels used by this relation, with multiplicity, expanding
        line and circle arguments into their parameter points."""
        out: list[str] = []
        for i, a in enumerate(self.args):
            if self.tag in ("OnLine", "IntersectionOf", "FootOf") and i > 0:
                out.extend(scene.lines[a].params())
            elif self.tag == "OnCircle" and i > 0:
                out.extend(scene.circles[a].params())
            elif self.tag in ("Parallel", "Perp"):
                out.extend(scene.lines[a].params())
            else:
                out.append(a)
        return out

    def points_used(self, scene: Scene) -> set[str]:
        return set(self.point_occurrences(scene))

    def to_json(self) -> dict:
        return {"tag": self.tag, "args": list(self.args)}

    @classmethod
    def from_json(cls, obj: dict) -> "Relation":
        return normalize(cls(obj["tag"], tuple(obj["args"])))

    def text(self, scene: Scene) -> str:
        """Paper-style inline text form, e.g. ``incident(G, segment(B,C))``."""

        def obj(label: str) -> str:
            if label in scene.lines:
                line = scene.lines[label]
                name = {"Line": "line", "HalfLine": "halfline", "Segment": "segment"}[line.kind]
                p, q = line.params() if line.kind == "HalfLine" else sorted(line.params())
                return f"{name}({p},{q})"
            if label in scene.circles:
                c = scene.circles[label]
                if c.points is not None:
                    return "circle({},{},{})".format(*c.points)
                return f"circle({c.center},{c.radius:g})"
            return label

        t, a = self.tag, self.args
        if t == "OnLine":
            return f"incident({a[0]}, {obj(a[1])})"
        if t == "OnCircle":
            return f"pointOnC({a[0]}, {obj(a[1])})"
        if t == "Parallel":
            return f"parallel({obj(a[0])}, {obj(a[1])})"
        if t == "Perp":
            return f"perpendicular({obj(a[0])}, {obj(a[1])})"
        if t == "DEqual":
            return f"equal(distance({a[0]},{a[1]}), distance({a[2]},{a[3]}))"
        if t == "AEqual":
            return f"equal(size(angle({a[0]},{a[1]},{a[2]})), size(angle({a[3]},{a[4]},{a[5]})))"
        if t == "IntersectionOf":
            return f"{a[0]} := intersection({obj(a[1])}, {obj(a[2])})"
        if t == "MidpointOf":
            return f"{a[0]} := midpoint({a[1]}, {a[2]})"
        return f"{a[0]} := foot({obj(a[1])}, {obj(a[2])})"


def normalize(r: Relation) -> Relation:
    """Canonical argument order for symmetric slots."""
    t, a = r.tag, r.args
    if t in ("Parallel", "Perp"):
        return Relation(t, tuple(sorted(a)))
    if t == "DEqual":
        p1 = tuple(sorted(a[0:2]))
        p2 = tuple(sorted(a[2:4]))
        lo, hi = sorted((p1, p2))
        return Relation(t, lo + hi)
    if t == "AEqual":
        a1 = (min(a[0], a[2]), a[1], max(a[0], a[2]))
        a2 = (min(a[3], a[5]), a[4], max(a[3], a[5]))
        lo, hi = sorted((a1, a2))
        return Relation(t, lo + hi)
    if t == "MidpointOf":
        return Relation(t, (a[0],) + tuple(sorted(a[1:3])))
    if t == "IntersectionOf":
        return Relation(t, (a[0],) + tuple(sorted(a[1:3])))
    return r


def rel(tag: str, *args: str) -> Relation:
    return normalize(Relation(tag, tuple(args)))


# -- geometric predicates --------------------------------------------------------


def point_line_distance(p: Point, a: Point, b: Point, kind: str = "Line",
                        overhang: float = 0.0) -> float:
    """Distance from p to the extent of a line entity through a, b.

    Segments clamp to [0,1] in the line parameter, half lines to t >= 0;
    ``overhang`` relaxes the clamp by that many pixels beyond the extent.
    """
    dx, dy = b.x - a.x, b.y - a.y
    L2 = dx * dx + dy * dy
    if L2 == 0:
        return p.dist(a)
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / L2
    slack = overhang / math.sqrt(L2)
    if kind == "Segment":
        t = min(max(t, -slack), 1 + slack)
    elif kind == "HalfLine":
        t = max(t, -slack)
    qx, qy = a.x + t * dx, a.y + t * dy
    return math.hypot(p.x - qx, p.y - qy)


def distance_to_entity(scene: Scene, p: Point, label: str) -> float:
    """Distance from point to a line's extent or a circle's stroke."""
    if label in scene.lines:
        line = scene.lines[label]
        return point_line_distance(p, scene.points[line.p], scene.points[line.q], line.kind)
    ccr = scene.circle_center_radius(label)
    if ccr is None:
        return math.inf
    cx, cy, r = ccr
    return abs(math.hypot(p.x - cx, p.y - cy) - r)


def direction_angle(a: Point, b: Point) -> float:
    """Direction angle of the vector a->b in image coordinates, in [0, 2*pi).

    Eight-case piecewise rule with k the slope (y grows downward): straight
    right is 0, straight down is 3*pi/2, and reversing the vector shifts the
    angle by exactly pi.
    """
    if a.x == b.x and a.y == b.y:
        raise ValueError("direction angle undefined for coincident points")
    if b.x == a.x:
        return 1.5 * math.pi if b.y > a.y else 0.5 * math.pi
    if b.y == a.y:
        return 0.0 if b.x > a.x else math.pi
    k = (b.y - a.y) / (b.x - a.x)
    if b.y < a.y and b.x > a.x:
        return abs(math.atan(k))
    if b.y > a.y and b.x < a.x:
        return math.pi + abs(math.atan(k))
    if b.y < a.y and b.x < a.x:
        return math.pi - math.atan(k)
    return 2 * math.pi - math.atan(k)


def _angdist(x: float, target: float) -> float:
    d = abs(x - target) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


# -- miners ------------------------------------------------------------------------


def points_on_line(scene: Scene, label: str, tau_pl: float) -> list[str]:
    """Labels of scene points lying on the line entity within tau_pl."""
    line = scene.lines[label]
    a, b = scene.points[line.p], scene.points[line.q]
    out = []
    for name, p in scene.points.items():
        if name in line.params():
            out.append(name)
        elif point_line_distance(p, a, b, line.kind, overhang=tau_pl) < tau_pl:
            out.append(name)
    return out


def points_on_circle(scene: Scene, label: str, tau_pc: float) -> list[str]:
    circ = scene.circles[label]
    ccr = scene.circle_center_radius(label)
    if ccr is None:
        return list(circ.params()) if circ.points else []
    cx, cy, r = ccr
    out = []
    for name, p in scene.points.items():
        if circ.points is not None and name in circ.points:
            out.append(name)
        elif abs(math.hypot(p.x - cx, p.y - cy) - r) < tau_pc:
            out.append(name)
    return out


def mine_incidence(scene: Scene, tol: Tolerances) -> list[Relation]:
    """OnLine and OnCircle relations, excluding parameter points."""
    out: list[Relation] = []
    for label, line in scene.lines.items():
        a, b = scene.points[line.p], scene.points[line.q]
        for name, p in scene.points.items():
            if name in line.params():
                continue
            if point_line_distance(p, a, b, line.kind, overhang=tol.tau_pl) < tol.tau_pl:
                out.append(rel("OnLine", name, label))
    for label, circ in scene.circles.items():
        ccr = scene.circle_center_radius(label)
        if ccr is None:
            continue  # near-collinear 3-point circle: incidence mining disabled
        cx, cy, r = ccr
        for name, p in scene.points.items():
            if name in circ.params():
                continue
            if abs(math.hypot(p.x - cx, p.y - cy) - r) < tol.tau_pc:
                out.append(rel("OnCircle", name, label))
    return out


def mine_parallel_perp(scene: Scene, tol: Tolerances) -> list[Relation]:
    """Parallel and Perp over unordered line pairs via direction angles."""
    out: list[Relation] = []
    labels = list(scene.lines)
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            l1, l2 = scene.lines[labels[i]], scene.lines[labels[j]]
            alpha = direction_angle(scene.points[l1.p], scene.points[l1.q])
            beta = direction_angle(scene.points[l2.p], scene.points[l2.q])
            d = abs(alpha - beta)
            if d < tol.tau_a or abs(d - math.pi) < tol.tau_a or abs(d - 2 * math.pi) < tol.tau_a:
                out.append(rel("Parallel", labels[i], labels[j]))
            elif abs(d - math.pi / 2) < tol.tau_a or abs(d - 1.5 * math.pi) < tol.tau_a:
                out.append(rel("Perp", labels[i], labels[j]))
    return out


def mine_distance_equality(scene: Scene, tol: Tolerances) -> list[Relation]:
    """DEqual over point pairs sharing a recognized line.

    Candidate pairs come from points lying on a common line (within tau_pl);
    two pairs are compared only when they lie on the same line.  Cross-line
    distance equalities enter the pipeline later through the circle-center
    rule of the candidate stage, not here.
    """
    out: list[Relation] = []
    seen: set[tuple] = set()
    for label in scene.lines:
        names = points_on_line(scene, label, tol.tau_pl)
        pairs = []
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                a, b = sorted((names[i], names[j]))
                pairs.append((a, b, scene.points[a].dist(scene.points[b])))
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                a1, b1, d1 = pairs[i]
                a2, b2, d2 = pairs[j]
                if abs(d1 - d2) < tol.tau_d:
                    r = rel("DEqual", a1, b1, a2, b2)
                    if r.args not in seen:
                        seen.add(r.args)
                        out.append(r)
    return out


def mine_angle_equality(scene: Scene, tol: Tolerances,
                        cross_vertex: bool = False) -> list[Relation]:
    """AEqual at vertices lying on at least three lines.

    Each line through a vertex contributes one ray to the vertex's fan: the
    ray toward the other parameter when the vertex is itself a parameter,
    else the parameter ray of smaller direction angle (a label-free choice,
    so relabeling permutes the output).  One ray per line keeps vertical
    angles and straight angles -- equal for any crossing line pair -- out of
    the comparison.  The fan is sorted by direction angle and all angle
    pairs from it closer than tau_a are reported.  ``cross_vertex``
    additionally compares angles at different vertices (off by default).
    """
    fans: dict[str, list[tuple[float, str]]] = {}
    for name, p in scene.points.items():
        lines_through = []
        for label, line in scene.lines.items():
            if name in line.params():
                lines_through.append(label)
            else:
                a, b = scene.points[line.p], scene.points[line.q]
                if point_line_distance(p, a, b, line.kind, overhang=tol.tau_pl) < tol.tau_pl:
                    lines_through.append(label)
        if len(lines_through) < 3:
            continue
        fan = []
        for label in lines_through:
            rays = [(direction_angle(p, scene.points[q]), q)
                    for q in scene.lines[label].params() if q != name]
            ray = min(rays)
            if all(ray[1] != other for _, other in fan):
                fan.append(ray)
        fans[name] = sorted(fan)

    def angles_at(vertex: str) -> list[tuple[float, str, str]]:
        fan = fans[vertex]
        out = []
        for i in range(len(fan)):
            for j in range(i + 1, len(fan)):
                t1, q1 = fan[i]
                t2, q2 = fan[j]
                out.append((_angdist(t1, t2), q1, q2))
        return out

    out: list[Relation] = []
    seen: set[tuple] = set()
    items = [(v, a) for v in fans for a in angles_at(v)]
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            v1, (s1, a1, c1) = items[i]
            v2, (s2, a2, c2) = items[j]
            if v1 != v2 and not cross_vertex:
                continue
            if {a1, c1} == {a2, c2} and v1 == v2:
                continue
            if abs(s1 - s2) < tol.tau_a:
                r = rel("AEqual", a1, v1, c1, a2, v2, c2)
                if r.args not in seen:
                    seen.add(r.args)
                    out.append(r)
    return out


def mine_relations(scene: Scene, tol: Tolerances, cross_vertex: bool = False) -> list[Relation]:
    """All four miners, unioned, in a stable order."""
    out = []
    out.extend(mine_incidence(scene, tol))
    out.extend(mine_parallel_perp(scene, tol))
    out.extend(mine_distance_equality(scene, tol))
    out.extend(mine_angle_equality(scene, tol, cross_vertex))
    uniq = []
    seen = set()
    for r in out:
        if (r.tag, r.args) not in seen:
            seen.add((r.tag, r.args))
            uniq.append(r)
    return uniq
