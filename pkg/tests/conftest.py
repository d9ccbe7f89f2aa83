import pytest

from theoremine.geometry import CircleEnt, LineEnt, Point, Relation, Scene, rel

# Simson configuration used throughout: 12 points of interest, 7 lines,
# one circle, and the 18 basic relations mined from it.

SIMSON_POINTS = {
    "B": (45, 260), "C": (351, 243), "G": (313, 246), "A": (137, 78),
    "F": (262, 174), "H": (311, 212), "E": (163, 37), "I": (182, 0),
    "D": (305, 110), "J": (196, 224), "K": (184, 67), "L": (224, 69),
}

SIMSON_LINES = {
    "a": ("Segment", "B", "C"),
    "b": ("Segment", "A", "C"),
    "c": ("Segment", "E", "G"),
    "d": ("HalfLine", "B", "I"),
    "e": ("Segment", "E", "D"),
    "f": ("Segment", "D", "G"),
    "g": ("Segment", "F", "D"),
}

SIMSON_RELATIONS = [
    rel("OnLine", "G", "a"),
    rel("OnLine", "A", "d"),
    rel("OnLine", "F", "b"),
    rel("OnLine", "F", "c"),
    rel("OnLine", "H", "f"),
    rel("OnLine", "E", "d"),
    rel("OnLine", "K", "c"),
    rel("OnLine", "L", "e"),
    rel("OnLine", "H", "b"),
    rel("OnCircle", "B", "h"),
    rel("OnCircle", "C", "h"),
    rel("OnCircle", "A", "h"),
    rel("OnCircle", "K", "h"),
    rel("OnCircle", "L", "h"),
    rel("OnCircle", "D", "h"),
    rel("Perp", "a", "f"),
    rel("Perp", "b", "g"),
    rel("Perp", "d", "e"),
]

SIMSON_WEIGHTS = {"B": 6, "C": 6, "G": 5, "A": 5, "F": 3, "H": 2,
                  "E": 5, "I": 3, "D": 6, "J": 6, "K": 2, "L": 2}


def build_simson_scene() -> Scene:
    scene = Scene()
    for name, (x, y) in SIMSON_POINTS.items():
        scene.points[name] = Point(float(x), float(y))
    for label, (kind, p, q) in SIMSON_LINES.items():
        scene.lines[label] = LineEnt(kind, p, q)
    scene.circles["h"] = CircleEnt(center="J", radius=157.0)
    scene.validate()
    return scene


@pytest.fixture
def simson_scene() -> Scene:
    return build_simson_scene()


@pytest.fixture
def simson_relations() -> list[Relation]:
    return list(SIMSON_RELATIONS)
