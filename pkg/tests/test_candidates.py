import pytest

from theoremine.candidates import (
    count_weights,
    generate,
    generate_propositions,
    introduce_derived,
    order_points,
    order_relations,
    prune_noncharacteristic,
    remove_branch_relations,
    rerepresent,
)
from theoremine.geometry import CircleEnt, LineEnt, Point, Relation, Scene, rel

from conftest import SIMSON_WEIGHTS


def make_scene(points, lines=(), circles=()):
    s = Scene()
    for name, (x, y) in points.items():
        s.points[name] = Point(float(x), float(y))
    for label, kind, p, q in lines:
        s.lines[label] = LineEnt(kind, p, q)
    for label, c in circles:
        s.circles[label] = c
    s.validate()
    return s


# -- weights (Table 2) ----------------------------------------------------------


def test_simson_weights_match_table(simson_scene, simson_relations):
    assert count_weights(simson_relations, simson_scene) == SIMSON_WEIGHTS


def test_empty_relations_zero_weights(simson_scene):
    w = count_weights([], simson_scene)
    assert all(v == 0 for v in w.values())


def test_single_incidence_weight():
    s = make_scene({"P": (0, 0), "A": (-50, 0), "B": (50, 0)},
                   [("l", "Segment", "A", "B")])
    w = count_weights([rel("OnLine", "P", "l")], s)
    assert w == {"P": 1, "A": 1, "B": 1}


def test_weight_mass_grows_by_slot_count(simson_scene, simson_relations):
    total = sum(count_weights(simson_relations, simson_scene).values())
    one_less = sum(count_weights(simson_relations[:-1], simson_scene).values())
    dropped = simson_relations[-1]
    assert total - one_less == len(dropped.point_occurrences(simson_scene))


# -- re-representation (Table 3) ---------------------------------------------------


def test_simson_rerepresentation_matches_table(simson_scene, simson_relations):
    scene2, rels2 = rerepresent(simson_scene, simson_relations)
    # circle through the three heaviest on-circle points
    assert scene2.circles["h"].points == ("A", "B", "C")
    # half line keeps its start and picks the heaviest other point
    assert scene2.lines["d"] == LineEnt("HalfLine", "B", "A")
    # weights after re-representation: Table 3
    w = count_weights(rels2, scene2)
    assert w == {"B": 7, "C": 8, "G": 5, "A": 8, "F": 3, "H": 2,
                 "E": 5, "I": 0, "D": 6, "J": 0, "K": 2, "L": 2}
    # 14 surviving relations, trivial incidences gone
    assert len(rels2) == 14
    assert rel("OnLine", "A", "d") not in rels2
    assert rel("OnCircle", "A", "h") not in rels2
    assert rel("OnCircle", "D", "h") in rels2


def test_rerepresent_fixpoint(simson_scene, simson_relations):
    scene2, rels2 = rerepresent(simson_scene, simson_relations)
    scene3, rels3 = rerepresent(scene2, rels2)
    assert scene3.lines == scene2.lines
    assert scene3.circles == scene2.circles
    assert rels3 == rels2


def test_rerepresent_keeps_two_point_circle():
    c = CircleEnt(center="O", radius=100.0)
    s = make_scene({"O": (0, 0), "A": (100, 0), "B": (-100, 0)}, circles=[("o", c)])
    rels = [rel("OnCircle", "A", "o"), rel("OnCircle", "B", "o")]
    s2, r2 = rerepresent(s, rels)
    assert s2.circles["o"].center == "O"  # gate n >= 3 not met


def test_rerepresent_adds_center_equidistance():
    # center used elsewhere: the two equidistance relations appear
    c = CircleEnt(center="O", radius=100.0)
    s = make_scene({"O": (100, 100), "A": (200, 100), "B": (0, 100), "C": (100, 0),
                    "P": (100, 250)},
                   [("l", "Segment", "O", "P")], circles=[("o", c)])
    rels = [rel("OnCircle", "A", "o"), rel("OnCircle", "B", "o"),
            rel("OnCircle", "C", "o"), rel("OnLine", "C", "l")]
    s2, r2 = rerepresent(s, rels)
    assert s2.circles["o"].points == ("A", "B", "C")
    assert rel("DEqual", "O", "A", "O", "B") in r2
    assert rel("DEqual", "O", "A", "O", "C") in r2


# -- pruning (Table 4) ---------------------------------------------------------------


def simson_after_rerep(simson_scene, simson_relations):
    scene2, rels2 = rerepresent(simson_scene, simson_relations)
    weights = count_weights(rels2, scene2)
    return prune_noncharacteristic(scene2, rels2, weights)


def test_simson_prune_matches_table(simson_scene, simson_relations):
    scene3, rels3, w3 = simson_after_rerep(simson_scene, simson_relations)
    assert set(scene3.points) == {"B", "C", "G", "A", "F", "E", "D"}
    assert w3 == {"B": 7, "C": 8, "G": 5, "A": 8, "F": 3, "E": 5, "D": 6}
    expect = {
        rel("OnLine", "G", "a"), rel("OnLine", "F", "b"), rel("OnLine", "F", "c"),
        rel("OnLine", "E", "d"), rel("OnCircle", "D", "h"),
        rel("Perp", "a", "f"), rel("Perp", "b", "g"), rel("Perp", "d", "e"),
    }
    assert set(rels3) == expect and len(rels3) == 8


def test_prune_no_change_when_all_heavy(simson_scene, simson_relations):
    scene3, rels3, w3 = simson_after_rerep(simson_scene, simson_relations)
    again = prune_noncharacteristic(scene3, rels3, w3)
    assert set(again[0].points) == set(scene3.points) and again[1] == rels3


def test_prune_cascades():
    # dropping Q's relation deflates P below the threshold in the recount
    s = make_scene({"P": (0, 0), "Q": (10, 10), "A": (-50, 0), "B": (50, 0),
                    "C": (0, -50), "D": (0, 50), "E": (-50, 40), "F": (50, 40)},
                   [("l1", "Segment", "A", "B"), ("l2", "Segment", "C", "D"),
                    ("l3", "Segment", "E", "F"), ("l4", "Segment", "A", "C"),
                    ("l5", "Segment", "B", "D"), ("l6", "Segment", "E", "A"),
                    ("l7", "Segment", "F", "B")])
    rels = [rel("OnLine", "P", "l1"), rel("OnLine", "P", "l2"),
            rel("OnLine", "Q", "l3"),
            rel("DEqual", "P", "Q", "A", "B")]
    w = count_weights(rels, s)
    # P: 2 inc + 1 deq = 3 survives the first cut; Q: 1 + 1 = 2 dies,
    # removing the DEqual, which deflates P to 2 -> P dies too
    assert w["P"] == 3 and w["Q"] == 2
    s2, r2, w2 = prune_noncharacteristic(s, rels, w)
    assert "Q" not in s2.points and "P" not in s2.points


# -- branch relations -----------------------------------------------------------------


def test_butterfly_branch_removal():
    # five collinear points, C the midpoint of both AB and DE; the two
    # drawn chords merge to one detected line, so D, C, E carry incidences
    s = make_scene({"A": (0, 0), "D": (30, 0), "C": (50, 0), "E": (70, 0), "B": (100, 0)},
                   [("l", "Segment", "A", "B")])
    rels = [
        rel("OnLine", "C", "l"), rel("OnLine", "D", "l"), rel("OnLine", "E", "l"),
        rel("DEqual", "A", "C", "C", "B"),
        rel("DEqual", "D", "C", "C", "E"),
        rel("DEqual", "A", "D", "E", "B"),
        rel("DEqual", "A", "E", "D", "B"),
    ]
    out = remove_branch_relations(rels, s)
    deqs = [r for r in out if r.tag == "DEqual"]
    assert len(deqs) == 2
    assert rel("DEqual", "A", "C", "C", "B") in deqs
    assert rel("DEqual", "D", "C", "C", "E") in deqs


def test_steiner_branch_removal():
    # cross-line case: four distance relations between line parameters,
    # two derivable by the transfer formula
    s = make_scene({"A": (200, 40), "B": (80, 300), "C": (320, 300),
                    "D": (250, 160), "E": (150, 160)},
                   [("ab", "Segment", "A", "B"), ("ac", "Segment", "A", "C"),
                    ("bd", "Segment", "B", "D"), ("ce", "Segment", "C", "E"),
                    ("bc", "Segment", "B", "C")])
    rels = [
        rel("DEqual", "A", "B", "A", "C"),
        rel("DEqual", "B", "D", "C", "E"),
        rel("DEqual", "A", "E", "A", "D"),
        rel("DEqual", "B", "E", "C", "D"),
    ]
    out = remove_branch_relations(rels, s)
    assert len(out) == 2
    assert rel("DEqual", "A", "B", "A", "C") in out
    assert rel("DEqual", "B", "D", "C", "E") in out


def test_circle_center_branch_rule():
    c = CircleEnt(center="O", radius=100.0)
    s = make_scene({"O": (0, 0), "A": (100, 0), "B": (-100, 0)},
                   [("l", "Segment", "A", "B")], circles=[("o", c)])
    rels = [rel("OnCircle", "A", "o"), rel("OnCircle", "B", "o"),
            rel("DEqual", "O", "A", "O", "B")]
    out = remove_branch_relations(rels, s)
    assert all(r.tag != "DEqual" for r in out)


def test_branch_removal_no_derivable_unchanged():
    s = make_scene({"A": (0, 0), "M": (50, 0), "B": (100, 0)},
                   [("l", "Segment", "A", "B")])
    rels = [rel("OnLine", "M", "l"), rel("DEqual", "A", "M", "M", "B")]
    assert remove_branch_relations(rels, s) == rels


# -- derived relations (Table 5) -----------------------------------------------------


def simson_table4(simson_scene, simson_relations):
    scene3, rels3, w3 = simson_after_rerep(simson_scene, simson_relations)
    return scene3, rels3, w3


def test_simson_derived_matches_table(simson_scene, simson_relations):
    scene3, rels3, w3 = simson_table4(simson_scene, simson_relations)
    rels4 = remove_branch_relations(rels3, scene3)
    rels5 = introduce_derived(rels4, scene3)
    expect = {
        Relation("FootOf", ("G", "a", "f")),
        Relation("FootOf", ("F", "b", "g")),
        Relation("FootOf", ("E", "d", "e")),
        rel("OnLine", "F", "c"),
        rel("OnCircle", "D", "h"),
    }
    assert set(rels5) == expect


def test_intersection_rewrite():
    s = make_scene({"C": (50, 50), "A": (0, 50), "B": (100, 50), "P": (50, 0), "Q": (50, 100)},
                   [("p", "Segment", "A", "B"), ("q", "Segment", "P", "Q")])
    rels = [rel("OnLine", "C", "p"), rel("OnLine", "C", "q")]
    out = introduce_derived(rels, s)
    assert out == [rel("IntersectionOf", "C", "p", "q")]


def test_midpoint_rewrite():
    s = make_scene({"A": (0, 0), "M": (50, 0), "B": (100, 0)},
                   [("l", "Segment", "A", "B")])
    rels = [rel("OnLine", "M", "l"), rel("DEqual", "A", "M", "M", "B")]
    out = introduce_derived(rels, s)
    assert out == [rel("MidpointOf", "M", "A", "B")]


def test_no_rewrite_without_premises():
    s = make_scene({"A": (0, 0), "M": (50, 0), "B": (100, 0)},
                   [("l", "Segment", "A", "B")])
    rels = [rel("DEqual", "A", "M", "M", "B")]
    assert introduce_derived(rels, s) == rels


# -- point and relation orders ---------------------------------------------------------


def simson_ordered(simson_scene, simson_relations):
    scene3, rels3, w3 = simson_table4(simson_scene, simson_relations)
    rels5 = introduce_derived(remove_branch_relations(rels3, scene3), scene3)
    order = order_points(w3, rels5, scene3)
    return scene3, order, order_relations(rels5, order, scene3)


def test_simson_point_order(simson_scene, simson_relations):
    _, order, _ = simson_ordered(simson_scene, simson_relations)
    assert order == ["C", "A", "B", "D", "G", "E", "F"]


def test_simson_relation_order(simson_scene, simson_relations):
    scene3, _, ordered = simson_ordered(simson_scene, simson_relations)
    texts = [r.text(scene3) for r in ordered]
    assert texts == [
        "pointOnC(D, circle(A,B,C))",
        "F := foot(segment(A,C), segment(D,F))",
        "G := foot(segment(B,C), segment(D,G))",
        "E := foot(halfline(B,A), segment(D,E))",
        "incident(F, segment(E,G))",
    ]


def test_order_points_weight_rule():
    s = make_scene({"P": (0, 0), "Q": (1, 1)})
    assert order_points({"P": 5, "Q": 3}, [], s) == ["P", "Q"]


def test_order_points_cycle_detected():
    s = make_scene({"P": (0, 0), "Q": (1, 1), "R": (2, 2), "S": (3, 3)},
                   [("p", "Segment", "P", "Q"), ("q", "Segment", "R", "S"),
                    ("r", "Segment", "P", "R"), ("s", "Segment", "Q", "S")])
    circular = [Relation("IntersectionOf", ("P", "q", "s")),
                Relation("IntersectionOf", ("S", "p", "r"))]
    with pytest.raises(ValueError):
        order_points({"P": 1, "Q": 1, "R": 1, "S": 1}, circular, s)


def test_order_relations_single():
    s = make_scene({"A": (0, 0), "B": (1, 0), "P": (0.5, 0)},
                   [("l", "Segment", "A", "B")])
    r = rel("OnLine", "P", "l")
    assert order_relations([r], ["A", "B", "P"], s) == [r]


# -- proposition generation ---------------------------------------------------------------


def test_simson_propositions(simson_scene, simson_relations):
    scene3, _, ordered = simson_ordered(simson_scene, simson_relations)
    props = generate_propositions(ordered, scene3, "simson")
    assert len(props) == 2
    by_name = {p.name: p for p in props}
    assert set(by_name) == {"simson_1", "simson_5"}
    s5 = by_name["simson_5"]
    assert s5.conclusion == rel("OnLine", "F", "c")
    assert [r.tag for r in s5.hypothesis] == ["OnCircle", "FootOf", "FootOf", "FootOf"]
    s1 = by_name["simson_1"]
    assert s1.conclusion == rel("OnCircle", "D", "h")
    assert len(s1.hypothesis) == 4


def test_all_derived_distinct_labels_no_conclusion():
    s = make_scene({"C": (50, 50), "A": (0, 50), "B": (100, 50), "P": (50, 0),
                    "Q": (50, 100), "D": (50, 50)},
                   [("p", "Segment", "A", "B"), ("q", "Segment", "P", "Q")])
    rels = [Relation("IntersectionOf", ("C", "p", "q")),
            Relation("IntersectionOf", ("D", "p", "q"))]
    assert generate_propositions(rels, s, "t") == []


def test_three_basic_relations_three_propositions(simson_scene):
    rels = [rel("OnLine", "G", "a"), rel("OnLine", "F", "b"), rel("OnLine", "H", "f")]
    props = generate_propositions(rels, simson_scene, "t")
    assert len(props) == 3
    assert all(len(p.hypothesis) == 2 for p in props)


def test_generate_full_chain(simson_scene, simson_relations):
    scene, ordered, props = generate(simson_scene, simson_relations, "simson")
    assert {p.name for p in props} == {"simson_1", "simson_5"}


def test_proposition_json_roundtrip(simson_scene, simson_relations):
    from theoremine.candidates import Proposition
    _, _, props = generate(simson_scene, simson_relations, "simson")
    for p in props:
        assert Proposition.from_json(p.to_json()) == p
