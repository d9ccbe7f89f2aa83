"""Candidate proposition generation.

Boils a mined relation set down to candidate propositions in six stages:
point weighting, re-representation of lines and circles through their
heaviest incident points, pruning of non-characteristic points, removal of
branch relations (distance equalities derivable from retained ones),
introduction of derived relations (intersection / midpoint / foot), and
finally ordering plus conclusion selection.

Everything here is symbolic over the relation set; the only numeric input
is the coordinate sort used when analyzing same-line distance equalities.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .geometry import CircleEnt, LineEnt, Relation, Scene, rel

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Proposition:
    name: str
    hypothesis: tuple[Relation, ...]
    conclusion: Relation
    point_order: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.conclusion in self.hypothesis:
            raise ValueError("conclusion duplicated in hypothesis")

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "hypothesis": [r.to_json() for r in self.hypothesis],
            "conclusion": self.conclusion.to_json(),
        }
        if self.point_order:
            out["point_order"] = list(self.point_order)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Proposition":
        return cls(obj["name"],
                   tuple(Relation.from_json(r) for r in obj["hypothesis"]),
                   Relation.from_json(obj["conclusion"]),
                   tuple(obj["point_order"]) if obj.get("point_order") else None)

    def text(self, scene: Scene) -> str:
        hyp = ", ".join(r.text(scene) for r in self.hypothesis)
        return f"Proposition({self.name}, [{hyp}], [{self.conclusion.text(scene)}])"


# -- weights -------------------------------------------------------------------


def count_weights(relations: list[Relation], scene: Scene) -> dict[str, int]:
    """Occurrence count of every scene point across all relation arguments,
    expanding line/circle arguments into their parameter points."""
    w = {name: 0 for name in scene.points}
    for r in relations:
        for p in r.point_occurrences(scene):
            if p in w:
                w[p] += 1
    return w


# -- re-representation -----------------------------------------------------------


def _top_points(cands: list[str], weights: dict[str, int], current: tuple[str, ...],
                n: int) -> list[str]:
    # heaviest first; ties prefer points already serving as parameters, then
    # lexicographic label order, so re-representation is stable
    key = lambda p: (-weights.get(p, 0), p not in current, p)
    return sorted(cands, key=key)[:n]


def _incident_points(scene: Scene, relations: list[Relation], label: str) -> list[str]:
    """Points on a line/circle: its parameters plus subjects of incidence
    relations in the current set."""
    if label in scene.lines:
        params = scene.lines[label].params()
        tag = "OnLine"
    else:
        params = scene.circles[label].params()
        tag = "OnCircle"
    out = [p for p in params if p in scene.points]
    for r in relations:
        if r.tag == tag and r.args[1] == label and r.args[0] not in out:
            out.append(r.args[0])
    return out


def rerepresent(scene: Scene, relations: list[Relation]) -> tuple[Scene, list[Relation]]:
    """Re-parameterize lines and circles through their heaviest points.

    Lines are processed in label order, then circles; weights are re-counted
    after every change.  When a center-radius circle is re-represented and
    the old center is still used by other relations, the two
    center-equidistance relations are added.  Trivial incidences of defining
    points are removed after each full pass, and passes repeat to fixpoint.
    """
    scene = scene.copy()
    relations = list(relations)
    max_passes = max(len(scene.points) * max(len(relations), 1), 4)

    for _ in range(max_passes):
        changed = False
        weights = count_weights(relations, scene)
        for label in sorted(scene.lines):
            line = scene.lines[label]
            pts = _incident_points(scene, relations, label)
            if len(pts) < 3:
                continue
            if line.kind == "HalfLine":
                start = line.p
                others = [p for p in pts if p != start]
                top = _top_points(others, weights, (line.q,), 1)
                new = LineEnt("HalfLine", start, top[0])
            else:
                top = _top_points(pts, weights, line.params(), 2)
                a, b = sorted(top)
                new = LineEnt(line.kind, a, b)
            if new != line:
                scene.lines[label] = new
                weights = count_weights(relations, scene)
                changed = True
        for label in sorted(scene.circles):
            circ = scene.circles[label]
            pts = _incident_points(scene, relations, label)
            on_circle = [p for p in pts if p != circ.center]
            if len(on_circle) < 3:
                continue
            top = tuple(sorted(_top_points(on_circle, weights, circ.params(), 3)))
            new = CircleEnt(points=top)
            if new != circ:
                old_center = circ.center
                scene.circles[label] = new
                if old_center is not None:
                    used_elsewhere = any(
                        old_center in r.point_occurrences(scene) for r in relations
                        if not (r.tag == "OnCircle" and r.args[1] == label))
                    if used_elsewhere:
                        for other in (top[1], top[2]):
                            deq = rel("DEqual", old_center, top[0], old_center, other)
                            if deq not in relations:
                                relations.append(deq)
                weights = count_weights(relations, scene)
                changed = True

        # remove trivial incidences of defining points
        kept = []
        for r in relations:
            if r.tag == "OnLine" and r.args[0] in scene.lines[r.args[1]].params():
                changed = True
                continue
            if r.tag == "OnCircle" and r.args[0] in scene.circles[r.args[1]].params():
                changed = True
                continue
            kept.append(r)
        relations = kept
        if not changed:
            break
    return scene, relations


# -- pruning ---------------------------------------------------------------------


def prune_noncharacteristic(scene: Scene, relations: list[Relation],
                            weights: dict[str, int],
                            weight_min: int = 3) -> tuple[Scene, list[Relation], dict[str, int]]:
    """Drop points below the weight threshold and the relations using them.

    Removal cascades: dropping relations can push surviving points' occurrence
    counts below the threshold, so the recount loops to fixpoint.  The
    returned weight table keeps the pre-prune counts of the survivors (those
    are what the point order downstream is built on).
    """
    relations = list(relations)
    alive = {p for p, w in weights.items() if w >= weight_min}
    while True:
        relations = [r for r in relations if r.points_used(scene) <= alive]
        recount = count_weights(relations, scene)
        drop = {p for p in alive if recount.get(p, 0) < weight_min}
        if not drop:
            break
        alive -= drop

    out = scene.copy()
    out.points = {p: pt for p, pt in scene.points.items() if p in alive}
    out.lines = {l: e for l, e in scene.lines.items() if set(e.params()) <= alive}
    out.circles = {c: e for c, e in scene.circles.items() if set(e.params()) <= alive}
    return out, relations, {p: weights[p] for p in scene.points if p in alive}


# -- branch relations --------------------------------------------------------------


def _deq_pairs(r: Relation) -> tuple[frozenset, frozenset]:
    return frozenset(r.args[0:2]), frozenset(r.args[2:4])


def _points_on_line_symbolic(scene: Scene, relations: list[Relation], label: str) -> set[str]:
    """Points linked to a line by parameterhood or current relations."""
    on = set(scene.lines[label].params())
    for r in relations:
        if r.tag == "OnLine" and r.args[1] == label:
            on.add(r.args[0])
        elif r.tag == "FootOf" and r.args[1] == label:
            on.add(r.args[0])
        elif r.tag == "IntersectionOf" and label in r.args[1:]:
            on.add(r.args[0])
        elif r.tag == "MidpointOf" and set(r.args[1:]) <= on:
            on.add(r.args[0])
    return on


def _same_line_group(scene: Scene, relations: list[Relation], deq: Relation) -> str | None:
    """Label of a line carrying all four points of a DEqual, or None."""
    pts = set(deq.args)
    for label in scene.lines:
        if pts <= _points_on_line_symbolic(scene, relations, label):
            return label
    return None


def _along_line_key(scene: Scene, label: str):
    """Sort key for points along a line: the dominant coordinate axis."""
    line = scene.lines[label]
    a, b = scene.points[line.p], scene.points[line.q]
    if abs(b.x - a.x) >= abs(b.y - a.y):
        return lambda p: (scene.points[p].x, scene.points[p].y)
    return lambda p: (scene.points[p].y, scene.points[p].x)


def _sameline_closure(kept: list[tuple], universe_pts: list[str]) -> set[tuple]:
    """Closure of same-line DEquals under the two shift formulae.

    Points are identified with their sorted position along the line; a
    relation is the unordered pair of index pairs {(i,j),(k,l)}.  Formula 1:
    |PiPj| = |PkPl|  =>  |PiPk| = |PjPl|.  Formula 2: two equalities
    symmetric about a common midpoint index m imply the two outer ones.
    """
    idx = {p: i for i, p in enumerate(universe_pts)}

    def norm(pairs):
        p1 = tuple(sorted((idx[pairs[0][0]], idx[pairs[0][1]])))
        p2 = tuple(sorted((idx[pairs[1][0]], idx[pairs[1][1]])))
        return tuple(sorted((p1, p2)))

    out = {norm(k) for k in kept}
    changed = True
    while changed:
        changed = False
        for (i, j), (k, l) in list(out):
            cands = []
            if {i, j} != {k, l}:
                cands.append((min(i, k), max(i, k), min(j, l), max(j, l)))
            for (a, b, c, d) in cands:
                if a == b or c == d:
                    continue
                key = tuple(sorted(((a, b), (c, d))))
                if key not in out:
                    out.add(key)
                    changed = True
        for r1, r2 in itertools.permutations(list(out), 2):
            # formula 2 pattern: r1 = {(i,m),(m,l)}, r2 = {(j,m),(m,k)}, i<j<m<k<l
            (a1, b1), (c1, d1) = r1
            (a2, b2), (c2, d2) = r2
            if b1 == c1 and b2 == c2 and b1 == b2:
                m = b1
                i, l = a1, d1
                j, k = a2, d2
                if i < j < m < k < l:
                    for key in (tuple(sorted(((i, j), (k, l)))),
                                tuple(sorted(((i, k), (j, l))))):
                        if key[0][0] != key[0][1] and key[1][0] != key[1][1] and key not in out:
                            out.add(key)
                            changed = True
    return out


def _canon_deq(pair1: frozenset, pair2: frozenset) -> frozenset:
    return frozenset((pair1, pair2))


def _formula1_consequences(e1: tuple, e2: tuple) -> list[frozenset]:
    """Cross-line branch formula: |AB|=|CD|, |AE|=|FD| => |BE|=|CF|.

    Relations are unordered pairs of point pairs; within-pair flips and the
    symmetry of equality are all considered.  Returns canonical forms of the
    derivable relations.
    """
    out = []
    for lhs1, rhs1 in (e1, tuple(reversed(e1))):
        for lhs2, rhs2 in (e2, tuple(reversed(e2))):
            for a in lhs1:
                for d in rhs1:
                    b = next(iter(lhs1 - {a}), None)
                    c = next(iter(rhs1 - {d}), None)
                    if b is None or c is None:
                        continue
                    if a not in lhs2 or d not in rhs2:
                        continue
                    e = next(iter(lhs2 - {a}), None)
                    f = next(iter(rhs2 - {d}), None)
                    if e is None or f is None or b == e or c == f:
                        continue
                    if frozenset((b, e)) == frozenset((c, f)):
                        continue  # trivially true consequence
                    out.append(_canon_deq(frozenset((b, e)), frozenset((c, f))))
    return out


def remove_branch_relations(relations: list[Relation], scene: Scene) -> list[Relation]:
    """Drop DEqual relations derivable from retained ones.

    Three mechanisms, applied greedily in input order so the retained subset
    is the order-least irredundant one: the circle-center rule (distances
    from a center to on-circle points are all equal), the same-line shift
    formulae over coordinate-sorted collinear points, and the cross-line
    transfer formula over distance relations between line parameter points.
    """
    deqs = [r for r in relations if r.tag == "DEqual"]
    if not deqs:
        return list(relations)

    on_circle: dict[str, set[str]] = {}
    for r in relations:
        if r.tag == "OnCircle":
            circ = scene.circles[r.args[1]]
            if circ.center is not None:
                on_circle.setdefault(circ.center, set()).add(r.args[0])

    line_params = {p for l in scene.lines.values() for p in l.params()}

    kept: list[Relation] = []
    kept_by_line: dict[str, list[tuple]] = {}
    kept_e1: list[tuple] = []
    removed = []
    for deq in deqs:
        pair1, pair2 = _deq_pairs(deq)
        # circle rule: |OA| = |OB| with A, B both on the circle centered at O
        common = pair1 & pair2
        if len(common) == 1:
            (o,) = common
            a = next(iter(pair1 - common), None)
            b = next(iter(pair2 - common), None)
            if a and b and on_circle.get(o) and {a, b} <= on_circle[o]:
                removed.append(deq)
                continue
        line = _same_line_group(scene, relations, deq)
        if line is not None:
            group = kept_by_line.get(line, [])
            axis = _along_line_key(scene, line)
            universe = sorted({p for k in group for pr in k for p in pr} | set(deq.args), key=axis)
            closure = _sameline_closure(group, universe) if group else set()
            idx = {p: i for i, p in enumerate(universe)}
            key = tuple(sorted((tuple(sorted((idx[deq.args[0]], idx[deq.args[1]]))),
                                tuple(sorted((idx[deq.args[2]], idx[deq.args[3]]))))))
            if key in closure:
                removed.append(deq)
                continue
            kept_by_line.setdefault(line, []).append((tuple(deq.args[0:2]), tuple(deq.args[2:4])))
            kept.append(deq)
            if set(deq.args) <= line_params:
                kept_e1.append((pair1, pair2))
            continue
        # cross-line case: all four points are parameters of retrieved lines
        if set(deq.args) <= line_params:
            closure: set[frozenset] = set()
            grown = True
            rounds = 0
            while grown and rounds < 6:
                grown = False
                rounds += 1
                pool = kept_e1 + [tuple(c) for c in closure]
                for e1 in pool:
                    for e2 in pool:
                        for cons in _formula1_consequences(tuple(e1), tuple(e2)):
                            if cons not in closure and not _in_e1(cons, kept_e1):
                                closure.add(cons)
                                grown = True
            if _canon_deq(pair1, pair2) in closure:
                removed.append(deq)
                continue
            kept_e1.append((pair1, pair2))
        kept.append(deq)

    if removed:
        log.debug("branch relations removed: %s", [r.args for r in removed])
    out = []
    for r in relations:
        if r.tag == "DEqual" and r not in kept:
            continue
        out.append(r)
    return out


def _in_e1(cons: frozenset, e1_list: list[tuple]) -> bool:
    return any(_canon_deq(*e) == cons for e in e1_list)


# -- derived relations ----------------------------------------------------------


def introduce_derived(relations: list[Relation], scene: Scene) -> list[Relation]:
    """Rewrite premise bundles into derived relations, to fixpoint.

    Priority foot > midpoint > intersection when premises overlap; each
    rewrite consumes its premises.  A point already serving as the defined
    label of one derived relation can be defined again only through a
    different premise bundle (that is what makes paired-label conclusions
    possible downstream).
    """
    rels = list(relations)

    def on_line_rels(point: str) -> list[Relation]:
        return [r for r in rels if r.tag == "OnLine" and r.args[0] == point]

    changed = True
    while changed:
        changed = False
        # foot: incident(C, p) + perpendicular(p, q) + C on q
        for inc in sorted(on_line_candidates(rels), key=lambda r: (r.args[0], r.args[1])):
            c, p = inc.args
            for perp in [r for r in rels if r.tag == "Perp" and p in r.args]:
                q = perp.args[1] if perp.args[0] == p else perp.args[0]
                if q not in scene.lines:
                    continue
                q_inc = None
                if c in scene.lines[q].params():
                    on_q = True
                else:
                    q_inc = next((r for r in rels if r.tag == "OnLine" and r.args == (c, q)), None)
                    on_q = q_inc is not None
                if not on_q:
                    continue
                new = Relation("FootOf", (c, p, q))
                if new in rels:
                    continue
                rels.remove(inc)
                rels.remove(perp)
                if q_inc is not None:
                    rels.remove(q_inc)
                rels.append(new)
                changed = True
                break
            if changed:
                break
        if changed:
            continue
        # midpoint: incident(C, segment(A,B)) + |AC| = |CB|
        for inc in sorted(on_line_candidates(rels), key=lambda r: (r.args[0], r.args[1])):
            c, l = inc.args
            a, b = scene.lines[l].params()
            want = rel("DEqual", a, c, c, b)
            deq = next((r for r in rels if r.tag == "DEqual" and r.args == want.args), None)
            if deq is None:
                continue
            new = rel("MidpointOf", c, a, b)
            if new in rels:
                continue
            rels.remove(inc)
            rels.remove(deq)
            rels.append(new)
            changed = True
            break
        if changed:
            continue
        # intersection: incident(C, p) + incident(C, q)
        by_point: dict[str, list[Relation]] = {}
        for r in on_line_candidates(rels):
            by_point.setdefault(r.args[0], []).append(r)
        for c in sorted(by_point):
            incs = sorted(by_point[c], key=lambda r: r.args[1])
            if len(incs) < 2:
                continue
            r1, r2 = incs[0], incs[1]
            new = rel("IntersectionOf", c, r1.args[1], r2.args[1])
            if new in rels:
                continue
            rels.remove(r1)
            rels.remove(r2)
            rels.append(new)
            changed = True
            break
    return rels


def on_line_candidates(rels: list[Relation]) -> list[Relation]:
    return [r for r in rels if r.tag == "OnLine"]


# -- orders ------------------------------------------------------------------------


def order_points(weights: dict[str, int], relations: list[Relation],
                 scene: Scene) -> list[str]:
    """Total order on characteristic points.

    Rule 1: every point used by a derived relation precedes its defined
    label.  Rule 2: otherwise heavier points come first.  Remaining ties
    break by reverse label so the order is total and deterministic.
    """
    points = [p for p in weights]
    before: dict[str, set[str]] = {p: set() for p in points}
    for r in relations:
        if r.is_derived:
            d = r.defined_label()
            for p in r.points_used(scene):
                if p != d and p in before:
                    before[d].add(p)

    out: list[str] = []
    remaining = set(points)
    while remaining:
        ready = [p for p in remaining if before[p] <= set(out)]
        if not ready:
            raise ValueError(f"cyclic derived-relation constraints among {sorted(remaining)}")
        ready.sort(key=lambda p: (-weights.get(p, 0), [-ord(ch) for ch in p]))
        out.append(ready[0])
        remaining.remove(ready[0])
    return out


def order_relations(relations: list[Relation], point_order: list[str],
                    scene: Scene) -> list[Relation]:
    """Sort relations by the order induced from their used-point keys.

    Each relation is keyed by its distinct used points sorted ascending in
    the point order; keys compare lexicographically with a shorter prefix
    preceding its extensions.  Full ties break by tag then argument tuple.
    """
    rank = {p: i for i, p in enumerate(point_order)}

    def key(r: Relation):
        pts = sorted(r.points_used(scene), key=lambda p: rank[p])
        return ([rank[p] for p in pts], r.tag, r.args)

    return sorted(relations, key=key)


# -- proposition generation ----------------------------------------------------------


def generate_propositions(ordered: list[Relation], scene: Scene,
                          fixture_name: str = "P",
                          point_order: tuple[str, ...] | None = None) -> list[Proposition]:
    """One proposition per admissible conclusion.

    Every basic relation is an admissible conclusion; a derived relation is
    admissible only when another derived relation defines the same label.
    The hypothesis is all remaining relations in their given order, and the
    proposition name carries the conclusion's 1-based position.
    """
    if len(ordered) < 2:
        if ordered:
            log.warning("only %d relation(s); no propositions generated", len(ordered))
        return []
    label_count: dict[str, int] = {}
    for r in ordered:
        if r.is_derived:
            d = r.defined_label()
            label_count[d] = label_count.get(d, 0) + 1

    out = []
    for k, r in enumerate(ordered, start=1):
        admissible = (not r.is_derived) or label_count.get(r.defined_label(), 0) >= 2
        if not admissible:
            continue
        hyp = tuple(x for x in ordered if x is not r)
        out.append(Proposition(f"{fixture_name}_{k}", hyp, r, point_order))
    if not out:
        log.warning("no admissible conclusion among %d relations", len(ordered))
    return out


# -- the full stage -------------------------------------------------------------------


def generate(scene: Scene, relations: list[Relation], fixture_name: str = "P",
             weight_min: int = 3) -> tuple[Scene, list[Relation], list[Proposition]]:
    """Run the whole candidate stage; returns the reduced scene, the ordered
    characteristic relation list, and the propositions."""
    scene2, rels2 = rerepresent(scene, relations)
    weights = count_weights(rels2, scene2)
    scene3, rels3, weights3 = prune_noncharacteristic(scene2, rels2, weights, weight_min)
    rels4 = remove_branch_relations(rels3, scene3)
    rels5 = introduce_derived(rels4, scene3)
    order = order_points(weights3, rels5, scene3)
    ordered = order_relations(rels5, order, scene3)
    props = generate_propositions(ordered, scene3, fixture_name, tuple(order))
    return scene3, ordered, props
