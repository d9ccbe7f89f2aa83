"""Algebraic verification and proof of candidate propositions.

A proposition is algebraized by assigning coordinate variables to its
points, translating each relation into polynomial equations, and fixing a
variable order with parameters before dependents.  False candidates are
ruled out numerically: the hypothesis system is triangularized once, random
rational parameter values are substituted, the triangular system is solved
branch by branch over its real roots, and the conclusion is evaluated at
every solution.  Survivors go to the prover, which computes the final
pseudo-remainder of the conclusion against the hypothesis characteristic
set; a vanishing remainder is the proof certificate, valid wherever the
product of the chain initials does not vanish.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AscendingChain,
    CapExceeded,
    Polynomial,
    initials_product,
    prem_chain,
    real_roots_univariate,
    ritt_wu_charset,
    squarefree_split,
)
from .candidates import Proposition
from .config import ProverParams
from .geometry import Relation, Scene

log = logging.getLogger(__name__)


@dataclass
class AlgebraizedProposition:
    """Polynomial form of a proposition.

    ``variables`` lists every coordinate symbol once, parameters first and
    dependents grouped by point in the point order; ``kinds`` tags each as
    "u" (parameter) or "x" (dependent).
    """

    source: Proposition
    variables: tuple[str, ...]
    kinds: dict[str, str]
    hypothesis_polys: list[Polynomial]
    conclusion_polys: list[Polynomial]
    _chain: AscendingChain | None = None

    def parameters(self) -> list[str]:
        return [v for v in self.variables if self.kinds[v] == "u"]

    def hypothesis_chain(self, max_terms: int = 200_000) -> AscendingChain:
        """Characteristic set of the hypothesis system, computed once."""
        if self._chain is None:
            self._chain = ritt_wu_charset(self.hypothesis_polys, max_terms)
        return self._chain


@dataclass
class NondegCondition:
    poly: Polynomial
    geometric_reading: str | None = None

    def to_json(self) -> dict:
        out = {"poly": self.poly.format()}
        if self.geometric_reading:
            out["reading"] = self.geometric_reading
        return out


@dataclass
class Verdict:
    kind: str  # Proved | PartiallyProved | Disproved | Undetermined
    conditions: list[NondegCondition] = field(default_factory=list)
    counterexample: dict | None = None
    reason: str | None = None
    components: list[int] | None = None   # which split components proved
    certificate: str | None = None        # digest of the reduction trace
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"kind": self.kind, "seconds": round(self.seconds, 4)}
        if self.conditions:
            out["conditions"] = [c.to_json() for c in self.conditions]
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.reason:
            out["reason"] = self.reason
        if self.components is not None:
            out["components"] = self.components
        if self.certificate:
            out["certificate"] = self.certificate
        return out


# -- algebraization ------------------------------------------------------------------


def _x(p: str) -> str:
    return f"x_{p}"


def _y(p: str) -> str:
    return f"y_{p}"


class _Translator:
    def __init__(self, scene: Scene, vars: tuple[str, ...], pinned: dict[str, Fraction]):
        self.scene = scene
        self.vars = vars
        self.pinned = pinned

    def coord(self, name: str) -> Polynomial:
        if name in self.pinned:
            return Polynomial.const(self.vars, self.pinned[name])
        return Polynomial.var(self.vars, name)

    def xy(self, point: str) -> tuple[Polynomial, Polynomial]:
        return self.coord(_x(point)), self.coord(_y(point))

    def collinear(self, a: str, b: str, c: str) -> Polynomial:
        # x_a y_b + x_b y_c + x_c y_a - x_a y_c - x_b y_a - x_c y_b
        xa, ya = self.xy(a)
        xb, yb = self.xy(b)
        xc, yc = self.xy(c)
        return xa * yb + xb * yc + xc * ya - xa * yc - xb * ya - xc * yb

    def on_line(self, point: str, line_label: str) -> Polynomial:
        line = self.scene.lines[line_label]
        return self.collinear(line.p, line.q, point)

    def direction(self, line_label: str) -> tuple[Polynomial, Polynomial]:
        line = self.scene.lines[line_label]
        xp, yp = self.xy(line.p)
        xq, yq = self.xy(line.q)
        return xq - xp, yq - yp

    def parallel(self, l1: str, l2: str) -> Polynomial:
        dx1, dy1 = self.direction(l1)
        dx2, dy2 = self.direction(l2)
        return dx1 * dy2 - dy1 * dx2

    def perp(self, l1: str, l2: str) -> Polynomial:
        dx1, dy1 = self.direction(l1)
        dx2, dy2 = self.direction(l2)
        return dx1 * dx2 + dy1 * dy2

    def dist2(self, a: str, b: str) -> Polynomial:
        xa, ya = self.xy(a)
        xb, yb = self.xy(b)
        return (xa - xb) * (xa - xb) + (ya - yb) * (ya - yb)

    def on_circle(self, point: str, circ_label: str) -> list[Polynomial]:
        circ = self.scene.circles[circ_label]
        if circ.points is not None:
            a, b, c = circ.points
            rows = []
            for t in (point, a, b, c):
                xt, yt = self.xy(t)
                rows.append([xt * xt + yt * yt, xt, yt, Polynomial.const(self.vars, 1)])
            return [_det4(rows)]
        xo, yo = self.xy(circ.center)
        xp, yp = self.xy(point)
        r = self.coord(f"r_{circ_label}")
        return [(xp - xo) * (xp - xo) + (yp - yo) * (yp - yo) - r * r]

    def translate(self, r: Relation) -> list[Polynomial]:
        t, a = r.tag, r.args
        if t == "OnLine":
            polys = [self.on_line(a[0], a[1])]
        elif t == "OnCircle":
            polys = self.on_circle(a[0], a[1])
        elif t == "Parallel":
            polys = [self.parallel(a[0], a[1])]
        elif t == "Perp":
            polys = [self.perp(a[0], a[1])]
        elif t == "DEqual":
            polys = [self.dist2(a[0], a[1]) - self.dist2(a[2], a[3])]
        elif t == "AEqual":
            # tangent equality: cross(BA,BC)*dot(ED,EF) = cross(ED,EF)*dot(BA,BC)
            polys = [self._aequal(a)]
        elif t == "MidpointOf":
            xc, yc = self.xy(a[0])
            xa, ya = self.xy(a[1])
            xb, yb = self.xy(a[2])
            two = Polynomial.const(self.vars, 2)
            polys = [two * xc - xa - xb, two * yc - ya - yb]
        elif t == "IntersectionOf":
            polys = [self.on_line(a[0], a[1]), self.on_line(a[0], a[2])]
        elif t == "FootOf":
            polys = [self.on_line(a[0], a[1]), self.on_line(a[0], a[2]),
                     self.perp(a[1], a[2])]
        else:
            raise ValueError(f"unknown relation tag {t!r}")
        return [p for p in polys if not p.is_zero()]

    def _aequal(self, a: tuple[str, ...]) -> Polynomial:
        pa, pb, pc, pd, pe, pf = a
        xa, ya = self.xy(pa)
        xb, yb = self.xy(pb)
        xc, yc = self.xy(pc)
        cross1 = (xa - xb) * (yc - yb) - (ya - yb) * (xc - xb)
        dot1 = (xa - xb) * (xc - xb) + (ya - yb) * (yc - yb)
        xd, yd = self.xy(pd)
        xe, ye = self.xy(pe)
        xf, yf = self.xy(pf)
        cross2 = (xd - xe) * (yf - ye) - (yd - ye) * (xf - xe)
        dot2 = (xd - xe) * (xf - xe) + (yd - ye) * (yf - ye)
        return cross1 * dot2 - cross2 * dot1


def _det4(rows: list[list[Polynomial]]) -> Polynomial:
    def det3(r):
        (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = r
        return (a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1)
                + a3 * (b1 * c2 - b2 * c1))

    total = None
    for i in range(4):
        rest = [[rows[j][k] for k in (1, 2, 3)] for j in range(4) if j != i]
        term = rows[i][0] * det3(rest)
        if total is None:
            total = term
        else:
            total = total + term if i % 2 == 0 else total - term
    return total


def algebraize(prop: Proposition, scene: Scene, wlog: bool = False) -> AlgebraizedProposition:
    """Assign coordinates and translate a proposition to polynomials.

    Points defined by derived relations get two dependent coordinates; each
    remaining basic hypothesis relation marks one coordinate of a point as
    dependent: the incidence subject when it has a spare coordinate, else
    the latest point of the proposition's point order.  The variable order
    is parameters first, then dependents in hypothesis order.  With ``wlog``
    set, the first two fully-free points pin to (0,0) and (u,0).
    """
    order: list[str] = []
    if prop.point_order:
        order.extend(p for p in prop.point_order)
    for r in list(prop.hypothesis) + [prop.conclusion]:
        for p in r.point_occurrences(scene):
            if p not in order:
                order.append(p)

    dep_pairs: list[tuple[str, str]] = []
    assigned: dict[str, int] = {p: 0 for p in order}
    for r in prop.hypothesis:
        if r.is_derived:
            d = r.defined_label()
            if assigned[d] == 0:
                dep_pairs += [(d, _x(d)), (d, _y(d))]
                assigned[d] = 2
            continue
        n_eq = 2 if r.tag == "MidpointOf" else 1
        # the incidence subject is the natural dependent; when it and the
        # relation's own points are exhausted, the constraint falls to the
        # latest point of the whole proposition
        used = sorted(r.points_used(scene), key=order.index)
        prefer = [r.args[0]] if r.tag in ("OnLine", "OnCircle") else []
        cands = (prefer + [p for p in reversed(used) if p not in prefer]
                 + [p for p in reversed(order) if p not in used])
        for _ in range(n_eq):
            target = next((p for p in cands if assigned[p] < 2), None)
            if target is None:
                continue  # every point already fully dependent
            dep_pairs.append((target, _y(target) if assigned[target] == 0 else _x(target)))
            assigned[target] += 1
    # dependents grouped by their point's position in the point order keeps
    # every equation leading on a coordinate of its most-derived point
    dep_pairs.sort(key=lambda t: (order.index(t[0]), t[1]))
    dep_coords = [v for _, v in dep_pairs]

    radius_vars = []
    for r in list(prop.hypothesis) + [prop.conclusion]:
        if r.tag == "OnCircle":
            circ = scene.circles[r.args[1]]
            if circ.points is None:
                rv = f"r_{r.args[1]}"
                if rv not in radius_vars:
                    radius_vars.append(rv)

    params: list[str] = []
    for p in order:
        for v in (_x(p), _y(p)):
            if v not in dep_coords:
                params.append(v)
    params += radius_vars

    pinned: dict[str, Fraction] = {}
    if wlog:
        free = [p for p in order if assigned[p] == 0]
        if free:
            pinned[_x(free[0])] = Fraction(0)
            pinned[_y(free[0])] = Fraction(0)
        if len(free) > 1:
            pinned[_y(free[1])] = Fraction(0)
        params = [v for v in params if v not in pinned]

    variables = tuple(params + dep_coords)
    kinds = {v: ("x" if v in dep_coords else "u") for v in variables}

    tr = _Translator(scene, variables, pinned)
    hyp: list[Polynomial] = []
    for r in prop.hypothesis:
        hyp.extend(tr.translate(r))
    concl = tr.translate(prop.conclusion)
    if not concl:
        concl = [Polynomial.zero(variables)]
    return AlgebraizedProposition(prop, variables, kinds, hyp, concl)


# -- numeric instantiation and checking -------------------------------------------------


class InstantiationFailed(Exception):
    """All retries exhausted without a surviving solution branch."""


def _solve_poly_numeric(p: Polynomial, v: str, values: dict[str, Fraction],
                        params: ProverParams) -> list[Fraction] | None:
    """Real roots of a chain polynomial after exact substitution.

    Returns None when the initial vanishes numerically at the substituted
    point (the branch must be discarded).
    """
    sub = p.substitute({u: values[u] for u in p.variables_used() if u != v and u in values})
    coeffs = sub.coeffs_in(v)
    if not coeffs:
        return None
    deg = max(coeffs)
    if deg < 1:
        return None
    lead = coeffs[deg].constant_value()
    scale = max([abs(float(c.constant_value())) for c in coeffs.values()] + [1.0])
    if abs(float(lead)) < params.initial_eps * scale:
        return None
    if deg == 1:
        c0 = coeffs.get(0, Polynomial.zero(p.vars)).constant_value()
        return [-c0 / lead]
    roots = real_roots_univariate(sub, params.root_precision)
    return [Fraction(r).limit_denominator(10 ** 15) for r in roots]


def numeric_instantiate(chain: AscendingChain, params: ProverParams,
                        rng: random.Random) -> list[dict[str, Fraction]]:
    """Random parameter values plus all real solutions of the chain.

    Parameters (variables not leading in the chain) draw random integers;
    the chain is solved successively, branching over all real roots and
    discarding branches where an initial vanishes numerically.  Retries with
    fresh parameter values up to the retry cap.
    """
    vars = chain.polys[0].vars
    leading = set(chain.class_vars())
    u_vars = [v for v in vars if v not in leading]
    for _ in range(params.retry_cap):
        base = {u: Fraction(rng.randint(-params.param_range, params.param_range))
                for u in u_vars}
        branches: list[dict[str, Fraction]] = [dict(base)]
        for p in chain:
            v = p.class_var()
            grown: list[dict[str, Fraction]] = []
            for br in branches:
                roots = _solve_poly_numeric(p, v, br, params)
                if roots is None:
                    continue
                for root in roots:
                    nxt = dict(br)
                    nxt[v] = root
                    grown.append(nxt)
            branches = grown
            if not branches:
                break
        if branches:
            return branches
    raise InstantiationFailed(f"no solution branch after {params.retry_cap} retries")


def numeric_check(conclusion_polys: list[Polynomial], solutions: list[dict[str, Fraction]],
                  tau_C: float) -> list[bool]:
    """Relative-tolerance evaluation of the conclusion at each solution."""
    out = []
    for sol in solutions:
        fsol = {v: float(x) for v, x in sol.items()}
        ok = True
        for c in conclusion_polys:
            missing = [v for v in c.variables_used() if v not in fsol]
            if missing:
                ok = False  # conclusion mentions a coordinate the hypothesis leaves free
                break
            val = abs(c.eval_float(fsol))
            scale = max(1.0, c.monomial_magnitudes(fsol))
            if val >= tau_C * scale:
                ok = False
                break
        out.append(ok)
    return out


@dataclass
class RuleOutReport:
    survivors: list[Proposition]
    rejected: list[tuple[Proposition, Verdict]]
    undetermined: list[tuple[Proposition, str]]
    algebraized: dict[str, AlgebraizedProposition] = field(default_factory=dict)


def rule_out(props: list[Proposition], scene: Scene, params: ProverParams,
             tau_C: float = 1e-6, seed: int = 0, wlog: bool = False,
             trials: int | None = None) -> RuleOutReport:
    """Reject propositions with a numeric counterexample.

    Each proposition is triangularized once; a constant chain rejects it as
    inconsistent.  Otherwise ``trials`` rounds of instantiate-and-check run;
    the first failing solution becomes the counterexample witness.
    """
    trials = params.trials if trials is None else trials
    survivors: list[Proposition] = []
    rejected: list[tuple[Proposition, Verdict]] = []
    undetermined: list[tuple[Proposition, str]] = []
    algs: dict[str, AlgebraizedProposition] = {}
    for i, prop in enumerate(props):
        t0 = time.time()
        alg = algebraize(prop, scene, wlog)
        algs[prop.name] = alg
        rng = random.Random((seed, prop.name).__hash__() & 0x7FFFFFFF)
        try:
            chain = alg.hypothesis_chain(params.max_terms)
        except CapExceeded as e:
            undetermined.append((prop, f"resource cap: {e}"))
            continue
        if chain.is_constant():
            rejected.append((prop, Verdict(
                "Disproved", reason="inconsistent hypotheses (constant characteristic set)",
                seconds=time.time() - t0)))
            continue
        witness = None
        failures = 0
        for _ in range(trials):
            try:
                sols = numeric_instantiate(chain, params, rng)
            except InstantiationFailed as e:
                log.info("%s: %s", prop.name, e)
                continue
            checks = numeric_check(alg.conclusion_polys, sols, tau_C)
            if not all(checks):
                bad = sols[checks.index(False)]
                witness = {v: str(x) for v, x in bad.items()}
                break
        if witness is not None:
            rejected.append((prop, Verdict("Disproved", counterexample=witness,
                                           seconds=time.time() - t0)))
        else:
            survivors.append(prop)
    return RuleOutReport(survivors, rejected, undetermined, algs)


# -- proof ---------------------------------------------------------------------------------


def _initial_factors(chain: AscendingChain) -> list[Polynomial]:
    seen = set()
    out = []
    for p in chain:
        init = p.initial().primitive_part()
        if init.is_constant():
            continue
        key = frozenset(init.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(init)
    return out


def _certificate(trace: list[str]) -> str:
    return hashlib.sha256("\n".join(trace).encode()).hexdigest()[:16]


def prove(alg: AlgebraizedProposition, params: ProverParams,
          tau_C: float = 1e-6, seed: int = 0) -> Verdict:
    """Wu-method verdict for an algebraized proposition.

    The conclusion's pseudo-remainder against the hypothesis characteristic
    set decides the generic case; otherwise the chain splits into
    square-free rational components and the reduction repeats per component.
    A proposition failing on every component is Disproved only when a
    numeric counterexample confirms it, else Undetermined.
    """
    t0 = time.time()
    trace: list[str] = []
    try:
        chain = alg.hypothesis_chain(params.max_terms)
        if chain.is_constant():
            return Verdict("Undetermined", reason="inconsistent hypotheses",
                           seconds=time.time() - t0)
        trace.append("chain:" + ",".join(f"{p.class_var()}^{p.degree(p.class_var())}" for p in chain))
        remainders = [prem_chain(c, chain, params.max_terms) for c in alg.conclusion_polys]
        trace.extend(f"prem:{r.format() if len(r) < 50 else len(r)}" for r in remainders)
    except CapExceeded as e:
        return Verdict("Undetermined", reason=f"resource cap: {e}", seconds=time.time() - t0)

    if all(r.is_zero() for r in remainders):
        conds = [NondegCondition(p) for p in _initial_factors(chain)]
        return Verdict("Proved", conditions=conds, certificate=_certificate(trace),
                       seconds=time.time() - t0)

    # decompose into square-free rational components and retry per component
    try:
        comps = squarefree_split(chain)
        proved_on: list[int] = []
        for i, comp in enumerate(comps):
            ri = [prem_chain(c, comp, params.max_terms) for c in alg.conclusion_polys]
            if all(r.is_zero() for r in ri):
                proved_on.append(i)
        trace.append(f"components:{len(comps)} proved_on:{proved_on}")
    except CapExceeded as e:
        return Verdict("Undetermined", reason=f"resource cap: {e}", seconds=time.time() - t0)

    if proved_on and len(proved_on) == len(comps):
        conds = {frozenset(p.terms.items()): p for comp in comps for p in _initial_factors(comp)}
        base = {frozenset(p.terms.items()): p for p in _initial_factors(chain)}
        base.update(conds)
        return Verdict("Proved", conditions=[NondegCondition(p) for p in base.values()],
                       components=proved_on, certificate=_certificate(trace),
                       seconds=time.time() - t0)
    if proved_on:
        conds = {frozenset(p.terms.items()): p for i in proved_on
                 for p in _initial_factors(comps[i])}
        base = {frozenset(p.terms.items()): p for p in _initial_factors(chain)}
        base.update(conds)
        return Verdict("PartiallyProved", conditions=[NondegCondition(p) for p in base.values()],
                       components=proved_on, certificate=_certificate(trace),
                       seconds=time.time() - t0)

    # no component proves the conclusion: confirm falsity numerically
    rng = random.Random(seed + 17)
    try:
        sols = numeric_instantiate(chain, params, rng)
        checks = numeric_check(alg.conclusion_polys, sols, tau_C)
        if not all(checks):
            bad = sols[checks.index(False)]
            return Verdict("Disproved", counterexample={v: str(x) for v, x in bad.items()},
                           seconds=time.time() - t0)
    except InstantiationFailed:
        pass
    return Verdict("Undetermined", reason="reducible beyond rational splitting",
                   seconds=time.time() - t0)


# -- nondegeneracy interpretation --------------------------------------------------------


def interpret_conditions(conds: list[NondegCondition], alg: AlgebraizedProposition,
                         scene: Scene) -> list[NondegCondition]:
    """Geometric readings for initials that match the translation table."""
    points = sorted({p for r in list(alg.source.hypothesis) + [alg.source.conclusion]
                     for p in r.point_occurrences(scene)})
    tr = _Translator(scene, alg.variables, {})

    def matches(poly: Polynomial, target: Polynomial) -> bool:
        p1 = poly.primitive_part()
        p2 = target.primitive_part()
        return p1 == p2 or p1 == (-p2).primitive_part() or p1 == p2.scale(-1).primitive_part()

    out: list[NondegCondition] = []
    for cond in conds:
        poly = cond.poly
        if poly.is_constant():
            continue  # vacuous
        reading = None
        for a, b, c in itertools.combinations(points, 3):
            if matches(poly, tr.collinear(a, b, c)):
                reading = f"{a}, {b}, {c} are not collinear"
                break
        if reading is None:
            for a, b in itertools.combinations(points, 2):
                xa = Polynomial.var(alg.variables, _x(a))
                xb = Polynomial.var(alg.variables, _x(b))
                ya = Polynomial.var(alg.variables, _y(a))
                yb = Polynomial.var(alg.variables, _y(b))
                if matches(poly, xb - xa):
                    reading = f"line {a}{b} is not perpendicular to the x-axis"
                    break
                if matches(poly, yb - ya):
                    reading = f"line {a}{b} is not parallel to the x-axis"
                    break
                if matches(poly, tr.dist2(a, b)):
                    reading = f"{a} and {b} are distinct"
                    break
        out.append(NondegCondition(poly, reading))
    return out
