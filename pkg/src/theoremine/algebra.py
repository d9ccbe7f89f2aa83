"""Exact multivariate polynomial arithmetic and triangular systems.

Polynomials carry arbitrary-precision rational coefficients and live under a
fixed, shared variable order x1 < x2 < ... (ascending).  Everything here is
exact: the only place a float appears is in the output of
``real_roots_univariate``.

The central objects are pseudo-division (``pseudo_divide``), reduction of a
polynomial modulo an ascending chain (``prem_chain``), and the classic
Ritt-Wu iteration that turns an arbitrary polynomial set into an ascending
chain all inputs reduce to zero against (``ritt_wu_charset``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class CapExceeded(Exception):
    """Raised when a computation outgrows the configured resource caps."""


class Polynomial:
    """Sparse polynomial: map from exponent tuples to nonzero Fractions.

    ``vars`` is the ascending variable order shared by all operands of any
    arithmetic operation.  Instances are immutable by convention.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict[tuple[int, ...], Fraction] | None = None):
        self.vars = tuple(vars)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: tuple[str, ...]) -> "Polynomial":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: tuple[str, ...], c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: tuple[str, ...], name: str) -> "Polynomial":
        i = vars.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(vars, {mono: ONE})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return ZERO
        return self.terms[(0,) * len(self.vars)]

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def degree(self, v: str) -> int:
        """Degree in variable ``v``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.vars.index(v)
        return max(m[i] for m in self.terms)

    def class_var(self) -> str | None:
        """Greatest variable (under the order) actually present, or None."""
        best = -1
        for m in self.terms:
            for i in range(len(m) - 1, best, -1):
                if m[i] > 0:
                    best = i
                    break
        return self.vars[best] if best >= 0 else None

    def variables_used(self) -> set[str]:
        used: set[int] = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return {self.vars[i] for i in used}

    # -- ring arithmetic ----------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.vars != other.vars:
            raise ValueError("mixed variable orders")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, ZERO) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.vars, terms)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, ZERO) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.vars, terms)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial(self.vars, {m: cc * c for m, cc in self.terms.items()})

    def pow(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- structure in one variable ------------------------------------------

    def coeffs_in(self, v: str) -> dict[int, "Polynomial"]:
        """View as univariate in ``v``: degree -> coefficient polynomial."""
        i = self.vars.index(v)
        out: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for m, c in self.terms.items():
            d = m[i]
            m2 = m[:i] + (0,) + m[i + 1:]
            bucket = out.setdefault(d, {})
            s = bucket.get(m2, ZERO) + c
            if s:
                bucket[m2] = s
            else:
                bucket.pop(m2, None)
        return {d: Polynomial(self.vars, t) for d, t in out.items() if t}

    def leading_coefficient(self, v: str) -> "Polynomial":
        d = self.degree(v)
        if d < 0:
            return Polynomial.zero(self.vars)
        return self.coeffs_in(v)[d]

    def initial(self) -> "Polynomial":
        """Leading coefficient with respect to the class variable."""
        cv = self.class_var()
        if cv is None:
            return Polynomial(self.vars, dict(self.terms))
        return self.leading_coefficient(cv)

    def shift_var(self, v: str, k: int) -> "Polynomial":
        i = self.vars.index(v)
        return Polynomial(self.vars, {m[:i] + (m[i] + k,) + m[i + 1:]: c for m, c in self.terms.items()})

    def derivative(self, v: str) -> "Polynomial":
        i = self.vars.index(v)
        terms: dict[tuple[int, ...], Fraction] = {}
        for m, c in self.terms.items():
            if m[i] > 0:
                m2 = m[:i] + (m[i] - 1,) + m[i + 1:]
                terms[m2] = terms.get(m2, ZERO) + c * m[i]
        return Polynomial(self.vars, terms)

    def primitive_part(self) -> "Polynomial":
        """Divide out the rational content; leading term made positive."""
        if not self.terms:
            return self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        factor = Fraction(num_gcd, den_lcm)
        lead = self.terms[max(self.terms)]
        if lead < 0:
            factor = -factor
        return self.scale(1 / factor)

    # -- evaluation / substitution -------------------------------------------

    def eval(self, values: dict[str, Fraction]) -> Fraction:
        idx = [self.vars.index(v) for v in self.vars]
        vals = [values[v] for v in self.vars]
        total = ZERO
        for m, c in self.terms.items():
            t = c
            for i in idx:
                if m[i]:
                    t *= vals[i] ** m[i]
            total += t
        return total

    def eval_float(self, values: dict[str, float]) -> float:
        vals = [float(values[v]) for v in self.vars]
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for i, e in enumerate(m):
                if e:
                    t *= vals[i] ** e
            total += t
        return total

    def monomial_magnitudes(self, values: dict[str, float]) -> float:
        """Largest |monomial| at the given point; scales relative checks."""
        vals = [float(values[v]) for v in self.vars]
        best = 0.0
        for m, c in self.terms.items():
            t = abs(float(c))
            for i, e in enumerate(m):
                if e:
                    t *= abs(vals[i]) ** e
            best = max(best, t)
        return best

    def substitute(self, values: dict[str, Fraction]) -> "Polynomial":
        """Plug exact values in for a subset of the variables."""
        idxs = {self.vars.index(v): Fraction(c) for v, c in values.items()}
        terms: dict[tuple[int, ...], Fraction] = {}
        for m, c in self.terms.items():
            for i, val in idxs.items():
                if m[i]:
                    c = c * val ** m[i]
                    m = m[:i] + (0,) + m[i + 1:]
            if c:
                s = terms.get(m, ZERO) + c
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.vars, terms)

    # -- text form -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"

    def format(self) -> str:
        """Sparse human-readable form, e.g. ``3/2*x1^2*y3 - 1``."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.vars[i])
                elif e > 1:
                    factors.append(f"{self.vars[i]}^{e}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = str(abs(c)) + "*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def parse_polynomial(text: str, vars: tuple[str, ...]) -> Polynomial:
    """Parse the textual form produced by :meth:`Polynomial.format`."""
    text = text.replace("-", "+-").replace(" ", "")
    out = Polynomial.zero(vars)
    for chunk in text.split("+"):
        if not chunk:
            continue
        neg = chunk.startswith("-")
        if neg:
            chunk = chunk[1:]
        coeff = ONE
        mono = [0] * len(vars)
        for factor in chunk.split("*"):
            if not factor:
                continue
            if factor[0].isdigit():
                coeff *= Fraction(factor)
            else:
                name, _, exp = factor.partition("^")
                mono[vars.index(name)] += int(exp) if exp else 1
        if neg:
            coeff = -coeff
        out = out + Polynomial(vars, {tuple(mono): coeff})
    return out


# -- pseudo-division ----------------------------------------------------------


def pseudo_divide(f: Polynomial, g: Polynomial, v: str,
                  max_terms: int = 0) -> tuple[Polynomial, Polynomial, int]:
    """Pseudo-divide f by g in variable v: I^s * f = q*g + r exactly.

    I is the leading coefficient of g in v, deg(r, v) < deg(g, v), and
    s <= max(deg(f,v) - deg(g,v) + 1, 0).  Raises on deg(g, v) = 0.
    """
    dg = g.degree(v)
    if dg < 1:
        raise ValueError(f"divisor has degree {dg} in {v}")
    I = g.leading_coefficient(v)
    q = Polynomial.zero(f.vars)
    r = f
    s = 0
    while not r.is_zero() and r.degree(v) >= dg:
        dr = r.degree(v)
        lr = r.leading_coefficient(v)
        shift = lr.shift_var(v, dr - dg)
        q = q * I + shift
        r = r * I - shift * g
        s += 1
        if max_terms and len(r) > max_terms:
            raise CapExceeded(f"pseudo-division remainder grew past {max_terms} terms")
    return q, r, s


def prem(f: Polynomial, g: Polynomial, v: str, max_terms: int = 0) -> Polynomial:
    return pseudo_divide(f, g, v, max_terms)[1]


class AscendingChain:
    """Triangular polynomial list with strictly increasing class variables."""

    def __init__(self, polys: Sequence[Polynomial]):
        self.polys = list(polys)
        classes = [p.class_var() for p in self.polys]
        if len(self.polys) > 1 or (self.polys and classes[0] is not None):
            order = self.polys[0].vars
            ranks = [order.index(c) for c in classes if c is not None]
            if len(ranks) != len(self.polys) or any(b <= a for a, b in zip(ranks, ranks[1:])):
                raise ValueError(f"classes not strictly increasing: {classes}")

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def class_vars(self) -> list[str]:
        return [p.class_var() for p in self.polys]

    def is_constant(self) -> bool:
        """True when the chain is a single nonzero constant (inconsistency)."""
        return len(self.polys) == 1 and self.polys[0].class_var() is None and not self.polys[0].is_zero()


def prem_chain(f: Polynomial, chain: AscendingChain, max_terms: int = 0) -> Polynomial:
    """Successive pseudo-remainders of f against the chain, last poly first."""
    r = f
    for c in reversed(chain.polys):
        v = c.class_var()
        if v is None:
            continue
        if not r.is_zero() and r.degree(v) >= c.degree(v):
            r = prem(r, c, v, max_terms)
    return r


def _rank_key(p: Polynomial, order: tuple[str, ...], seq: int) -> tuple:
    cv = p.class_var()
    ci = order.index(cv) if cv is not None else -1
    d = p.degree(cv) if cv is not None else 0
    return (ci, d, len(p), seq)


def _basic_set(polys: list[Polynomial]) -> list[Polynomial]:
    """Greedy minimal-rank ascending subset of ``polys``.

    Ties break by (class, degree, term count, insertion order); each chosen
    polynomial must have a strictly greater class than the one before it.
    """
    order = polys[0].vars
    cands = sorted(range(len(polys)), key=lambda i: _rank_key(polys[i], order, i))
    chosen: list[Polynomial] = []
    last_ci = -2
    for i in cands:
        p = polys[i]
        cv = p.class_var()
        ci = order.index(cv) if cv is not None else -1
        if ci > last_ci or (not chosen and cv is None):
            chosen.append(p)
            last_ci = ci
            if cv is None:
                break
    return chosen


def ritt_wu_charset(polys: Iterable[Polynomial], max_terms: int = 200_000,
                    max_rounds: int = 500) -> AscendingChain:
    """Wu characteristic set of the input system.

    Iterates: pick a minimal basic set, pseudo-reduce the rest against it,
    adjoin the nonzero remainders, repeat until every remainder vanishes.
    A chain consisting of a single nonzero constant signals that the input
    system is inconsistent.
    """
    P = [p for p in polys if not p.is_zero()]
    if not P:
        raise ValueError("empty or all-zero polynomial system")
    seen: set = set()
    for p in P:
        seen.add(frozenset(p.terms.items()))
    for _ in range(max_rounds):
        const = next((p for p in P if p.class_var() is None), None)
        if const is not None:
            return AscendingChain([const])
        B = _basic_set(P)
        new: list[Polynomial] = []
        chain = AscendingChain(B)
        for f in P:
            if any(f is b for b in B):
                continue
            r = prem_chain(f, chain, max_terms)
            if not r.is_zero():
                key = frozenset(r.terms.items())
                if key not in seen:
                    seen.add(key)
                    new.append(r)
        if not new:
            return chain
        P = P + new
        if sum(len(p) for p in P) > max_terms:
            raise CapExceeded("system size exceeded the term cap")
    raise CapExceeded("characteristic set iteration did not converge")


def initials_product(chain: AscendingChain) -> Polynomial:
    """Product of the chain polynomials' initials."""
    vars = chain.polys[0].vars
    out = Polynomial.const(vars, 1)
    for p in chain:
        out = out * p.initial()
    return out


# -- univariate helpers (exact) -----------------------------------------------


def _is_univariate(p: Polynomial) -> str | None:
    used = p.variables_used()
    return next(iter(used)) if len(used) == 1 else None


def _dense(p: Polynomial, v: str) -> list[Fraction]:
    """Dense coefficient list c0..cn of a polynomial univariate in v."""
    i = p.vars.index(v)
    n = p.degree(v)
    out = [ZERO] * (n + 1)
    for m, c in p.terms.items():
        out[m[i]] += c
    return out


def _from_dense(coeffs: Sequence[Fraction], v: str, vars: tuple[str, ...]) -> Polynomial:
    i = vars.index(v)
    terms = {}
    for d, c in enumerate(coeffs):
        if c:
            mono = tuple(d if j == i else 0 for j in range(len(vars)))
            terms[mono] = Fraction(c)
    return Polynomial(vars, terms)


def _dense_trim(c: list[Fraction]) -> list[Fraction]:
    while c and not c[-1]:
        c.pop()
    return c


def _dense_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and _dense_trim(a):
        k = len(a) - len(b)
        f = a[-1] / b[-1]
        q[k] = f
        for i, bc in enumerate(b):
            a[i + k] -= f * bc
        _dense_trim(a)
    return q, a


def _dense_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _dense_trim(list(a))
    b = _dense_trim(list(b))
    while b:
        a, b = b, _dense_divmod(a, b)[1]
        _dense_trim(b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _dense_deriv(a: list[Fraction]) -> list[Fraction]:
    return [a[i] * i for i in range(1, len(a))]


def _sturm_chain(a: list[Fraction]) -> list[list[Fraction]]:
    chain = [list(a), _dense_deriv(a)]
    while _dense_trim(chain[-1]):
        r = _dense_divmod(chain[-2], chain[-1])[1]
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for c in chain:
        val = ZERO
        for coef in reversed(c):
            val = val * x + coef
        if val:
            signs.append(1 if val > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots_univariate(p: Polynomial, precision: float = 1e-12) -> list[float]:
    """All real roots of a univariate polynomial, multiplicities collapsed.

    Sturm-sequence isolation on the square-free part, then bisection of each
    isolating interval down to the requested width.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    v = _is_univariate(p)
    if v is None:
        if p.is_constant():
            return []
        raise ValueError("polynomial is not univariate")
    dense = _dense(p, v)
    g = _dense_gcd(dense, _dense_deriv(dense))
    if len(g) > 1:
        dense = _dense_trim(_dense_divmod(dense, g)[0])
    if len(dense) <= 1:
        return []
    if len(dense) == 2:
        return [float(-dense[0] / dense[1])]
    chain = _sturm_chain(dense)
    lead = abs(dense[-1])
    bound = Fraction(1) + max(abs(c) for c in dense[:-1]) / lead
    lo, hi = -bound, bound

    def vary(x: Fraction) -> int:
        return _sign_variations(chain, x)

    def pval(x: Fraction) -> Fraction:
        val = ZERO
        for coef in reversed(dense):
            val = val * x + coef
        return val

    def off_root(x: Fraction, width: Fraction) -> Fraction:
        # nudge a subdivision point until it is not itself a root, so that
        # sign-variation counts stay valid on open intervals
        step = width / 64
        while not pval(x):
            x += step
            step /= 3
        return x

    roots: list[float] = []
    stack = [(lo, hi, vary(lo), vary(hi))]
    prec = Fraction(precision).limit_denominator(10 ** 18)
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n <= 0:
            continue
        if n == 1:
            # bisect down to the precision, keeping the sign change inside
            fa = pval(a)
            while b - a > prec:
                mid = (a + b) / 2
                fm = pval(mid)
                if not fm:
                    a = b = mid
                    break
                if (fa > 0) != (fm > 0):
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(float((a + b) / 2))
            continue
        mid = off_root((a + b) / 2, b - a)
        vm = vary(mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    return sorted(roots)


# -- square-free / rational factor splitting ----------------------------------


def _exact_divide(f: Polynomial, g: Polynomial, v: str) -> Polynomial | None:
    """Exact division of f by g viewed in variable v; None when not exact."""
    q = Polynomial.zero(f.vars)
    r = f
    dg = g.degree(v)
    lc = g.leading_coefficient(v)
    lcu = _is_univariate(lc) is None and not lc.is_constant()
    if lcu:
        return None  # multivariate leading coefficient: stay conservative
    c = lc.constant_value() if lc.is_constant() else None
    if c is None:
        return None
    while not r.is_zero() and r.degree(v) >= dg:
        lr = r.leading_coefficient(v)
        t = lr.scale(1 / c).shift_var(v, r.degree(v) - dg)
        q = q + t
        r = r - t * g
    return q if r.is_zero() else None


def _rational_roots(dense: list[Fraction]) -> list[Fraction]:
    """Rational roots of a dense rational-coefficient polynomial."""
    den_lcm = 1
    for c in dense:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in dense]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor x out; root 0 handled by caller via dense[0]
    if not ints:
        return []
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n: int) -> list[int]:
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.extend((d, n // d))
            d += 1
        return sorted(set(out))

    roots = []
    for p in divisors(a0):
        for q in divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = ZERO
                for coef in reversed(dense):
                    val = val * cand + coef
                if not val and cand not in roots:
                    roots.append(cand)
    return roots


def _squarefree_factors(p: Polynomial) -> list[Polynomial]:
    """Square-free part of p split into rational factors where cheap.

    Univariate (in the class variable, constant coefficients): full
    square-free part plus extraction of all rational linear factors.
    Otherwise: square-free part via a gcd with the derivative when the
    division is exact, else the polynomial unchanged.
    """
    p = p.primitive_part()
    cv = p.class_var()
    if cv is None:
        return [p]
    uni = _is_univariate(p)
    if uni is not None:
        dense = _dense(p, uni)
        g = _dense_gcd(dense, _dense_deriv(dense))
        if len(g) > 1:
            dense = _dense_trim(_dense_divmod(dense, g)[0])
        factors: list[Polynomial] = []
        for root in _rational_roots(dense):
            lin = [-root, ONE]
            dense = _dense_trim(_dense_divmod(dense, lin)[0])
            factors.append(_from_dense(lin, uni, p.vars).primitive_part())
        if len(dense) > 1:
            factors.append(_from_dense(dense, uni, p.vars).primitive_part())
        return factors or [p]
    # multivariate: try square-free reduction only
    if p.degree(cv) <= 1:
        return [p]
    dp = p.derivative(cv)
    if dp.is_zero() or dp.degree(cv) < 1:
        return [p]
    try:
        r = prem(p, dp, cv, max_terms=50_000)
    except CapExceeded:
        return [p]
    if r.is_zero():
        # p divides into dp-style repetition; p/gcd ~ exact division attempt
        q = _exact_divide(p, dp.primitive_part(), cv)
        if q is not None and q.degree(cv) >= 1:
            return [q.primitive_part()]
    return [p]


def squarefree_split(chain: AscendingChain) -> list[AscendingChain]:
    """Split each chain polynomial into square-free rational factors.

    Emits one re-triangularized chain per combination of factors.  The union
    of the component quasi-varieties covers the original chain's; components
    whose re-triangularization collapses to a constant are dropped.
    """
    options: list[list[Polynomial]] = [_squarefree_factors(p) for p in chain]
    combos: list[list[Polynomial]] = [[]]
    for opts in options:
        combos = [c + [o] for c in combos for o in opts]
    out: list[AscendingChain] = []
    seen: set = set()
    for combo in combos:
        try:
            sub = ritt_wu_charset(combo)
        except (CapExceeded, ValueError):
            continue
        if sub.is_constant():
            continue
        key = tuple(frozenset(p.terms.items()) for p in sub)
        if key not in seen:
            seen.add(key)
            out.append(sub)
    return out or [chain]
