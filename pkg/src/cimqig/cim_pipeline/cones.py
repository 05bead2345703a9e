"""Which orientations of a generating set admit lifting, and exact weights realizing them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, lcm

from ..core_algebra import Binomial, exponent_vector
from ..qig_engine import is_weakly_Q_homogeneous
from ..quasi_independence import GluingRule

FM_MAX_VARS = 30
FM_MAX_ROWS = 5000


@dataclass(frozen=True)
class WeightCone:
    """Linear forms required > 0 (strict) or >= 0 (weak) on a weight vector."""

    nvars: int
    strict: tuple = ()
    weak: tuple = ()

    def __post_init__(self):
        strict = tuple(tuple(Fraction(x) for x in row) for row in self.strict)
        weak = tuple(tuple(Fraction(x) for x in row) for row in self.weak)
        for row in strict + weak:
            if len(row) != self.nvars:
                raise ValueError(f"form of length {len(row)} in a cone over {self.nvars} variables")
        object.__setattr__(self, "strict", strict)
        object.__setattr__(self, "weak", weak)

    def contains(self, w) -> bool:
        dot = lambda row: sum(a * x for a, x in zip(row, w))
        return all(dot(r) > 0 for r in self.strict) and all(dot(r) >= 0 for r in self.weak)

    def extend(self, strict=(), weak=()) -> WeightCone:
        return WeightCone(self.nvars, self.strict + tuple(strict), self.weak + tuple(weak))


@dataclass
class Obstruction:
    """A binomial neither of whose orientations is weakly homogeneous."""

    binomial: Binomial
    witnesses: tuple
    reverse_witnesses: tuple


@dataclass
class ConeResult:
    cone: WeightCone
    obstructions: list = field(default_factory=list)
    forced: list = field(default_factory=list)
    free: list = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.obstructions


def weak_homogeneity_cone(F, q: GluingRule, side: str = "col") -> ConeResult:
    """Constraints on a weight so that every binomial of F leads with a liftable monomial.

    A binomial with exactly one liftable orientation contributes the strict
    inequality for that orientation (recorded in ``forced`` already oriented);
    one with two contributes nothing; one with none is an obstruction.
    """
    nvars = q.s if side == "col" else q.r
    strict = []
    result = ConeResult(WeightCone(nvars))
    for b in F:
        fwd = is_weakly_Q_homogeneous(Binomial(b.lead, b.trail), q, side)
        rev = is_weakly_Q_homogeneous(Binomial(b.trail, b.lead), q, side)
        if fwd and rev:
            result.free.append(b)
        elif fwd or rev:
            lead, trail = (b.lead, b.trail) if fwd else (b.trail, b.lead)
            a, c = exponent_vector(lead, nvars), exponent_vector(trail, nvars)
            strict.append([x - y for x, y in zip(a, c)])
            result.forced.append(Binomial(lead, trail))
        else:
            result.obstructions.append(Obstruction(b, fwd.witnesses, rev.witnesses))
    result.cone = WeightCone(nvars, strict)
    return result


class _Blowup(Exception):
    pass


def _normalize(coeffs, rhs):
    lead = next((abs(c) for c in coeffs if c), None)
    if lead is None:
        return None
    return tuple(c / lead for c in coeffs), rhs / lead


def _add(rows: dict, coeffs, rhs) -> bool:
    """Insert coeffs . x >= rhs; False if it is a contradiction 0 >= positive."""
    norm = _normalize(coeffs, rhs)
    if norm is None:
        return rhs <= 0
    c, r = norm
    if c not in rows or rows[c] < r:
        rows[c] = r
    return True


def _pick(lo, hi):
    """Smallest-magnitude integer in [lo, hi], else the midpoint."""
    if lo is not None and hi is not None and lo > hi:
        raise ArithmeticError("empty interval during back-substitution")
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if lo is not None and lo > 0:
        cand = Fraction(ceil(lo))
        return cand if hi is None or cand <= hi else (lo + hi) / 2
    cand = Fraction(floor(hi))
    return cand if lo is None or cand >= lo else (lo + hi) / 2


def _fourier_motzkin(n: int, system: list):
    rows: dict = {}
    for coeffs, rhs in system:
        if not _add(rows, coeffs, rhs):
            return None
    stages = []
    for i in reversed(range(n)):
        stages.append(dict(rows))
        pos = [(c, r) for c, r in rows.items() if c[i] > 0]
        neg = [(c, r) for c, r in rows.items() if c[i] < 0]
        nxt: dict = {}
        for c, r in rows.items():
            if c[i] == 0 and not _add(nxt, c, r):
                return None
        if len(nxt) + len(pos) * len(neg) > FM_MAX_ROWS:
            raise _Blowup
        for cp, rp in pos:
            for cn, rn in neg:
                a, b = 1 / cp[i], -1 / cn[i]
                coeffs = tuple(a * x + b * y for x, y in zip(cp, cn))
                if not _add(nxt, coeffs, a * rp + b * rn):
                    return None
        rows = nxt
    stages.reverse()
    x = [Fraction(0)] * n
    for i in range(n):
        lo = hi = None
        for c, r in stages[i].items():
            if c[i] == 0:
                continue
            bound = (r - sum(c[l] * x[l] for l in range(i))) / c[i]
            if c[i] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        x[i] = _pick(lo, hi)
    return x


def _simplex(n: int, system: list):
    """Phase-one simplex with Bland's rule for A x >= b, x free, in exact arithmetic."""
    m = len(system)
    # columns: p (n), q (n), surplus (m), artificial (m)
    width = 2 * n + 2 * m
    tab = []
    for i, (coeffs, rhs) in enumerate(system):
        row = [Fraction(0)] * (width + 1)
        sign = -1 if rhs < 0 else 1
        for j in range(n):
            row[j] = sign * coeffs[j]
            row[n + j] = -sign * coeffs[j]
        row[2 * n + i] = Fraction(-sign)
        row[2 * n + m + i] = Fraction(1)
        row[width] = sign * rhs
        tab.append(row)
    basis = [2 * n + m + i for i in range(m)]
    cost = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(width + 1):
            cost[j] -= row[j]
    for j in range(2 * n + m, width):
        cost[j] += 1
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            break
        i = best[1]
        piv = tab[i][enter]
        tab[i] = [x / piv for x in tab[i]]
        for k in range(m):
            if k != i and tab[k][enter]:
                f = tab[k][enter]
                tab[k] = [a - f * b for a, b in zip(tab[k], tab[i])]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, tab[i])]
        basis[i] = enter
    if -cost[width] != 0:
        return None
    vals = [Fraction(0)] * width
    for i, j in enumerate(basis):
        vals[j] = tab[i][width]
    return [vals[j] - vals[n + j] for j in range(n)]


def _integral(x) -> tuple[int, ...]:
    den = 1
    for v in x:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)


def find_weight(cone: WeightCone) -> tuple[int, ...] | None:
    """An integer point strictly inside the cone, or None when there is none.

    Strict forms are scaled to ``form >= 1`` (valid since the cone is
    homogeneous).  Fourier-Motzkin elimination is used for small systems,
    the simplex method otherwise.
    """
    n = cone.nvars
    if not cone.strict and not cone.weak:
        return (0,) * n
    system = [(row, Fraction(1)) for row in cone.strict] + [(row, Fraction(0)) for row in cone.weak]
    x = None
    try:
        if n <= FM_MAX_VARS:
            x = _fourier_motzkin(n, system)
        else:
            raise _Blowup
    except _Blowup:
        x = _simplex(n, system)
    if x is None:
        return None
    w = _integral(x)
    if not cone.contains(w):
        raise ArithmeticError("feasibility backend returned a point outside the cone")
    return w
