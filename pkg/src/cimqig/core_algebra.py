"""Exact arithmetic for pure binomials with implicit +1/-1 coefficients.

A monomial is a sorted tuple of variable indices, i.e. a multiset:
``x_0**2 * x_3`` is ``(0, 0, 3)``.  A binomial ``m1 - m2`` stores both
monomials; once oriented under a term order, ``lead`` is the larger one.

Term orders are cascades of integer weight vectors followed by a fixed
tie-break: graded, then the larger ascending index tuple wins.  On
homogeneous input the tie-break is graded reverse lexicographic order with
the variable order reversed, so it is a genuine term order.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm as _int_lcm
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .errors import DegreeCapExceeded, DimensionMismatch, NotOriented

MAX_REDUCTION_STEPS = 10**6


class VariableTable:
    """Append-only list of unique labels with a reverse index."""

    def __init__(self, labels: Iterable[Hashable] = ()):
        self._entries: list = []
        self._index: dict = {}
        for label in labels:
            self.add(label)

    def add(self, label) -> int:
        if label in self._index:
            raise ValueError(f"duplicate variable label {label!r}")
        self._index[label] = len(self._entries)
        self._entries.append(label)
        return self._index[label]

    def index(self, label) -> int:
        return self._index[label]

    @property
    def entries(self) -> tuple:
        return tuple(self._entries)

    def __getitem__(self, i):
        return self._entries[i]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator:
        return iter(self._entries)

    def __contains__(self, label) -> bool:
        return label in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, VariableTable) and self._entries == other._entries

    def __hash__(self):
        return hash(tuple(self._entries))

    def __repr__(self) -> str:
        return f"VariableTable({len(self)} labels)"


# -- monomials ---------------------------------------------------------------


def monomial(indices: Iterable[int]) -> tuple:
    return tuple(sorted(indices))


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def divides(a: tuple, b: tuple) -> bool:
    """True when the multiset ``a`` is contained in ``b``."""
    la, lb = len(a), len(b)
    if la > lb:
        return False
    i = j = 0
    while i < la:
        if j == lb:
            return False
        x, y = a[i], b[j]
        if x == y:
            i += 1
            j += 1
        elif x > y:
            j += 1
        else:
            return False
    return True


def mono_div(b: tuple, a: tuple) -> tuple:
    """Quotient ``b / a``; ``a`` must divide ``b``."""
    out = []
    i, la = 0, len(a)
    for y in b:
        if i < la and a[i] == y:
            i += 1
        else:
            out.append(y)
    if i != la:
        raise ValueError(f"{a} does not divide {b}")
    return tuple(out)


def mono_lcm(a: tuple, b: tuple) -> tuple:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_gcd(a: tuple, b: tuple) -> tuple:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            out.append(a[i])
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    return tuple(out)


def coprime(a: tuple, b: tuple) -> bool:
    return set(a).isdisjoint(b)


def exponent_vector(m: tuple, nvars: int) -> list[int]:
    vec = [0] * nvars
    for i in m:
        vec[i] += 1
    return vec


def format_monomial(m: tuple, name: Callable[[int], str] | None = None) -> str:
    if not m:
        return "1"
    name = name or (lambda i: f"z{i}")
    parts = []
    for i in sorted(set(m)):
        e = m.count(i)
        parts.append(name(i) if e == 1 else f"{name(i)}^{e}")
    return " ".join(parts)


# -- binomials ---------------------------------------------------------------


@dataclass(frozen=True)
class Binomial:
    """``lead - trail``; ``oriented`` records that ``lead`` is certified maximal."""

    lead: tuple
    trail: tuple
    oriented: bool = False

    def __post_init__(self):
        lead, trail = tuple(sorted(self.lead)), tuple(sorted(self.trail))
        if lead == trail:
            raise ValueError("binomial with equal monomials is zero")
        if len(lead) != len(trail):
            raise ValueError(f"inhomogeneous binomial {lead} - {trail}")
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "trail", trail)

    @property
    def degree(self) -> int:
        return len(self.lead)

    def swapped(self) -> Binomial:
        return Binomial(self.trail, self.lead, False)

    def unsigned(self) -> tuple:
        """The unordered pair of monomials, larger tuple first (identifies b up to sign)."""
        return (self.lead, self.trail) if self.lead > self.trail else (self.trail, self.lead)

    def sort_key(self) -> tuple:
        return (self.degree, self.lead, self.trail)

    def format(self, name: Callable[[int], str] | None = None) -> str:
        return f"{format_monomial(self.lead, name)} - {format_monomial(self.trail, name)}"

    def __str__(self) -> str:
        return self.format()


def unoriented(lead: Iterable[int], trail: Iterable[int]) -> Binomial:
    """Binomial stored in the canonical sign convention (larger tuple first)."""
    b = Binomial(tuple(lead), tuple(trail))
    return Binomial(*b.unsigned())


# -- weight orders -----------------------------------------------------------


def _integral(level: Sequence) -> tuple[int, ...]:
    # positive rescaling preserves every comparison
    fracs = [Fraction(x) for x in level]
    den = 1
    for f in fracs:
        den = _int_lcm(den, f.denominator)
    return tuple(int(f * den) for f in fracs)


@dataclass(frozen=True)
class WeightOrder:
    """Cascade of exact weight vectors refined by the graded tie-break.

    Rational levels are rescaled to integers on construction.
    """

    nvars: int
    levels: tuple = ()

    def __post_init__(self):
        levels = tuple(_integral(w) for w in self.levels)
        for w in levels:
            if len(w) != self.nvars:
                raise DimensionMismatch(f"weight of length {len(w)} for {self.nvars} variables")
        object.__setattr__(self, "levels", levels)

    def score(self, level: int, m: tuple) -> int:
        w = self.levels[level]
        return sum(w[i] for i in m)

    def key(self, m: tuple) -> tuple:
        if m and (m[-1] >= self.nvars or m[0] < 0):
            raise DimensionMismatch(f"monomial {m} outside {self.nvars} variables")
        return tuple(sum(w[i] for i in m) for w in self.levels) + (len(m), m)

    def with_levels(self, *extra) -> WeightOrder:
        return WeightOrder(self.nvars, self.levels + tuple(extra))

    def tie_break_weight(self, max_degree: int) -> list[int]:
        """Integer weight agreeing with the tie-break on homogeneous pairs up to ``max_degree``."""
        base = 2 * max_degree + 2
        n = self.nvars
        return [-(base ** (n - 1 - v)) for v in range(n)]

    def realizing_weight(self, binomials: Sequence[Binomial]) -> tuple[int, ...]:
        """One integer weight ranking each lead strictly above its trail, as this order does.

        The cascade and the tie-break are collapsed into a single vector by
        powers of a base exceeding every lower-level difference on the given
        binomials.
        """
        if not binomials:
            return (0,) * self.nvars
        rows = list(self.levels) + [self.tie_break_weight(max(b.degree for b in binomials))]
        diffs = []
        for b in binomials:
            if self.key(b.lead) <= self.key(b.trail):
                raise NotOriented(f"{b} is not oriented under this order")
            lead, trail = exponent_vector(b.lead, self.nvars), exponent_vector(b.trail, self.nvars)
            diffs.append([sum(w[i] * (lead[i] - trail[i]) for i in range(self.nvars)) for w in rows])
        base = max(sum(abs(d) for d in row) for row in diffs) + 2
        k = len(rows)
        weight = [0] * self.nvars
        for level, w in enumerate(rows):
            scale = base ** (k - 1 - level)
            for i in range(self.nvars):
                weight[i] += scale * w[i]
        for b in binomials:
            assert sum(weight[i] for i in b.lead) > sum(weight[i] for i in b.trail)
        return tuple(weight)


def compare(order: WeightOrder, m1: tuple, m2: tuple) -> int:
    """-1, 0 or 1 as ``m1`` is less than, equal to or greater than ``m2``."""
    k1, k2 = order.key(m1), order.key(m2)
    return (k1 > k2) - (k1 < k2)


def orient(b: Binomial, order: WeightOrder) -> Binomial:
    if order.key(b.lead) < order.key(b.trail):
        return Binomial(b.trail, b.lead, True)
    return Binomial(b.lead, b.trail, True)


# -- bases and reduction -----------------------------------------------------


@dataclass(frozen=True)
class GroebnerBasis:
    order: WeightOrder
    elements: tuple = ()
    certified: bool = False
    table: VariableTable | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def unsigned(self) -> set:
        return {b.unsigned() for b in self.elements}


class Reducer:
    """Division by a growing list of oriented binomials.

    The divisor chosen at each step is the earliest element whose lead
    divides the monomial, so normal forms are deterministic.
    """

    def __init__(self, elements: Iterable[Binomial] = ()):
        self.elements: list[Binomial] = []
        self._by_min: dict[int, list[int]] = defaultdict(list)
        self._cache: dict[tuple, tuple] = {}
        for b in elements:
            self.add(b)

    def add(self, b: Binomial) -> None:
        if not b.oriented:
            raise NotOriented(f"basis element {b} is not oriented")
        self._by_min[b.lead[0]].append(len(self.elements))
        self.elements.append(b)
        self._cache.clear()

    def divisor(self, m: tuple) -> int | None:
        best = None
        for v in set(m):
            for idx in self._by_min.get(v, ()):
                if best is not None and idx >= best:
                    break
                if divides(self.elements[idx].lead, m):
                    best = idx
                    break
        return best

    def normal_form(self, m: tuple) -> tuple:
        cached = self._cache.get(m)
        if cached is not None:
            return cached
        cur = m
        for _ in range(MAX_REDUCTION_STEPS):
            idx = self.divisor(cur)
            if idx is None:
                self._cache[m] = cur
                return cur
            e = self.elements[idx]
            cur = mono_mul(mono_div(cur, e.lead), e.trail)
        raise RuntimeError(f"reduction of {m} did not terminate")

    def reduce_binomial(self, b: Binomial) -> Binomial | None:
        a, c = self.normal_form(b.lead), self.normal_form(b.trail)
        if a == c:
            return None
        return Binomial(a, c, False)


def reduce(target, basis: GroebnerBasis | Sequence[Binomial]):
    """Normal form of a monomial, or of a binomial (``None`` when it reduces to zero)."""
    elements = basis.elements if isinstance(basis, GroebnerBasis) else basis
    reducer = Reducer(elements)
    if isinstance(target, Binomial):
        return reducer.reduce_binomial(target)
    return reducer.normal_form(tuple(sorted(target)))


def s_pair(f: Binomial, g: Binomial) -> Binomial | None:
    """S-polynomial of two oriented binomials; ``None`` when it vanishes."""
    L = mono_lcm(f.lead, g.lead)
    a = mono_mul(mono_div(L, f.lead), f.trail)
    b = mono_mul(mono_div(L, g.lead), g.trail)
    if a == b:
        return None
    return Binomial(a, b, False)


def canonical_basis(elements: Iterable[Binomial], order: WeightOrder) -> tuple:
    """Interreduce: orient, keep minimal leads, reduce trails, sort by (degree, lead, trail).

    Only meaningful for input that is already a Groebner basis.
    """
    oriented = sorted({orient(b, order) for b in elements},
                      key=lambda b: (order.key(b.lead), order.key(b.trail)))
    minimal: list[Binomial] = []
    for b in oriented:
        if any(divides(m.lead, b.lead) for m in minimal):
            continue
        minimal.append(b)
    reducer = Reducer(minimal)
    out = [Binomial(b.lead, reducer.normal_form(b.trail), True) for b in minimal]
    return tuple(sorted(out, key=Binomial.sort_key))


def default_degree_cap(gens: Iterable[Binomial]) -> int:
    return 2 * max((b.degree for b in gens), default=0) + 2


def buchberger(gens: Iterable[Binomial], order: WeightOrder, degree_cap: int | None = None,
               table: VariableTable | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the binomial ideal generated by ``gens``.

    Raises DegreeCapExceeded if the basis would need an element of degree
    above ``degree_cap``.
    """
    basis: list[Binomial] = []
    reducer = Reducer()
    queue: list[tuple] = []
    done: set[tuple[int, int]] = set()

    def add(b: Binomial) -> None:
        b = orient(b, order)
        if degree_cap is not None and b.degree > degree_cap:
            raise DegreeCapExceeded(b.degree, degree_cap)
        j = len(basis)
        basis.append(b)
        reducer.add(b)
        for i in range(j):
            heapq.heappush(queue, (len(mono_lcm(basis[i].lead, b.lead)), i, j))

    for g in gens:
        if g.lead and g.lead[-1] >= order.nvars or g.trail and g.trail[-1] >= order.nvars:
            raise DimensionMismatch(f"generator {g} outside {order.nvars} variables")
        r = reducer.reduce_binomial(g)
        if r is not None:
            add(r)

    while queue:
        _, i, j = heapq.heappop(queue)
        done.add((i, j))
        f, g = basis[i], basis[j]
        if coprime(f.lead, g.lead):
            continue
        L = mono_lcm(f.lead, g.lead)
        if any(k != i and k != j and (min(i, k), max(i, k)) in done
               and (min(j, k), max(j, k)) in done and divides(basis[k].lead, L)
               for k in range(len(basis))):
            continue
        s = s_pair(f, g)
        if s is None:
            continue
        r = reducer.reduce_binomial(s)
        if r is not None:
            add(r)

    return GroebnerBasis(order, canonical_basis(basis, order), True, table)


def is_groebner(basis: GroebnerBasis | Sequence[Binomial]) -> bool:
    return first_unreduced_spair(basis) is None


def first_unreduced_spair(basis: GroebnerBasis | Sequence[Binomial]):
    """The first pair (i, j) whose S-polynomial has a nonzero normal form, else None."""
    elements = list(basis.elements if isinstance(basis, GroebnerBasis) else basis)
    reducer = Reducer(elements)
    for j in range(len(elements)):
        for i in range(j):
            f, g = elements[i], elements[j]
            if coprime(f.lead, g.lead):
                continue
            s = s_pair(f, g)
            if s is not None and reducer.reduce_binomial(s) is not None:
                return (i, j)
    return None
