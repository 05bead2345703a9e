"""Brute-force ground truth for toric ideals of nonnegative integer matrices.

Everything here is independent of the gluing machinery: kernels are found
by enumerating monomials and grouping them by image, and a claimed basis
is checked against that enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from .core_algebra import Binomial, GroebnerBasis, Reducer, VariableTable, first_unreduced_spair
from .errors import BudgetExceeded, DimensionMismatch

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True, eq=False)
class MonomialMap:
    """Monomial map given by its exponent matrix (one column per domain variable)."""

    domain_table: VariableTable
    parameter_table: VariableTable
    matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=np.int64).reshape(len(self.parameter_table), len(self.domain_table))
        if (a < 0).any():
            raise ValueError("monomial map exponents must be nonnegative")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def nvars(self) -> int:
        return len(self.domain_table)

    def column(self, label) -> np.ndarray:
        return self.matrix[:, self.domain_table.index(label)]

    def image_labels(self, j: int) -> dict:
        """Parameter label -> exponent for the image of variable ``j``."""
        col = self.matrix[:, j]
        return {self.parameter_table[i]: int(col[i]) for i in np.flatnonzero(col)}

    def to_json(self) -> dict:
        return {
            "params": [_jsonable(p) for p in self.parameter_table],
            "vars": [_jsonable(v) for v in self.domain_table],
            "cols": self.matrix.T.tolist(),
        }

    @classmethod
    def from_json(cls, data: dict) -> MonomialMap:
        params = [_hashable(p) for p in data["params"]]
        names = [_hashable(v) for v in data["vars"]]
        cols = data["cols"]
        if len(cols) != len(names) or any(len(c) != len(params) for c in cols):
            raise DimensionMismatch("cols must have one entry per var and per param")
        mat = np.array(cols, dtype=np.int64).reshape(len(names), len(params)).T
        return cls(VariableTable(names), VariableTable(params), mat)


def _jsonable(label):
    if callable(getattr(label, "name", None)):
        return label.name()
    if isinstance(label, (tuple, frozenset, set)):
        return [_jsonable(x) for x in (sorted(label) if isinstance(label, (set, frozenset)) else label)]
    return label


def _hashable(label):
    if isinstance(label, list):
        return tuple(_hashable(x) for x in label)
    return label


def apply(fmap: MonomialMap, m: tuple) -> np.ndarray:
    """Exponent vector of the image of monomial ``m``."""
    if m and (m[-1] >= fmap.nvars or m[0] < 0):
        raise DimensionMismatch(f"monomial {m} outside the {fmap.nvars} domain variables")
    return fmap.matrix[:, list(m)].sum(axis=1) if m else np.zeros(fmap.matrix.shape[0], dtype=np.int64)


def in_kernel(fmap: MonomialMap, b: Binomial) -> bool:
    return bool(np.array_equal(apply(fmap, b.lead), apply(fmap, b.trail)))


def count_monomials(nvars: int, d: int) -> int:
    """Monomials of degree 1..d in ``nvars`` variables."""
    return sum(comb(nvars + k - 1, k) for k in range(1, d + 1))


def kernel_binomials_up_to_degree(fmap: MonomialMap, d: int, budget: int = DEFAULT_BUDGET) -> list[Binomial]:
    """All primitive kernel binomials of degree at most ``d``, up to sign.

    Each binomial is stored with the larger index tuple first and the list is
    sorted by (degree, lead, trail).
    """
    if d < 1:
        raise ValueError("degree must be at least 1")
    n = fmap.nvars
    total = count_monomials(n, d)
    if total > budget:
        raise BudgetExceeded("monomial enumeration", total, budget)
    out: list[Binomial] = []
    cols = fmap.matrix.T
    for k in range(1, d + 1):
        monos = list(combinations_with_replacement(range(n), k))
        if len(monos) < 2:
            continue
        idx = np.array(monos, dtype=np.int64)
        images = cols[idx].sum(axis=1)
        _, inverse = np.unique(images, axis=0, return_inverse=True)
        groups: dict[int, list[int]] = {}
        for pos, g in enumerate(inverse.ravel().tolist()):
            groups.setdefault(g, []).append(pos)
        for members in groups.values():
            if len(members) < 2:
                continue
            sets = [set(monos[p]) for p in members]
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    if sets[a].isdisjoint(sets[b]):
                        m1, m2 = monos[members[a]], monos[members[b]]
                        out.append(Binomial(max(m1, m2), min(m1, m2)))
    out.sort(key=Binomial.sort_key)
    return out


@dataclass
class CertificationReport:
    degree: int
    in_kernel: bool
    is_groebner: bool
    complete: bool
    not_in_kernel: list = field(default_factory=list)
    bad_spair: tuple | None = None
    unreduced: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.in_kernel and self.is_groebner and self.complete

    def to_json(self, name=None) -> dict:
        fmt = (lambda b: b.format(name)) if name else str
        return {
            "degree": self.degree,
            "in_kernel": self.in_kernel,
            "is_groebner": self.is_groebner,
            "complete": self.complete,
            "certified": self.certified,
            "unreduced": [fmt(b) for b in self.unreduced],
        }


def certify_gb_of_kernel(fmap: MonomialMap, basis: GroebnerBasis, d: int,
                         budget: int = DEFAULT_BUDGET) -> CertificationReport:
    """Check membership, the S-pair criterion, and completeness up to degree ``d``."""
    elements = list(basis.elements)
    bad = [b for b in elements if not in_kernel(fmap, b)]
    spair = first_unreduced_spair(elements)
    reducer = Reducer(elements)
    unreduced = [b for b in kernel_binomials_up_to_degree(fmap, d, budget)
                 if reducer.reduce_binomial(b) is not None]
    return CertificationReport(d, not bad, spair is None, not unreduced, bad, spair, unreduced)


def factors_through(psi: MonomialMap, pairs, psi_x: MonomialMap, psi_y: MonomialMap,
                    squared_params=()) -> bool:
    """Whether ``psi(z_jk)`` equals ``psi_x(x_j) * psi_y(y_k)`` once ``squared_params`` are squared.

    ``pairs`` (or a gluing rule carrying them) lists the (row, col) index of
    each domain variable of ``psi`` in order; images are compared by
    parameter label.
    """
    pairs = list(getattr(pairs, "pairs", pairs))
    if len(pairs) != psi.nvars:
        raise DimensionMismatch(f"{len(pairs)} pairs for {psi.nvars} domain variables")
    squared = set(squared_params)
    for v, (j, k) in enumerate(pairs):
        if not (0 <= j < psi_x.nvars and 0 <= k < psi_y.nvars):
            raise DimensionMismatch(f"pair {(j, k)} outside the factor maps")
        lhs = {p: e * (2 if p in squared else 1) for p, e in psi.image_labels(v).items()}
        rhs = dict(psi_x.image_labels(j))
        for p, e in psi_y.image_labels(k).items():
            rhs[p] = rhs.get(p, 0) + e
        if lhs != rhs:
            return False
    return True


def load_map(path) -> MonomialMap:
    with open(path) as fh:
        return MonomialMap.from_json(json.load(fh))
