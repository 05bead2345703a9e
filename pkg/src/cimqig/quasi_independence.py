"""Quasi-independence gluing rules: allowed cells Q of an r x s table.

Q is viewed as a 0/1 matrix or as a bipartite graph on rows and columns.
Indices are 0-based internally and 1-based in the JSON format.  The order
of ``pairs`` fixes the variable order z_0, z_1, ... of the pair variables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core_algebra import Binomial, VariableTable
from .errors import BudgetExceeded, DimensionMismatch
from .toric_oracle import MonomialMap

DEFAULT_CYCLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class GluingRule:
    r: int
    s: int
    pairs: tuple
    row_labels: tuple | None = None
    col_labels: tuple | None = None
    pair_labels: tuple | None = None

    def __post_init__(self):
        pairs = tuple((int(j), int(k)) for j, k in self.pairs)
        if len(set(pairs)) != len(pairs):
            raise ValueError("repeated pair in gluing rule")
        for j, k in pairs:
            if not (0 <= j < self.r and 0 <= k < self.s):
                raise DimensionMismatch(f"pair {(j, k)} outside {self.r} x {self.s}")
        rows = tuple(self.row_labels) if self.row_labels is not None else tuple(range(1, self.r + 1))
        cols = tuple(self.col_labels) if self.col_labels is not None else tuple(range(1, self.s + 1))
        if len(rows) != self.r or len(cols) != self.s:
            raise DimensionMismatch("label count does not match table shape")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("labels must be unique per side")
        if self.pair_labels is not None and len(self.pair_labels) != len(pairs):
            raise DimensionMismatch("one pair label per pair required")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        if self.pair_labels is not None:
            object.__setattr__(self, "pair_labels", tuple(self.pair_labels))

    @classmethod
    def from_cells(cls, r: int, s: int, cells, **labels) -> GluingRule:
        """Rule whose pairs are ``cells`` sorted row-major."""
        return cls(r, s, tuple(sorted(set(map(tuple, cells)))), **labels)

    @cached_property
    def pair_index(self) -> dict:
        return {p: i for i, p in enumerate(self.pairs)}

    @cached_property
    def row_sets(self) -> tuple:
        """For each row j, the frozenset of columns k with (j, k) in Q."""
        out = [set() for _ in range(self.r)]
        for j, k in self.pairs:
            out[j].add(k)
        return tuple(frozenset(x) for x in out)

    @cached_property
    def col_sets(self) -> tuple:
        out = [set() for _ in range(self.s)]
        for j, k in self.pairs:
            out[k].add(j)
        return tuple(frozenset(x) for x in out)

    def __contains__(self, pair) -> bool:
        return tuple(pair) in self.pair_index

    def transpose(self) -> GluingRule:
        return GluingRule(self.s, self.r, tuple((k, j) for j, k in self.pairs),
                          self.col_labels, self.row_labels, self.pair_labels)

    def matrix(self) -> np.ndarray:
        a = np.zeros((self.r, self.s), dtype=np.int64)
        for j, k in self.pairs:
            a[j, k] = 1
        return a

    def pair_table(self) -> VariableTable:
        if self.pair_labels is not None:
            return VariableTable(self.pair_labels)
        return VariableTable((self.row_labels[j], self.col_labels[k]) for j, k in self.pairs)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "s": self.s,
            "pairs": [[j + 1, k + 1] for j, k in self.pairs],
            "row_labels": [_plain(x) for x in self.row_labels],
            "col_labels": [_plain(x) for x in self.col_labels],
        }

    @classmethod
    def from_json(cls, data: dict) -> GluingRule:
        def labels(key):
            vals = data.get(key)
            return None if vals is None else tuple(_frozen(v) for v in vals)

        return cls(int(data["r"]), int(data["s"]), tuple((j - 1, k - 1) for j, k in data["pairs"]),
                   labels("row_labels"), labels("col_labels"))


def _plain(label):
    if hasattr(label, "name") and callable(label.name):
        return label.name()
    if isinstance(label, tuple):
        return [_plain(x) for x in label]
    return label


def _frozen(label):
    return tuple(_frozen(x) for x in label) if isinstance(label, list) else label


def load_rule(path) -> GluingRule:
    with open(path) as fh:
        return GluingRule.from_json(json.load(fh))


def induced_cycles(q: GluingRule, budget: int = DEFAULT_CYCLE_BUDGET) -> list[tuple]:
    """Chordless cycles of the bipartite graph of Q.

    Each cycle is an alternating tuple (j_1, k_1, j_2, k_2, ..., j_l, k_l)
    with j_1 the smallest row on the cycle and k_1 < k_l.
    """
    rows, cols = q.row_sets, q.col_sets
    found = []
    steps = 0

    def adjacent(a, b) -> bool:
        # a, b are ("r", j) / ("c", k) nodes
        if a[0] == b[0]:
            return False
        j, k = (a[1], b[1]) if a[0] == "r" else (b[1], a[1])
        return k in rows[j]

    def extend(path: list, on_path: set, j0: int):
        nonlocal steps
        steps += 1
        if steps > budget:
            raise BudgetExceeded("chordless cycle search (steps)", steps, budget)
        last = path[-1]
        nbrs = sorted(rows[last[1]]) if last[0] == "r" else sorted(cols[last[1]])
        kind = "c" if last[0] == "r" else "r"
        for x in nbrs:
            w = (kind, x)
            if w in on_path or (kind == "r" and x <= j0):
                continue
            if any(adjacent(w, p) for p in path[1:-1]):
                continue
            if kind == "c" and len(path) >= 3 and x in rows[j0]:
                if path[1][1] < x:
                    found.append(tuple(v[1] for v in path) + (x,))
                continue
            path.append(w)
            on_path.add(w)
            extend(path, on_path, j0)
            path.pop()
            on_path.discard(w)

    for j0 in range(q.r):
        for k1 in sorted(rows[j0]):
            start = [("r", j0), ("c", k1)]
            extend(start, set(start), j0)
    return sorted(found, key=lambda c: (len(c), c))


def cycle_binomial(q: GluingRule, cycle: tuple) -> Binomial:
    """prod z_{j_i k_i} - prod z_{j_{i+1} k_i} over pair-variable indices, larger tuple first."""
    js, ks = cycle[0::2], cycle[1::2]
    idx = q.pair_index
    a = [idx[(js[i], ks[i])] for i in range(len(js))]
    b = [idx[(js[(i + 1) % len(js)], ks[i])] for i in range(len(js))]
    m1, m2 = tuple(sorted(a)), tuple(sorted(b))
    return Binomial(max(m1, m2), min(m1, m2))


def universal_gb(q: GluingRule, budget: int = DEFAULT_CYCLE_BUDGET) -> list[Binomial]:
    """One binomial per chordless cycle; a Groebner basis for every term order."""
    return sorted({cycle_binomial(q, c) for c in induced_cycles(q, budget)}, key=Binomial.sort_key)


def is_chordal_bipartite(q: GluingRule, budget: int = DEFAULT_CYCLE_BUDGET) -> bool:
    return all(len(c) == 4 for c in induced_cycles(q, budget))


def phi_map(q: GluingRule) -> MonomialMap:
    """z_jk -> x_j y_k; parameters are x_1..x_r then y_1..y_s."""
    params = VariableTable([("x", lab) for lab in q.row_labels] + [("y", lab) for lab in q.col_labels])
    mat = np.zeros((q.r + q.s, len(q.pairs)), dtype=np.int64)
    for c, (j, k) in enumerate(q.pairs):
        mat[j, c] = 1
        mat[q.r + k, c] = 1
    return MonomialMap(q.pair_table(), params, mat)


def format_matrix(q: GluingRule, entry=None) -> str:
    """Text rendering of the r x s table with 0 in structural-zero cells."""
    label = lambda x: x.name() if hasattr(x, "name") and callable(x.name) else str(x)
    entry = entry or (lambda j, k: f"z_{{{label(q.row_labels[j])},{label(q.col_labels[k])}}}")
    cells = [[entry(j, k) if (j, k) in q else "0" for k in range(q.s)] for j in range(q.r)]
    head = [""] + [label(c) for c in q.col_labels]
    body = [[label(q.row_labels[j])] + cells[j] for j in range(q.r)]
    widths = [max(len(row[i]) for row in [head] + body) for i in range(q.s + 1)]
    return "\n".join("  ".join(x.rjust(w) for x, w in zip(row, widths)) for row in [head] + body)
