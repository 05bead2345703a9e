"""Command-line entry point: ``cimqig <command> ...``.

Exit codes: 0 when every certification in the run passed, 1 when one
failed, 2 for unreadable input or a non-tree where a tree is needed,
3 when an enumeration budget or degree cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .core_algebra import Binomial, GroebnerBasis, WeightOrder
from .errors import BudgetExceeded, DegreeCapExceeded, NotATree, PatternError
from .graphs_dags import Dag, UndirectedGraph, characteristic_imset, enumerate_meq, enumerate_meq_tree, imset_of_pattern
from .quasi_independence import GluingRule, format_matrix, induced_cycles, is_chordal_bipartite, universal_gb
from .toric_oracle import DEFAULT_BUDGET, MonomialMap, certify_gb_of_kernel
from .cim_pipeline.cycles import DEFAULT_CYCLE_DEGREE, cycle_generating_set_attempt, verify_cycle_factorization
from .cim_pipeline.trees import EDGE_STRATEGIES, tree_gb

SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    degree_cap: int | None = None
    budget: int = DEFAULT_BUDGET
    edge_strategy: str = "balanced"
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.degree_cap is not None and self.degree_cap < 1:
            raise ValueError("degree cap must be positive")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if self.edge_strategy not in EDGE_STRATEGIES:
            raise ValueError(f"unknown edge strategy {self.edge_strategy!r}")
        if self.output_format not in ("json", "text"):
            raise ValueError(f"unknown format {self.output_format!r}")


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _label(x) -> str:
    if hasattr(x, "name") and callable(x.name):
        return x.name()
    if isinstance(x, tuple):
        return ",".join(_label(y) for y in x)
    return str(x)


def _z(label) -> str:
    return f"z_{{{_label(label)}}}"


def _fmt(b: Binomial, labels) -> str:
    return b.format(lambda i: _z(labels[i]))


def _indices(b: Binomial) -> dict:
    return {"lead": list(b.lead), "trail": list(b.trail)}


def _order_json(order: WeightOrder) -> dict:
    return {"nvars": order.nvars, "levels": [list(w) for w in order.levels]}


def _pattern_json(p) -> dict:
    return {"name": p.name(), "directed": [list(a) for a in sorted(p.directed)]}


def _read_graph(path) -> UndirectedGraph:
    data = _load_json(path)
    try:
        return UndirectedGraph.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph file {path}: {exc}") from exc


def cmd_meq(args, cfg: RunConfig):
    g = _read_graph(args.graph)
    pats = enumerate_meq(g)
    if g.is_tree() and enumerate_meq_tree(g) != pats:
        raise AssertionError("tree construction and brute force disagree")
    out = {"count": len(pats), "patterns": [_pattern_json(p) for p in pats]}
    text = [f"{len(pats)} patterns"] + [f"  {i + 1:3d}  {_z(p)}  {sorted(p.directed)}" for i, p in enumerate(pats)]
    return out, text, True


def cmd_imset(args, cfg: RunConfig):
    data = _load_json(args.graph)
    try:
        if "arcs" in data:
            n = data.get("n")
            dag = Dag.from_arcs([tuple(a) for a in data["arcs"]], n)
            im = characteristic_imset(dag)
            return {"imset": im.to_json()}, [" ".join("{" + ",".join(map(str, s)) + "}" for s in im.to_json())], True
        g = UndirectedGraph.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad input {args.graph}: {exc}") from exc
    rows, text = [], []
    for p in enumerate_meq(g):
        im = imset_of_pattern(p).to_json()
        rows.append({"pattern": p.name(), "imset": im})
        text.append(f"{_z(p)}: " + " ".join("{" + ",".join(map(str, s)) + "}" for s in im))
    return {"imsets": rows}, text, True


def cmd_qi_gb(args, cfg: RunConfig):
    data = _load_json(args.rule)
    try:
        q = GluingRule.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad gluing rule {args.rule}: {exc}") from exc
    cycles = induced_cycles(q)
    H = universal_gb(q)
    labels = [f"{_label(q.row_labels[j])};{_label(q.col_labels[k])}" for j, k in q.pairs]
    chordal = is_chordal_bipartite(q)
    out = {
        "cycles": [[q.row_labels[x] if i % 2 == 0 else q.col_labels[x] for i, x in enumerate(c)] for c in cycles],
        "binomials": [_fmt(b, labels) for b in H],
        "binomial_indices": [_indices(b) for b in H],
        "chordal_bipartite": chordal,
    }
    text = [format_matrix(q), f"chordal bipartite: {chordal}", f"{len(H)} binomials:"]
    text += [f"  {_fmt(b, labels)}" for b in H]
    return out, text, True


def cmd_tree_gb(args, cfg: RunConfig):
    g = _read_graph(args.tree)
    if not g.is_tree():
        raise NotATree("input graph is not a tree")
    edge = tuple(args.edge) if args.edge else None
    res = tree_gb(g, edge=edge, strategy=cfg.edge_strategy, certify_degree=args.degree, budget=cfg.budget)
    if cfg.degree_cap is not None and any(b.degree > cfg.degree_cap for b in res.basis):
        raise DegreeCapExceeded(max(b.degree for b in res.basis), cfg.degree_cap)
    from .graphs_dags import psi_map

    pats = res.patterns
    out = {
        "patterns": [p.name() for p in pats],
        "edges_used": [list(e) for e in res.edges],
        "basis": [_fmt(b, pats) for b in res.basis],
        "basis_indices": [_indices(b) for b in res.basis],
        "order": _order_json(res.basis.order),
        "certification": res.report.to_json(lambda i: _z(pats[i])) if res.report else None,
        "not_strongly_homogeneous": len(res.weak_only),
        "certified": res.certified,
        "map": psi_map(g).to_json(),
    }
    text = [f"{len(res.basis)} binomials (gluing edges {', '.join(f'{u}-{v}' for u, v in res.edges) or 'none'}):"]
    text += [f"  {_fmt(b, pats)}" for b in res.basis]
    text.append(f"certified: {res.certified}")
    return out, text, res.certified


def _report_json(r, with_basis: bool = True) -> dict:
    q = r.rule
    cols = q.col_labels
    out = {
        "n": r.n,
        "status": r.status,
        "basis": [_fmt(b, q.pair_labels) for b in r.basis] if with_basis else [],
        "obstructions": [
            {"binomial": _fmt(o["binomial"], cols),
             "witness_tuple": [[_label(x) for x in w] for w in o["witness_tuple"]]}
            for o in r.obstructions
        ],
        "weight": r.weight,
        "rounds": r.rounds,
        "degree": r.degree,
        "degree_note": "completeness checked only up to this degree; a configuration choice, not a bound",
        "path_basis": [_fmt(b, cols) for b in r.path_basis],
        "trace": r.trace,
        "certification": r.certification.to_json() if r.certification else None,
    }
    return out


def cmd_cycle(args, cfg: RunConfig):
    n = args.n
    if n < 5:
        raise InputError("cycle needs n >= 5")
    if args.verify_only:
        ok = verify_cycle_factorization(4, n)
        return {"n": n, "factorization": ok}, [f"C_{n} = P'_4 glued with P_{n}: {ok}"], ok
    r = cycle_generating_set_attempt(n, force_iterated=args.force_iterated_order, max_rounds=args.max_rounds,
                                     degree=args.degree, degree_cap=cfg.degree_cap, budget=cfg.budget)
    out = _report_json(r)
    text = [f"C_{n}: {r.status} after {r.rounds} round(s)"]
    if r.weight is not None:
        text.append(f"weight on meq(P_{n}): {r.weight}")
    for o in out["obstructions"]:
        text.append(f"  obstruction {o['binomial']}  missing lifts {o['witness_tuple']}")
    if r.basis:
        text.append(f"{len(r.basis)} basis elements (certified to degree {r.degree}):")
        text += [f"  {s}" for s in out["basis"]]
    return out, text, r.certified


def cmd_verify(args, cfg: RunConfig):
    mdata = _load_json(args.map)
    bdata = _load_json(args.basis)
    try:
        fmap = MonomialMap.from_json(mdata.get("map", mdata))
        order_data = bdata.get("order", {"nvars": fmap.nvars, "levels": []})
        order = WeightOrder(int(order_data["nvars"]), [tuple(w) for w in order_data["levels"]])
        elems = tuple(Binomial(tuple(e["lead"]), tuple(e["trail"]), True)
                      for e in bdata.get("basis_indices", bdata.get("basis", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad map or basis file: {exc}") from exc
    report = certify_gb_of_kernel(fmap, GroebnerBasis(order, elems), args.degree, cfg.budget)
    labels = list(fmap.domain_table)
    out = report.to_json(lambda i: _z(labels[i]))
    text = [f"in kernel: {report.in_kernel}", f"Groebner: {report.is_groebner}",
            f"complete to degree {report.degree}: {report.complete}", f"certified: {report.certified}"]
    text += [f"  unreduced: {b.format(lambda i: _z(labels[i]))}" for b in report.unreduced]
    return out, text, report.certified


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-cap", type=int, default=None, help="fail if a basis needs higher degree")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="monomial enumeration budget")
    common.add_argument("--edge-strategy", choices=EDGE_STRATEGIES, default="balanced")
    common.add_argument("--format", choices=("json", "text"), default="json", dest="output_format")
    common.add_argument("--output", default=None, help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="cimqig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("meq", parents=[common], help="patterns of all DAGs on a skeleton")
    p.add_argument("graph")
    p.set_defaults(func=cmd_meq)

    p = sub.add_parser("imset", parents=[common], help="characteristic imsets of a DAG or of every pattern")
    p.add_argument("graph")
    p.set_defaults(func=cmd_imset)

    p = sub.add_parser("qi-gb", parents=[common], help="cycle binomials of a gluing rule")
    p.add_argument("rule")
    p.set_defaults(func=cmd_qi_gb)

    p = sub.add_parser("tree-gb", parents=[common], help="glued Groebner basis of a tree")
    p.add_argument("tree")
    p.add_argument("--edge", type=int, nargs=2, default=None, help="top-level gluing edge")
    p.add_argument("--degree", type=int, default=3, help="oracle certification degree")
    p.set_defaults(func=cmd_tree_gb)

    p = sub.add_parser("cycle", parents=[common], help="cycle factorization and liftable-basis search")
    p.add_argument("n", type=int)
    p.add_argument("--verify-only", action="store_true")
    p.add_argument("--force-iterated-order", action="store_true")
    p.add_argument("--max-rounds", type=int, default=20)
    p.add_argument("--degree", type=int, default=DEFAULT_CYCLE_DEGREE)
    p.set_defaults(func=cmd_cycle)

    p = sub.add_parser("verify", parents=[common], help="certify a basis against a monomial map")
    p.add_argument("map")
    p.add_argument("basis")
    p.add_argument("--degree", type=int, default=3)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.degree_cap, args.budget, args.edge_strategy, args.output_format, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        out, text, ok = args.func(args, cfg)
    except (InputError, NotATree, PatternError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, DegreeCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if cfg.output_format == "json":
        payload = json.dumps({"schema": SCHEMA, "command": args.command, **out}, indent=2, ensure_ascii=False) + "\n"
    else:
        payload = "\n".join(text) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
