"""Command-line interface.

Subcommands: analyze, verify, gen, lines, sample, henneberg, es. Reports go to
standard output as JSON (default) or text tables. Exit codes: 0 success,
1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import __version__
from .connectivity import is_k_connected
from .elekes_sharir import (parse_pair_file, phi, recover_motion, rotation_at,
                            serialize_pair_file)
from .errors import LinerigError
from .graphs import Graph, generate, parse_graph, serialize_graph
from .henneberg import (apply_henneberg, apply_jj, extract_henneberg, extract_jj,
                        steps_from_json, steps_to_json)
from .lines3d import Line, LineConfig, classify_triple, common_plane, common_point, \
    intersection_graph, meet_residual, transversal
from .numeric import (global_rigidity_oracle, line_system_dimension, line_system_jacobian,
                      pair_system_dimension, pair_system_jacobian, rigidity_rank)
from .sampler import gauss_newton_project, sample_congruent_pair, sample_knn, \
    sample_laman_lines_info
from .sparsity import is_hendrickson, is_laman, is_redundant, sparsity_rank
from .verify import SUITES


@dataclass
class AnalysisReport:
    """Full combinatorial plus numeric summary of one graph."""

    n: int
    m: int
    sparsity_rank: int
    rigidity_rank: int
    laman: bool
    rigid: bool
    redundant: bool
    three_connected: Optional[bool]
    hendrickson: Optional[bool]
    globally_rigid: Optional[bool]
    seed: int
    trials: int
    tol: float
    rigidity_rank_exact: Optional[int] = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def analyze_graph(G: Graph, seed: int = 0, trials: int = 5, tol: float = 1e-8,
                  exact: bool = False) -> AnalysisReport:
    rank = sparsity_rank(G).rank
    rrank = rigidity_rank(G, trials=trials, seed=seed)
    rigid = rrank == 2 * G.n - 3
    three = is_k_connected(G, 3) if G.n > 3 else None
    hend = is_hendrickson(G) if G.n >= 4 else None
    glob = None
    if G.n >= 4 and rigid:
        glob = global_rigidity_oracle(G, trials=trials, seed=seed, tol=tol)
    exact_rank = None
    if exact and G.n >= 2:
        from .numeric import _trial_rngs, random_embedding, rank_exact, rigidity_matrix
        exact_rank = max(
            rank_exact(rigidity_matrix(G, random_embedding(G.n, rng)))
            for rng in _trial_rngs(seed, trials)) if G.m else 0
    return AnalysisReport(
        n=G.n, m=G.m, sparsity_rank=rank, rigidity_rank=rrank,
        laman=is_laman(G), rigid=rigid, redundant=is_redundant(G),
        three_connected=three, hendrickson=hend, globally_rigid=glob,
        seed=seed, trials=trials, tol=tol, rigidity_rank_exact=exact_rank)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for key in sorted(payload):
            print(f"{key}: {payload[key]}")


def _load_graph(path: str) -> Graph:
    text = _read(path)
    fmt = "json" if text.lstrip().startswith("{") else "edge-list"
    return parse_graph(text, fmt)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--exact", action="store_true", help="confirm ranks in exact arithmetic")
    p.add_argument("--format", choices=("json", "text"), default="json")


def _cmd_analyze(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    report = analyze_graph(G, seed=args.seed, trials=args.trials, tol=args.tol,
                           exact=args.exact)
    _emit(report.to_dict(), args.format)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    suite = SUITES[args.suite]
    kwargs: dict = {"seed": args.seed}
    if args.suite == "theorem-main":
        kwargs.update(seeds=args.seeds, n_max=args.n_max)
    elif args.suite == "theorem-mainnec":
        kwargs.update(count=args.count)
    elif args.suite == "lemma-complete":
        kwargs.update(n_max=args.n_max, seeds=args.seeds)
    elif args.suite == "lemma-3lines":
        kwargs.update(per_class=args.per_class)
    elif args.suite in ("lemma-cong", "four-lines"):
        kwargs.update(trials=args.trials)
    elif args.suite == "hendrickson-oracle":
        kwargs.update(n_max=args.n_max, trials=args.trials)
    rep = suite(**kwargs)
    if args.format == "json":
        _emit(rep.to_dict(), "json")
    else:
        print(f"{rep.name}: {rep.passed}/{rep.total} passed")
        for f in rep.failures:
            print(f"  FAIL {f}")
        for key, val in rep.info.items():
            print(f"  {key}: {val}")
    return 0 if rep.ok else 1


def _cmd_gen(args: argparse.Namespace) -> int:
    G = generate(args.name, args.params, seed=args.seed)
    print(serialize_graph(G))
    return 0


def _cmd_lines(args: argparse.Namespace) -> int:
    if args.lines_cmd == "graph":
        cfg = LineConfig.from_json(_read(args.config))
        print(serialize_graph(intersection_graph(cfg, args.tol)))
        return 0
    if args.lines_cmd == "meet":
        l1 = Line(*args.coords[:4])
        l2 = Line(*args.coords[4:])
        _emit({"residual": float(meet_residual(l1, l2))}, args.format)
        return 0
    if args.lines_cmd == "common":
        cfg = LineConfig.from_json(_read(args.config))
        point = common_point(cfg, args.tol)
        plane = common_plane(cfg, args.tol)
        _emit({
            "common_point": list(point.point) if point and point.point else None,
            "parallel_family": bool(point.parallel) if point else False,
            "common_plane": [plane.lam, plane.mu, plane.nu] if plane else None,
        }, args.format)
        return 0
    if args.lines_cmd == "classify":
        cfg = LineConfig.from_json(_read(args.config))
        if cfg.n != 3:
            raise LinerigError("classify needs exactly 3 lines")
        tc = classify_triple(cfg[0], cfg[1], cfg[2], args.tol)
        _emit({
            "class": tc.tag,
            "family_dim": tc.family_dim,
            "point": list(tc.point) if tc.point else None,
            "plane": [tc.plane.lam, tc.plane.mu, tc.plane.nu] if tc.plane else None,
        }, args.format)
        return 0
    if args.lines_cmd == "transversal":
        cfg = LineConfig.from_json(_read(args.config))
        if cfg.n != 3:
            raise LinerigError("transversal needs exactly 3 lines")
        line = transversal(cfg[0], cfg[1], cfg[2], args.s, args.tol)
        _emit({"line": [float(v) for v in line.as_tuple()] if line else None}, args.format)
        return 0
    if args.lines_cmd == "dim":
        G = _load_graph(args.graph)
        cfg = LineConfig.from_json(_read(args.config))
        report = line_system_dimension(G, cfg, tol=args.tol)
        payload = report.to_dict()
        if args.dump_jacobian:
            payload["jacobian"] = line_system_jacobian(G, cfg).astype(float).tolist()
        _emit(payload, args.format)
        return 0
    raise LinerigError(f"unknown lines subcommand {args.lines_cmd}")


def _cmd_sample(args: argparse.Namespace) -> int:
    if args.sample_cmd == "laman":
        G = _load_graph(args.graph)
        result = sample_laman_lines_info(G, seed=args.seed)
        print(result.config.to_json())
        return 0
    if args.sample_cmd == "knn":
        cfg = sample_knn(args.n, args.kind, seed=args.seed)
        print(cfg.to_json())
        return 0
    if args.sample_cmd == "pair":
        G = _load_graph(args.graph)
        p, pp = sample_congruent_pair(G, orientation=args.orientation, seed=args.seed)
        print(serialize_pair_file(np.asarray(p), np.asarray(pp)))
        return 0
    if args.sample_cmd == "project":
        G = _load_graph(args.graph)
        cfg = LineConfig.from_json(_read(args.config))
        out = gauss_newton_project(G, cfg, tol=args.tol)
        print(out.to_json())
        return 0
    raise LinerigError(f"unknown sample subcommand {args.sample_cmd}")


def _cmd_henneberg(args: argparse.Namespace) -> int:
    if args.h_cmd == "extract":
        G = _load_graph(args.graph)
        steps, relabel = extract_henneberg(G)
        _emit({"steps": json.loads(steps_to_json(steps)), "relabel": relabel}, args.format)
        return 0
    if args.h_cmd == "apply":
        steps = steps_from_json(_read(args.steps))
        print(serialize_graph(apply_henneberg(steps)))
        return 0
    if args.h_cmd == "jj-extract":
        G = _load_graph(args.graph)
        steps, relabel = extract_jj(G)
        _emit({"steps": json.loads(steps_to_json(steps)), "relabel": relabel}, args.format)
        return 0
    if args.h_cmd == "jj-apply":
        steps = steps_from_json(_read(args.steps))
        print(serialize_graph(apply_jj(steps)))
        return 0
    raise LinerigError(f"unknown henneberg subcommand {args.h_cmd}")


def _cmd_es(args: argparse.Namespace) -> int:
    if args.es_cmd == "map":
        p, pp = parse_pair_file(_read(args.pairs))
        print(phi(p, pp).to_json())
        return 0
    if args.es_cmd == "invert":
        cfg = LineConfig.from_json(_read(args.config))
        from .elekes_sharir import from_line
        pairs = [from_line(ln) for ln in cfg.lines]
        print(serialize_pair_file([pr.a for pr in pairs], [pr.b for pr in pairs]))
        return 0
    if args.es_cmd == "rotation":
        x, y, z = args.point
        rot = rotation_at((x, y, z))
        _emit({"center": [rot.center[0], rot.center[1]], "cot_half_angle": float(rot.t),
               "theta": rot.theta}, args.format)
        return 0
    if args.es_cmd == "recover":
        p, pp = parse_pair_file(_read(args.pairs))
        motion = recover_motion(p, pp, orientation=args.orientation, tol=args.tol)
        _emit({"matrix": [list(motion.matrix[0]), list(motion.matrix[1])],
               "translation": list(motion.translation),
               "orientation": motion.orientation}, args.format)
        return 0
    if args.es_cmd == "dim":
        G = _load_graph(args.graph)
        p, pp = parse_pair_file(_read(args.pairs))
        report = pair_system_dimension(G, p, pp, tol=args.tol)
        payload = report.to_dict()
        if args.dump_jacobian:
            payload["jacobian"] = pair_system_jacobian(G, p, pp).astype(float).tolist()
        _emit(payload, args.format)
        return 0
    raise LinerigError(f"unknown es subcommand {args.es_cmd}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linerig",
                                     description="Rigidity of graphs and line configurations in 3-space")
    parser.add_argument("--version", action="version", version=f"linerig {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full combinatorial + numeric report for a graph file")
    p.add_argument("graph", help="graph file (JSON or edge list), '-' for stdin")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--per-class", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="emit a named catalog graph as JSON")
    p.add_argument("name")
    p.add_argument("params", type=int, nargs="*")
    _add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("lines", help="line-configuration geometry")
    lsub = p.add_subparsers(dest="lines_cmd", required=True)
    q = lsub.add_parser("graph", help="intersection graph of a configuration")
    q.add_argument("config")
    _add_common(q)
    q.set_defaults(func=_cmd_lines)
    q = lsub.add_parser("meet", help="incidence residual of two lines (8 numbers)")
    q.add_argument("coords", type=float, nargs=8)
    _add_common(q)
    q.set_defaults(func=_cmd_lines)
    q = lsub.add_parser("common", help="common point / plane of a configuration")
    q.add_argument("config")
    _add_common(q)
    q.set_defaults(func=_cmd_lines)
    q = lsub.add_parser("classify", help="classify a triple of lines")
    q.add_argument("config")
    _add_common(q)
    q.set_defaults(func=_cmd_lines)
    q = lsub.add_parser("transversal", help="line through l3(s) meeting l1 and l2")
    q.add_argument("config")
    q.add_argument("s", type=float)
    _add_common(q)
    q.set_defaults(func=_cmd_lines)
    q = lsub.add_parser("dim", help="local dimension certificate of a graph's incidence system")
    q.add_argument("graph")
    q.add_argument("config")
    q.add_argument("--dump-jacobian", action="store_true")
    _add_common(q)
    q.set_defaults(func=_cmd_lines)

    p = sub.add_parser("sample", help="randomized samplers")
    ssub = p.add_subparsers(dest="sample_cmd", required=True)
    q = ssub.add_parser("laman", help="certified line realization of a Laman graph")
    q.add_argument("graph")
    _add_common(q)
    q.set_defaults(func=_cmd_sample)
    q = ssub.add_parser("knn", help="complete-graph family configuration")
    q.add_argument("kind", choices=("concurrent", "parallel", "coplanar"))
    q.add_argument("n", type=int)
    _add_common(q)
    q.set_defaults(func=_cmd_sample)
    q = ssub.add_parser("pair", help="congruent embedding pair for a graph")
    q.add_argument("graph")
    q.add_argument("--orientation", type=int, choices=(1, -1), default=1)
    _add_common(q)
    q.set_defaults(func=_cmd_sample)
    q = ssub.add_parser("project", help="Gauss-Newton projection onto a graph's incidence system")
    q.add_argument("graph")
    q.add_argument("config")
    _add_common(q)
    q.set_defaults(func=_cmd_sample)

    p = sub.add_parser("henneberg", help="construction sequences")
    hsub = p.add_subparsers(dest="h_cmd", required=True)
    for name, needs in (("extract", "graph"), ("apply", "steps"),
                        ("jj-extract", "graph"), ("jj-apply", "steps")):
        q = hsub.add_parser(name)
        q.add_argument(needs)
        _add_common(q)
        q.set_defaults(func=_cmd_henneberg)

    p = sub.add_parser("es", help="point-pair / line transform")
    esub = p.add_subparsers(dest="es_cmd", required=True)
    q = esub.add_parser("map", help="pair file -> line configuration")
    q.add_argument("pairs")
    _add_common(q)
    q.set_defaults(func=_cmd_es)
    q = esub.add_parser("invert", help="line configuration -> pair file")
    q.add_argument("config")
    _add_common(q)
    q.set_defaults(func=_cmd_es)
    q = esub.add_parser("rotation", help="rotation represented by a 3-space point")
    q.add_argument("point", type=float, nargs=3)
    _add_common(q)
    q.set_defaults(func=_cmd_es)
    q = esub.add_parser("recover", help="rigid motion taking p to p_prime")
    q.add_argument("pairs")
    q.add_argument("--orientation", type=int, choices=(1, -1), default=1)
    _add_common(q)
    q.set_defaults(func=_cmd_es)
    q = esub.add_parser("dim", help="local dimension certificate of the equal-lengths system")
    q.add_argument("graph")
    q.add_argument("pairs")
    q.add_argument("--dump-jacobian", action="store_true")
    _add_common(q)
    q.set_defaults(func=_cmd_es)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (LinerigError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
