"""Command line entry point.

Exit codes: 0 validated outcome, 2 parse error, 3 budget exceeded,
4 invalid certificate.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import generators
from .blocks import find_k_blocks, is_k_block
from .budget import Budget, BudgetExceeded
from .certificates import CertificateError, to_json, validate_certificate
from .chordality import find_long_hole, is_chordal
from .erdos_posa import Cover, pack_or_cover
from .graph import Graph, is_bipartite
from .pace import FormatError, parse_gr, write_gr
from .treewidth import clique_number, heuristic_treewidth, treewidth_exact
from .witnesses import Chain, LongHoleFound, PartialChain, PipelineConfig, SmallTreewidth, pipeline

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_INVALID = 0, 2, 3, 4
DEFAULT_SEED = 0


@dataclass
class RunReport:
    command: str
    parameters: dict
    input_digest: str
    outcome: dict
    wall_time: float = 0.0
    budget: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def to_dict(self) -> dict:
        return asdict(self)


def digest(g: Graph) -> str:
    return "sha256:" + hashlib.sha256(write_gr(g).encode()).hexdigest()


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_gr(fh.read())


def _budget(args) -> Budget:
    return Budget(max_nodes=args.max_nodes, max_holes=args.max_holes, time_limit=args.time_limit)


def _ids(vs) -> str:
    return " ".join(str(v + 1) for v in vs)


def cmd_analyze(args) -> tuple[RunReport, list]:
    g = read_graph(args.path)
    budget = _budget(args)
    lines = [f"n = {g.n}, m = {g.m}"]
    out = {"n": g.n, "m": g.m}
    code = EXIT_OK
    artifact = None

    bip, _ = is_bipartite(g)
    out["bipartite"] = bip
    lines.append(f"bipartite: {'yes' if bip else 'no'}")

    chordal, wit = is_chordal(g)
    out["chordal"] = chordal
    if chordal:
        lines.append("chordal: yes")
    else:
        out["chordal_hole"] = to_json(wit)
        lines.append(f"chordal: no (hole of length {wit.length})")
        artifact = wit

    if args.ell is not None:
        try:
            hole = find_long_hole(g, args.ell, budget)
            out["ell"] = args.ell
            out["ell_chordal"] = hole is None
            if hole is None:
                lines.append(f"{args.ell}-chordal: yes")
            else:
                out["long_hole"] = to_json(hole)
                lines.append(f"{args.ell}-chordal: no (hole of length {hole.length})")
                artifact = hole
        except BudgetExceeded as exc:
            out["ell_chordal"] = f"budget exceeded: {exc}"
            lines.append(f"{args.ell}-chordal: budget exceeded")
            code = EXIT_BUDGET

    try:
        out["clique_number"] = clique_number(g, budget)
        lines.append(f"clique number: {out['clique_number']}")
    except BudgetExceeded as exc:
        out["clique_number"] = f"budget exceeded: {exc}"
        lines.append("clique number: budget exceeded")
        code = EXIT_BUDGET

    try:
        if args.heuristic:
            width, td = heuristic_treewidth(g)
            out["treewidth_upper_bound"] = width
            lines.append(f"tree-width: <= {width} (min-fill heuristic, not exact)")
        else:
            width, td = treewidth_exact(g, budget)
            out["treewidth"] = width
            lines.append(f"tree-width: {width} (exact)")
        out["decomposition"] = to_json(td, g)
    except BudgetExceeded as exc:
        out["treewidth"] = f"budget exceeded: {exc}"
        lines.append("tree-width: budget exceeded")
        code = EXIT_BUDGET

    if args.k is not None:
        try:
            blocks = find_k_blocks(g, args.k, budget)
            out["k"] = args.k
            out["blocks"] = [to_json(b, g) for b in blocks]
            if blocks:
                lines.append(f"{args.k}-blocks: " + "; ".join("{" + _ids(b.sorted()) + "}" for b in blocks))
            else:
                lines.append(f"{args.k}-blocks: none")
        except BudgetExceeded as exc:
            out["blocks"] = f"budget exceeded: {exc}"
            lines.append(f"{args.k}-blocks: budget exceeded")
            code = EXIT_BUDGET

    rep = RunReport("analyze", {"path": args.path, "ell": args.ell, "k": args.k, "heuristic": args.heuristic},
                    digest(g), out, budget=budget.usage(), exit_code=code)
    if args.report:
        _write_report(args.report, "analyze", g, out, artifact)
    return rep, lines


def _config(args) -> PipelineConfig:
    return PipelineConfig(ell=args.ell, s=args.s, d=args.d, threshold=args.threshold, max_m=args.max_m)


def describe_chain(res) -> list:
    if isinstance(res, LongHoleFound):
        return [f"outcome: long hole of length {res.hole.length}", f"hole: {_ids(res.hole.cycle)}"]
    if isinstance(res, SmallTreewidth):
        return [f"outcome: small tree-width {res.width} (threshold {res.threshold})"]
    if isinstance(res, Chain):
        sub, kss = res.subdivision, res.kss
        return [
            f"outcome: chain (tree-width {res.width})",
            f"{res.block.k}-block: {_ids(res.block.sorted())}",
            f"(<= {sub.r})-subdivision of K_{sub.m}: branchvertices {_ids(sorted(sub.branchvertices))}",
            f"K_{{{kss.s},{kss.s}}}: {_ids(sorted(kss.left))} | {_ids(sorted(kss.right))}",
        ]
    lines = [f"outcome: partial chain, stopped at {res.stage}", f"note: {res.note}"]
    lines += [f"found: {name}" for name in res.artifacts]
    return lines


def cmd_pipeline(args) -> tuple[RunReport, list]:
    g = read_graph(args.path)
    cfg = _config(args)
    budget = _budget(args)
    res = pipeline(g, cfg, budget)
    code = EXIT_BUDGET if isinstance(res, PartialChain) and res.budget_exceeded else EXIT_OK
    params = {"path": args.path, "ell": cfg.ell, "s": cfg.s, "d": cfg.d,
              "threshold": cfg.effective_threshold(), "max_m": cfg.m_cap(), "derived": cfg.derived()}
    rep = RunReport("pipeline", params, digest(g), to_json(res, g), budget=budget.usage(), exit_code=code)
    if args.report:
        _write_report(args.report, "pipeline", g, {"outcome": res.kind, **params}, res)
    return rep, describe_chain(res)


def cmd_pack_or_cover(args) -> tuple[RunReport, list]:
    g = read_graph(args.path)
    budget = _budget(args)
    params = {"path": args.path, "ell": args.ell, "k": args.k}
    try:
        res = pack_or_cover(g, args.ell, args.k, budget)
    except BudgetExceeded as exc:
        rep = RunReport("pack-or-cover", params, digest(g), {"error": str(exc), "stage": exc.stage},
                        budget=budget.usage(), exit_code=EXIT_BUDGET)
        return rep, [f"budget exceeded in {exc.stage}"]
    if isinstance(res, Cover):
        lines = [f"outcome: cover of {len(res.vertices)} vertices (bound {res.bound})",
                 f"cover: {_ids(sorted(res.vertices))}"]
        if not res.complete:
            lines.append(f"incomplete: only {res.holes_seen} holes were enumerated")
    else:
        lines = [f"outcome: packing of {len(res.holes)} disjoint holes longer than {res.ell}"]
        lines += [f"hole: {_ids(h.cycle)}" for h in res.holes]
    code = EXIT_BUDGET if isinstance(res, Cover) and not res.complete else EXIT_OK
    rep = RunReport("pack-or-cover", params, digest(g), to_json(res, g), budget=budget.usage(), exit_code=code)
    if args.report:
        _write_report(args.report, "pack_or_cover", g, {"outcome": res.kind, **params}, res)
    return rep, lines


FAMILIES = {
    "path": (["n"], lambda a: generators.path(a.n)),
    "cycle": (["n"], lambda a: generators.cycle(a.n)),
    "complete": (["n"], lambda a: generators.complete(a.n)),
    "complete-bipartite": (["s", "t"], lambda a: generators.complete_bipartite(a.s, a.t)),
    "grid": (["a", "b"], lambda a: generators.grid(a.a, a.b)),
    "figure1": (["k"], lambda a: generators.figure1_graph(a.k)[0]),
    "ktree": (["n", "k"], lambda a: generators.random_ktree(a.n, a.k, a.seed)),
    "random": (["n", "p"], lambda a: generators.random_graph(a.n, a.p, a.seed)),
    "subtree-chordal": (["n"], lambda a: generators.random_subtree_chordal(a.n, a.seed)),
    "kss-free": (["n", "s", "p"], lambda a: generators.random_kss_free(a.n, a.s, a.p, a.seed)),
}


def cmd_generate(args) -> str:
    params, build = FAMILIES[args.family]
    g = build(args)
    manifest = " ".join([f"lchordal generate family={args.family}"]
                        + [f"{p}={getattr(args, p)}" for p in params] + [f"seed={args.seed}"])
    return write_gr(g, [manifest])


def cmd_validate(args) -> tuple[int, str]:
    try:
        g = read_graph(args.graph)
    except FormatError as exc:
        return EXIT_PARSE, f"graph parse error: {exc}"
    try:
        with open(args.certificate) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        return EXIT_PARSE, f"certificate is not JSON: {exc}"
    if isinstance(doc, dict) and "outcome" in doc and isinstance(doc["outcome"], dict) and "command" in doc:
        doc = doc["outcome"]
    docs = [doc] if not isinstance(doc, dict) or "schema" in doc else embedded_certificates(doc)
    if not docs:
        return EXIT_INVALID, "invalid certificate: no certificate found in the document"
    for d in docs:
        try:
            bad = validate_certificate(g, d)
        except CertificateError as exc:
            return EXIT_INVALID, f"invalid certificate: {exc}"
        if bad is not None:
            return EXIT_INVALID, f"invalid certificate: {bad.message}"
    kinds = sorted({d["kind"] for d in docs})
    return EXIT_OK, f"valid {', '.join(kinds)} certificate" + ("s" if len(docs) > 1 else "")


def embedded_certificates(table: dict) -> list:
    """Certificates nested one level inside an analysis table."""
    out = []
    for value in table.values():
        items = value if isinstance(value, list) else [value]
        out.extend(v for v in items if isinstance(v, dict) and "schema" in v)
    return out


def _write_report(directory, stem, g, fields, outcome):
    from .report import write_report

    rows = [(k, json.dumps(v) if isinstance(v, (dict, list)) else v) for k, v in fields.items()
            if k not in ("decomposition", "blocks", "chordal_hole", "long_hole")]
    return write_report(directory, stem, g, rows, outcome)


def _add_budget_flags(p):
    p.add_argument("--max-nodes", type=int, default=2_000_000, help="search node budget (default 2000000)")
    p.add_argument("--max-holes", type=int, default=100_000, help="hole enumeration budget (default 100000)")
    p.add_argument("--time-limit", type=float, default=None, help="seconds per command")
    p.add_argument("--out", help="write the JSON run report here")
    p.add_argument("--report", metavar="DIR", help="write a .tsv summary and a .png figure into DIR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lchordal", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="basic invariants of a .gr graph")
    p.add_argument("path")
    p.add_argument("--ell", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--heuristic", action="store_true", help="min-fill upper bound instead of exact tree-width")
    _add_budget_flags(p)

    p = sub.add_parser("pipeline", help="tree-width -> block -> subdivision -> K_{s,s}")
    p.add_argument("path")
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--d", type=int, default=4)
    p.add_argument("--threshold", type=int, default=4,
                   help="attempt extraction from this tree-width on (default 4; -1 for the full bound)")
    p.add_argument("--max-m", type=int, default=None)
    _add_budget_flags(p)

    p = sub.add_parser("pack-or-cover", help="k disjoint long holes or a small hitting set")
    p.add_argument("path")
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--k", type=int, default=2)
    _add_budget_flags(p)

    p = sub.add_parser("generate", help="write a generated graph as .gr")
    p.add_argument("family", choices=sorted(FAMILIES))
    for name, kind in [("n", int), ("k", int), ("s", int), ("t", int), ("a", int), ("b", int), ("p", float)]:
        p.add_argument(f"--{name}", type=kind)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")

    p = sub.add_parser("validate", help="check a JSON certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        params, _ = FAMILIES[args.family]
        missing = [f"--{p}" for p in params if getattr(args, p) is None]
        if missing:
            print(f"{args.family} needs {' '.join(missing)}", file=sys.stderr)
            return EXIT_PARSE
        text = cmd_generate(args)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
            print(f"wrote {args.out} (seed {args.seed})")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.command == "validate":
        code, message = cmd_validate(args)
        print(message)
        return code
    if getattr(args, "threshold", None) == -1:
        args.threshold = None
    handler = {"analyze": cmd_analyze, "pipeline": cmd_pipeline, "pack-or-cover": cmd_pack_or_cover}[args.command]
    start = time.monotonic()
    try:
        rep, lines = handler(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    rep.wall_time = round(time.monotonic() - start, 6)
    for line in lines:
        print(line)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rep.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
