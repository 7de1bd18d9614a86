"""Command line: ``cuthilbert SUBCOMMAND [options]``.

Exit codes: 0 answered, 1 the property fails, 2 usage error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .builtins import builtin
from .config import Budgets
from .errors import BudgetExceeded, CutHilbertError
from .geometry import dd_facets, facet_lines, feasibility_interval, in_cone
from .graph import (
    Graph,
    contract_edge,
    delete_edge,
    enumerate_bonds,
    enumerate_cuts,
    named_graph,
    sort_labels,
    subdivide_edge,
)
from .hclass import IN, OUT, Classifier
from .hilbert import NO, YES, in_intcone, is_hilbert_basis, minimal_hilbert_basis
from .io import cut_json, format_graph, graph_json, parse_int_rows, read_graph, read_vector, vector_json
from .lattice import in_lattice_hnf, in_lattice_parity
from .minors import PATTERNS, has_minor
from .verify import CASES, paper_verify

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _graph(args) -> Graph:
    if args.graph and args.named:
        raise UsageError("give only one of --graph and --named")
    if args.graph:
        return read_graph(args.graph)
    if args.named:
        return named_graph(args.named)
    if args.vector and args.vector.startswith("builtin:"):
        return builtin(args.vector).graph
    raise UsageError("a graph is required (--graph FILE or --named NAME)")


def _vector(args, g: Graph):
    if not args.vector:
        raise UsageError("a vector is required (--vector FILE or --vector builtin:NAME)")
    if args.vector.startswith("builtin:"):
        bv = builtin(args.vector)
        if bv.graph != g:
            raise UsageError(f"{args.vector} lives on {bv.graph_name}, not on the given graph")
        x = bv.vector()
    else:
        x = read_vector(args.vector)
    if len(x) != g.m:
        raise UsageError(f"vector has {len(x)} entries, graph has {g.m} edges")
    return x


def _edge(args, g: Graph) -> int:
    if not args.edge:
        raise UsageError("an edge is required (--edge U V)")
    return g.edge_index(*args.edge)


def _inputs(args) -> dict:
    out = {}
    for key in ("graph", "named", "vector", "pattern", "case", "generators"):
        val = getattr(args, key, None)
        if val:
            out[key] = val
    if getattr(args, "edge", None):
        out["edge"] = list(args.edge)
    return out


# --------------------------------------------------------------------------
# subcommands; each returns (exit code, verdict payload, witness payload, text lines)


def cmd_cuts(args, bonds=False):
    g = _graph(args)
    cuts = enumerate_bonds(g) if bonds else enumerate_cuts(g)
    lines = [f"{' '.join(c.generator) or '-'}\t{''.join(map(str, c.incidence))}" for c in cuts]
    return EXIT_OK, {"count": len(cuts)}, {"cuts": [cut_json(c) for c in cuts]}, lines


def cmd_facets(args):
    g = _graph(args)
    system = dd_facets(g)
    counts = system.counts()
    verdict = {"count": len(system), "counts": counts}
    witness = {"facets": [{"kind": a.kind, "coefficients": list(a.coefficients)} for a in system],
               "equations": [list(e) for e in system.equations]}
    lines = [f"# {len(system)} facets: " + ", ".join(f"{k} {v}" for k, v in counts.items())]
    lines += facet_lines(system)
    return EXIT_OK, verdict, witness, lines


def cmd_in_cone(args):
    g = _graph(args)
    x = _vector(args, g)
    res = in_cone(g, x, args.budgets.cut_vertices)
    witness = None
    if res.member:
        witness = [{"cut": cut_json(c), "coefficient": str(v)} for c, v in res.witness.items()]
    lines = [f"member: {'yes' if res.member else 'no'}"]
    if witness:
        lines += [f"  {w['coefficient']} * delta({' '.join(w['cut']['side'])})" for w in witness]
    return (EXIT_OK if res.member else EXIT_FAILS), {"member": res.member}, witness, lines


def cmd_in_lattice(args):
    g = _graph(args)
    x = _vector(args, g)
    hnf = in_lattice_hnf(g, x, args.budgets.cut_vertices)
    verdict = {"member": hnf}
    witness = None
    lines = [f"member: {'yes' if hnf else 'no'}"]
    if g.is_simple():
        cert = in_lattice_parity(g, x)
        verdict["parity"] = cert.verdict
        if cert.violating_circuit is not None:
            witness = {"violating_circuit": list(cert.violating_circuit.edges)}
            lines.append(f"odd circuit: edges {' '.join(map(str, cert.violating_circuit.edges))}")
        if cert.verdict != hnf:
            raise AssertionError("parity and HNF lattice tests disagree")
    return (EXIT_OK if hnf else EXIT_FAILS), verdict, witness, lines


def cmd_in_intcone(args):
    g = _graph(args)
    x = _vector(args, g)
    res = in_intcone(g, x, args.budgets.intcone_nodes)
    witness = None
    lines = [f"member: {res.member}"]
    if res.witness is not None:
        witness = [{"cut": cut_json(c), "coefficient": k} for c, k in sorted(res.witness.coefficients.items())]
        lines += [f"  {w['coefficient']} * delta({' '.join(w['cut']['side'])})" for w in witness]
    code = {YES: EXIT_OK, NO: EXIT_FAILS}.get(res.member, EXIT_BUDGET)
    return code, {"member": res.member, "nodes": res.nodes}, witness, lines


def cmd_interval(args):
    g = _graph(args)
    x = _vector(args, g)
    f = _edge(args, g)
    iv = feasibility_interval(g, x, f, args.budgets.cut_vertices)
    if iv.empty:
        return EXIT_FAILS, {"status": "empty"}, None, ["interval: empty"]
    lo, hi = str(iv.gamma_min), str(iv.gamma_max)
    return EXIT_OK, {"status": iv.status, "gamma_min": lo, "gamma_max": hi}, None, [f"interval: [{lo}, {hi}]"]


def _report_json(rep):
    return {"minimal_basis": [list(v) for v in rep.minimal_basis],
            "quasi_elements": [list(v) for v in rep.quasi_elements],
            "is_hilbert": rep.is_hilbert}


def cmd_hilbert(args):
    g = _graph(args)
    res = is_hilbert_basis(g, args.budgets.intcone_nodes, args.budgets.hilbert_dim)
    verdict = {"verdict": res.verdict, "method": res.method}
    witness = {}
    if res.certificate is not None:
        witness["certificate"] = vector_json(res.certificate)
    if res.report is not None:
        witness.update(_report_json(res.report))
    lines = [f"hilbert basis: {res.verdict} ({res.method})"]
    if res.certificate is not None:
        lines.append("certificate: " + " ".join(vector_json(res.certificate)))
    code = {YES: EXIT_OK, NO: EXIT_FAILS}.get(res.verdict, EXIT_BUDGET)
    return code, verdict, witness or None, lines


def cmd_quasi(args):
    if args.generators:
        gens = parse_int_rows(Path(args.generators).read_text())
    else:
        gens = [b.incidence for b in enumerate_bonds(_graph(args))]
    rep = minimal_hilbert_basis(gens, max_dim=args.budgets.hilbert_dim)
    lines = [f"# minimal basis {len(rep.minimal_basis)}, quasi-Hilbert elements {len(rep.quasi_elements)}"]
    lines += [" ".join(map(str, v)) for v in rep.quasi_elements]
    return EXIT_OK, {"quasi_count": len(rep.quasi_elements), "is_hilbert": rep.is_hilbert}, _report_json(rep), lines


def cmd_minor(args):
    g = _graph(args)
    if not args.pattern:
        raise UsageError("--pattern is required; choose from " + ", ".join(PATTERNS))
    res = has_minor(g, args.pattern, args.budgets.minor_nodes)
    witness = res.model.to_json() if res.model else None
    lines = [f"{args.pattern} minor: {'present' if res.present else 'absent'}"]
    if res.model:
        lines += [f"  {p}: {' '.join(sort_labels(s))}" for p, s in res.model.branch_sets.items()]
    return (EXIT_OK if res.present else EXIT_FAILS), {"present": res.present}, witness, lines


def cmd_classify(args):
    g = _graph(args)
    v = Classifier(args.budgets).classify(g)
    payload = v.to_json()
    lines = [f"status: {v.status}", "rules: " + " ".join(v.provenance)]
    code = {IN: EXIT_OK, OUT: EXIT_FAILS}.get(v.status, EXIT_BUDGET)
    return code, {"status": v.status, "rules": v.provenance}, payload, lines


def cmd_construct(args):
    g = _graph(args)
    if args.op:
        f = _edge(args, g)
        g = {"delete": lambda: delete_edge(g, f),
             "contract": lambda: contract_edge(g, f),
             "subdivide": lambda: subdivide_edge(g, f, 1)}[args.op]()
    text = format_graph(g, args.named)
    return EXIT_OK, graph_json(g), None, text.rstrip("\n").split("\n")


def cmd_paper_verify(args):
    names = list(CASES) if args.case == "all" else [args.case]
    reports = [paper_verify(name) for name in names]
    lines = []
    for rep in reports:
        lines.append(f"{'PASS' if rep.passed else 'FAIL'} {rep.case} ({rep.elapsed:.1f}s, budget {rep.budget_s:g}s)")
        if not args.quiet:
            lines += [f"  [{'ok' if c.ok else 'FAILED'}] {c.name}" + (f": {c.detail}" if c.detail and not c.ok else "")
                      for c in rep.checks]
    passed = all(r.passed for r in reports)
    verdict = {"passed": passed, "cases": {r.case: r.passed for r in reports}}
    return (EXIT_OK if passed else EXIT_FAILS), verdict, [r.to_json() for r in reports], lines


COMMANDS = {
    "cuts": (cmd_cuts, "list all cuts (canonical side, incidence)"),
    "bonds": (lambda a: cmd_cuts(a, bonds=True), "list the bonds"),
    "facets": (cmd_facets, "facet description of the cut cone"),
    "in-cone": (cmd_in_cone, "membership in the cut cone"),
    "in-lattice": (cmd_in_lattice, "membership in the cut lattice"),
    "in-intcone": (cmd_in_intcone, "membership in the integer cone of cuts"),
    "interval": (cmd_interval, "feasibility interval of an edge"),
    "hilbert": (cmd_hilbert, "do the cuts form a Hilbert basis"),
    "quasi": (cmd_quasi, "quasi-Hilbert elements of the bonds or of --generators"),
    "minor": (cmd_minor, "minor containment for a catalog pattern"),
    "classify": (cmd_classify, "membership in the Hilbert class via the rule pipeline"),
    "construct": (cmd_construct, "print a catalog graph, optionally edited"),
    "paper-verify": (cmd_paper_verify, "run a named reproduction case (or all)"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="graph file, one 'u v' edge per line")
    common.add_argument("--vector", metavar="FILE", help="vector file (one rational per line) or builtin:NAME")
    common.add_argument("--named", metavar="NAME", help="catalog graph (K5, K5perp, H10minus, C7, W4, ...)")
    common.add_argument("--edge", nargs=2, metavar=("U", "V"), help="edge given by its endpoints")
    common.add_argument("--pattern", choices=PATTERNS, help="minor pattern")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--budget", type=int, metavar="N", help="search node budget")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised steps (default 0)")
    common.add_argument("--quiet", action="store_true", help="only the verdict line")

    parser = _Parser(prog="cuthilbert", description="Cuts, cut cones and Hilbert bases of graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "construct":
            p.add_argument("--op", choices=("delete", "contract", "subdivide"), help="edit applied at --edge")
        if name == "quasi":
            p.add_argument("--generators", metavar="FILE", help="integer vectors, one per line")
        if name == "paper-verify":
            p.add_argument("case", choices=list(CASES) + ["all"])
    return parser


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    budgets = Budgets()
    if args.budget is not None:
        budgets = Budgets(intcone_nodes=args.budget, minor_nodes=args.budget)
    args.budgets = budgets
    random.seed(args.seed)
    start = time.perf_counter()
    try:
        code, verdict, witness, lines = COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"cuthilbert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        code, verdict, witness, lines = EXIT_BUDGET, {"budget_exhausted": str(exc)}, None, [f"budget exhausted: {exc}"]
    except (CutHilbertError, OSError) as exc:
        print(f"cuthilbert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    if args.json:
        report = {
            "command": args.command,
            "inputs": _inputs(args),
            "verdict": verdict,
            "witness": witness,
            "elapsed": round(elapsed, 6),
            "version": __version__,
            "seed": args.seed,
        }
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        shown = lines[:1] if args.quiet and args.command != "construct" else lines
        stdout.write("\n".join(shown) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
