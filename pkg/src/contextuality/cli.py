"""Command line interface: graph invariants, scenario verification, rep search.

Three subcommands cover the full pipeline:

* ``invariants`` -- alpha, theta, alpha*, theta' and the fully-contextual
  candidate flag for a named or file-based graph.
* ``verify`` -- end-to-end check of a built-in inequality: exhaustive
  noncontextual maximum, exclusivity-graph identification, solver bounds
  against the declared ones, bundled-representation quantum value, facet
  certificates, and (optionally) a Monte Carlo run.
* ``search`` -- numerical orthogonal-representation search with the result
  written to a vector file.

Output is deterministic for fixed inputs and seed: reals print with seven
fixed decimals, exact rationals as ``p/q``.  Exit codes: 0 success, 1 a
computed value contradicts a declared bound, 2 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import graphs
from .graphs import Graph, set_vertices
from .inequalities import Inequality, inequality_graph, named_inequality, nchv_max
from .lp import fractional_packing_number
from .polytope import facet_check, facet_check_exclusive
from .representations import (
    format_vectors,
    inequality_quantum_lhs,
    named_representation,
    ortho_rep_search,
    simulate_sequential,
    validate_ortho_rep,
)
from .theta import lovasz_theta

GRAPH_IDS = ("c5", "petersen", "j52", "twin")
INEQUALITY_IDS = ("kcbs", "twin")
_BUNDLED_REPS = {"kcbs": "kcbs-d3", "twin": "twin-d6"}


class InputError(Exception):
    pass


def _fmt_real(x: float) -> str:
    return f"{x:.7f}"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "TRUE" if value else "FALSE"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return _fmt_real(value)
    return str(value)


class Report:
    """Ordered key/value lines rendered as human, tsv or kv text."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, _fmt(value)))

    def render(self) -> str:
        if self.fmt == "tsv":
            return "\n".join(f"{k}\t{v}" for k, v in self.lines) + "\n"
        if self.fmt == "kv":
            return "\n".join(f"{k}={v}" for k, v in self.lines) + "\n"
        width = max((len(k) for k, _ in self.lines), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in self.lines) + "\n"


def resolve_graph(subject: str) -> Graph:
    """A graph id (c5, petersen, j52, twin) or a path to a graph file."""
    if subject in GRAPH_IDS:
        return graphs.named_graph(subject)
    if os.path.exists(subject):
        try:
            with open(subject, encoding="utf-8") as fh:
                return graphs.parse_graph(fh.read())
        except ValueError as exc:
            raise InputError(f"{subject}: {exc}") from None
    raise InputError(
        f"unknown graph {subject!r}: not a known id {GRAPH_IDS} and no such file"
    )


def fully_contextual_flag(alpha: int, theta: float, alpha_star: Fraction, tol: float) -> bool:
    """alpha < theta = alpha*, evaluated within the solver tolerance."""
    return theta > alpha + tol and abs(theta - float(alpha_star)) <= 10.0 * tol


def cmd_invariants(args) -> int:
    g = resolve_graph(args.subject)
    rep = Report(args.format)
    rep.add("command", "invariants")
    rep.add("subject", args.subject)
    rep.add("tol", f"{args.tol:g}")
    rep.add("vertices", g.n)
    rep.add("edges", g.num_edges())
    alpha, witness = graphs.independence_number(g)
    rep.add("alpha", alpha)
    rep.add("alpha_witness", " ".join(map(str, set_vertices(witness))))
    theta = lovasz_theta(g, tol=args.tol)
    rep.add("theta", theta.value)
    rep.add("theta_gap", f"{theta.gap:.3e}")
    astar, _ = fractional_packing_number(g)
    rep.add("alpha_star", astar)
    tprime, cover = graphs.edge_clique_cover_number(g)
    if tprime is None:
        rep.add("theta_prime", "> budget")
    else:
        rep.add("theta_prime", tprime)
        for i, c in enumerate(cover):
            rep.add(f"cover_clique_{i}", " ".join(map(str, set_vertices(c))))
    rep.add(
        "fully_contextual_candidate",
        fully_contextual_flag(alpha, theta.value, astar, args.tol),
    )
    sys.stdout.write(rep.render())
    return 0


def _isomorphic_names(g: Graph) -> list[str]:
    named = [
        ("c5", graphs.cycle(5)),
        ("petersen", graphs.petersen()),
        ("j52", graphs.johnson_5_2()),
        ("complement(petersen)", graphs.complement(graphs.petersen())),
    ]
    return [name for name, h in named if graphs.is_isomorphic(g, h) is not None]


def cmd_verify(args) -> int:
    try:
        ineq = named_inequality(args.subject)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = Report(args.format)
    rep.add("command", "verify")
    rep.add("subject", args.subject)
    rep.add("tol", f"{args.tol:g}")
    rep.add("seed", args.seed)
    mismatches = []

    nchv, witness = nchv_max(ineq)
    rep.add("nchv_max", nchv)
    rep.add("nchv_witness", format(witness, f"0{ineq.n_tests}b")[::-1])
    rep.add("declared_nchv", ineq.bound_nchv)
    if nchv != ineq.bound_nchv:
        mismatches.append("nchv")

    g, _ = inequality_graph(ineq)
    rep.add("graph_vertices", g.n)
    rep.add("graph_edges", g.num_edges())
    names = _isomorphic_names(g)
    rep.add("graph_isomorphic_to", ", ".join(names) if names else "(none of the named graphs)")

    alpha, _ = graphs.independence_number(g)
    theta = lovasz_theta(g, tol=args.tol)
    astar, _ = fractional_packing_number(g)
    rep.add("alpha", alpha)
    rep.add("theta", theta.value)
    rep.add("alpha_star", astar)
    if Fraction(alpha) != ineq.bound_nchv:
        mismatches.append("alpha")
    if abs(theta.value - float(ineq.bound_qm)) > 10.0 * args.tol:
        mismatches.append("theta")
    rep.add("declared_qm", float(ineq.bound_qm))
    rep.add("declared_gp", ineq.bound_gp)
    if astar != ineq.bound_gp:
        mismatches.append("alpha_star")

    rep_id = _BUNDLED_REPS.get(args.subject)
    if rep_id is not None:
        orep, psi = named_representation(rep_id)
        check = validate_ortho_rep(orep, tol=1e-9, faithful=True)
        rep.add("rep_id", rep_id)
        rep.add("rep_dim", orep.dim)
        rep.add("rep_valid", check.ok)
        lhs, terms = inequality_quantum_lhs(ineq, orep, psi)
        rep.add("quantum_lhs", lhs)
        for i, t in enumerate(terms):
            rep.add(f"context_term_{i}", t)
        if abs(lhs - float(ineq.bound_qm)) > 10.0 * args.tol:
            mismatches.append("quantum_lhs")

    cert = facet_check(ineq)
    rep.add("behavior_polytope_dim", cert.polytope_dim)
    rep.add("behavior_face_dim", cert.face_dim)
    rep.add("behavior_saturating_vertices", cert.saturating_count)
    rep.add("facet_in_behavior_polytope", cert.facet)
    xcert = facet_check_exclusive(ineq)
    rep.add("exclusive_polytope_dim", xcert.polytope_dim)
    rep.add("exclusive_face_dim", xcert.face_dim)
    rep.add("exclusive_saturating_vertices", xcert.saturating_count)
    rep.add("facet_in_exclusive_polytope", xcert.facet)

    if args.shots is not None and rep_id is not None:
        sim = simulate_sequential(ineq, orep, psi, shots=args.shots, seed=args.seed)
        rep.add("mc_shots", sim.shots)
        rep.add("mc_seed", sim.seed)
        ses = sim.standard_errors()
        for i, (p, se) in enumerate(zip(sim.p_exactly_one, ses)):
            rep.add(f"mc_context_{i}", f"{p:.7f} (se {se:.7f})")
        rep.add("mc_lhs", sim.lhs)

    rep.add("bound_mismatches", ", ".join(mismatches) if mismatches else "(none)")
    sys.stdout.write(rep.render())
    return 1 if mismatches else 0


def cmd_search(args) -> int:
    g = resolve_graph(args.subject)
    result = ortho_rep_search(
        g, dim=args.dim, restarts=args.restarts, seed=args.seed
    )
    rep = Report(args.format)
    rep.add("command", "search")
    rep.add("subject", args.subject)
    rep.add("dim", args.dim)
    rep.add("restarts", args.restarts)
    rep.add("seed", args.seed)
    rep.add("best_value", result.value)
    rep.add("edge_residual", f"{result.residual:.3e}")
    rep.add("accepted_restarts", result.accepted_restarts)
    rep.add("best_restart", result.restart)
    out = args.out
    if out is None:
        stem = os.path.basename(args.subject)
        stem = stem.rsplit(".", 1)[0] if "." in stem else stem
        out = f"{stem}-dim{args.dim}-rep.txt"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(format_vectors(result.rep.vectors))
    rep.add("rep_file", out)
    rep.add("note", "local-search value: heuristic evidence, not a certified bound")
    sys.stdout.write(rep.render())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contextuality",
        description="Graph invariants and verification for noncontextuality inequalities.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=1e-8, help="solver tolerance")
        p.add_argument("--seed", type=int, default=0, help="RNG seed")
        p.add_argument(
            "--format",
            choices=("human", "tsv", "kv"),
            default="human",
            help="output style",
        )

    p_inv = sub.add_parser("invariants", help="alpha, theta, alpha*, theta' of a graph")
    p_inv.add_argument("subject", help="graph id (c5, petersen, j52, twin) or file")
    common(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_ver = sub.add_parser("verify", help="verify a built-in inequality end to end")
    p_ver.add_argument("subject", help="inequality id (kcbs, twin)")
    common(p_ver)
    p_ver.add_argument(
        "--shots",
        type=int,
        nargs="?",
        const=100_000,
        default=None,
        help="append a Monte Carlo section (this many shots; 100000 when the "
        "flag is given bare; no simulation when absent)",
    )
    p_ver.set_defaults(func=cmd_verify)

    p_sea = sub.add_parser("search", help="numerical orthogonal-representation search")
    p_sea.add_argument("subject", help="graph id or file")
    common(p_sea)
    p_sea.add_argument("--dim", type=int, required=True, help="representation dimension")
    p_sea.add_argument("--restarts", type=int, default=50, help="random restarts")
    p_sea.add_argument("--out", default=None, help="output vector file path")
    p_sea.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
