"""Command-line front end.

Exit codes: 0 success, 1 unreadable or invalid input, 2 contextual input,
3 resource cap, 4 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io
from .clifford import conjugate, tapering_map
from .eigenstate import build_eigenstate
from .exceptions import CapExceeded, ContextualSet, NCPauliError
from .io import format_float as ff
from .partitioning import reduce_to_pauli
from .spectrum import BRUTE_CAP, DEFAULT_SWEEPS, full_spectrum, ground_search
from .structure import build_graph, extract_generators, find_witness, is_noncontextual, table_of_bounds, to_dot
from .verification import run_checks

EXIT_PARSE, EXIT_CONTEXTUAL, EXIT_CAP, EXIT_MISMATCH = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # keep exit code 2 reserved for contextual input
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _pivot_name(n: int, v: int) -> str:
    lead = v.bit_length() - 1
    block, bit = ("x", lead - n) if lead >= n else ("z", lead)
    return f"{block}{n - 1 - bit}"


def _nu_lines(d, nu) -> list[str]:
    return [f"nu {g.label} {v:+d}" for g, v in zip(d.g_generators, nu)]


def cmd_check(args, out):
    h = io.load(args.file)
    g = build_graph(h)
    if is_noncontextual(g):
        print("noncontextual", file=out)
        return 0
    print("contextual", file=out)
    w = find_witness(g)
    if w is not None:
        print("witness " + " ".join(p.label for p in w), file=out)
    return EXIT_CONTEXTUAL


def cmd_decompose(args, out):
    h = io.load(args.file)
    d = extract_generators(h)
    print(f"n {d.n}", file=out)
    print(f"G {d.g_size}", file=out)
    for g in d.g_generators:
        print(f"  {g.label} pivot {_pivot_name(d.n, g.symplectic)}", file=out)
    print(f"universal {' '.join(w.label for w in d.z_set) or '-'}", file=out)
    print(f"cliques {len(d.cliques)}", file=out)
    for k, c in enumerate(d.cliques):
        print(f"  {k}: {' '.join(w.label for w in c)}", file=out)
    print(f"A {' '.join(w.label for w in d.a_reps) or '-'}", file=out)
    print("factorization  coeff word g_mask clique sign h", file=out)
    for f in d.factorization:
        clique = "-" if f.clique is None else str(f.clique)
        print(f"  {ff(f.coeff)} {f.word.label} {f.g_mask} {clique} {f.sign:+d} {ff(f.h)}", file=out)
    return 0


def cmd_graph(args, out):
    text = to_dot(io.load(args.file))
    if args.dot in (None, "-"):
        out.write(text)
    else:
        with open(args.dot, "w") as fh:
            fh.write(text)
    return 0


def cmd_taper(args, out):
    h = io.load(args.file)
    d = extract_generators(h)
    cmap = tapering_map(d.g_generators, d.n)
    print("rotations  generator turns", file=out)
    for q, t in cmap.rotations:
        print(f"  {q.label} {t:+d}", file=out)
    print("targets  generator qubit sign", file=out)
    for (i, q), s in zip(cmap.targets, cmap.signs):
        print(f"  {d.g_generators[i].label} {q} {s:+d}", file=out)
    print("tapered", file=out)
    out.write(io.dumps(conjugate(cmap, h)))
    return 0


def cmd_spectrum(args, out):
    h = io.load(args.file)
    d = extract_generators(h)
    if d.g_size > args.cap:
        if not args.anneal:
            print(f"|G| = {d.g_size} exceeds the exhaustive cap {args.cap}; use --anneal", file=sys.stderr)
            return EXIT_CAP
        res = ground_search(d, "anneal", seed=args.seed, sweeps=args.sweeps)
        print(f"epsilon_0 {ff(res.energy)}", file=out)
        print("certified false", file=out)
        return 0
    spec = full_spectrum(d, cap=args.cap)
    print("lambda multiplicity k_lambda", file=out)
    for (lam, m), k in zip(spec.entries, spec.k):
        print(f"{ff(lam)} {m} {k}", file=out)
    return 0


def cmd_ground(args, out):
    h = io.load(args.file)
    d = extract_generators(h)
    res = ground_search(d, "anneal" if args.anneal else "brute", cap=args.cap,
                        seed=args.seed, sweeps=args.sweeps)
    print(f"epsilon_0 {ff(res.energy)}", file=out)
    print(f"nu_mask {res.bits}", file=out)
    print(f"certified {'true' if res.certified else 'false'}", file=out)
    for line in _nu_lines(d, res.nu):
        print(line, file=out)
    return 0


def cmd_eigenstate(args, out):
    h = io.load(args.file)
    d = extract_generators(h)
    sign = -1 if args.sign in ("-", "-1") else 1
    s = build_eigenstate(d, args.nu, sign, completion_signs=args.completion)
    print(f"nu_mask {args.nu}", file=out)
    for line in _nu_lines(d, s.nu):
        print(line, file=out)
    print("anchor", file=out)
    for g in s.anchor.generators:
        print(f"  {'+' if g.sign > 0 else '-'}{g.label}", file=out)
    print("branches  re im word", file=out)
    for c, w in s.branches:
        print(f"  {ff(c.real)} {ff(c.imag)} {w.label}", file=out)
    print(f"chi_bound {s.chi_bound}", file=out)
    print(f"energy {ff(s.energy)}", file=out)
    if s.degenerate:
        print("degenerate true", file=out)
    return 0


def cmd_reduce(args, out):
    h = io.load(args.file)
    res = reduce_to_pauli(h, target_index=args.target, kind=args.kind)
    print(f"target {res.word.label}", file=out)
    print(f"sign {res.sign:+d}", file=out)
    print(f"norm {ff(res.norm)}", file=out)
    plan = res.plan
    if plan is None:
        print("plan none", file=out)
    elif plan.kind == "sequence":
        print("plan sequence  generator theta", file=out)
        for g, theta in plan.steps:
            print(f"  {'+' if g.sign > 0 else '-'}{g.label} {ff(theta)}", file=out)
    else:
        print(f"plan lcu theta {ff(plan.angle)}  re im word", file=out)
        for c, w in plan.expansion:
            print(f"  {ff(c.real)} {ff(c.imag)} {w.label}", file=out)
    return 0


def cmd_bounds(args, out):
    print("G A max_terms expression flag", file=out)
    for r in table_of_bounds(args.n, args.depth):
        print(f"{r.g_size} {r.a_size} {r.max_terms} {r.expression} {r.flag}", file=out)
    return 0


def cmd_verify(args, out):
    report = run_checks(io.load(args.file), seed=args.seed)
    json.dump(report, out, indent=2)
    out.write("\n")
    return 0 if report["status"] == "ok" else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncpauli", description="Noncontextual Pauli Hamiltonian toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.set_defaults(fn=fn)
        return s

    with_file("check", cmd_check, "classify noncontextuality")
    with_file("decompose", cmd_decompose, "symmetry generators, cliques and term factors")
    s = with_file("graph", cmd_graph, "compatibility graph as DOT")
    s.add_argument("--dot", default="-", help="output path, '-' for stdout")
    with_file("taper", cmd_taper, "Clifford tapering map and tapered Hamiltonian")
    for name, fn in (("spectrum", cmd_spectrum), ("ground", cmd_ground)):
        s = with_file(name, fn, f"{name} from sector energies")
        s.add_argument("--anneal", action="store_true")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--sweeps", type=int, default=DEFAULT_SWEEPS)
        s.add_argument("--cap", type=int, default=BRUTE_CAP)
    s = with_file("eigenstate", cmd_eigenstate, "stabilizer-sum eigenvector of one sector")
    s.add_argument("--nu", type=int, required=True, help="sector bitmask, bit i set for nu_i = -1")
    s.add_argument("--sign", choices=["+", "-", "+1", "-1"], default="-")
    s.add_argument("--completion", type=int, default=0, help="bitmask flipping anchor completion signs")
    s = with_file("reduce", cmd_reduce, "unitary partitioning of an anticommuting sum")
    s.add_argument("--target", type=int, default=0)
    s.add_argument("--kind", choices=["lcu", "sequence"], default="lcu")
    s = sub.add_parser("bounds", help="table of maximum term counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--depth", type=int, default=3)
    s.set_defaults(fn=cmd_bounds)
    s = with_file("verify", cmd_verify, "oracle cross-check battery")
    s.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except ContextualSet as e:
        print(f"contextual: {e}", file=sys.stderr)
        if e.witness:
            print("witness " + " ".join(p.label for p in e.witness), file=sys.stderr)
        return EXIT_CONTEXTUAL
    except CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (NCPauliError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


def main_exit():
    sys.exit(main())
