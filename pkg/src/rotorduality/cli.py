"""Command-line interface.

Exit codes: 0 success, 1 input or validation error, 2 verification failure,
3 internal error.
"""

import argparse
import sys
from pathlib import Path

from . import formats
from .duality import phi_map, tree_angle
from .errors import InternalError, RibbonError
from .oracle import corpus
from .ribbon import faces, genus, planar_dual
from .rotor import route, tree_from_rotor
from .sandpile import default_base, jacobian_structure, q_reduce, tree_count_kirchhoff
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _graph(args):
    return formats.load_graph(args.file)


def _class_line(c):
    return f"q={c.base} reduced={formats.format_divisor(c.reduced)}"


def cmd_validate(args, out):
    g = _graph(args)
    out.append(f"OK vertices={len(g.vertices)} edges={len(g.edges)} faces={len(faces(g))} genus={genus(g)}")


def cmd_faces(args, out):
    fs = faces(_graph(args))
    for fid, orbit in fs.faces.items():
        out.append(f"{fid}: {' '.join(str(d) for d in orbit)}")


def cmd_genus(args, out):
    out.append(str(genus(_graph(args))))


def cmd_dual(args, out):
    corr = planar_dual(_graph(args))
    text = formats.graph_to_json(corr.dual)
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.append(text.rstrip("\n"))
    for e in corr.primal.edges:
        tail, head = corr.dual_orientation[e]
        out.append(f"EDGE {e} -> {corr.edge_map[e]} {tail} -> {head}")


def cmd_jacobian(args, out):
    g = _graph(args)
    factors = jacobian_structure(g).invariant_factors
    out.append(f"invariant_factors={','.join(map(str, factors)) or '-'}")
    out.append(f"trees={tree_count_kirchhoff(g)}")


def cmd_reduce(args, out):
    g = _graph(args)
    d = formats.parse_divisor(args.divisor, g)
    out.append(_class_line(q_reduce(g, d, args.base)))


def cmd_act(args, out):
    g = _graph(args)
    d = formats.parse_divisor(args.divisor, g)
    state = route(g, d, formats.parse_tree(args.tree), args.base)
    if args.trace:
        chips = q_reduce(g, d, args.base).reduced.as_dict(g.vertices)
        for dart in state.trace:
            chips[dart.tail] -= 1
            chips[g.head(dart)] += 1
            out.append(f"{dart.tail} {dart} {chips[dart.tail]}")
    out.append(formats.format_tree(tree_from_rotor(g, state.rotors)))


def cmd_angle(args, out):
    g = _graph(args)
    root = args.base or default_base(g)
    c = tree_angle(g, formats.parse_tree(args.tree1), formats.parse_tree(args.tree2), root)
    out.append(f"root={root} {_class_line(c)}")


def cmd_phi(args, out):
    corr = planar_dual(_graph(args))
    d = formats.parse_divisor(args.divisor, corr.primal)
    out.append(_class_line(phi_map(corr, d)))


def cmd_verify(args, out):
    if args.corpus:
        graphs = list(corpus().values())
    elif args.file:
        graphs = [_graph(args)]
    else:
        raise UsageError("verify: give FILE or --corpus")
    suites = SUITES if args.suite == "all" else (args.suite,)
    failed = False
    for suite in suites:
        for g in graphs:
            res = run_suite(suite, g, sample=args.sample, seed=args.seed)
            out.extend(res.lines())
            failed = failed or not res.ok
    return 2 if failed else 0


def cmd_corpus(args, out):
    graphs = corpus()
    if args.export:
        if args.export not in graphs:
            raise UsageError(f"corpus: unknown graph {args.export!r}; try --list")
        out.append(formats.graph_to_json(graphs[args.export]).rstrip("\n"))
        return
    for name, g in graphs.items():
        out.append(f"{name} vertices={len(g.vertices)} edges={len(g.edges)} genus={genus(g)}")


def cmd_export_dot(args, out):
    g = _graph(args)
    tree = formats.parse_tree(args.tree) if args.tree else None
    out.append(formats.to_dot(g, tree).rstrip("\n"))


def build_parser():
    p = _Parser(prog="rotorduality", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_file(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        sp.set_defaults(func=fn)
        return sp

    with_file("validate", cmd_validate, "parse and check a graph file")
    with_file("faces", cmd_faces, "list faces")
    with_file("genus", cmd_genus, "print the genus")
    sp = with_file("dual", cmd_dual, "planar dual and edge map")
    sp.add_argument("-o", "--output")
    with_file("jacobian", cmd_jacobian, "invariant factors and tree count")
    sp = with_file("reduce", cmd_reduce, "q-reduced form of a divisor")
    sp.add_argument("--divisor", required=True)
    sp.add_argument("--base", required=True)
    sp = with_file("act", cmd_act, "rotor-routing action on a tree")
    sp.add_argument("--divisor", required=True)
    sp.add_argument("--tree", required=True)
    sp.add_argument("--base", required=True)
    sp.add_argument("--trace", action="store_true")
    sp = with_file("angle", cmd_angle, "angle between two trees")
    sp.add_argument("--tree1", required=True)
    sp.add_argument("--tree2", required=True)
    sp.add_argument("--base")
    sp = with_file("phi", cmd_phi, "image of a class in the dual")
    sp.add_argument("--divisor", required=True)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suite", choices=SUITES + ("all",))
    sp.add_argument("file", nargs="?")
    sp.add_argument("--corpus", action="store_true")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("corpus", help="built-in graphs")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--list", action="store_true")
    group.add_argument("--export", metavar="NAME")
    sp.set_defaults(func=cmd_corpus)

    sp = with_file("export-dot", cmd_export_dot, "DOT drawing")
    sp.add_argument("--tree")
    return p


def run(argv=None, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    out = []
    try:
        args = build_parser().parse_args(argv)
        code = args.func(args, out) or 0
    except (UsageError, RibbonError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except InternalError as exc:
        print(f"internal error: {exc}", file=stderr)
        return 3
    for line in out:
        print(line, file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
