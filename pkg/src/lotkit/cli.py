"""``lot`` command line front end.

Exit codes: 0 computed (UNKNOWN included), 1 input error, 2 budget exceeded,
3 corpus golden failure.  ``--json [PATH]`` prints (or writes) a report
envelope with sorted keys so repeated runs are byte-identical.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import warnings
from pathlib import Path

from . import __version__
from .asphericity import certify_asphericity, side_injectivity_dispatch
from .cancellation import check_T4, check_metric, dehn_reduce, is_dehn_presentation, pieces
from .certificates import jsonable
from .complexes import build_Kbar_e, build_Lbar_e, coxeter_ball, hat_presentation, sides_of
from .coxeter import (
    PaddingWarning, artin_presentation, coxeter_tree_of, dihedral_reduction, epi_lot_for_coxeter,
    forge_high_rank_lot, format_coxeter, log_from_coxeter_graph, lot_from_coxeter_tree, parse_coxeter,
)
from .engines import (
    CoxeterWordProblem, abelianization, bounded_freeness_check, collapse_unit_edges, freeness_via_graph_of_groups,
    largeness_certificate, todd_coxeter,
)
from .engines.smith import format_abelian
from .errors import BudgetExceeded, LotError
from .lot import format_lot, lot_summary, parse_lot, wirtinger_presentation
from .presentation import parse_presentation
from .words import Word, parse_word, substitute

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_GOLDEN = 0, 1, 2, 3
SCHEMA_VERSION = 1


class _Context:
    def __init__(self, argv):
        self.argv = list(argv)
        self.inputs = []
        self.budgets = {}

    def read(self, path: str) -> str:
        text = Path(path).read_text()
        self.inputs.append((path, text))
        return text

    def digest(self) -> str:
        h = hashlib.sha256()
        for _, text in self.inputs:
            h.update(text.encode())
            h.update(b"\0")
        return "sha256:" + h.hexdigest()


def _color(text: str, code: str) -> str:
    if os.environ.get("LOT_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _verdict(v: str) -> str:
    good = {"ASPHERICAL", "LARGE", "side_injective", "PASS", "yes", "True", "free_of_rank", "rank_equals_n"}
    bad = {"refuted", "FAIL", "NOT_COXETER_TYPE"}
    return _color(v, "32" if v in good else "31" if v in bad else "33")


# ---------------------------------------------------------------------------
# subcommands: each returns (result dict, human text)

def cmd_validate(args, ctx):
    lot = parse_lot(ctx.read(args.file))
    summary = lot_summary(lot)
    lines = [summary["canonical"].rstrip()]
    for key in ("coxeter_type", "label_separated", "prime"):
        lines.append(f"{key}: {summary[key]}")
    return summary, "\n".join(lines)


def cmd_presentation(args, ctx):
    lot = parse_lot(ctx.read(args.file))
    p = wirtinger_presentation(lot)
    return {"presentation": p.to_json(), "deficiency": p.deficiency}, p.to_text().rstrip()


def cmd_coxeterize(args, ctx):
    lot = parse_lot(ctx.read(args.file))
    tree = coxeter_tree_of(lot)
    reductions = [dihedral_reduction(lot, i).to_json() for i in range(len(lot.edges))]
    notes = sorted({r["note"] for r in reductions if "note" in r})
    out = {"coxeter_tree": tree.to_json(), "text": format_coxeter(tree), "edges": reductions,
           "largeness": largeness_certificate(lot).to_json(), "notes": notes}
    text = format_coxeter(tree).rstrip()
    if notes:
        text += "\n" + "\n".join(f"note: {n}" for n in notes)
    return out, text


def cmd_from_coxeter(args, ctx):
    g = parse_coxeter(ctx.read(args.file))
    notes = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PaddingWarning)
        if g.kind == "tree":
            lot = lot_from_coxeter_tree(g, prime_padding=args.prime)
            tree = g
        else:
            lot, tree = epi_lot_for_coxeter(g)
            notes.append(f"LOT built on the odd spanning tree {format_coxeter(tree).strip()}")
    notes += [str(w.message) for w in caught]
    out = {"lot": lot.to_json(), "text": format_lot(lot), "coxeter_tree": tree.to_json(), "notes": notes}
    return out, format_lot(lot).rstrip()


def cmd_artin_log(args, ctx):
    g = parse_coxeter(ctx.read(args.file))
    log = log_from_coxeter_graph(g)
    wir, art = wirtinger_presentation(log), artin_presentation(g)
    same = list(wir.relators) == list(art.relators)
    out = {"log": log.to_json(), "text": format_lot(log), "artin": art.to_json(), "wirtinger_equals_artin": same}
    return out, format_lot(log).rstrip() + f"\nwirtinger relators equal Artin relators: {same}"


def cmd_forge(args, ctx):
    lot, cert = forge_high_rank_lot(args.rank)
    out = {"lot": lot.to_json(), "text": format_lot(lot), "certificate": cert.to_json()}
    return out, format_lot(lot).rstrip() + f"\n# rank certificate: {_verdict(cert.verdict)} (threshold {cert.threshold})"


def cmd_certify(args, ctx):
    lot = parse_lot(ctx.read(args.file))
    ctx.budgets["max_states"] = args.max_states
    rep = certify_asphericity(lot, args.max_states)
    lines = [f"verdict: {_verdict(rep.verdict)}" + (f" via {rep.route}" if rep.route else "")]
    for e in rep.edges:
        tail = e.route if e.status != "unknown" else e.reason
        lines.append(f"  edge {e.edge}: m = {e.m}, {_verdict(e.status)}: {tail}")
    lines += [f"note: {n}" for n in rep.notes]
    return rep.to_json(), "\n".join(lines)


def cmd_side_inject(args, ctx):
    p = parse_presentation(ctx.read(args.file))
    ctx.budgets["max_states"] = args.max_states
    cert = side_injectivity_dispatch(p, args.a, args.b, budget=args.max_states)
    text = f"{_verdict(cert.status)}" + (f" via {cert.route}" if cert.route else f": {cert.reason}")
    return cert.to_json(), f"m = {cert.m}\n{text}"


def cmd_sc_check(args, ctx):
    p = parse_presentation(ctx.read(args.file))
    table = pieces(p)
    out = {"pieces": table.to_json()}
    lines = []
    lambdas = args.lambdas or ["1/6", "1/4"]
    for lam in lambdas:
        r = check_metric(p, lam, table)
        out[f"C'({lam})"] = r.to_json()
        lines.append(f"C'({lam}): {_verdict(str(r.holds))}")
    if args.t4 or not args.lambdas:
        r = check_T4(p, table)
        out["T(4)"] = r.to_json()
        lines.append(f"T(4): {_verdict(str(r.holds))}")
    dv = is_dehn_presentation(p)
    out["dehn"] = dv.to_json()
    lines.append(f"Dehn presentation: {_verdict(dv.verdict)} {list(dv.routes)}")
    return out, "\n".join(lines)


def cmd_dehn(args, ctx):
    p = parse_presentation(ctx.read(args.file))
    w = parse_word(args.word)
    res = dehn_reduce(p, w)
    return res.to_json(), f"{res.reduced or '1'}\ntrivial: {res.trivial}"


def cmd_wp(args, ctx):
    g = parse_coxeter(ctx.read(args.coxeter))
    ctx.budgets["max_states"] = args.max_states
    g2, mapping = collapse_unit_edges(g)
    solver = CoxeterWordProblem(g2, args.max_states)
    w = parse_word(args.word)
    w2 = substitute(w, {s: Word.letter(t) for s, t in mapping.items()}) if mapping else w
    nf = solver.decode(solver.normal_form(solver.encode(w2)))
    out = {"word": str(w), "normal_form": str(nf), "length": len(nf), "identity": not nf, "states": solver.states}
    return out, f"{nf or '1'}\nidentity: {not nf}"


def cmd_tc(args, ctx):
    p = parse_presentation(ctx.read(args.file))
    ctx.budgets["max_cosets"] = args.max_cosets
    sub = [parse_word(s) for s in args.subgroup.split(",")] if args.subgroup else []
    table = todd_coxeter(p, sub, args.max_cosets)
    out = {"table": table.to_json(), "verified": table.verify()}
    if args.csv:
        Path(args.csv).write_text(table.to_csv())
    return out, f"index: {table.index}\n" + table.to_csv().rstrip()


def cmd_abelianize(args, ctx):
    p = parse_presentation(ctx.read(args.file))
    inv = abelianization(p)
    return {"invariants": list(inv), "text": format_abelian(inv)}, format_abelian(inv)


def _factors(text: str) -> list:
    out = []
    for chunk in text.split(","):
        sym, _, order = chunk.partition(":")
        out.append((sym.strip(), int(order) if order else 0))
    return out


def cmd_freeness(args, ctx):
    factors = _factors(args.factors)
    gens = [parse_word(s) for s in args.gens.split(",")]
    ctx.budgets["bound"] = args.bound
    if args.index:
        ctx.budgets["max_cosets"] = args.max_cosets
        gen_names = " ".join(s for s, _ in factors)
        rels = "; ".join(f"{s}^{n}" for s, n in factors if n)
        p = parse_presentation(f"gens: {gen_names}\nrels: {rels}" if rels else f"gens: {gen_names}")
        table = todd_coxeter(p, gens, args.max_cosets)
        rep = freeness_via_graph_of_groups(table, factors)
    else:
        rep = bounded_freeness_check(factors, gens, args.bound)
    return rep.to_json(), f"{_verdict(rep.verdict)}" + (f" rank {rep.rank}" if rep.rank is not None else "")


def cmd_complex(args, ctx):
    lot = parse_lot(ctx.read(args.file))
    build = build_Lbar_e if args.kind == "L" else build_Kbar_e
    cx = build(lot, args.edge)
    out = cx.to_json()
    out["hat"] = hat_presentation(lot, args.edge).to_json()
    if args.kind == "K":
        out["sides"] = [s.to_json() for s in sides_of(cx)]
    if args.format == "dot":
        return out, cx.to_dot().rstrip()
    return out, json.dumps(jsonable(out), indent=2, sort_keys=True)


def cmd_ball(args, ctx):
    g = parse_coxeter(ctx.read(args.file))
    ctx.budgets["max_states"] = args.max_states
    ball = coxeter_ball(g, args.radius, args.max_states)
    if args.dot:
        Path(args.dot).write_text(ball.to_dot())
    text = (f"cells: {len(ball.cells)}\nacyclic: {ball.acyclic}\nconnected: {ball.connected}\n"
            f"label condition: {ball.label_condition}")
    return ball.to_json(), text


def cmd_corpus(args, ctx):
    from .corpus import run_corpus
    only = {int(x) for x in args.only.split(",")} if args.only else None
    results = run_corpus(only)
    out = {"results": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(r.line().replace(f"[{status}]", f"[{_verdict(status)}]", 1))
    return out, "\n".join(lines)


# ---------------------------------------------------------------------------

SCHEMAS = {
    "validate": "lot_summary", "certify": "asphericity_report", "side-inject": "side_injectivity",
    "complex": "complex", "ball": "ball", "corpus": "corpus", "tc": "coset_table", "freeness": "freeness",
}


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse would exit 2, which means budget exceeded here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lot", description="Labeled oriented trees of Coxeter type.")
    parser.add_argument("--version", action="version", version=f"lot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH",
                       help="emit the JSON report (to PATH, or stdout)")
        return p

    p = add("validate", cmd_validate, "parse a LOT and print its predicates")
    p.add_argument("file")
    p = add("presentation", cmd_presentation, "Wirtinger presentation of a LOT")
    p.add_argument("file")
    p = add("coxeterize", cmd_coxeterize, "Coxeter tree of a Coxeter-type LOT")
    p.add_argument("file")
    p = add("from-coxeter", cmd_from_coxeter, "LOT realizing a Coxeter tree (or mapping onto W)")
    p.add_argument("file")
    p.add_argument("--prime", action="store_true", help="pad edge words to make the LOT prime")
    p = add("artin-log", cmd_artin_log, "labeled oriented graph with the Artin presentation")
    p.add_argument("file")
    p = add("forge", cmd_forge, "prime LOT of given rank")
    p.add_argument("--rank", type=int, required=True)
    p = add("certify", cmd_certify, "asphericity certificate for a LOT")
    p.add_argument("file")
    p.add_argument("--max-states", type=int, default=1_000_000)
    p = add("side-inject", cmd_side_inject, "side injectivity of a 1-relator presentation")
    p.add_argument("file")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--max-states", type=int, default=1_000_000)
    p = add("sc-check", cmd_sc_check, "small cancellation conditions")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lambdas", action="append", help="e.g. 1/6 (repeatable)")
    p.add_argument("--t4", action="store_true")
    p = add("dehn", cmd_dehn, "Dehn's algorithm on a word")
    p.add_argument("file")
    p.add_argument("word")
    p = add("wp", cmd_wp, "Coxeter group word problem")
    p.add_argument("--coxeter", required=True, metavar="FILE")
    p.add_argument("word")
    p.add_argument("--max-states", type=int, default=1_000_000)
    p = add("tc", cmd_tc, "Todd-Coxeter coset enumeration")
    p.add_argument("file")
    p.add_argument("--subgroup", default="", help="comma separated words")
    p.add_argument("--max-cosets", type=int, default=100_000)
    p.add_argument("--csv", metavar="PATH", help="write the coset table as CSV")
    p = add("abelianize", cmd_abelianize, "abelianization via Smith normal form")
    p.add_argument("file")
    p = add("freeness", cmd_freeness, "freeness of a subgroup of a free product of cyclic groups")
    p.add_argument("--factors", required=True, help="e.g. x:2,y:5 (order 0 = infinite cyclic)")
    p.add_argument("--gens", required=True, help="comma separated words")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--index", action="store_true", help="finite-index check via coset enumeration")
    p.add_argument("--max-cosets", type=int, default=100_000)
    p = add("complex", cmd_complex, "covering complex of one LOT edge")
    p.add_argument("file")
    p.add_argument("--edge", type=int, default=0)
    p.add_argument("--kind", choices=("K", "L"), default="K")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p = add("ball", cmd_ball, "ball in the Coxeter complex of a tree")
    p.add_argument("file")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--max-states", type=int, default=200_000)
    p = add("corpus", cmd_corpus, "run the bundled golden corpus")
    p.add_argument("action", choices=("run",))
    p.add_argument("--only", help="comma separated criterion numbers")
    return parser


def run(argv=None) -> tuple:
    """Returns ``(exit_code, report dict, text)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = _Context(argv)
    report = {"command": args.command, "argv": argv, "version": __version__, "schema_version": SCHEMA_VERSION}
    if args.command in SCHEMAS:
        report["schema"] = f"{SCHEMAS[args.command]}.schema.json"
    try:
        result, text = args.func(args, ctx)
        code = EXIT_OK
        if args.command == "corpus" and not result["passed"]:
            code = EXIT_GOLDEN
        report["result"] = jsonable(result)
    except BudgetExceeded as exc:
        code, text = EXIT_BUDGET, f"budget exceeded: {exc}"
        report["error"] = {"type": "budget", "message": str(exc), "budget": exc.budget}
    except (LotError, OSError, ValueError) as exc:
        code, text = EXIT_INPUT, f"error: {exc}"
        report["error"] = {"type": "input", "message": str(exc)}
    report["input_digest"] = ctx.digest()
    report["budgets"] = ctx.budgets
    report["exit_code"] = code
    return code, report, text


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    code, report, text = run(argv)
    dest = build_parser().parse_args(argv).json if argv else None
    if dest is not None:
        payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
        if dest == "-":
            sys.stdout.write(payload)
        else:
            Path(dest).write_text(payload)
            print(text)
    else:
        stream = sys.stdout if code in (EXIT_OK, EXIT_GOLDEN) else sys.stderr
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
