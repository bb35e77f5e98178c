"""Command-line front end: ``posslogic check|incons|entail|random``."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional, Sequence

from . import semantics
from .clausal import ground
from .errors import BudgetExceeded, ClausalFormError, ParseError, SignatureError
from .kbio import format_formula, parse_formula, parse_kb, print_kb
from .levelcut import CutBudget, explain_cut, val_cut
from .random_kb import random_clausal_kb
from .resolution import Budget, RefutationProof, Status, refute, val_query
from .syntax import Formula, KnowledgeBase, atoms_of
from .valuation import Valuation, format_degree

ENGINES = ("oracle", "resolution", "cut")
ORACLE_MAX_ATOMS = 20
TABLE_MAX_ROWS = 64

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _bold(text: str, out) -> str:
    return f"\033[1m{text}\033[0m" if _use_color(out) else text


def _load(path: str) -> KnowledgeBase:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc.strerror}") from None
    try:
        return parse_kb(text)
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, f"{path}:{exc.line}:{exc.column}: {exc.message}"
                                f" (at {exc.token!r})") from None
    except SignatureError as exc:
        raise _Fail(EXIT_INPUT, f"{path}: {exc}") from None


def _query(text: str) -> Formula:
    try:
        f = parse_formula(text)
    except ParseError as exc:
        raise _Fail(EXIT_INPUT, f"query:{exc.column}: {exc.message} (at {exc.token!r})") from None
    if not all(a.is_ground for a in atoms_of(f)):
        raise _Fail(EXIT_INPUT, "query must be ground (constants start with an uppercase letter)")
    return f


def _ground_for_oracle(kb: KnowledgeBase, query: Optional[Formula] = None) -> KnowledgeBase:
    constants = []
    if query is not None:
        constants = [t for a in atoms_of(query) for t in a.args]
    g = ground(kb, constants, limit=100_000) if not kb.is_ground else kb
    atoms = set(g.atoms())
    if query is not None:
        atoms |= atoms_of(query)
    if len(atoms) > ORACLE_MAX_ATOMS:
        raise _Fail(EXIT_INPUT, f"oracle needs at most {ORACLE_MAX_ATOMS} ground atoms, found "
                                f"{len(atoms)}; use --engine resolution or --engine cut")
    return g


def _default_engine(kb: KnowledgeBase, query: Optional[Formula] = None) -> str:
    if not kb.is_ground:
        return "resolution"
    atoms = set(kb.atoms()) | (atoms_of(query) if query is not None else set())
    return "oracle" if len(atoms) <= ORACLE_MAX_ATOMS else "cut"


def _valuation_json(v: Valuation) -> dict:
    return {"mode": str(v.mode), "degree": str(v.degree), "decimal": float(v.degree)}


def _witness_table(d: semantics.PossibilityDistribution) -> List[str]:
    names = [str(a) for a in d.atoms]
    widths = [max(len(n), 1) for n in names]
    head = "  ".join(n.rjust(w) for n, w in zip(names, widths))
    lead = len(head)
    lines = [f"{head}{'  ' if head else ''}pi"]
    rows = list(d.rows())
    shown = rows[:-1]
    if len(shown) > TABLE_MAX_ROWS:
        shown = shown[:TABLE_MAX_ROWS]
    for world, value in shown:
        cells = "  ".join(("1" if world.assignment[a] else "0").rjust(w)
                          for a, w in zip(d.atoms, widths))
        lines.append(f"{cells}{'  ' if cells else ''}{format_degree(value)}")
    hidden = len(rows) - 1 - len(shown)
    if hidden:
        lines.append(f"... {hidden} more worlds")
    absurd = "absurd".ljust(lead) if lead else "absurd"
    lines.append(f"{absurd}  {format_degree(d.absurd)}")
    return lines


def _witness_json(d: semantics.PossibilityDistribution) -> dict:
    rows = list(d.rows())
    return {
        "atoms": [str(a) for a in d.atoms],
        "worlds": [{"assignment": [bool(w.assignment[a]) for a in d.atoms], "value": str(v)}
                   for w, v in rows[:-1]],
        "absurd": str(d.absurd),
    }


def _resolution_budget(n: Optional[int]) -> Budget:
    return Budget() if n is None else Budget(max_clauses=n, max_inferences=n)


def _cut_budget(n: Optional[int]) -> CutBudget:
    return CutBudget() if n is None else CutBudget(max_ground_clauses=n, max_decisions=n)


def _emit(args, payload: dict, lines: Sequence[str], out) -> None:
    if args.json:
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


# -- subcommands -----------------------------------------------------------

def cmd_check(args, out) -> int:
    kb = _load(args.file)
    noun = "clauses" if kb.is_clausal else "formulas"
    out.write(f"{len(kb)} {noun}, {len(kb.predicates)} predicates\n")
    if kb.is_ground:
        out.write(f"ground, {len(kb.atoms())} atoms\n")
    else:
        names = ", ".join(sorted(t.name for t in kb.constants())) or "none"
        out.write(f"first-order, constants: {names}\n")
    return EXIT_OK


def _incons_line(v: Valuation, out) -> str:
    return _bold(f"Incons = {v}", out) + f" ({semantics.classify(v)})"


def cmd_incons(args, out) -> int:
    kb = _load(args.file)
    engine = args.engine or _default_engine(kb)
    payload = {"command": "incons", "engine": engine}
    lines: List[str] = []

    if engine == "oracle":
        report = semantics.incons(_ground_for_oracle(kb))
        v = report.degree
        lines = [_incons_line(v, out), ""] + _witness_table(report.witness)
        payload["witness"] = _witness_json(report.witness)
    elif engine == "resolution":
        outcome = refute(kb, _resolution_budget(args.budget))
        if outcome.status is Status.EXHAUSTED:
            raise _Fail(EXIT_BUDGET, "resolution budget exhausted before the search finished")
        v = outcome.valuation
        lines = [_incons_line(v, out)]
        if outcome.proof is not None:
            lines += ["", *outcome.proof.lines()]
            payload["proof"] = outcome.proof.steps()
        else:
            lines += ["no refutation: clause set saturated"]
            payload["proof"] = None
    else:
        result = explain_cut(kb, _cut_budget(args.budget))
        v = result.valuation
        lines = [_incons_line(v, out)]
        if result.pi_witness is not None:
            lines.append(f"possibility entry: input({result.pi_witness + 1})")

    payload.update(_valuation_json(v))
    payload["classification"] = str(semantics.classify(v))
    _emit(args, payload, lines, out)
    return EXIT_OK


def _verdict(val: Valuation, inc: Valuation) -> str:
    if val > inc:
        return "nontrivial"
    return "trivial, equals Incons"


def _proof_block(title: str, proof: RefutationProof) -> List[str]:
    return ["", f"{title} [{proof.valuation}]:", *("  " + l for l in proof.lines())]


def cmd_entail(args, out) -> int:
    kb = _load(args.file)
    query = _query(args.query)
    engine = args.engine or _default_engine(kb, query)
    payload = {"command": "entail", "engine": engine, "query": format_formula(query)}
    extra: List[str] = []

    if engine == "oracle":
        g = _ground_for_oracle(kb, query)
        val = semantics.val_of(g, query)
        inc = semantics.incons(g).degree
    elif engine == "resolution":
        result = val_query(kb, query, _resolution_budget(args.budget),
                           alternatives=not args.no_alternatives)
        if result.outcome.status is Status.EXHAUSTED or result.baseline.status is Status.EXHAUSTED:
            raise _Fail(EXIT_BUDGET, "resolution budget exhausted before the search finished")
        val, inc = result.valuation, result.incons
        proof = result.outcome.proof
        payload["proof"] = proof.steps() if proof is not None else None
        payload["alternatives"] = [p.steps() for p in result.outcome.alternatives]
        if proof is not None:
            extra += _proof_block("optimal refutation", proof)
            for p in result.outcome.alternatives:
                extra += _proof_block("weaker refutation", p)
            if not result.outcome.alternatives_complete:
                extra += ["", "weaker refutations not fully explored: budget reached"]
        else:
            extra += ["", "no refutation: clause set saturated"]
    else:
        budget = _cut_budget(args.budget)
        val = val_cut(kb, query, budget)
        inc = explain_cut(kb, budget).valuation

    payload.update(_valuation_json(val))
    payload["classification"] = str(semantics.classify(inc))
    payload["nontrivial"] = val > inc
    payload["incons"] = _valuation_json(inc)
    lines = [_bold(f"Val = {val}", out) + f" ({_verdict(val, inc)})",
             f"Incons = {inc} ({semantics.classify(inc)})", *extra]
    _emit(args, payload, lines, out)
    return EXIT_OK


def cmd_random(args, out) -> int:
    rng = random.Random(args.seed)
    kb = random_clausal_kb(rng, n_atoms=args.atoms, max_clauses=args.clauses,
                           p_necessity=args.p_necessity)
    out.write(f"# posslogic random --seed {args.seed}\n")
    out.write(print_kb(kb))
    return EXIT_OK


# -- entry point -----------------------------------------------------------

def _budget(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("budget must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posslogic",
        description="Inconsistency degrees and graded entailment for possibilistic knowledge bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse a .pkb file and summarise its signature")
    p.add_argument("file")
    p.set_defaults(run=cmd_check)

    def engine_opts(p):
        p.add_argument("file")
        p.add_argument("--engine", choices=ENGINES,
                       help="default: resolution for first-order input, oracle for ground "
                            f"input with at most {ORACLE_MAX_ATOMS} atoms, cut otherwise")
        p.add_argument("--budget", type=_budget,
                       help="cap on retained clauses and inferences (resolution) or on "
                            "ground clauses and decisions (cut)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("incons", help="inconsistency degree of a knowledge base")
    engine_opts(p)
    p.set_defaults(run=cmd_incons)

    p = sub.add_parser("entail", help="best valuation with which a query follows")
    engine_opts(p)
    p.add_argument("--query", "-q", required=True, help='ground formula, e.g. "Elected(Mary)"')
    p.add_argument("--no-alternatives", action="store_true",
                   help="resolution: skip the search for weaker refutations")
    p.set_defaults(run=cmd_entail)

    p = sub.add_parser("random", help="print a seeded random ground clausal knowledge base")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--atoms", type=int, default=4, choices=range(1, 5), metavar="1..4")
    p.add_argument("--clauses", type=int, default=8)
    p.add_argument("--p-necessity", type=float, default=0.6)
    p.set_defaults(run=cmd_random)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args, out)
    except _Fail as exc:
        err.write(f"posslogic: {exc}\n")
        return exc.code
    except BudgetExceeded as exc:
        err.write(f"posslogic: budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except (ClausalFormError, SignatureError) as exc:
        err.write(f"posslogic: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
