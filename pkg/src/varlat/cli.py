"""Command line front end: ``varlat <command> ...``.

Exit status is 0 for a definite verdict, 2 for Unknown and 1 for errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import classify as cls
from . import known, lattice, prooflab, relfree
from .errors import VarlatError
from .fic import FiniteSemigroup, fic_lattice, zero_class_congruences
from .syntax import Basis, letter_name
from .textio import parse_basis_inline, parse_comword, parse_identity, parse_word, read_basis, render
from .zerored import ZeroSystem, holds_in_zero_system, zero_consequence_com

PROPERTY_CHOICES = ("lmod", "mod", "umod", "neutral", "all")


@dataclass
class RunReport:
    command: str
    inputs: dict
    verdict: str | dict
    confidence: str = "Exact"
    justification: list[str] = field(default_factory=list)
    witnesses: list[str] = field(default_factory=list)
    timing_ms: float = 0.0

    @property
    def exit_code(self) -> int:
        verdicts = self.verdict.values() if isinstance(self.verdict, dict) else [self.verdict]
        return 2 if "Unknown" in verdicts else 0

    def to_json(self) -> str:
        data = {"command": self.command, "inputs": self.inputs, "verdict": self.verdict,
                "confidence": self.confidence, "justification": self.justification,
                "witnesses": self.witnesses, "timing_ms": round(self.timing_ms, 3)}
        return json.dumps(data, ensure_ascii=False, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        lines += [f"input {k}: {_flat(v)}" for k, v in self.inputs.items()]
        if isinstance(self.verdict, dict):
            lines += [f"verdict {k}: {v}" for k, v in self.verdict.items()]
        else:
            lines.append(f"verdict: {self.verdict}")
        lines.append(f"confidence: {self.confidence}")
        if self.justification:
            lines.append("justification:")
            lines += [f"  {s}" for s in self.justification]
        if self.witnesses:
            lines.append("witnesses:")
            lines += [f"  {w}" for w in self.witnesses]
        lines.append(f"timing_ms: {self.timing_ms:.3f}")
        return "\n".join(lines)


def _flat(v) -> str:
    return "; ".join(map(str, v)) if isinstance(v, list) else str(v)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise VarlatError(f"usage error: {message}")


def _yes(b: bool) -> str:
    return "Yes" if b else "No"


def _basis(args) -> Basis:
    if getattr(args, "basis", None):
        b = read_basis(args.basis)
    elif getattr(args, "identities", None):
        b = parse_basis_inline(args.identities)
    else:
        raise VarlatError("a basis is required (--basis FILE or --identities TEXT)")
    if getattr(args, "commutative", False) and not b.commutative:
        b = Basis.commutative_with(*b)
    return b


def _basis_inputs(b: Basis) -> list[str]:
    return [render(i) for i in b]


# decide

def cmd_decide(args) -> RunReport:
    if args.question == "zero-consequence":
        if not (args.source and args.target):
            raise VarlatError("zero-consequence needs --from and --to")
        u, v = parse_comword(args.source), parse_comword(args.target)
        w = zero_consequence_com(u, v)
        rep = RunReport("decide zero-consequence", {"from": str(u), "to": str(v)}, _yes(w is not None))
        if w is not None:
            sigma = ", ".join(f"{letter_name(a)} -> {img}" for a, img in sorted(w.sigma.items()))
            rep.witnesses.append(f"sigma: {sigma}")
            rep.witnesses.append(f"remainder: {w.remainder if w.remainder is not None else '(empty)'}")
            rep.justification.append(f"{v} = remainder · sigma({u}) is balanced")
        else:
            rep.justification.append(f"no endomorphic image of {u} divides {v}")
        return rep
    identity = parse_identity(_need(args.identity, "--identity"))
    if args.question == "zr-holds":
        zeros = [parse_comword(z) for z in _need(args.zeros, "--zeros").split(",")]
        ok = holds_in_zero_system(ZeroSystem(tuple(zeros)), identity)
        return RunReport("decide zr-holds", {"zeros": [str(z) for z in zeros],
                                            "identity": render(identity)}, _yes(ok))
    if args.question == "known":
        K = known.KnownVariety.parse(_need(args.variety, "--variety"))
        ok = known.holds_in(identity, K)
        return RunReport("decide known", {"variety": str(K), "identity": render(identity)}, _yes(ok))
    b = _basis(args)
    ok = relfree.holds(b, identity)
    return RunReport("decide holds", {"basis": _basis_inputs(b), "identity": render(identity)}, _yes(ok))


def _need(value, flag):
    if not value:
        raise VarlatError(f"{flag} is required")
    return value


# classify / audit

def cmd_classify(args) -> RunReport:
    b = _basis(args)
    props = cls.PROPERTIES if args.property == "all" else (cls.PROPERTY_ALIASES[args.property],)
    reports = [cls.classify(b, p, args.kmax) for p in props]
    inputs = {"basis": _basis_inputs(b), "property": args.property}
    if args.kmax:
        inputs["kmax"] = args.kmax
    if len(reports) == 1:
        r = reports[0]
        return RunReport("classify", inputs, r.verdict.value, str(r.confidence),
                         [str(s) for s in r.justification], r.witnesses)
    rep = RunReport("classify", inputs, {r.property: r.verdict.value for r in reports},
                    "; ".join(f"{r.property}: {r.confidence}" for r in reports))
    for r in reports:
        rep.justification += [f"{r.property}: {s}" for s in r.justification]
        rep.witnesses += [f"{r.property}: {w}" for w in r.witnesses]
    return rep


def cmd_audit(args) -> RunReport:
    b = _basis(args)
    audit = cls.consistency_audit(b, args.kmax)
    rep = RunReport("audit", {"basis": _basis_inputs(b)},
                    "No violations" if not audit.violations else "Violations")
    for p, v in audit.verdicts.items():
        rep.justification.append(f"{p}: {v.verdict.value} ({v.confidence})")
    for p, row in audit.matrix().items():
        for q, status in row.items():
            rep.justification.append(f"{p} => {q}: {status}")
    rep.witnesses = list(audit.violations)
    return rep


# relfree

def cmd_relfree(args) -> RunReport:
    b = _basis(args)
    F = relfree.build_relfree(b, args.generators)
    rep = RunReport("relfree", {"basis": _basis_inputs(b), "generators": args.generators},
                    f"{F.n_classes} classes")
    a, p = relfree.base_exponents(b)
    rep.justification.append(f"index {a}, period {p}; carrier of {F.carrier_size} exponent vectors")
    if F.zero is not None:
        rep.justification.append(f"zero class represented by {F.word_of(F.zero)}")
    if args.show_classes:
        for group in F.classes():
            words = sorted((F.word_of(c) for c in group), key=lambda w: (w.length, w.items))
            tag = "0: " if F.zero is not None and F.labels[group[0]] == F.zero else ""
            rep.witnesses.append(tag + ", ".join(str(w) for w in words))
    return rep


# lattices

def _analysis_rows(L: lattice.FiniteLattice, props, elements=None) -> list[str]:
    table = lattice.analyze(L, props, elements)
    rows = []
    for name, checks in table.items():
        cells = []
        for p, c in checks.items():
            if c.holds:
                cells.append(f"{p}=true")
            else:
                y, z = c.witness
                cells.append(f"{p}=false(y={L.names[y]},z={L.names[z]})")
        rows.append(f"{name}: " + " ".join(cells))
    return rows


def _props(analyze: str):
    return None if analyze == "all" else [p.strip() for p in analyze.split(",")]


def cmd_lattice(args) -> RunReport:
    L = lattice.FiniteLattice.from_text(Path(args.file).read_text())
    rows = _analysis_rows(L, _props(args.analyze), [args.element] if args.element else None)
    disagreements = lattice.alternative_form_audit(L)
    rep = RunReport("lattice", {"file": str(args.file), "analyze": args.analyze,
                                "element": args.element or "all"},
                    f"{L.n} elements analyzed")
    rep.justification.append(
        f"guarded vs unguarded forms: {len(disagreements)} disagreement(s)")
    rep.witnesses = rows
    return rep


def cmd_fic(args) -> RunReport:
    if args.table:
        S = FiniteSemigroup.from_text(Path(args.table).read_text())
        inputs = {"table": str(args.table)}
    else:
        b = _basis(args)
        S = FiniteSemigroup.from_free_object(relfree.build_relfree(b, args.generators))
        inputs = {"basis": _basis_inputs(b), "generators": args.generators}
    fl = fic_lattice(S)
    zc = zero_class_congruences(fl)
    rep = RunReport("fic", inputs, f"{fl.lattice.n} fully invariant congruences",
                    "finite-scale analogue")
    rep.justification.append(f"semigroup of size {S.n} with {len(fl.endomorphisms)} endomorphisms")
    rep.justification.append("zero-class congruences: " + (", ".join(fl.label(i) for i in zc) or "none"))
    mod = [fl.label(i) for i in zc if lattice.modular_element(fl.lattice, i).holds]
    rep.justification.append(f"{len(mod)} of {len(zc)} zero-class congruences are modular elements")
    rep.witnesses = _analysis_rows(fl.lattice, _props(args.analyze))
    return rep


# prooflab

def cmd_prooflab(args) -> RunReport:
    if args.construction == "proposition-words":
        fam = prooflab.proposition_words(args.n, args.m, args.variant)
        return _family_report("prooflab proposition-words",
                              {"n": args.n, "m": args.m, "variant": args.variant}, fam)
    if args.construction == "corollary":
        fam, i = prooflab.corollary_words(parse_word(_need(args.w1, "--w1")), parse_word(_need(args.w2, "--w2")))
        rep = _family_report("prooflab corollary", {"w1": args.w1, "w2": args.w2}, fam)
        rep.justification.append(f"first differing position {i}")
        return rep
    if args.construction == "gamma":
        gp = prooflab.gamma_partition(parse_comword(_need(args.u, "--u")),
                                      parse_comword(_need(args.s, "--s")), args.bound)
        rep = RunReport("prooflab gamma", {"u": args.u, "s": args.s, "bound": args.bound},
                        _yes(gp.passed), "bounded audit")
        rep.justification = [f"{k}: {v}" for k, v in gp.audits.items()]
        rep.justification.append(f"sink class of {len(gp.sink)} words, {len(gp.pairs)} pair classes")
        rep.witnesses = gp.failures
        return rep
    b = _basis(args)
    if args.construction == "key-lemma":
        words = [parse_word(_need(getattr(args, n), f"--{n}")) for n in "uvst"]
        res = prooflab.key_lemma_instance(*words, b)
        rep = RunReport("prooflab key-lemma", {"basis": _basis_inputs(b),
                                               "words": [str(w) for w in words]}, _yes(res.holds))
        rep.justification.append(f"{render(res.identity)} {'holds' if res.holds else 'fails'}")
        if not res.holds:
            rep.justification.append("evidence that the variety is neither modular nor lower-modular in Com")
        return rep
    res = prooflab.search_quadruples(b, args.max_length, args.max_letters)
    rep = RunReport("prooflab search", {"basis": _basis_inputs(b), "max_length": args.max_length,
                                        "max_letters": args.max_letters},
                    _yes(not res.falsifying), "bounded search")
    rep.justification.append(f"{res.examined} quadruples examined, {res.admissible} admissible, "
                             f"{len(res.falsifying)} with u = s failing")
    rep.witnesses = [", ".join(map(str, q)) for q in res.falsifying[:20]]
    return rep


def _family_report(command, inputs, fam) -> RunReport:
    rep = RunReport(command, inputs, _yes(fam.passed))
    rep.witnesses = [f"{n} = {w}" for n, w in zip("uvst", fam.words)]
    rep.justification = [f"{k}: {v}" for k, v in fam.checks.items()] + fam.notes
    return rep


# parser

def _add_basis(p):
    p.add_argument("--basis", help="basis file (.bas)")
    p.add_argument("--identities", help="inline basis, comma separated")
    p.add_argument("--commutative", action="store_true", help="add xy = yx")


def build_parser() -> argparse.ArgumentParser:
    # shared options are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--kmax", type=int, default=argparse.SUPPRESS)
    common.add_argument("--carrier-cap", type=int, default=argparse.SUPPRESS)
    parser = _Parser(prog="varlat", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name):
        return sub.add_parser(name, parents=[common])

    p = add("decide")
    p.add_argument("question", choices=("zero-consequence", "zr-holds", "holds", "known"))
    p.add_argument("--from", dest="source")
    p.add_argument("--to", dest="target")
    p.add_argument("--zeros")
    p.add_argument("--identity")
    p.add_argument("--variety")
    _add_basis(p)

    p = add("classify")
    _add_basis(p)
    p.add_argument("--property", choices=PROPERTY_CHOICES, default="all")

    p = add("audit")
    _add_basis(p)

    p = add("relfree")
    _add_basis(p)
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--show-classes", action="store_true")

    p = add("lattice")
    p.add_argument("--file", required=True)
    p.add_argument("--analyze", default="all")
    p.add_argument("--element")

    p = add("fic")
    _add_basis(p)
    p.add_argument("--generators", type=int, default=1)
    p.add_argument("--table", help="Cayley table file")
    p.add_argument("--analyze", default="modular,neutral")

    p = add("prooflab")
    p.add_argument("construction", choices=("proposition-words", "corollary", "gamma", "key-lemma", "search"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--variant", choices=("main", "primed"), default="main")
    p.add_argument("--w1")
    p.add_argument("--w2")
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--max-length", type=int, default=10)
    p.add_argument("--max-letters", type=int, default=3)
    _add_basis(p)
    return parser


COMMANDS = {
    "decide": cmd_decide,
    "classify": cmd_classify,
    "audit": cmd_audit,
    "relfree": cmd_relfree,
    "lattice": cmd_lattice,
    "fic": cmd_fic,
    "prooflab": cmd_prooflab,
}


def run(argv: list[str] | None = None) -> tuple[RunReport | None, int, str]:
    """Run one command; returns (report, exit code, rendered output)."""
    previous_cap = relfree.CARRIER_CAP
    try:
        args = build_parser().parse_args(argv)
        for name, default in (("format", "text"), ("kmax", None), ("carrier_cap", None)):
            if not hasattr(args, name):
                setattr(args, name, default)
        cache = os.environ.get("VARLAT_CACHE")
        relfree.set_cache_dir(cache or None)
        relfree.set_limits(carrier_cap=args.carrier_cap or previous_cap)
        start = time.perf_counter()
        report = COMMANDS[args.command](args)
        report.timing_ms = (time.perf_counter() - start) * 1000
    except (VarlatError, OSError) as exc:
        return None, 1, f"error: {exc}"
    finally:
        relfree.set_limits(carrier_cap=previous_cap)
    out = report.to_json() if args.format == "json" else report.to_text()
    return report, report.exit_code, out


def main(argv: list[str] | None = None) -> int:
    report, code, out = run(argv)
    print(out, file=sys.stdout if report is not None else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
