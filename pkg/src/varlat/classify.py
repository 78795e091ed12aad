"""Classification of commutative varieties as special elements of Com.

Every verdict carries the chain of rules used. Rule identifiers:

``com-top``                    V = COM is the top element.
``modular-form``               modular in Com forces V = COM or V = M ∨ N,
                               M in {T, SL}, N nil.
``nil-modular-necessity``      a modular commutative nil-variety is defined
                               within COM by 0-reduced and substitutive
                               identities.
``zero-reduced-is-modular``    0-reduced in Com implies modular in Com.
``lower-modular-classification`` lower-modular in Com iff V = COM or
                               V = M ∨ N with N 0-reduced in Com.
``join-with-SL``               for lattice laws valid in distributive
                               lattices, V has the property iff V ∨ SL has.
``zero-reduced-upper-modular`` a 0-reduced in Com variety is upper-modular
                               iff it satisfies x²y = 0.
``atom``                       atoms are upper-modular.
``neutral-classification``     neutral iff V = COM or V = M ∨ N with
                               N satisfying x²y = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import known
from .errors import PreconditionError
from .partition import Partition
from .relfree import (
    PeriodicBase,
    base_exponents,
    build_on_base,
    holds,
    is_nil,
    is_zero_reduced_in_com,
    substitutive_identities,
    zero_system_basis,
    zr_truncation,
)
from .syntax import Basis, Equation, Identity, Word, ZeroReduced, periodicity_exponents

PROPERTIES = ("modular", "lower_modular", "upper_modular", "neutral")
PROPERTY_ALIASES = {"mod": "modular", "lmod": "lower_modular", "umod": "upper_modular",
                    "neutral": "neutral", "neut": "neutral"}

X2Y_ZERO = ZeroReduced(Word.of(1, 1, 2))
ATOM_PRIMES = tuple(p for p in range(2, 98) if all(p % d for d in range(2, p)))


class Verdict(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Confidence:
    kind: str = "exact"
    k_max: int | None = None

    def __str__(self):
        return "Exact" if self.kind == "exact" else f"{self.kind}(k_max={self.k_max})"


EXACT = Confidence()


def bounded_join(k_max: int) -> Confidence:
    return Confidence("BoundedJoinCheck", k_max)


@dataclass(frozen=True)
class Step:
    rule: str
    facts: str

    def __str__(self):
        return f"[{self.rule}] {self.facts}"


@dataclass
class Decomposition:
    M: str | None
    N: Basis | None
    confidence: Confidence
    reason: str
    steps: list[Step] = field(default_factory=list)
    exponents: tuple[int, int] | None = None

    @property
    def found(self) -> bool:
        return self.M is not None


@dataclass
class ClassificationReport:
    property: str
    verdict: Verdict
    justification: list[Step]
    confidence: Confidence = EXACT
    decomposition: Decomposition | None = None
    witnesses: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        dec = None
        if self.decomposition is not None and self.decomposition.found:
            dec = {"M": self.decomposition.M, "N": [str(i) for i in self.decomposition.N]}
        return {
            "property": self.property,
            "verdict": self.verdict.value,
            "confidence": str(self.confidence),
            "decomposition": dec,
            "justification": [str(s) for s in self.justification],
            "witnesses": list(self.witnesses),
        }


def default_k_max(basis: Basis) -> int:
    return max(3, basis.max_letters())


def _power(e: int) -> Word:
    return Word.power(1, e)


def _require(basis: Basis) -> None:
    if not basis.commutative:
        raise PreconditionError("commutative basis required")


def is_com(basis: Basis) -> bool:
    return periodicity_exponents(basis) is None


def decompose(basis: Basis, k_max: int | None = None) -> Decomposition:
    """Find V = M ∨ N with M in {T, SL} and N nil, if V has that form."""
    _require(basis)
    k_max = k_max or default_k_max(basis)
    if is_com(basis):
        return Decomposition(None, None, EXACT, "V = COM",
                             [Step("periodicity", "every identity is balanced, so V = COM")])
    a, b = base_exponents(basis)
    steps = [Step("periodicity", f"V satisfies x^{a} = x^{a + b}")]
    if not holds(basis, Equation(_power(a), _power(a + 1))):
        steps.append(Step("aperiodicity",
                          f"x^{a} = x^{a + 1} fails: V contains a nontrivial group variety"))
        return Decomposition(None, None, EXACT, "nontrivial group part", steps, (a, b))
    steps.append(Step("aperiodicity", f"x^{a} = x^{a + 1} holds"))
    N = basis.extended(ZeroReduced(_power(a)))
    if not known.contained_in_var(known.SL, basis):
        nil = is_nil(basis)
        if nil is None:
            steps.append(Step("nil", "SL is not contained in V but V is not nil"))
            return Decomposition(None, None, EXACT, "not nil and SL not contained", steps, (a, b))
        steps.append(Step("nil", f"SL is not contained in V; V is nil (x^{nil} = 0)"))
        return Decomposition("T", N, EXACT, "V is nil", steps, (a, b))
    steps.append(Step("SL", "SL is contained in V; N := V ∧ var{x^%d = 0}" % a))
    sl = known.presentation(known.SL)
    for k in range(1, k_max + 1):
        base = PeriodicBase(a, 1, k)
        theta_v = build_on_base(basis, base).partition()
        theta_join = build_on_base(sl, base).partition() & build_on_base(N, base).partition()
        if theta_v != theta_join:
            steps.append(Step("join-check", f"V ≠ SL ∨ N: congruences differ on {k} generators"))
            return Decomposition(None, None, EXACT, "V is not SL ∨ N", steps, (a, b))
    steps.append(Step("join-check", f"V = SL ∨ N on up to {k_max} generators"))
    return Decomposition("SL", N, bounded_join(k_max), "V = SL ∨ N", steps, (a, b))


def _report(prop, verdict, steps, confidence=EXACT, dec=None, witnesses=()):
    return ClassificationReport(prop, verdict, list(steps), confidence, dec, list(witnesses))


def _join_note(dec: Decomposition) -> list[Step]:
    if dec.M == "SL":
        return [Step("join-with-SL", "the property of V equals that of N since V = SL ∨ N")]
    return []


def classify_lower_modular_in_com(basis: Basis, k_max: int | None = None) -> ClassificationReport:
    prop = "lower_modular"
    _require(basis)
    k_max = k_max or default_k_max(basis)
    if is_com(basis):
        return _report(prop, Verdict.YES, [Step("com-top", "V = COM"),
                                           Step("lower-modular-classification", "V = COM case")])
    dec = decompose(basis, k_max)
    if not dec.found:
        return _report(prop, Verdict.NO, dec.steps + [
            Step("lower-modular-classification", f"V is not COM and not of the form M ∨ N ({dec.reason})")],
            dec=dec)
    zr = is_zero_reduced_in_com(dec.N)
    steps = dec.steps + _join_note(dec)
    if zr:
        steps.append(Step("lower-modular-classification", "N is 0-reduced in Com"))
        return _report(prop, Verdict.YES, steps, dec.confidence, dec)
    # a No needs no join check: if V were lower-modular it would be SL ∨ N with N 0-reduced
    steps.append(Step("lower-modular-classification", "N is nil but not 0-reduced in Com"))
    return _report(prop, Verdict.NO, steps, EXACT, dec, _non_zero_reduced_witnesses(dec.N))


def _non_zero_reduced_witnesses(N: Basis) -> list[str]:
    out = []
    for identity in N:
        if isinstance(identity, Equation) and identity.lhs.parikh != identity.rhs.parikh:
            for side in (identity.lhs, identity.rhs):
                if not holds(N, ZeroReduced(side)):
                    out.append(f"{identity} is unbalanced and {side} ≠ 0")
                    break
    return out


@dataclass
class NilModularCheck:
    passed: bool
    failing: list[Identity]
    skipped: list[Identity]
    zero_generators: int
    substitutive: int

    def __bool__(self):
        return self.passed


def theorem2_necessary_check(nil_basis: Basis, k_max: int | None = None) -> NilModularCheck:
    """Is N defined within COM by its 0-reduced and substitutive identities?

    Builds V' from the commutative law, the 0-reduced identities of N of length
    below ``a * k_max`` on at most ``k_max`` letters (``a`` the nil exponent) and
    the substitutive identities of N on at most ``k_max`` letters, then checks
    every basis identity of N in V'. Basis identities needing more than
    ``k_max`` letters are reported as skipped.
    """
    _require(nil_basis)
    k_max = k_max or default_k_max(nil_basis)
    a = is_nil(nil_basis)
    if a is None:
        raise PreconditionError("nil variety required")
    zeros = zr_truncation(nil_basis, a * k_max, k_max)
    subs = substitutive_identities(nil_basis, k_max)
    v_prime = zero_system_basis(zeros).extended(*subs)
    failing, skipped = [], []
    for identity in nil_basis:
        if isinstance(identity, Equation) and identity.lhs.parikh == identity.rhs.parikh:
            continue
        if len(identity.letters()) > k_max:
            skipped.append(identity)
            continue
        if not holds(v_prime, identity):
            failing.append(identity)
    return NilModularCheck(not failing, failing, skipped, len(zeros.generators), len(subs))


def classify_modular_in_com(basis: Basis, k_max: int | None = None) -> ClassificationReport:
    prop = "modular"
    _require(basis)
    k_max = k_max or default_k_max(basis)
    if is_com(basis):
        return _report(prop, Verdict.YES, [Step("com-top", "V = COM is the top element")])
    dec = decompose(basis, k_max)
    if not dec.found:
        return _report(prop, Verdict.NO, dec.steps + [
            Step("modular-form", f"V is not COM and not of the form M ∨ N ({dec.reason})")], dec=dec)
    steps = dec.steps + _join_note(dec)
    check = theorem2_necessary_check(dec.N, k_max)
    if not check:
        steps.append(Step("nil-modular-necessity",
                          "N is not defined by its 0-reduced and substitutive identities; failing: "
                          + ", ".join(str(i) for i in check.failing)))
        return _report(prop, Verdict.NO, steps, Confidence("BoundedIdentitySearch", k_max), dec,
                       [str(i) for i in check.failing])
    steps.append(Step("nil-modular-necessity",
                      f"necessary condition holds ({check.zero_generators} 0-reduced and "
                      f"{check.substitutive} substitutive identities on <= {k_max} letters)"))
    if is_zero_reduced_in_com(dec.N):
        steps.append(Step("zero-reduced-is-modular", "N is 0-reduced in Com"))
        return _report(prop, Verdict.YES, steps, dec.confidence, dec)
    steps.append(Step("gap", "N is not 0-reduced in Com, so zero-reduced-is-modular does not apply, "
                             "while nil-modular-necessity is satisfied; modularity is undecided "
                             "between the necessary and the sufficient condition"))
    return _report(prop, Verdict.UNKNOWN, steps, dec.confidence, dec,
                   _non_zero_reduced_witnesses(dec.N))


def _holds_in_zero_atom(identity: Identity) -> bool:
    """Word problem of var{xy = yx, xy = 0}: every product of two elements is 0."""
    if isinstance(identity, ZeroReduced):
        return identity.word.length >= 2
    u, v = identity.lhs, identity.rhs
    return u.parikh == v.parikh or (u.length >= 2 and v.length >= 2)


def recognize_atom(basis: Basis) -> str | None:
    """Name of the atom of Com equal to var(basis), if any."""
    x, y = Word.of(1), Word.of(2)
    if known.contained_in_var(known.SL, basis):
        if all(holds(basis, i) for i in known.presentation(known.SL)):
            return "SL"
        return None
    if all(_holds_in_zero_atom(i) for i in basis):
        if holds(basis, ZeroReduced(x * y)):
            return "var{xy = yx, xy = 0}"
        return None
    for p in ATOM_PRIMES:
        K = known.A(p)
        if known.contained_in_var(K, basis):
            if all(holds(basis, i) for i in known.presentation(K)):
                return str(K)
            return None
    return None


def classify_upper_modular_in_com(basis: Basis, k_max: int | None = None) -> ClassificationReport:
    prop = "upper_modular"
    _require(basis)
    k_max = k_max or default_k_max(basis)
    if is_com(basis):
        return _report(prop, Verdict.YES, [Step("com-top", "V = COM is the top element")])
    if is_nil(basis) is not None and is_zero_reduced_in_com(basis):
        ok = holds(basis, X2Y_ZERO)
        return _report(prop, Verdict.YES if ok else Verdict.NO, [
            Step("zero-reduced-upper-modular",
                 f"V is 0-reduced in Com and x^2y = 0 {'holds' if ok else 'fails'}")])
    dec = decompose(basis, k_max)
    if dec.found and dec.M == "SL" and is_zero_reduced_in_com(dec.N):
        ok = holds(dec.N, X2Y_ZERO)
        steps = dec.steps + _join_note(dec) + [
            Step("zero-reduced-upper-modular",
                 f"N is 0-reduced in Com and x^2y = 0 {'holds' if ok else 'fails'} in N")]
        return _report(prop, Verdict.YES if ok else Verdict.NO, steps, dec.confidence, dec)
    atom = recognize_atom(basis)
    if atom is not None:
        return _report(prop, Verdict.YES, [Step("atom", f"V = {atom} is an atom of Com")])
    return _report(prop, Verdict.UNKNOWN, [
        Step("gap", "V is neither COM, nor (SL joined with) a 0-reduced in Com variety, "
                    "nor a recognized atom")], dec=dec if dec.found else None)


def classify_neutral_in_com(basis: Basis, k_max: int | None = None) -> ClassificationReport:
    prop = "neutral"
    _require(basis)
    k_max = k_max or default_k_max(basis)
    if is_com(basis):
        return _report(prop, Verdict.YES, [Step("neutral-classification", "V = COM")])
    dec = decompose(basis, k_max)
    if not dec.found:
        return _report(prop, Verdict.NO, dec.steps + [
            Step("neutral-classification", f"V is not of the form M ∨ N ({dec.reason})")], dec=dec)
    ok = holds(dec.N, X2Y_ZERO)
    steps = dec.steps + [Step("neutral-classification",
                              f"x^2y = 0 {'holds' if ok else 'fails'} in N")]
    if ok:
        return _report(prop, Verdict.YES, steps, dec.confidence, dec)
    return _report(prop, Verdict.NO, steps, EXACT, dec)


CLASSIFIERS = {
    "modular": classify_modular_in_com,
    "lower_modular": classify_lower_modular_in_com,
    "upper_modular": classify_upper_modular_in_com,
    "neutral": classify_neutral_in_com,
}


def classify(basis: Basis, prop: str, k_max: int | None = None) -> ClassificationReport:
    prop = PROPERTY_ALIASES.get(prop, prop)
    if prop not in CLASSIFIERS:
        raise PreconditionError(f"unknown property {prop!r}")
    return CLASSIFIERS[prop](basis, k_max)


# (premise, premise verdict, conclusion, forbidden conclusion verdict)
IMPLICATIONS = (
    ("neutral", "modular"),
    ("neutral", "lower_modular"),
    ("neutral", "upper_modular"),
    ("lower_modular", "modular"),
)


@dataclass
class AuditReport:
    verdicts: dict[str, ClassificationReport]
    violations: list[str]

    def matrix(self) -> dict[str, dict[str, str]]:
        """For each implication p ⇒ q: 'ok', 'violated' or 'vacuous'."""
        out: dict[str, dict[str, str]] = {}
        for p, q in IMPLICATIONS + (("lower_modular&upper_modular", "neutral"),):
            if "&" in p:
                premise = all(self.verdicts[x].verdict == Verdict.YES for x in p.split("&"))
            else:
                premise = self.verdicts[p].verdict == Verdict.YES
            if not premise:
                status = "vacuous"
            elif self.verdicts[q].verdict == Verdict.NO:
                status = "violated"
            else:
                status = "ok"
            out.setdefault(p, {})[q] = status
        return out

    def to_dict(self) -> dict:
        return {"verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
                "violations": self.violations, "implications": self.matrix()}


def consistency_audit(basis: Basis, k_max: int | None = None) -> AuditReport:
    verdicts = {p: CLASSIFIERS[p](basis, k_max) for p in PROPERTIES}
    report = AuditReport(verdicts, [])
    for p, row in report.matrix().items():
        for q, status in row.items():
            if status == "violated":
                report.violations.append(f"{p} = Yes but {q} = No")
    if verdicts["neutral"].verdict == Verdict.NO and all(
            verdicts[x].verdict == Verdict.YES for x in ("lower_modular", "upper_modular")):
        report.violations.append("lower_modular and upper_modular = Yes but neutral = No")
    return report


def join_with_sl_presentation(basis: Basis, k_max: int) -> Basis:
    """Identities on at most ``k_max`` letters valid in both V and SL.

    A bounded presentation of V ∨ SL: it includes the periodicity law of V and
    every pair of words identified by both congruences.
    """
    _require(basis)
    a, b = base_exponents(basis)
    sl = known.presentation(known.SL)
    ids: list[Identity] = [Equation(_power(a), _power(a + b))]
    for k in range(1, k_max + 1):
        base = PeriodicBase(a, b, k)
        V = build_on_base(basis, base)
        theta = V.partition() & build_on_base(sl, base).partition()
        for cls in Partition(theta.labels).classes():
            cls = [c for c in cls if c]
            for c in cls[1:]:
                ids.append(Equation(V.word_of(cls[0]).to_word(), V.word_of(c).to_word()))
    return Basis.commutative_with(*ids)
