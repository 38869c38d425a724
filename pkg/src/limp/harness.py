"""Differential, termination and coherence suites, and corpus execution.

Every report is built in a fixed enumeration order and serializes with
sorted keys, so two runs with the same parameters are byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .checker import TypeCheckError, elaborate_program, infer
from .disjoint import alg_disjoint
from .oracle import (
    DeclarativeTable,
    Derivable,
    SearchBudget,
    decl_subtype,
    enumerate_types,
)
from .parser import ParseError, parse_program
from .subtyping import Derivation, InternalDivergence, TraceStep, derive
from .syntax import (
    BOOL,
    INT,
    TOP,
    And,
    Anno,
    App,
    Arrow,
    BoolTy,
    Coercion,
    IntTy,
    Lam,
    LitBool,
    LitInt,
    Merge,
    SourceExpr,
    SourceType,
    TApp,
    TArrow,
    TBool,
    TFst,
    TInt,
    TLam,
    TLitBool,
    TLitInt,
    TPair,
    TProd,
    TSnd,
    TUnit,
    TUnitVal,
    TVar,
    TargetExpr,
    TargetType,
    TopTy,
    TopVal,
    TypingContext,
    Var,
    erase_type,
    pretty_print,
    type_size,
)
from .target import (
    RuntimeFault,
    TargetTypeError,
    TargetValue,
    apply_value,
    canonical_term,
    canonical_value,
    eval_term,
    normalize,
    observe,
    show_path,
    show_value,
    target_typecheck,
    value_has_type,
)

__all__ = [
    "AgreementReport",
    "CoherenceReport",
    "TerminationReport",
    "CorpusReport",
    "canonical_value",
    "distinct_value",
    "compare_subtyping",
    "termination_scan",
    "check_trace",
    "coherence_scan",
    "run_corpus",
    "random_type",
    "random_pairs",
    "well_formed",
    "generate_programs",
    "generate_target_terms",
    "to_json",
]


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Algorithm vs declarative oracle


@dataclass
class AgreementReport:
    max_size: int
    total_pairs: int = 0
    both_yes: int = 0
    both_no: int = 0
    oracle_unknown: int = 0
    disagreements: int = 0
    escalations: int = 0
    disagreement_list: List[Tuple[str, str, str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.disagreements == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["disagreement_list"] = [list(x) for x in self.disagreement_list]
        d["passed"] = self.passed
        return d

    def summary(self) -> str:
        return (
            f"pairs={self.total_pairs} both_yes={self.both_yes} both_no={self.both_no} "
            f"oracle_unknown={self.oracle_unknown} escalations={self.escalations} "
            f"disagreements={self.disagreements}"
        )


def _shared_table(types: Sequence[SourceType], max_size: int, budget: SearchBudget) -> DeclarativeTable:
    universe = enumerate_types(max(max_size, budget.universe_size))
    return DeclarativeTable(universe, budget.fuel)


def compare_subtyping(
    max_size: int,
    budget: SearchBudget = SearchBudget(),
    escalations: int = 2,
    derivations: Optional[List[Derivation]] = None,
) -> AgreementReport:
    """Run the algorithm and the oracle on every ordered pair of types of size
    <= max_size over {Int, Bool}.

    An algorithm success the oracle cannot reproduce is retried with a larger
    budget up to ``escalations`` times before it counts as a disagreement. If
    ``derivations`` is given, every algorithm run is appended to it.
    """
    if max_size < 1:
        raise ValueError("max_size must be at least 1")
    types = enumerate_types(max_size)
    budgets = [budget]
    for _ in range(escalations):
        budgets.append(budgets[-1].escalate())
    tables: Dict[int, DeclarativeTable] = {}

    def table(level: int) -> DeclarativeTable:
        if level not in tables:
            tables[level] = _shared_table(types, max_size, budgets[level])
        return tables[level]

    report = AgreementReport(max_size)
    for a in types:
        for b in types:
            report.total_pairs += 1
            d = derive(a, b)
            if derivations is not None:
                derivations.append(d)
            base = table(0)
            oracle_yes = base.derivable(a, b, budgets[0].fuel)
            if d.ok and oracle_yes:
                report.both_yes += 1
            elif not d.ok and not oracle_yes:
                if base.saturated:
                    report.both_no += 1
                else:
                    report.oracle_unknown += 1
            elif not d.ok:
                report.disagreements += 1
                report.disagreement_list.append((pretty_print(a), pretty_print(b), "no", "derivable"))
            else:
                for level in range(1, len(budgets)):
                    report.escalations += 1
                    if table(level).derivable(a, b, budgets[level].fuel):
                        report.both_yes += 1
                        break
                else:
                    report.disagreements += 1
                    report.disagreement_list.append((pretty_print(a), pretty_print(b), "yes", "not derivable"))
    return report


# ---------------------------------------------------------------------------
# Termination instrumentation


@dataclass
class TerminationReport:
    runs: int = 0
    steps_checked: int = 0
    calls: int = 0
    max_depth: int = 0
    depth_bound_hits: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and self.depth_bound_hits == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def summary(self) -> str:
        return (
            f"runs={self.runs} calls={self.calls} steps={self.steps_checked} "
            f"max_depth={self.max_depth} bound_hits={self.depth_bound_hits} violations={len(self.violations)}"
        )


def check_trace(trace: Sequence[TraceStep]) -> List[str]:
    """Check that each step's measure is below its parent's.

    The trace is a pre-order walk of the derivation tree; the parent of a
    step at depth d is the closest earlier step at depth d - 1.
    """
    problems = []
    open_steps: Dict[int, TraceStep] = {}
    for i, step in enumerate(trace):
        depth = step.state.depth
        if depth > 0:
            parent = open_steps.get(depth - 1)
            if parent is None:
                problems.append(f"step {i} ({step.rule}) has no parent")
            elif not step.measure < parent.measure:
                problems.append(f"step {i} ({step.rule}): {parent.measure} -> {step.measure}")
        open_steps[depth] = step
        for deeper in [k for k in open_steps if k > depth]:
            del open_steps[deeper]
    return problems


def termination_scan(pairs: Iterable[Tuple[SourceType, SourceType]]) -> TerminationReport:
    report = TerminationReport()
    for a, b in pairs:
        report.runs += 1
        try:
            d = derive(a, b)
        except InternalDivergence as err:
            if "safety bound" in str(err):
                report.depth_bound_hits += 1
            report.violations.append(f"{pretty_print(a)} <: {pretty_print(b)}: {err}")
            continue
        _absorb(report, d)
    return report


def _absorb(report: TerminationReport, d: Derivation) -> None:
    report.calls += d.calls
    report.max_depth = max(report.max_depth, d.max_depth)
    report.steps_checked += len(d.trace)
    for problem in check_trace(d.trace):
        report.violations.append(f"{pretty_print(d.source)} <: {pretty_print(d.target)}: {problem}")


def termination_from(derivations: Iterable[Derivation]) -> TerminationReport:
    report = TerminationReport()
    for d in derivations:
        report.runs += 1
        _absorb(report, d)
    return report


def random_type(rng: random.Random, size: int, bases: Sequence[SourceType] = (INT, BOOL)) -> SourceType:
    """A random type of exactly ``size`` constructors (``size`` odd) or of
    ``size - 1`` when ``size`` is even."""
    if size <= 2:
        return rng.choice(list(bases) + [TOP])
    left = rng.randrange(1, size - 1)
    ctor = rng.choice((Arrow, And))
    return ctor(random_type(rng, left, bases), random_type(rng, size - 1 - left, bases))


def random_pairs(count: int, max_size: int, seed: int = 0) -> List[Tuple[SourceType, SourceType]]:
    rng = random.Random(seed)
    return [
        (random_type(rng, rng.randint(1, max_size)), random_type(rng, rng.randint(1, max_size)))
        for _ in range(count)
    ]


# ---------------------------------------------------------------------------
# Coherence


def distinct_value(a: SourceType, counter: Optional[List[int]] = None) -> TargetValue:
    """A probe whose leaves differ from one another: Int leaves are 1, 2, 3,
    ...; Bool leaves alternate true/false; arrows return the probe of their
    codomain. Only meaningful for diagnostics, see ``coherence_scan``."""
    return eval_term(_distinct_term(a, counter if counter is not None else [0]))


def _distinct_term(a: SourceType, counter: List[int]) -> TargetExpr:
    if isinstance(a, IntTy):
        counter[0] += 1
        return TLitInt(counter[0])
    if isinstance(a, BoolTy):
        counter[0] += 1
        return TLitBool(counter[0] % 2 == 1)
    if isinstance(a, TopTy):
        return TUnitVal()
    if isinstance(a, And):
        return TPair(_distinct_term(a.left, counter), _distinct_term(a.right, counter))
    if isinstance(a, Arrow):
        return TLam("_", erase_type(a.domain), _distinct_term(a.codomain, counter))
    raise TypeError(f"not a source type: {a!r}")


def well_formed(a: SourceType) -> bool:
    """Every intersection inside ``a`` joins disjoint types, i.e. ``a`` can
    be the type of a merge built by a well-typed program."""
    if isinstance(a, And):
        return well_formed(a.left) and well_formed(a.right) and bool(alg_disjoint(a.left, a.right))
    if isinstance(a, Arrow):
        return well_formed(a.domain) and well_formed(a.codomain)
    return True


@dataclass
class Mismatch:
    source: str
    target: str
    first: str
    second: str
    path: str
    values: Tuple[str, str]


@dataclass
class CoherenceReport:
    probe: str
    pairs_checked: int = 0
    pairs_with_multiple_coercions: int = 0
    coercions_compared: int = 0
    observations_compared: int = 0
    mismatches: List[Mismatch] = field(default_factory=list)
    label: str = "observational coherence up to canonical probes"

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mismatches"] = [asdict(m) for m in self.mismatches]
        d["passed"] = self.passed
        return d

    def summary(self) -> str:
        return (
            f"[{self.label}] pairs={self.pairs_checked} multi={self.pairs_with_multiple_coercions} "
            f"coercions={self.coercions_compared} observations={self.observations_compared} "
            f"mismatches={len(self.mismatches)}"
        )


def coercions_for(a: SourceType, b: SourceType, budget: SearchBudget) -> List[Coercion]:
    """Declarative samples plus the algorithm's coercion, deduplicated."""
    found: List[Coercion] = []
    seen = set()
    verdict = decl_subtype(a, b, budget)
    candidates = list(verdict.coercions) if isinstance(verdict, Derivable) else []
    d = derive(a, b)
    if d.ok:
        candidates.append(Coercion(normalize(d.coercion.term), a, b))
    for c in candidates:
        if c.term not in seen:
            seen.add(c.term)
            found.append(c)
    return found


def coherence_scan(
    max_size: int,
    budget: SearchBudget = SearchBudget(),
    probe: str = "canonical",
    types: Optional[Sequence[SourceType]] = None,
) -> CoherenceReport:
    """Apply every sampled coercion for ``a <: b`` to one probe value of ``a``
    and compare all ground observations at ``b``.

    ``probe="canonical"`` uses ``canonical_value``; ``probe="distinct"`` uses
    ``distinct_value`` and is only sound on well-formed source types, since
    e.g. the two projections out of ``Int & Int`` legitimately differ on
    ``(1, 2)``, a value no well-typed program produces.
    """
    types = list(types) if types is not None else enumerate_types(max_size)
    label = "observational coherence up to canonical probes" if probe == "canonical" else \
        "observational coherence up to distinct probes (diagnostic)"
    report = CoherenceReport(probe, label=label)
    for a in types:
        value = canonical_value(a) if probe == "canonical" else distinct_value(a)
        for b in types:
            if not derive(a, b).ok:
                continue
            report.pairs_checked += 1
            coercions = coercions_for(a, b, budget)
            if len(coercions) < 2:
                continue
            report.pairs_with_multiple_coercions += 1
            results = []
            for c in coercions:
                out = apply_value(eval_term(c.term), value)
                results.append(observe(out, b))
            report.coercions_compared += len(coercions)
            reference = results[0]
            for c, obs in zip(coercions[1:], results[1:]):
                for (path, v1), (_, v2) in zip(reference, obs):
                    report.observations_compared += 1
                    if v1 != v2:
                        report.mismatches.append(Mismatch(
                            pretty_print(a), pretty_print(b),
                            pretty_print(coercions[0].term), pretty_print(c.term),
                            show_path(path), (show_value(v1), show_value(v2)),
                        ))
    return report


# ---------------------------------------------------------------------------
# Corpus


@dataclass
class FileResult:
    path: str
    status: str  # "ok", "expected-error", "fail"
    type: Optional[str] = None
    value: Optional[str] = None
    error: Optional[str] = None


@dataclass
class CorpusReport:
    results: List[FileResult] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(r.status == "fail" for r in self.results)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {"results": [asdict(r) for r in self.results], "failures": self.failures, "passed": self.passed}

    def summary(self) -> str:
        return f"files={len(self.results)} failures={self.failures}"


@dataclass
class RunOutcome:
    type: SourceType
    term: TargetExpr
    value: TargetValue


def run_source(text: str) -> RunOutcome:
    """Parse, elaborate, target-check and evaluate a program.

    Raises ParseError / TypeCheckError for user errors; TargetTypeError and
    RuntimeFault signal implementation bugs.
    """
    program = parse_program(text)
    ty, term = elaborate_program(program)
    got = target_typecheck({}, term)
    if got != erase_type(ty):
        raise TargetTypeError(f"elaboration has type {pretty_print(got)}, expected {pretty_print(erase_type(ty))}")
    value = eval_term(term)
    if not value_has_type(value, got):
        raise RuntimeFault(f"value {show_value(value)} does not match {pretty_print(got)}")
    return RunOutcome(ty, term, value)


def run_file(path: Path) -> FileResult:
    text = path.read_text(encoding="utf-8")
    name = path.name
    try:
        program = parse_program(text)
    except ParseError as err:
        return FileResult(name, "fail", error=f"ParseError: {err}")
    try:
        outcome = run_source(text)
    except (ParseError, TypeCheckError) as err:
        kind = type(err).__name__
        if program.expected_error and program.expected_error == kind:
            return FileResult(name, "expected-error", error=f"{kind}: {err}")
        return FileResult(name, "fail", error=f"{kind}: {err}")
    except (TargetTypeError, RuntimeFault) as err:
        return FileResult(name, "fail", error=f"{type(err).__name__}: {err}")
    ty, value = pretty_print(outcome.type), show_value(outcome.value)
    if program.expected_error:
        return FileResult(name, "fail", ty, value, f"expected {program.expected_error}, program ran")
    if program.expected_value is not None and program.expected_value != value:
        return FileResult(name, "fail", ty, value, f"expected result {program.expected_value}")
    return FileResult(name, "ok", ty, value)


def run_corpus(directory) -> CorpusReport:
    files = sorted(Path(directory).glob("*.lim"))
    if not files:
        raise FileNotFoundError(f"no .lim files in {directory}")
    return CorpusReport([run_file(p) for p in files])


# ---------------------------------------------------------------------------
# Generators for preservation tests


def _gen_check(rng: random.Random, ty: SourceType, ctx: List[Tuple[str, SourceType]], fuel: int, names) -> SourceExpr:
    options = []
    usable = [n for n, t in ctx if derive(t, ty).ok]
    if usable:
        options.append("var")
    if isinstance(ty, Arrow):
        options += ["lam", "lam"]
    if isinstance(ty, And) and alg_disjoint(ty.left, ty.right):
        options += ["merge", "merge"]
    if isinstance(ty, (IntTy, BoolTy, TopTy)):
        options.append("lit")
    if fuel > 0:
        options += ["sub", "app"]
    if not options:
        options = ["sub"]
    choice = rng.choice(options)
    if choice == "var":
        return Var(rng.choice(usable))
    if choice == "lam":
        name = next(names)
        return Lam(name, _gen_check(rng, ty.codomain, ctx + [(name, ty.domain)], fuel - 1, names))
    if choice == "merge":
        left = _gen_check(rng, ty.left, ctx, fuel - 1, names)
        right = _gen_check(rng, ty.right, ctx, fuel - 1, names)
        return Merge(Anno(left, ty.left), Anno(right, ty.right))
    if choice == "lit":
        if isinstance(ty, IntTy):
            return LitInt(rng.randint(0, 9))
        if isinstance(ty, BoolTy):
            return LitBool(rng.random() < 0.5)
        return TopVal()
    if choice == "app":
        arg_ty = random_type(rng, rng.choice((1, 1, 3)))
        fun = _gen_check(rng, Arrow(arg_ty, ty), ctx, fuel - 1, names)
        return App(Anno(fun, Arrow(arg_ty, ty)), _gen_check(rng, arg_ty, ctx, fuel - 1, names))
    # subsumption from a random subtype
    for _ in range(20):
        cand = random_type(rng, rng.choice((1, 3, 3, 5)))
        if cand != ty and well_formed(cand) and derive(cand, ty).ok:
            return Anno(_gen_check(rng, cand, ctx, fuel - 1, names), cand)
    if isinstance(ty, IntTy):
        return LitInt(0)
    if isinstance(ty, BoolTy):
        return LitBool(True)
    if isinstance(ty, Arrow):
        name = next(names)
        return Lam(name, _gen_check(rng, ty.codomain, ctx + [(name, ty.domain)], fuel - 1, names))
    if isinstance(ty, And):
        return Merge(Anno(_gen_check(rng, ty.left, ctx, 0, names), ty.left),
                     Anno(_gen_check(rng, ty.right, ctx, 0, names), ty.right))
    return TopVal()


def generate_programs(count: int, seed: int = 0, max_type_size: int = 5) -> List[SourceExpr]:
    """Random well-typed source programs (annotated at the root). Candidates
    that the checker rejects (e.g. a merge whose parts are not disjoint) are
    discarded."""
    rng = random.Random(seed)
    out: List[SourceExpr] = []
    attempts = 0
    while len(out) < count and attempts < count * 50:
        attempts += 1
        ty = random_type(rng, rng.choice(range(1, max_type_size + 1, 2)))
        if not well_formed(ty):
            continue
        names = (f"v{i}" for i in range(10**6))
        e = Anno(_gen_check(rng, ty, [], 3, names), ty)
        try:
            infer(TypingContext(), e)
        except TypeCheckError:
            continue
        out.append(e)
    return out


def _target_type(rng: random.Random, size: int) -> TargetType:
    if size <= 2:
        return rng.choice((TInt(), TBool(), TUnit()))
    left = rng.randrange(1, size - 1)
    ctor = rng.choice((TArrow, TProd))
    return ctor(_target_type(rng, left), _target_type(rng, size - 1 - left))


def _gen_target(rng: random.Random, ty: TargetType, ctx: List[Tuple[str, TargetType]], fuel: int, names) -> TargetExpr:
    usable = [n for n, t in ctx if t == ty]
    if usable and rng.random() < 0.4:
        return TVar(rng.choice(usable))
    if fuel > 0 and rng.random() < 0.3:
        kind = rng.choice(("app", "fst", "snd"))
        other = _target_type(rng, rng.choice((1, 1, 3)))
        if kind == "app":
            fun = _gen_target(rng, TArrow(other, ty), ctx, fuel - 1, names)
            return TApp(fun, _gen_target(rng, other, ctx, fuel - 1, names))
        pair_ty = TProd(ty, other) if kind == "fst" else TProd(other, ty)
        inner = _gen_target(rng, pair_ty, ctx, fuel - 1, names)
        return TFst(inner) if kind == "fst" else TSnd(inner)
    if isinstance(ty, TInt):
        return TLitInt(rng.randint(0, 9))
    if isinstance(ty, TBool):
        return TLitBool(rng.random() < 0.5)
    if isinstance(ty, TUnit):
        return TUnitVal()
    if isinstance(ty, TProd):
        return TPair(_gen_target(rng, ty.left, ctx, fuel - 1, names), _gen_target(rng, ty.right, ctx, fuel - 1, names))
    name = next(names)
    return TLam(name, ty.domain, _gen_target(rng, ty.codomain, ctx + [(name, ty.domain)], fuel - 1, names))


def target_term_size(t: TargetExpr) -> int:
    if isinstance(t, TLam):
        return 1 + target_term_size(t.body)
    if isinstance(t, TApp):
        return 1 + target_term_size(t.fun) + target_term_size(t.arg)
    if isinstance(t, TPair):
        return 1 + target_term_size(t.left) + target_term_size(t.right)
    if isinstance(t, (TFst, TSnd)):
        return 1 + target_term_size(t.pair)
    return 1


def generate_target_terms(count: int, seed: int = 0, max_size: int = 20) -> List[Tuple[TargetExpr, TargetType]]:
    """Random closed target terms with their intended types, size <= max_size."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ty = _target_type(rng, rng.choice((1, 3, 5)))
        names = (f"y{i}" for i in range(10**6))
        t = _gen_target(rng, ty, [], 4, names)
        if target_term_size(t) <= max_size:
            out.append((t, ty))
    return out
