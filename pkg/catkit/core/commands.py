from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from catkit.core.errors import InternalConstructionError, PreconditionError, SearchAborted, StructuralError
from catkit.core.fincat import FinCat, check_category, check_functor, check_naturality, find_isomorphism
from catkit.core.lift import (
    check_lift_product_compatibility,
    lift_em,
    lift_em_braided,
    lift_kleisli,
    lift_kleisli_braided,
    lifted_summary,
    uncorrected_tensor_defects,
)
from catkit.core.models import CheckResult, Violation
from catkit.core.monad import Monad, check_monad, monotone_maps, poset_endomap_monad
from catkit.core.monmonad import (
    MonoidalMonadTuple,
    check_forgetting,
    check_interchange_equivalence,
    iter_corrupted_results,
)
from catkit.core.monoidal import check_braiding, check_monoidal
from catkit.core.profiler import CheckProfiler
from catkit.core.resolutions import (
    brute_force_algebras,
    check_em,
    check_kleisli,
    em,
    kleisli,
    kleisli_hom_counts,
    kleisli_product_comparison,
)
from catkit.core.stats_tracker import StatsTracker
from catkit.core.store import Workspace
from catkit.core.sweep import run_checks
from catkit.io.fileformat import save
from catkit.io.report import RunReport, make_report

logger = logging.getLogger(__name__)

COMMANDS = (
    "validate",
    "kleisli",
    "em",
    "check-interchange",
    "lift-kleisli",
    "lift-em",
    "lift-braided",
    "product-check",
    "corpus",
    "sweep",
)

# Chains longer than this are skipped by the monad-law suite.
MAX_LAW_SUITE_OBJECTS = 5


@dataclass(frozen=True)
class Flags:
    report: str = "text"
    oplax: bool = False
    max_objects: int = 8
    output: Optional[str] = None
    workers: int = 1
    tuples: Tuple[str, ...] = ()
    monads: Tuple[str, ...] = ()
    braiding: Optional[str] = None
    min_corruptions: int = 100
    max_corruptions: Optional[int] = None
    inputs: Tuple[str, ...] = ()
    progress: bool = False
    profile: Optional[str] = None
    expect_invalid: FrozenSet[Tuple[str, str]] = field(default_factory=frozenset)


Check = Tuple[str, Callable[[], CheckResult]]


class _Outputs:
    """Constructions produced by checks, kept by check name so saving is order-independent."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._items: Dict[str, list] = {}

    def put(self, key: str, entities: list) -> None:
        with self._lock:
            self._items[key] = entities

    def ordered(self) -> list:
        with self._lock:
            return [e for key in sorted(self._items) for e in self._items[key]]


def _guarded(name: str, fn: Callable[[], CheckResult]) -> Check:
    def run() -> CheckResult:
        try:
            return fn()
        except (PreconditionError, InternalConstructionError) as e:
            violations = tuple(e.report) or (Violation("precondition", name, str(e), "<accepted>"),)
            return CheckResult(name=name, violations=violations, notes=(("error", type(e).__name__),))

    return name, run


def _result(name: str, report, notes: Sequence[Tuple[str, str]] = ()) -> CheckResult:
    return CheckResult(name=name, violations=tuple(report), notes=tuple(notes))


def _plain(name: str, make: Callable[[], list]) -> Check:
    return name, lambda: _result(name, make())


def _echo(command: str, flags: Flags) -> List[str]:
    args: List[str] = []
    for t in flags.tuples:
        args += ["--tuple", t]
    for m in flags.monads:
        args += ["--monad", m]
    if flags.braiding:
        args += ["--braiding", flags.braiding]
    if flags.oplax:
        args.append("--oplax")
    if flags.output:
        args += ["-o", flags.output]
    return args + list(flags.inputs)


def _tuple(t: MonoidalMonadTuple, flags: Flags) -> MonoidalMonadTuple:
    return replace(t, kind="oplax") if flags.oplax and t.kind != "oplax" else t


def _selected_tuples(ws: Workspace, flags: Flags) -> List[MonoidalMonadTuple]:
    if flags.tuples:
        return [_tuple(ws.tuples.get(n), flags) for n in flags.tuples]
    return [_tuple(t, flags) for _, t in ws.tuples.items()]


def _selected_monads(ws: Workspace, flags: Flags) -> List[Monad]:
    if flags.monads:
        return [ws.monads.get(n) for n in flags.monads]
    return [m for _, m in ws.monads.items()]


def _iso_note(c: FinCat, d: FinCat, flags: Flags) -> Tuple[str, str]:
    try:
        found = find_isomorphism(c, d, max_objects=flags.max_objects)
    except SearchAborted:
        return ("isomorphic-to-base", "skipped")
    return ("isomorphic-to-base", "yes" if found is not None else "no")


# ---------------------------------------------------------------------------
# Per-command check lists
# ---------------------------------------------------------------------------


def _validate_checks(ws: Workspace, flags: Flags) -> List[Check]:
    checks: List[Check] = []
    for name, c in ws.categories.items():
        checks.append(_plain(f"category:{name}", lambda c=c: check_category(c)))
    for name, f in ws.functors.items():
        checks.append(_plain(f"functor:{name}", lambda f=f: check_functor(f)))
    for name, t in ws.nattrans.items():
        checks.append(_plain(f"nattrans:{name}", lambda t=t: check_naturality(t)))
    for name, m in ws.monads.items():
        checks.append(_plain(f"monad:{name}", lambda m=m: check_monad(m)))
    for name, ms in ws.monoidal.items():
        checks.append(_plain(f"monoidal:{name}", lambda ms=ms: check_monoidal(ms)))
    for t in _selected_tuples(ws, flags):
        checks.append(_interchange_check(t))
    for name, b in ws.braidings.items():
        checks.append(_plain(f"braiding:{name}", lambda b=b: check_braiding(b)))
    return checks


def _interchange_check(t: MonoidalMonadTuple) -> Check:
    name = f"interchange:{t.name}"

    def fn() -> CheckResult:
        res = check_interchange_equivalence(t)
        violations = list(res.in_monads) + list(res.on_monoidal)
        if not res.agree:
            violations.append(
                Violation(
                    "agreement",
                    t.name,
                    "valid" if not res.in_monads else "invalid",
                    "valid" if not res.on_monoidal else "invalid",
                )
            )
        forgotten = check_forgetting(t)
        if res.valid and forgotten:
            violations.extend(forgotten)
        notes = (
            ("kind", t.kind),
            ("agree", str(res.agree).lower()),
            ("monoidal-in-monads", "valid" if not res.in_monads else "invalid"),
            ("monad-on-monoidal", "valid" if not res.on_monoidal else "invalid"),
            ("forgetting", "valid" if not forgotten else "invalid"),
        )
        return _result(name, violations, notes)

    return name, fn


def _kleisli_checks(ws: Workspace, flags: Flags, out: _Outputs) -> List[Check]:
    checks: List[Check] = []
    for m in _selected_monads(ws, flags):
        name = f"kleisli:{m.name}"

        def fn(m: Monad = m, name: str = name) -> CheckResult:
            res = kleisli(m)
            report = list(check_kleisli(res))
            counts = kleisli_hom_counts(m)
            for (a, b), n in sorted(counts.items()):
                got = len(res.kleisli_cat.hom(a, b))
                if got != n:
                    report.append(Violation("hom-count-oracle", f"({a},{b})", str(got), str(n)))
            kc = res.kleisli_cat
            out.put(name, [kc, res.free, res.forget, res.kappa, res.unit, res.counit])
            notes = [
                ("objects", str(len(kc.objects))),
                ("morphisms", str(len(kc.morphisms))),
                _iso_note(kc, m.base, flags),
            ]
            return _result(name, report, notes)

        checks.append(_guarded(name, fn))
    return checks


def _em_checks(ws: Workspace, flags: Flags, out: _Outputs) -> List[Check]:
    checks: List[Check] = []
    for m in _selected_monads(ws, flags):
        name = f"em:{m.name}"

        def fn(m: Monad = m, name: str = name) -> CheckResult:
            res = em(m)
            ec = res.em_cat
            out.put(name, [ec, res.free, res.forget, res.unit, res.counit])
            carriers = ",".join(sorted(a for a, _ in res.algebras.values()))
            notes = [
                ("algebras", str(len(res.algebras))),
                ("carriers", carriers),
                ("brute-force", str(len(brute_force_algebras(m)))),
                _iso_note(ec, m.base, flags),
            ]
            return _result(name, check_em(res), notes)

        checks.append(_guarded(name, fn))
    return checks


def _lift_kleisli_check(t: MonoidalMonadTuple, out: Optional[_Outputs]) -> Check:
    name = f"lift-kleisli:{t.name}"

    def fn() -> CheckResult:
        lk = lift_kleisli(t)
        if out is not None:
            out.put(name, [lk.lifted])
        kc = lk.resolution.kleisli_cat
        ident = all(kc.identity(lk.lifted.ob(a, b)) == v for (a, b), v in lk.free_as_monoidal.tensorator.items())
        notes = list(lifted_summary(lk.lifted)) + [("free-tensorator-identities", str(ident).lower())]
        return _result(name, check_monoidal(lk.lifted), notes)

    return _guarded(name, fn)


def _lift_em_check(t: MonoidalMonadTuple, out: Optional[_Outputs]) -> Check:
    name = f"lift-em:{t.name}"

    def fn() -> CheckResult:
        le = lift_em(t)
        if out is not None:
            out.put(name, [le.lifted])
        notes = list(lifted_summary(le.lifted))
        notes.append(("uncorrected-tensor-defects", str(len(uncorrected_tensor_defects(t)))))
        return _result(name, check_monoidal(le.lifted), notes)

    return _guarded(name, fn)


def _lift_braided_check(t: MonoidalMonadTuple, b, out: Optional[_Outputs]) -> Check:
    name = f"lift-braided:{t.name}:{b.name}"

    def fn() -> CheckResult:
        lifted = lift_kleisli_braided(t, b) if t.kind == "lax" else lift_em_braided(t, b)
        if out is not None:
            out.put(name, [lifted.braiding])
        notes = [("braiding", lifted.braiding.name), ("symmetric", str(lifted.braiding.symmetric).lower())]
        return _result(name, check_braiding(lifted.braiding), notes)

    return _guarded(name, fn)


def _product_checks(ws: Workspace, flags: Flags) -> List[Check]:
    checks: List[Check] = []
    if len(flags.tuples) == 2:
        t1, t2 = (_tuple(ws.tuples.get(n), flags) for n in flags.tuples)
        name = f"product-lift:{t1.name}x{t2.name}"
        checks.append(_guarded(name, lambda: _result(name, check_lift_product_compatibility(t1, t2))))
    if len(flags.monads) == 2:
        m1, m2 = (ws.monads.get(n) for n in flags.monads)
        checks.append(_comparison_check(m1, m2))
    if not checks:
        raise StructuralError("product-check needs two --tuple or two --monad names")
    return checks


def _comparison_check(m1: Monad, m2: Monad) -> Check:
    name = f"product-comparison:{m1.name}x{m2.name}"

    def fn() -> CheckResult:
        pc = kleisli_product_comparison(m1, m2)
        kp = pc.kleisli_product.kleisli_cat
        return _result(name, [], [("objects", str(len(kp.objects))), ("morphisms", str(len(kp.morphisms)))])

    return _guarded(name, fn)


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------


def _is_thin(c: FinCat) -> bool:
    return all(len(c.hom(a, b)) <= 1 for a in c.objects for b in c.objects)


def _law_suite_check(c: FinCat) -> Check:
    name = f"monad-laws:{c.name}"

    def fn() -> CheckResult:
        maps = monotone_maps(c)
        report: List[Violation] = []
        accepted = 0
        for mapping in maps:
            closure = all(c.hom(a, mapping[a]) for a in c.objects) and all(
                mapping[mapping[a]] == mapping[a] for a in c.objects
            )
            ok = not check_monad(poset_endomap_monad(c, mapping))
            accepted += ok
            if ok != closure:
                label = "".join(mapping[a] for a in c.objects)
                got, want = ("accepted" if ok else "rejected"), ("closure" if closure else "not a closure")
                report.append(Violation("closure-agreement", label, got, want))
        return _result(name, report, [("monotone-maps", str(len(maps))), ("accepted", str(accepted))])

    return name, fn


def _fixed_point_check(m: Monad) -> Check:
    name = f"em-fixed-points:{m.name}"

    def fn() -> CheckResult:
        c = m.base
        fixed = sorted(a for a in c.objects if m.endo.ob(a) == a)
        carriers = sorted(a for a, _ in em(m).algebras.values())
        if fixed == carriers:
            return _result(name, [])
        return _result(name, [Violation("algebras-are-fixed-points", m.name, ",".join(carriers), ",".join(fixed))])

    return _guarded(name, fn)


def _corruption_check(t: MonoidalMonadTuple, flags: Flags) -> Check:
    name = f"interchange-corruptions:{t.name}"

    def fn() -> CheckResult:
        total = invalid = 0
        report: List[Violation] = []
        for res in iter_corrupted_results(t, min_count=flags.min_corruptions, max_count=flags.max_corruptions):
            total += 1
            if not res.valid:
                invalid += 1
            if not res.agree:
                report.append(Violation("agreement", res.name, str(len(res.in_monads)), str(len(res.on_monoidal))))
        notes = [("corrupted", str(total)), ("invalid", str(invalid)), ("agreement", f"{total - len(report)}/{total}")]
        return _result(name, report, notes)

    return name, fn


def _expectation(name: str, check: Check, expect_valid: bool) -> Check:
    """Wraps a check whose input is known to be invalid: it passes iff the inner check fails."""
    if expect_valid:
        return check
    inner = check[1]

    def fn() -> CheckResult:
        res = inner()
        if res.passed:
            return _result(name, [Violation("expected-invalid", name, "passed", "violations")])
        return _result(name, [], [("expected", "invalid"), ("violations", str(len(res.violations)))])

    return name, fn


def _sweep_checks(ws: Workspace, flags: Flags) -> List[Check]:
    checks: List[Check] = []
    for _, c in ws.categories.items():
        if _is_thin(c) and len(c.objects) <= MAX_LAW_SUITE_OBJECTS:
            checks.append(_law_suite_check(c))

    monads = [m for _, m in ws.monads.items()]
    for m in monads:
        expect = ("monads", m.name) not in flags.expect_invalid
        checks.append(_expectation(f"monad:{m.name}", _plain(f"monad:{m.name}", lambda m=m: check_monad(m)), expect))
    checks.extend(_kleisli_checks(ws, replace(flags, monads=()), _Outputs()))
    checks.extend(_em_checks(ws, replace(flags, monads=()), _Outputs()))
    for m in monads:
        if _is_thin(m.base):
            checks.append(_fixed_point_check(m))
    small = [m for m in monads if len(m.base.objects) <= 4]
    for i, m1 in enumerate(small):
        for m2 in small[i:]:
            checks.append(_comparison_check(m1, m2))

    tuples = [t for _, t in ws.tuples.items()]
    for t in tuples:
        expect = ("tuples", t.name) not in flags.expect_invalid
        checks.append(_expectation(f"interchange:{t.name}", _interchange_check(t), expect))
        checks.append(_corruption_check(t, flags))
        if expect:
            checks.append(_lift_kleisli_check(t, None) if t.kind == "lax" else _lift_em_check(t, None))

    for _, b in ws.braidings.items():
        expect = ("braidings", b.name) not in flags.expect_invalid
        checks.append(_expectation(f"braiding:{b.name}", _plain(f"braiding:{b.name}", lambda b=b: check_braiding(b)), expect))
        if not expect:
            continue
        for t in tuples:
            if ("tuples", t.name) not in flags.expect_invalid and t.monoidal == b.monoidal:
                checks.append(_lift_braided_check(t, b, None))
    return checks


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def _checks_for(command: str, ws: Workspace, flags: Flags, out: _Outputs) -> List[Check]:
    if command == "validate":
        return _validate_checks(ws, flags)
    if command == "kleisli":
        return _kleisli_checks(ws, flags, out)
    if command == "em":
        return _em_checks(ws, flags, out)
    if command == "check-interchange":
        return [_interchange_check(t) for t in _selected_tuples(ws, flags)]
    if command == "lift-kleisli":
        return [_lift_kleisli_check(t, out) for t in _selected_tuples(ws, flags)]
    if command == "lift-em":
        return [_lift_em_check(t, out) for t in _selected_tuples(ws, flags)]
    if command == "lift-braided":
        if not flags.braiding:
            raise StructuralError("lift-braided needs --braiding")
        b = ws.braidings.get(flags.braiding)
        return [_lift_braided_check(t, b, out) for t in _selected_tuples(ws, flags)]
    if command == "product-check":
        return _product_checks(ws, flags)
    if command == "sweep":
        return _sweep_checks(ws, flags)
    if command == "corpus":
        return []
    raise StructuralError(f"unknown command: {command} (choose from {', '.join(COMMANDS)})")


def run(command: str, workspace: Workspace, flags: Optional[Flags] = None) -> RunReport:
    """
    Runs one command against a loaded workspace.

    The report's check order follows the workspace's name order, never completion order,
    so output is identical for every worker count. Constructions go to `flags.output`.
    """
    flags = flags or Flags()
    out = _Outputs()
    checks = _checks_for(command, workspace, flags, out)
    profiler = CheckProfiler() if flags.profile else None
    stats = StatsTracker()
    results = run_checks(
        checks,
        workers=flags.workers,
        progress=flags.progress,
        stats=stats,
        profiler=profiler,
        desc=command,
    )
    if profiler is not None and flags.profile:
        profiler.write(flags.profile)

    facts: List[Tuple[str, str]] = []
    if command == "corpus":
        facts = [(k, str(v)) for k, v in workspace.counts().items() if v]
        if flags.output:
            save(workspace, flags.output)
    elif flags.output:
        produced = out.ordered()
        if produced:
            save(produced, flags.output)
        else:
            logger.warning("%s produced nothing to write to %s", command, flags.output)
    return make_report(command, _echo(command, flags), results, facts)
