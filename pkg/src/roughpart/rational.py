"""Rational approximations: definability filtered through substantiality.

A rational lower approximation keeps only as much of the lower
approximation as the substantial parthood can vouch for; a rational upper
approximation looks for an operator image that already contains the set,
stays inside its plain upper approximation, and is substantially entered
by every nonempty definite subset it contains. Definite here always means
a nonempty fixed point of the lower operator; the empty set is excluded
from the quantifiers on purpose, since most substantial predicates reject
it and would otherwise poison every candidate.

Two lower modes ship. The default ``substantial`` mode accepts the lower
approximation itself when it is nonempty and substantially part of the
set, and otherwise falls back to the empty value, marked trivial. The
``exhaustive`` mode searches all contained candidates and keeps the one
with the largest lower image, which can rescue value at points the
default mode leaves trivial. Both modes always produce a result; the
upper construction is genuinely partial and can fail to produce one.

:func:`check_rational_proposition` evaluates the compatibility statements
tying these maps to their plain counterparts. The statements are theorems
only when the substantial predicate meets the framework hypothesis, so
the hypothesis is checked and reported alongside; the two substantial
compatibility statements are open in general and are reported without
ever being asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import (
    EXHAUSTIVE_CAP,
    CheckReport,
    ESet,
    Operator,
    Universe,
    _check_cap,
    binding,
)
from .parthood import ParthoodRelation, analyze_properties

Substantial = Callable[[ESet, ESet], bool]

LOWER_MODES = ("substantial", "exhaustive")


@dataclass(frozen=True)
class RationalResult:
    """Outcome of one rational approximation.

    ``witnesses`` are labeled subsets explaining the value: the source
    candidate for a lower value, the candidate and its preimage for an
    upper value. ``trivial`` marks a lower result that fell back to empty
    because nothing substantial was available.
    """

    defined: bool
    value: ESet | None
    witnesses: tuple[tuple[str, ESet], ...] = ()
    trivial: bool = False
    mode: str = ""
    notes: tuple[str, ...] = ()


def _as_predicate(substantial: Substantial | ParthoodRelation) -> Substantial:
    if isinstance(substantial, ParthoodRelation):
        return substantial.holds
    return substantial


def _nonempty_definites(universe: Universe, lower: Operator) -> list[ESet]:
    out = []
    for m in range(1, universe.full_mask + 1):
        x = ESet(universe, m)
        if lower(x) == x:
            out.append(x)
    return out


def rational_lower(a: ESet, lower: Operator,
                   substantial: Substantial | ParthoodRelation, *,
                   mode: str = "substantial",
                   cap: int = EXHAUSTIVE_CAP,
                   override: bool = False) -> RationalResult:
    """Rational lower approximation of ``a``.

    Always defined. In ``substantial`` mode the value is the lower
    approximation of ``a`` itself when that is nonempty and substantially
    part of ``a``, else the trivial empty value. In ``exhaustive`` mode
    every candidate contained in ``a`` is considered; a candidate
    qualifies when each nonempty definite subset of it is substantially
    part of ``a``, and the qualifying candidate with the largest lower
    image wins (smallest mask on ties).
    """
    if mode not in LOWER_MODES:
        raise ValueError(
            f"unknown mode {mode!r}; valid modes: {', '.join(LOWER_MODES)}")
    ps = _as_predicate(substantial)
    universe = a.universe
    if mode == "substantial":
        v = lower(a)
        if not v.is_empty and ps(v, a):
            return RationalResult(True, v, (("source", a),), False, mode)
        return RationalResult(True, universe.empty, (), True, mode,
                              ("no substantial lower value; trivial fallback",))

    _check_cap(universe.size * 2, cap, override,
               "the exhaustive rational lower search")
    definites = _nonempty_definites(universe, lower)
    best: ESet | None = None
    best_b: ESet | None = None
    for m in range(universe.full_mask + 1):
        b = ESet(universe, m)
        if not b <= a:
            continue
        if all(not e <= b or ps(e, a) for e in definites):
            v = lower(b)
            if best is None or v.cardinality > best.cardinality:
                best = v
                best_b = b
    if best is None or best.is_empty:
        return RationalResult(True, universe.empty, (), True, mode,
                              ("no substantial candidate; trivial fallback",))
    assert best_b is not None
    return RationalResult(True, best, (("source", best_b),), False, mode)


def rational_upper(a: ESet, upper: Operator, lower: Operator,
                   substantial: Substantial | ParthoodRelation, *,
                   cap: int = EXHAUSTIVE_CAP,
                   override: bool = False) -> RationalResult:
    """Rational upper approximation of ``a``; partial by design.

    Candidates are the images of the upper operator, smallest first, then
    by mask. A candidate must contain ``a``, sit inside the plain upper
    approximation of ``a``, and be substantially entered by every
    nonempty definite subset it contains. The first qualifying candidate
    is the value; its witnesses are the candidate and the smallest
    preimage producing it. When nothing qualifies the result is
    undefined.
    """
    ps = _as_predicate(substantial)
    universe = a.universe
    _check_cap(universe.size * 2, cap, override,
               "the rational upper search")
    preimage: dict[int, int] = {}
    for m in range(universe.full_mask + 1):
        v = upper(ESet(universe, m)).mask
        preimage.setdefault(v, m)
    definites = _nonempty_definites(universe, lower)
    aup = upper(a)
    candidates = sorted(preimage,
                        key=lambda v: (v.bit_count(), v))
    qualifying: list[ESet] = []
    for vmask in candidates:
        b = ESet(universe, vmask)
        if not (a <= b and b <= aup):
            continue
        if all(not e <= b or ps(e, b) for e in definites):
            qualifying.append(b)
    if not qualifying:
        return RationalResult(False, None, (), False, "upper",
                              ("no operator image qualifies",))
    chosen = qualifying[0]
    z = ESet(universe, preimage[chosen.mask])
    notes = ()
    if len(qualifying) > 1:
        notes = (f"{len(qualifying) - 1} larger candidate(s) also qualify",)
    return RationalResult(True, chosen, (("candidate", chosen), ("preimage", z)),
                          False, "upper", notes)


_HYPOTHESIS_PROPS = ("reflexive", "part-compatible", "mutual-rough-equal",
                     "join-compatible", "l-euclidean", "r-euclidean")


def _relation_for(universe: Universe,
                  substantial: Substantial | ParthoodRelation
                  ) -> ParthoodRelation:
    if isinstance(substantial, ParthoodRelation):
        return substantial
    ps = substantial
    full = universe.full_mask
    pairs = frozenset(
        (am, bm)
        for am in range(full + 1) for bm in range(full + 1)
        if ps(ESet(universe, am), ESet(universe, bm)))
    return ParthoodRelation("custom", universe, pairs)


def check_rational_proposition(universe: Universe, lower: Operator,
                               substantial: Substantial | ParthoodRelation, *,
                               upper: Operator | None = None,
                               mode: str = "substantial",
                               cap: int = EXHAUSTIVE_CAP,
                               override: bool = False
                               ) -> tuple[CheckReport, ...]:
    """Evaluate the compatibility statements for the rational maps.

    The first report checks the framework hypothesis on the substantial
    predicate together with the lower operator laws the proofs lean on.
    The remaining reports are empirical sweeps; they are theorems only
    under that hypothesis, so every report carries the hypothesis verdict
    in its parameters. The two reports suffixed ``-open`` record the
    substantial compatibility questions, which have no general answer;
    they are informational and must not be asserted.
    """
    ps = _as_predicate(substantial)
    _check_cap(universe.size * 2, cap, override,
               "the rational proposition sweep")
    relation = _relation_for(universe, substantial)
    profile = analyze_properties(relation, override=override)
    hyp_parts = {
        name: profile.status(name).status == "holds"
        for name in _HYPOTHESIS_PROPS
    }

    full = universe.full_mask
    masks = range(full + 1)
    lower_laws = True
    for m in masks:
        x = ESet(universe, m)
        lx = lower(x)
        if not lx <= x or lower(lx) != lx:
            lower_laws = False
            break
        for mm in masks:
            if m & ~mm == 0 and not lx <= lower(ESet(universe, mm)):
                lower_laws = False
                break
        if not lower_laws:
            break

    hypothesis = all(hyp_parts.values()) and lower_laws
    hyp_params = tuple(
        [(name, "holds" if ok else "fails")
         for name, ok in sorted(hyp_parts.items())]
        + [("lower-operator-laws", "hold" if lower_laws else "fail")]
    )
    reports = [CheckReport("framework-hypothesis", hypothesis, (),
                           universe.size, hyp_params)]
    gate = (("hypothesis", "met" if hypothesis else "not-met"),)

    def rl(x: ESet) -> ESet:
        value = rational_lower(x, lower, ps, mode=mode, cap=cap,
                               override=override).value
        assert value is not None
        return value

    fails = []
    for m in masks:
        x = ESet(universe, m)
        v = rl(x)
        if rl(v) != v:
            fails.append((binding("a", x),))
    reports.append(CheckReport("idempotent", not fails, tuple(fails[:3]),
                               universe.size, gate))

    fails = []
    for m in masks:
        x = ESet(universe, m)
        if not rl(x) <= lower(x):
            fails.append((binding("a", x),))
    reports.append(CheckReport("lower-compatible", not fails,
                               tuple(fails[:3]), universe.size, gate))

    fails = []
    for mm in masks:
        b = ESet(universe, mm)
        vb = rl(b)
        for m in range(mm + 1):
            if m & ~mm == 0:
                a = ESet(universe, m)
                if not ps(rl(a), vb):
                    fails.append((binding("a", a), binding("b", b)))
                    break
        if fails:
            break
    reports.append(CheckReport("s-monotone", not fails, tuple(fails[:3]),
                               universe.size, gate))

    fails = []
    for m in masks:
        x = ESet(universe, m)
        if not ps(rl(x), lower(x)):
            fails.append((binding("a", x),))
    reports.append(CheckReport(
        "lower-compatible-open", not fails, tuple(fails[:3]), universe.size,
        gate + (("status", "open question; reported, not asserted"),)))

    if upper is not None:
        defined = 0
        fails = []
        open_fails = []
        for m in masks:
            x = ESet(universe, m)
            res = rational_upper(x, upper, lower, ps, cap=cap,
                                 override=override)
            if not res.defined:
                continue
            defined += 1
            assert res.value is not None
            if not res.value <= upper(x):
                fails.append((binding("a", x),))
            if not ps(res.value, upper(x)):
                open_fails.append((binding("a", x),))
        coverage = (("defined-points", f"{defined}/{full + 1}"),)
        reports.append(CheckReport("upper-compatible", not fails,
                                   tuple(fails[:3]), universe.size,
                                   gate + coverage))
        reports.append(CheckReport(
            "upper-compatible-open", not open_fails, tuple(open_fails[:3]),
            universe.size,
            gate + coverage
            + (("status", "open question; reported, not asserted"),)))
    return tuple(reports)
