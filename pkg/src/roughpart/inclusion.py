"""Inclusion measures on subsets and the axioms that sort them into classes.

An inclusion measure maps a pair of subsets to a degree in [0, 1] that says
how far the first sits inside the second. Four concrete families ship here:
the cardinality ratio ``K0`` with its complementary classification error,
the union-normalized ``K1``, the implication-style ``K2``, and the
two-threshold rescaling ``Kst`` of any base measure. Granulation-aware
variants (:func:`eval_bgrif`, :func:`eval_cgrif`) measure overlap between
chosen approximations of their arguments; the co-granular form is
intentionally not clamped, so it can exceed 1.

:func:`check_axiom` evaluates one named axiom exhaustively over a finite
universe and reports refuting witnesses. :func:`classify_rif` turns those
verdicts into the standard class tags and
:func:`check_prif_implications` confirms the implication lattice between
axioms that any [0, 1]-valued measure must respect.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .core import (
    EXHAUSTIVE_CAP,
    CheckReport,
    ESet,
    Universe,
    Witness,
    _check_cap,
    binding,
    iter_submasks,
)

ZERO = Fraction(0)
ONE = Fraction(1)

VALID_AXIOMS = ("U1", "R0", "IR0", "R1", "R2", "R3", "R4", "IR4", "R5",
                "RB", "R6", "RV", "RI", "RI-np")

SWEPT_AXIOMS = ("RV", "RI", "RI-np")

CLASS_TAGS = ("gRIF", "pRIF", "qRIF", "wqRIF")

MaskFn = Callable[[Universe, int, int], Fraction]


@dataclass(frozen=True)
class InclusionFn:
    """A named inclusion measure with frozen tuning parameters.

    Calling an instance on two subsets of the same universe returns an
    exact :class:`~fractions.Fraction`. ``on_masks`` is the unchecked fast
    path used by exhaustive sweeps.
    """

    tag: str
    fn: MaskFn = field(repr=False)
    parameters: tuple[tuple[str, str], ...] = ()

    def __call__(self, a: ESet, b: ESet) -> Fraction:
        if a.universe != b.universe:
            raise ValueError("subsets belong to different universes")
        return self.fn(a.universe, a.mask, b.mask)

    def on_masks(self, universe: Universe, am: int, bm: int) -> Fraction:
        return self.fn(universe, am, bm)

    def describe(self) -> str:
        if not self.parameters:
            return self.tag
        inner = ",".join(f"{k}={v}" for k, v in self.parameters)
        return f"{self.tag}({inner})"


def _same_universe(a: ESet, b: ESet) -> None:
    if a.universe != b.universe:
        raise ValueError("subsets belong to different universes")


def _k0_masks(universe: Universe, am: int, bm: int) -> Fraction:
    if am == 0:
        return ONE
    return Fraction((am & bm).bit_count(), am.bit_count())


def _k1_masks(universe: Universe, am: int, bm: int) -> Fraction:
    union = am | bm
    if union == 0:
        return ONE
    return Fraction(bm.bit_count(), union.bit_count())


def _k2_masks(universe: Universe, am: int, bm: int) -> Fraction:
    size = universe.size
    if size == 0:
        return ONE
    value = (universe.full_mask & ~am) | bm
    return Fraction(value.bit_count(), size)


_K0 = InclusionFn("K0", _k0_masks)
_K1 = InclusionFn("K1", _k1_masks)
_K2 = InclusionFn("K2", _k2_masks)


def kappa_k0() -> InclusionFn:
    """Fraction of the first argument lying in the second; 1 on empty."""
    return _K0


def kappa_k1() -> InclusionFn:
    """Second argument's share of the union; 1 when the union is empty."""
    return _K1


def kappa_k2() -> InclusionFn:
    """Size of (complement of first, joined with second) over the universe."""
    return _K2


def eval_k0(a: ESet, b: ESet) -> Fraction:
    _same_universe(a, b)
    return _k0_masks(a.universe, a.mask, b.mask)


def eval_k1(a: ESet, b: ESet) -> Fraction:
    _same_universe(a, b)
    return _k1_masks(a.universe, a.mask, b.mask)


def eval_k2(a: ESet, b: ESet) -> Fraction:
    _same_universe(a, b)
    return _k2_masks(a.universe, a.mask, b.mask)


def eval_classification_error(a: ESet, b: ESet) -> Fraction:
    """Complement of :func:`eval_k0`: the share of ``a`` outside ``b``."""
    return ONE - eval_k0(a, b)


def _validate_thresholds(s: Fraction, t: Fraction) -> None:
    if not (ZERO <= s < t <= ONE):
        raise ValueError("thresholds must satisfy 0 <= s < t <= 1")


def kappa_st(s: Fraction | int | str, t: Fraction | int | str,
             base: InclusionFn | None = None) -> InclusionFn:
    """Two-threshold rescaling of ``base`` (default ``K0``).

    Values at or below ``s`` collapse to 0, values at or above ``t``
    collapse to 1, and the open band in between rescales linearly.
    """
    s = Fraction(s)
    t = Fraction(t)
    _validate_thresholds(s, t)
    inner = base if base is not None else _K0

    def fn(universe: Universe, am: int, bm: int) -> Fraction:
        v = inner.on_masks(universe, am, bm)
        if v <= s:
            return ZERO
        if v >= t:
            return ONE
        return (v - s) / (t - s)

    return InclusionFn("Kst", fn,
                       (("s", str(s)), ("t", str(t)), ("base", inner.tag)))


def eval_kst(a: ESet, b: ESet, s: Fraction | int | str,
             t: Fraction | int | str,
             base: InclusionFn | None = None) -> Fraction:
    return kappa_st(s, t, base)(a, b)


_SIDES = ("l", "u")


def _pick(side: str, lower: Callable[[ESet], ESet],
          upper: Callable[[ESet], ESet]) -> Callable[[ESet], ESet]:
    if side not in _SIDES:
        raise ValueError(f"approximation side must be one of {_SIDES}")
    return lower if side == "l" else upper


def eval_bgrif(a: ESet, b: ESet, sigma: str, pi: str,
               lower: Callable[[ESet], ESet],
               upper: Callable[[ESet], ESet]) -> Fraction:
    """Granulation-aware inclusion: overlap of the sigma-approximation of
    ``a`` with the pi-approximation of ``b``, normalized by the former.
    Empty denominator gives 1."""
    _same_universe(a, b)
    fa = _pick(sigma, lower, upper)(a)
    fb = _pick(pi, lower, upper)(b)
    if fa.is_empty:
        return ONE
    return Fraction((fa & fb).cardinality, fa.cardinality)


def eval_cgrif(a: ESet, b: ESet, sigma: str, pi: str,
               lower: Callable[[ESet], ESet],
               upper: Callable[[ESet], ESet]) -> Fraction:
    """Co-normalized variant of :func:`eval_bgrif`: same numerator divided
    by the size of the pi-approximation of ``a``. Not clamped, so values
    above 1 are possible and meaningful (they flag the normalization
    mismatch). Empty denominator gives 1."""
    _same_universe(a, b)
    fa = _pick(sigma, lower, upper)(a)
    fb = _pick(pi, lower, upper)(b)
    da = _pick(pi, lower, upper)(a)
    if da.is_empty:
        return ONE
    return Fraction((fa & fb).cardinality, da.cardinality)


def kappa_bgrif(sigma: str, pi: str, lower: Callable[[ESet], ESet],
                upper: Callable[[ESet], ESet]) -> InclusionFn:
    """Package :func:`eval_bgrif` as an :class:`InclusionFn`, memoizing
    the operator images per mask."""
    _pick(sigma, lower, upper)
    _pick(pi, lower, upper)
    memo: dict[tuple[str, int], int] = {}

    def image(universe: Universe, side: str, mask: int) -> int:
        key = (side, mask)
        got = memo.get(key)
        if got is None:
            got = _pick(side, lower, upper)(ESet(universe, mask)).mask
            memo[key] = got
        return got

    def fn(universe: Universe, am: int, bm: int) -> Fraction:
        fa = image(universe, sigma, am)
        fb = image(universe, pi, bm)
        if fa == 0:
            return ONE
        return Fraction((fa & fb).bit_count(), fa.bit_count())

    return InclusionFn(f"nu_{sigma}{pi}", fn,
                       (("sigma", sigma), ("pi", pi)))


def dependence_degree(a: ESet, b: ESet) -> Fraction:
    """Signed deviation of the overlap from independence under the uniform
    distribution on the universe."""
    _same_universe(a, b)
    size = a.universe.size
    if size == 0:
        raise ValueError("dependence degree needs a nonempty universe")
    pa = Fraction(a.cardinality, size)
    pb = Fraction(b.cardinality, size)
    pab = Fraction((a & b).cardinality, size)
    return pab - pa * pb


def default_delta_sweep(size: int) -> tuple[Fraction, ...]:
    """Threshold grid for swept axioms: tenths plus every fraction with a
    denominator realizable on a universe of the given size."""
    grid = {Fraction(i, 10) for i in range(11)}
    for q in range(1, max(size, 1) + 1):
        for p in range(q + 1):
            grid.add(Fraction(p, q))
    return tuple(sorted(grid))


class _Vals:
    """Per-universe cache of inclusion values keyed by mask pairs."""

    def __init__(self, kappa: InclusionFn, universe: Universe) -> None:
        self.kappa = kappa
        self.universe = universe
        self.cache: dict[tuple[int, int], Fraction] = {}

    def __call__(self, am: int, bm: int) -> Fraction:
        key = (am, bm)
        v = self.cache.get(key)
        if v is None:
            v = self.kappa.on_masks(self.universe, am, bm)
            self.cache[key] = v
        return v


def _wit(universe: Universe, delta: Fraction | None = None,
         **named: int) -> Witness:
    parts = [binding(k, ESet(universe, m)) for k, m in named.items()]
    if delta is not None:
        parts.append(("delta", (str(delta),)))
    return tuple(parts)


def _sweep_u1(val, universe, deltas, cap_n):
    out = []
    for a in range(universe.full_mask + 1):
        if val(a, a) != ONE:
            out.append(_wit(universe, a=a))
            if len(out) >= cap_n:
                return out
    return out


def _sweep_r0(val, universe, deltas, cap_n):
    out = []
    for b in range(universe.full_mask + 1):
        for a in iter_submasks(b):
            if val(a, b) != ONE:
                out.append(_wit(universe, a=a, b=b))
                if len(out) >= cap_n:
                    return out
    return out


def _sweep_ir0(val, universe, deltas, cap_n):
    out = []
    for a in range(universe.full_mask + 1):
        for b in range(universe.full_mask + 1):
            if val(a, b) == ONE and a & ~b:
                out.append(_wit(universe, a=a, b=b))
                if len(out) >= cap_n:
                    return out
    return out


def _sweep_r1(val, universe, deltas, cap_n):
    out = []
    for a in range(universe.full_mask + 1):
        for b in range(universe.full_mask + 1):
            if (val(a, b) == ONE) != (a & ~b == 0):
                out.append(_wit(universe, a=a, b=b))
                if len(out) >= cap_n:
                    return out
    return out


def _sweep_r2(val, universe, deltas, cap_n):
    out = []
    full = universe.full_mask
    for b in range(full + 1):
        for c in range(full + 1):
            if val(b, c) != ONE:
                continue
            for a in range(full + 1):
                if val(a, b) > val(a, c):
                    out.append(_wit(universe, a=a, b=b, c=c))
                    if len(out) >= cap_n:
                        return out
    return out


def _sweep_r3(val, universe, deltas, cap_n):
    out = []
    for c in range(universe.full_mask + 1):
        for b in iter_submasks(c):
            for a in range(universe.full_mask + 1):
                if val(a, b) > val(a, c):
                    out.append(_wit(universe, a=a, b=b, c=c))
                    if len(out) >= cap_n:
                        return out
    return out


def _sweep_r4(val, universe, deltas, cap_n):
    out = []
    for a in range(universe.full_mask + 1):
        for b in range(universe.full_mask + 1):
            if val(a, b) == ZERO and a & b:
                out.append(_wit(universe, a=a, b=b))
                if len(out) >= cap_n:
                    return out
    return out


def _sweep_ir4(val, universe, deltas, cap_n):
    out = []
    for a in range(1, universe.full_mask + 1):
        for b in range(universe.full_mask + 1):
            if a & b == 0 and val(a, b) != ZERO:
                out.append(_wit(universe, a=a, b=b))
                if len(out) >= cap_n:
                    return out
    return out


def _sweep_r5(val, universe, deltas, cap_n):
    out = []
    for a in range(1, universe.full_mask + 1):
        for b in range(universe.full_mask + 1):
            if (val(a, b) == ZERO) != (a & b == 0):
                out.append(_wit(universe, a=a, b=b))
                if len(out) >= cap_n:
                    return out
    return out


def _sweep_rb(val, universe, deltas, cap_n):
    out = []
    for a in range(1, universe.full_mask + 1):
        if val(a, 0) != ZERO:
            out.append(_wit(universe, a=a))
            if len(out) >= cap_n:
                return out
    return out


def _sweep_r6(val, universe, deltas, cap_n):
    out = []
    full = universe.full_mask
    for b in range(full + 1):
        rest = full & ~b
        for s in iter_submasks(b):
            c = rest | s
            for a in range(1, full + 1):
                if val(a, b) + val(a, c) != ONE:
                    out.append(_wit(universe, a=a, b=b, c=c))
                    if len(out) >= cap_n:
                        return out
    return out


def _sweep_rv(val, universe, deltas, cap_n):
    out = []
    for delta in deltas:
        for b in range(universe.full_mask + 1):
            for a in iter_submasks(b):
                for c in iter_submasks(a):
                    if val(b, c) >= delta and val(a, c) < delta:
                        out.append(_wit(universe, delta, a=a, b=b, c=c))
                        if len(out) >= cap_n:
                            return out
    return out


def _sweep_ri(val, universe, deltas, cap_n):
    out = []
    full = universe.full_mask
    for delta in deltas:
        for a in range(full + 1):
            for b in range(full + 1):
                meet = a & b
                for c in iter_submasks(meet):
                    if (val(a, c) >= delta and val(b, c) >= delta
                            and val(meet, c) < delta):
                        out.append(_wit(universe, delta, a=a, b=b, c=c))
                        if len(out) >= cap_n:
                            return out
    return out


def _sweep_ri_np(val, universe, deltas, cap_n):
    out = []
    full = universe.full_mask
    for delta in deltas:
        for a in range(full + 1):
            for b in range(full + 1):
                meet = a & b
                for c in range(full + 1):
                    if (val(a, c) >= delta and val(b, c) >= delta
                            and val(meet, c) < delta):
                        out.append(_wit(universe, delta, a=a, b=b, c=c))
                        if len(out) >= cap_n:
                            return out
    return out


_SWEEPERS = {
    "U1": _sweep_u1,
    "R0": _sweep_r0,
    "IR0": _sweep_ir0,
    "R1": _sweep_r1,
    "R2": _sweep_r2,
    "R3": _sweep_r3,
    "R4": _sweep_r4,
    "IR4": _sweep_ir4,
    "R5": _sweep_r5,
    "RB": _sweep_rb,
    "R6": _sweep_r6,
    "RV": _sweep_rv,
    "RI": _sweep_ri,
    "RI-np": _sweep_ri_np,
}

_INSTANCE_VARS = {
    "U1": ("a",),
    "R0": ("a", "b"),
    "IR0": ("a", "b"),
    "R1": ("a", "b"),
    "R2": ("a", "b", "c"),
    "R3": ("a", "b", "c"),
    "R4": ("a", "b"),
    "IR4": ("a", "b"),
    "R5": ("a", "b"),
    "RB": ("a",),
    "R6": ("a", "b", "c"),
    "RV": ("a", "b", "c"),
    "RI": ("a", "b", "c"),
    "RI-np": ("a", "b", "c"),
}

ProbeBinding = tuple[Mapping[str, ESet], Fraction | None]


def _require_axiom(axiom_id: str) -> None:
    if axiom_id not in VALID_AXIOMS:
        raise ValueError(
            f"unknown axiom {axiom_id!r}; valid identifiers: "
            f"{', '.join(VALID_AXIOMS)}"
        )


def evaluate_axiom_instance(kappa: InclusionFn, axiom_id: str,
                            bindings: Mapping[str, ESet], *,
                            delta: Fraction | None = None) -> bool:
    """Evaluate one axiom at explicit bindings.

    Returns True when the instance is satisfied (vacuously so when its
    premise fails). Swept axioms require ``delta``. This is the slow,
    direct route; the sweeps in :func:`check_axiom` re-derive the same
    semantics independently, and the test suite cross-checks the two.
    """
    _require_axiom(axiom_id)
    needed = _INSTANCE_VARS[axiom_id]
    missing = [v for v in needed if v not in bindings]
    if missing:
        raise ValueError(
            f"axiom {axiom_id} needs bindings for {', '.join(needed)}"
        )
    vals = [bindings[v] for v in needed]
    universe = vals[0].universe
    for v in vals[1:]:
        if v.universe != universe:
            raise ValueError("bindings belong to different universes")
    if axiom_id in SWEPT_AXIOMS:
        if delta is None:
            raise ValueError(f"axiom {axiom_id} needs a delta threshold")
        delta = Fraction(delta)
    elif delta is not None:
        raise ValueError(f"axiom {axiom_id} takes no delta threshold")

    if axiom_id == "U1":
        (a,) = vals
        return kappa(a, a) == ONE
    if axiom_id == "R0":
        a, b = vals
        return not a <= b or kappa(a, b) == ONE
    if axiom_id == "IR0":
        a, b = vals
        return kappa(a, b) != ONE or a <= b
    if axiom_id == "R1":
        a, b = vals
        return (kappa(a, b) == ONE) == (a <= b)
    if axiom_id == "R2":
        a, b, c = vals
        return kappa(b, c) != ONE or kappa(a, b) <= kappa(a, c)
    if axiom_id == "R3":
        a, b, c = vals
        return not b <= c or kappa(a, b) <= kappa(a, c)
    if axiom_id == "R4":
        a, b = vals
        return kappa(a, b) != ZERO or (a & b).is_empty
    if axiom_id == "IR4":
        a, b = vals
        if a.is_empty or not (a & b).is_empty:
            return True
        return kappa(a, b) == ZERO
    if axiom_id == "R5":
        a, b = vals
        if a.is_empty:
            return True
        return (kappa(a, b) == ZERO) == ((a & b).is_empty)
    if axiom_id == "RB":
        (a,) = vals
        return a.is_empty or kappa(a, universe.empty) == ZERO
    if axiom_id == "R6":
        a, b, c = vals
        if a.is_empty or (b | c) != universe.full:
            return True
        return kappa(a, b) + kappa(a, c) == ONE
    if axiom_id == "RV":
        a, b, c = vals
        if not (c <= a and a <= b):
            return True
        return kappa(b, c) < delta or kappa(a, c) >= delta
    if axiom_id == "RI":
        a, b, c = vals
        if not c <= (a & b):
            return True
        if kappa(a, c) < delta or kappa(b, c) < delta:
            return True
        return kappa(a & b, c) >= delta
    # RI-np: the meet premise is dropped.
    a, b, c = vals
    if kappa(a, c) < delta or kappa(b, c) < delta:
        return True
    return kappa(a & b, c) >= delta


def check_axiom(kappa: InclusionFn, axiom_id: str, universe: Universe, *,
                delta: Fraction | None = None, max_witnesses: int = 3,
                probe_bindings: Sequence[ProbeBinding] = (),
                cap: int = EXHAUSTIVE_CAP,
                override: bool = False) -> CheckReport:
    """Exhaustively test one axiom for ``kappa`` over a finite universe.

    Swept axioms (RV, RI, RI-np) quantify over a threshold as well: pass
    ``delta`` to pin it, or leave it None to sweep
    :func:`default_delta_sweep`. ``probe_bindings`` are candidate
    refutations evaluated before the sweep; when a probe already falsifies
    the axiom the sweep is skipped, which keeps reproducing a known
    counterexample cheap on larger universes.
    """
    _require_axiom(axiom_id)
    if max_witnesses < 1:
        raise ValueError("max_witnesses must be at least 1")
    if axiom_id in SWEPT_AXIOMS:
        deltas = (Fraction(delta),) if delta is not None \
            else default_delta_sweep(universe.size)
    else:
        if delta is not None:
            raise ValueError(f"axiom {axiom_id} takes no delta threshold")
        deltas = ()

    witnesses: list[Witness] = []
    for bmap, probe_delta in probe_bindings:
        d = probe_delta
        if axiom_id in SWEPT_AXIOMS and d is None:
            raise ValueError("probe bindings for a swept axiom need a delta")
        if not evaluate_axiom_instance(kappa, axiom_id, bmap, delta=d):
            parts = [binding(k, bmap[k]) for k in _INSTANCE_VARS[axiom_id]]
            if d is not None:
                parts.append(("delta", (str(Fraction(d)),)))
            witnesses.append(tuple(parts))

    params = [("kappa", kappa.describe())]
    if axiom_id in SWEPT_AXIOMS:
        params.append(("delta", str(deltas[0]) if delta is not None
                       else f"sweep[{len(deltas)}]"))
    if witnesses:
        params.append(("sweep", "skipped: probe witnesses decide"))
        return CheckReport(axiom_id, False, tuple(witnesses[:max_witnesses]),
                           universe.size, tuple(params))

    _check_cap(universe.size, cap, override, f"the {axiom_id} sweep")
    val = _Vals(kappa, universe)
    found = _SWEEPERS[axiom_id](val, universe, deltas, max_witnesses)
    return CheckReport(axiom_id, not found, tuple(found),
                       universe.size, tuple(params))


def classify_rif(kappa: InclusionFn, universe: Universe, *,
                 cap: int = EXHAUSTIVE_CAP,
                 override: bool = False) -> tuple[str, ...]:
    """Class tags earned by ``kappa`` on the given universe, sorted.

    The graded class demands equivalence with inclusion plus unit-preimage
    monotony; the quasi class keeps the forward half only; the weak quasi
    class trades the monotony for its order form; the precision class asks
    for the chain-stability axiom at every swept threshold.
    """
    def holds(axiom: str) -> bool:
        return check_axiom(kappa, axiom, universe, max_witnesses=1,
                           cap=cap, override=override).holds

    r0 = holds("R0")
    tags = []
    if r0 and holds("IR0") and holds("R2"):
        tags.append("gRIF")
    if r0 and holds("R2"):
        tags.append("qRIF")
    if r0 and holds("R3"):
        tags.append("wqRIF")
    if r0 and holds("RV"):
        tags.append("pRIF")
    return tuple(sorted(tags))


_IMPLICATION_AXIOMS = ("U1", "R0", "IR0", "R1", "R2", "R3", "R4", "IR4",
                       "R5", "RB", "R6")


def check_prif_implications(kappa: InclusionFn, universe: Universe, *,
                            cap: int = EXHAUSTIVE_CAP,
                            override: bool = False) -> tuple[CheckReport, ...]:
    """Verify the implication lattice between axiom verdicts.

    Each implication below holds for every [0, 1]-valued measure on a
    powerset, so a failure here is an engine inconsistency rather than a
    property of ``kappa``. The reports carry the individual axiom verdicts
    in their parameters so a violation is diagnosable.
    """
    t: dict[str, bool] = {}
    for axiom in _IMPLICATION_AXIOMS:
        t[axiom] = check_axiom(kappa, axiom, universe, max_witnesses=1,
                               cap=cap, override=override).holds

    implications = (
        ("prif1", (not t["R1"]) or (t["R2"] == t["R3"])),
        ("prif2", t["R1"] == (t["R0"] and t["IR0"])),
        ("prif3", not (t["R0"] and t["R2"]) or t["R3"]),
        ("prif4", not (t["IR0"] and t["R3"]) or t["R2"]),
        ("prif5", not t["IR4"] or t["RB"]),
        ("prif6", (t["IR4"] and t["R4"]) == t["R5"]),
        ("prif7", not (t["R0"] and t["R6"]) or t["IR4"]),
        ("prif8", not (t["IR0"] and t["R6"]) or t["R4"]),
        ("prif9", not (t["R1"] and t["R6"]) or t["R5"]),
        ("u1-of-r1", not t["R1"] or t["U1"]),
        ("u1-of-r0", not t["R0"] or t["U1"]),
    )
    params = tuple((axiom, "true" if v else "false")
                   for axiom, v in sorted(t.items()))
    params = (("kappa", kappa.describe()),) + params
    return tuple(
        CheckReport(name, holds, (), universe.size, params)
        for name, holds in implications
    )
