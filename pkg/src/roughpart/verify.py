"""Verification suites: reference tables, theorem sweeps, and randomized
batteries.

Everything here turns statements about the engine into clause verdicts. A
clause either holds everywhere it was checked or is refuted by concrete
counterexamples, each carrying the fixture, measure, precision, and the
variable bindings that falsify it. Verdicts are compared against a shipped
manifest of expected outcomes: some published statements are genuinely
refuted by the engine derivations, the manifest records exactly which, and
the verifier treats an unexpected pass as seriously as an unexpected
failure.

The standard battery is the four-element worked fixture plus seeded random
granulations of sizes three to six. All sweeps are exhaustive over their
battery, arithmetic is exact, and the output is byte-deterministic: task
results are merged in a fixed order regardless of the thread count.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable, Sequence

from .core import (
    Binding,
    ESet,
    Granulation,
    RelationSpec,
    Universe,
    Witness,
    binding,
    build_neighborhood_granulation,
    check_admissibility,
    check_ggs_axioms,
    iter_submasks,
    neighborhood_map,
)
from .inclusion import (
    InclusionFn,
    check_axiom,
    check_prif_implications,
    classify_rif,
    eval_bgrif,
    kappa_k0,
    kappa_k1,
    kappa_k2,
    kappa_st,
)
from .approx import ApproxSpec, classical_lower, classical_upper, vprs_lower
from .parthood import analyze_properties, build_parthood, build_pu
from .rational import check_rational_proposition, rational_lower, rational_upper
from .correspond import (
    build_lower_correspondence,
    build_upper_correspondence,
    check_nonrepresentability,
)

TABLE_IDS = ("bited-gvprs", "one-grade")

_TABLE_FILES = {
    "bited-gvprs": "table_bited_gvprs.json",
    "one-grade": "table_one_grade.json",
}

SUITE_IDS = ("table-diff", "vprs-alpha", "vprs-star", "ri-cap", "grif",
             "rif-axioms", "prif", "parthood", "rational", "correspond",
             "ggs", "all")

DEFAULT_ALPHAS = (Fraction(1, 10), Fraction(1, 5), Fraction(3, 10),
                  Fraction(2, 5))
DEFAULT_KAPPA_TAGS = ("K0", "Kst(1/5,4/5)")

STANDARD_ALPHA = Fraction(3, 10)
STANDARD_GRADE = 1
STANDARD_RELATION = RelationSpec((("x1", "x2"), ("x2", "x3")), "tolerance")

CORRESPOND_ALPHAS = (Fraction(1, 5), Fraction(3, 10), Fraction(2, 5))


def _load_data(filename: str) -> dict:
    path = resources.files("roughpart").joinpath("data").joinpath(filename)
    return json.loads(path.read_text(encoding="utf-8"))


def load_reference_table(table_id: str) -> dict:
    if table_id not in _TABLE_FILES:
        raise ValueError(
            f"unknown table {table_id!r}; valid identifiers: "
            f"{', '.join(TABLE_IDS)}"
        )
    return _load_data(_TABLE_FILES[table_id])


def load_expected_outcomes() -> dict[str, str]:
    return dict(_load_data("expected_outcomes.json")["clauses"])


def load_parthood_claims() -> dict:
    return _load_data("parthood_claims.json")


@dataclass(frozen=True)
class Fixture:
    """A named universe with its granulation and neighborhood map."""

    name: str
    universe: Universe
    granulation: Granulation
    neighborhoods: tuple[tuple[str, ESet], ...] = ()


def standard_fixture() -> Fixture:
    universe = Universe(("x1", "x2", "x3", "x4"))
    granulation = build_neighborhood_granulation(universe, STANDARD_RELATION,
                                                 "predecessor")
    nbhd = neighborhood_map(universe, STANDARD_RELATION, "predecessor")
    return Fixture("standard", universe, granulation, nbhd)


def fixture_from_table(data: dict) -> Fixture:
    """Rebuild the fixture a reference table describes, from the table's
    own embedded universe and relation. This is deliberately a second
    route to the same fixture as :func:`standard_fixture`."""
    universe = Universe(tuple(data["universe"]))
    rel = data["relation"]
    relation = RelationSpec(tuple((a, b) for a, b in rel["pairs"]),
                            rel["closure"])
    mode = rel.get("mode", "predecessor")
    granulation = build_neighborhood_granulation(universe, relation, mode)
    nbhd = neighborhood_map(universe, relation, mode)
    return Fixture("standard", universe, granulation, nbhd)


def random_granulation(universe: Universe, rng: random.Random) -> Granulation:
    """A covering granulation of distinct nonempty random granules."""
    full = universe.full_mask
    count = rng.randint(2, max(2, universe.size))
    masks: list[int] = []
    for _ in range(count):
        m = rng.randint(1, full)
        if m not in masks:
            masks.append(m)
    covered = 0
    for m in masks:
        covered |= m
    if covered != full:
        masks.append(full & ~covered)
    return Granulation(universe, tuple(ESet(universe, m) for m in masks))


def random_fixture(index: int, size: int, rng: random.Random) -> Fixture:
    universe = Universe(tuple(f"e{i + 1}" for i in range(size)))
    granulation = random_granulation(universe, rng)
    return Fixture(f"rnd-{index:03d}-n{size}", universe, granulation)


def battery(seed: int = 0, random_count: int = 50) -> tuple[Fixture, ...]:
    """The standard fixture followed by seeded random fixtures with
    universe sizes cycling through three to six."""
    rng = random.Random(seed)
    sizes = (3, 4, 5, 6)
    out = [standard_fixture()]
    for i in range(random_count):
        out.append(random_fixture(i, sizes[i % len(sizes)], rng))
    return tuple(out)


@dataclass(frozen=True)
class CellDiff:
    row: str
    engine: tuple[str, ...]
    reference: tuple[str, ...]


@dataclass(frozen=True)
class ColumnDiff:
    column: str
    matched: int
    total: int
    mismatches: tuple[CellDiff, ...]


@dataclass(frozen=True)
class TableDiff:
    table_id: str
    columns: tuple[ColumnDiff, ...]

    @property
    def all_matched(self) -> bool:
        return all(not c.mismatches for c in self.columns)


@dataclass(frozen=True)
class DiffReport:
    tables: tuple[TableDiff, ...]


def _parse_label(label: str) -> tuple[str, ...]:
    inner = label.strip()
    if not (inner.startswith("{") and inner.endswith("}")):
        raise ValueError(f"malformed row label {label!r}")
    inner = inner[1:-1]
    return tuple(p for p in inner.split(",") if p)


def diff_tables(table_ids: Sequence[str] = TABLE_IDS) -> DiffReport:
    """Re-derive every cell of the reference tables and report each
    disagreement. The reference values are data under test: a mismatch
    documents a divergence in the published table, not an engine error,
    and the engine side is the one rederived from the printed
    definitions."""
    tables = []
    for tid in table_ids:
        data = load_reference_table(tid)
        fixture = fixture_from_table(data)
        alpha = Fraction(data["alpha"])
        k = int(data.get("k", 0))
        spec = ApproxSpec(fixture.granulation, kappa_k0(), alpha, k)
        columns = []
        for ci, col in enumerate(data["columns"]):
            op = spec.operator(col)
            mismatches = []
            total = 0
            for row_label, cells in data["rows"].items():
                total += 1
                x = fixture.universe.subset(_parse_label(row_label))
                engine = op(x)
                ref = fixture.universe.subset(cells[ci])
                if engine != ref:
                    mismatches.append(
                        CellDiff(row_label, engine.members, ref.members))
            columns.append(ColumnDiff(col, total - len(mismatches), total,
                                      tuple(mismatches)))
        tables.append(TableDiff(tid, tuple(columns)))
    return DiffReport(tuple(tables))


@dataclass(frozen=True)
class Counterexample:
    fixture: str
    kappa: str
    alpha: str
    bindings: Witness


@dataclass(frozen=True)
class ClauseOutcome:
    """Verdict for one clause over everything it was checked against."""

    clause: str
    holds: bool
    checked: int
    counterexamples: tuple[Counterexample, ...] = ()
    gates: tuple[tuple[str, str], ...] = ()
    note: str = ""


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    outcomes: tuple[ClauseOutcome, ...]
    parameters: tuple[tuple[str, str], ...] = ()


class _Eval:
    """One task's contribution to a clause."""

    __slots__ = ("clause", "checked", "ces", "gates", "note", "ok")

    def __init__(self, clause: str, checked: int,
                 ces: list[Counterexample] | None = None,
                 gates: tuple[tuple[str, str], ...] = (),
                 note: str = "", ok: bool | None = None) -> None:
        self.clause = clause
        self.checked = checked
        self.ces = ces if ces is not None else []
        self.gates = gates
        self.note = note
        self.ok = ok


Task = tuple[str, Callable[[], list[_Eval]]]


def _universe_of(size: int) -> Universe:
    return Universe(tuple(f"e{i + 1}" for i in range(size)))


def _wit(universe: Universe, **named: int) -> Witness:
    return tuple(binding(k, ESet(universe, m)) for k, m in named.items())


def _kappa_from_tag(tag: str) -> InclusionFn:
    if tag == "K0":
        return kappa_k0()
    if tag == "K1":
        return kappa_k1()
    if tag == "K2":
        return kappa_k2()
    if tag.startswith("Kst(") and tag.endswith(")"):
        parts = tag[4:-1].split(",")
        if len(parts) == 2:
            return kappa_st(Fraction(parts[0]), Fraction(parts[1]))
    raise ValueError(
        f"unknown measure tag {tag!r}; valid tags: K0, K1, K2, Kst(s,t)")


_CLASS_CACHE: dict[tuple[str, int], tuple[str, ...]] = {}
_RI_GATE_CACHE: dict[tuple[str, int, str], bool] = {}


def _class_tags(kap: InclusionFn, size: int) -> tuple[str, ...]:
    key = (kap.describe(), size)
    got = _CLASS_CACHE.get(key)
    if got is None:
        got = classify_rif(kap, _universe_of(size))
        _CLASS_CACHE[key] = got
    return got


def _ri_gate(kap: InclusionFn, size: int, delta: Fraction) -> bool:
    key = (kap.describe(), size, str(delta))
    got = _RI_GATE_CACHE.get(key)
    if got is None:
        got = check_axiom(kap, "RI", _universe_of(size), delta=delta,
                          max_witnesses=1).holds
        _RI_GATE_CACHE[key] = got
    return got


class _OpArrays:
    """Per-combination operator images indexed by subset mask."""

    __slots__ = ("lo", "up", "slo", "sup")

    def __init__(self, fixture: Fixture, kap: InclusionFn,
                 alpha: Fraction) -> None:
        universe = fixture.universe
        gmasks = fixture.granulation.masks
        threshold = 1 - alpha
        lo, up, slo, sup = [], [], [], []
        for x in range(universe.full_mask + 1):
            lm = um = sl = su = 0
            for gm in gmasks:
                v = kap.on_masks(universe, x, gm)
                if v >= threshold:
                    sl |= gm
                    if gm & ~x == 0:
                        lm |= gm
                if v > alpha:
                    su |= gm
                    if gm & x:
                        um |= gm
            lo.append(lm)
            up.append(um)
            slo.append(sl)
            sup.append(su)
        self.lo = lo
        self.up = up
        self.slo = slo
        self.sup = sup


def _vprs_alpha_task(fixture: Fixture, ktag: str, kap: InclusionFn,
                     alpha: Fraction) -> Task:
    key = f"{fixture.name}/{ktag}/{alpha}"

    def run() -> list[_Eval]:
        universe = fixture.universe
        arrays = _OpArrays(fixture, kap, alpha)
        lo, up = arrays.lo, arrays.up
        full = universe.full_mask
        clauses = ("li", "luA", "lA-idem", "lA-cmo", "uA-cmo", "lA-capc")
        ces: dict[str, list[Counterexample]] = {c: [] for c in clauses}
        checked = dict.fromkeys(clauses, 0)

        def ce(clause: str, **masks: int) -> None:
            if len(ces[clause]) < 5:
                ces[clause].append(Counterexample(
                    fixture.name, kap.describe(), str(alpha),
                    _wit(universe, **masks)))

        for x in range(full + 1):
            checked["li"] += 1
            if lo[x] & ~x:
                ce("li", a=x)
            checked["luA"] += 1
            if lo[x] & ~up[x]:
                ce("luA", a=x)
            checked["lA-idem"] += 1
            if lo[lo[x]] != lo[x]:
                ce("lA-idem", a=x)
            base = lo[x]
            if base & ~x == 0:
                for s in iter_submasks(x & ~base):
                    y = base | s
                    checked["lA-cmo"] += 1
                    if base & ~lo[y]:
                        ce("lA-cmo", a=x, b=y)
            if x & ~up[x] == 0:
                for s in iter_submasks(up[x] & ~x):
                    b = x | s
                    checked["uA-cmo"] += 1
                    if up[x] & ~up[b]:
                        ce("uA-cmo", a=x, b=b)
        for a in range(full + 1):
            for b in range(a, full + 1):
                checked["lA-capc"] += 1
                if lo[a] & lo[b] & ~lo[a & b]:
                    ce("lA-capc", a=a, b=b)

        gate = ((f"class[{ktag},n={universe.size}]",
                 ",".join(_class_tags(kap, universe.size)) or "none"),)
        return [_Eval(c, checked[c], ces[c], gate) for c in clauses]

    return key, run


def _vprs_star_task(fixture: Fixture, ktag: str, kap: InclusionFn,
                    alpha: Fraction) -> Task:
    key = f"{fixture.name}/{ktag}/{alpha}"

    def run() -> list[_Eval]:
        universe = fixture.universe
        arrays = _OpArrays(fixture, kap, alpha)
        lo, up, slo, sup = arrays.lo, arrays.up, arrays.slo, arrays.sup
        full = universe.full_mask
        clauses = ("lA-cmo*", "uA-cmo*", "luA*", "luAA")
        ces: dict[str, list[Counterexample]] = {c: [] for c in clauses}
        checked = dict.fromkeys(clauses, 0)

        def ce(clause: str, **masks: int) -> None:
            if len(ces[clause]) < 5:
                ces[clause].append(Counterexample(
                    fixture.name, kap.describe(), str(alpha),
                    _wit(universe, **masks)))

        for x in range(full + 1):
            checked["luA*"] += 1
            if slo[x] & ~sup[x]:
                ce("luA*", a=x)
            checked["luAA"] += 1
            if lo[x] & ~slo[x] or up[x] & ~sup[x]:
                ce("luAA", a=x)
            if slo[x] & ~x == 0:
                for s in iter_submasks(x & ~slo[x]):
                    y = slo[x] | s
                    checked["lA-cmo*"] += 1
                    if slo[x] & ~slo[y]:
                        ce("lA-cmo*", a=x, b=y)
            if x & ~sup[x] == 0:
                for s in iter_submasks(sup[x] & ~x):
                    b = x | s
                    checked["uA-cmo*"] += 1
                    if sup[x] & ~sup[b]:
                        ce("uA-cmo*", a=x, b=b)

        gate = ((f"class[{ktag},n={universe.size}]",
                 ",".join(_class_tags(kap, universe.size)) or "none"),)
        return [_Eval(c, checked[c], ces[c], gate) for c in clauses]

    return key, run


def _ri_cap_task(fixture: Fixture, ktag: str, kap: InclusionFn,
                 alpha: Fraction) -> Task:
    key = f"{fixture.name}/{ktag}/{alpha}"

    def run() -> list[_Eval]:
        universe = fixture.universe
        arrays = _OpArrays(fixture, kap, alpha)
        lo = arrays.lo
        full = universe.full_mask
        ces: list[Counterexample] = []
        checked = 0
        for a in range(full + 1):
            for b in range(a, full + 1):
                checked += 1
                if lo[a] & lo[b] & ~lo[a & b] and len(ces) < 5:
                    ces.append(Counterexample(
                        fixture.name, kap.describe(), str(alpha),
                        _wit(universe, a=a, b=b)))
        delta = 1 - alpha
        gate_ok = _ri_gate(kap, universe.size, delta)
        gate = ((f"RI[{ktag},n={universe.size},delta={delta}]",
                 "holds" if gate_ok else "fails"),)
        return [_Eval("lARI-cap", checked, ces, gate)]

    return key, run


def _grif_task(fixture: Fixture) -> Task:
    key = fixture.name

    def run() -> list[_Eval]:
        universe = fixture.universe
        g = fixture.granulation
        full = universe.full_mask
        cl = [classical_lower(ESet(universe, m), g).mask
              for m in range(full + 1)]
        cu = [classical_upper(ESet(universe, m), g).mask
              for m in range(full + 1)]
        img = {"l": cl, "u": cu}
        clauses = ("ulu2", "llu2", "mo", "refl", "bot", "top",
                   "route-agreement")
        ces: dict[str, list[Counterexample]] = {c: [] for c in clauses}
        checked = dict.fromkeys(clauses, 0)

        def ce(clause: str, extra: tuple[Binding, ...] = (),
               **masks: int) -> None:
            if len(ces[clause]) < 5:
                ces[clause].append(Counterexample(
                    fixture.name, "nu", "", _wit(universe, **masks) + extra))

        # Shared-denominator comparisons reduce to numerator counts.
        for a in range(full + 1):
            for b in range(full + 1):
                checked["ulu2"] += 1
                if (cu[a] & cl[b]).bit_count() > (cu[a] & cu[b]).bit_count():
                    ce("ulu2", a=a, b=b)
                checked["llu2"] += 1
                if (cl[a] & cl[b]).bit_count() > (cl[a] & cu[b]).bit_count():
                    ce("llu2", a=a, b=b)
        # Monotony in the second argument follows from image monotony
        # because the denominator only sees the first argument.
        for side in ("l", "u"):
            arr = img[side]
            for e in range(full + 1):
                for b in iter_submasks(e):
                    checked["mo"] += 1
                    if arr[b] & ~arr[e]:
                        ce("mo", b=b, e=e,
                           extra=(("side", (side,)),))
        # The light clauses go through the public evaluation route.
        lo_op = lambda s: classical_lower(s, g)
        up_op = lambda s: classical_upper(s, g)
        empty = universe.empty
        top_set = universe.full
        top_definite = cl[full] == full and cu[full] == full
        for m in range(full + 1):
            x = ESet(universe, m)
            checked["refl"] += 1
            if (eval_bgrif(x, x, "l", "l", lo_op, up_op) != 1
                    or eval_bgrif(x, x, "u", "u", lo_op, up_op) != 1
                    or eval_bgrif(x, x, "l", "u", lo_op, up_op) > 1):
                ce("refl", a=m)
            for sigma in ("l", "u"):
                for pi in ("l", "u"):
                    checked["bot"] += 1
                    if eval_bgrif(empty, x, sigma, pi, lo_op, up_op) != 1:
                        ce("bot", b=m, extra=(("form", (sigma + pi,)),))
                    if top_definite:
                        checked["top"] += 1
                        if eval_bgrif(x, top_set, sigma, pi,
                                      lo_op, up_op) != 1:
                            ce("top", a=m, extra=(("form", (sigma + pi,)),))
        # Cross-check the mask arrays against the public route on a
        # deterministic sample of pairs.
        sample = range(min(full + 1, 16))
        for a in sample:
            for b in sample:
                for sigma in ("l", "u"):
                    for pi in ("l", "u"):
                        checked["route-agreement"] += 1
                        direct = eval_bgrif(ESet(universe, a),
                                            ESet(universe, b),
                                            sigma, pi, lo_op, up_op)
                        fa = img[sigma][a]
                        fb = img[pi][b]
                        via = Fraction(1) if fa == 0 else \
                            Fraction((fa & fb).bit_count(), fa.bit_count())
                        if direct != via:
                            ce("route-agreement", a=a, b=b,
                               extra=(("form", (sigma + pi,)),))
        gate = (("top-definite", "yes" if top_definite else
                 "no: top clause skipped"),)
        return [_Eval(c, checked[c], ces[c], gate if c == "top" else ())
                for c in clauses]

    return key, run


def _rif_axioms_task() -> Task:
    def run() -> list[_Eval]:
        k0 = kappa_k0()
        evals: list[_Eval] = []
        for name, axiom in (("k0-rv-sweep", "RV"), ("k0-ri-sweep", "RI")):
            ces: list[Counterexample] = []
            checked = 0
            for n in range(1, 7):
                rep = check_axiom(k0, axiom, _universe_of(n))
                checked += 1
                if not rep.holds:
                    for w in rep.witnesses:
                        ces.append(Counterexample(f"u{n}", "K0", "", w))
            evals.append(_Eval(name, checked, ces))

        u = Universe.of(("1", "2", "3", "5", "6", "7", "8", "9"))
        probe = ({"a": u.subset(("1", "2", "3", "6")),
                  "b": u.subset(("3", "5", "7", "8", "9")),
                  "c": u.subset(("2", "5", "6"))}, Fraction(1, 5))
        rep = check_axiom(k0, "RI-np", u, probe_bindings=(probe,),
                          max_witnesses=1)
        reproduced = not rep.holds and len(rep.witnesses) == 1
        evals.append(_Eval(
            "ri-np-counterexample", 1, [], (),
            "reproduced at threshold 1/5" if reproduced
            else "did not reproduce", reproduced))

        tags_unit = _class_tags(kappa_st(Fraction(1, 5), Fraction(1)), 5)
        evals.append(_Eval("kst-unit-top-qrif", 1, [], (),
                           "classes: " + ",".join(tags_unit),
                           "qRIF" in tags_unit))
        tags_mid = _class_tags(kappa_st(Fraction(1, 5), Fraction(4, 5)), 5)
        ok_mid = ("wqRIF" in tags_mid and "pRIF" in tags_mid
                  and "qRIF" not in tags_mid)
        evals.append(_Eval("kst-mid-wqrif", 1, [], (),
                           "classes: " + ",".join(tags_mid), ok_mid))
        ok_k0 = all(_class_tags(k0, n) == ("gRIF", "pRIF", "qRIF", "wqRIF")
                    for n in (4, 5))
        evals.append(_Eval("k0-classes", 2, [], (),
                           "all four classes on sizes 4 and 5" if ok_k0
                           else "unexpected class set", ok_k0))
        return evals

    return "rif-axioms", run


_PRIF_KAPPA_TAGS = ("K0", "K1", "K2", "Kst(1/5,4/5)")
_PRIF_CLAUSES = ("prif1", "prif2", "prif3", "prif4", "prif5", "prif6",
                 "prif7", "prif8", "prif9", "u1-of-r1", "u1-of-r0")


def _prif_task(ktag: str, size: int) -> Task:
    key = f"{ktag}/u{size}"

    def run() -> list[_Eval]:
        kap = _kappa_from_tag(ktag)
        reports = check_prif_implications(kap, _universe_of(size))
        evals = []
        for rep in reports:
            ces = []
            if not rep.holds:
                verdicts = tuple(f"{k}={v}" for k, v in rep.parameters)
                ces.append(Counterexample(f"u{size}", ktag, "",
                                          (("verdicts", verdicts),)))
            evals.append(_Eval(rep.name, 1, ces))
        return evals

    return key, run


def _parthood_equality_task(fixture: Fixture, ktag: str, kap: InclusionFn,
                            alpha: Fraction) -> Task:
    key = f"{fixture.name}/{ktag}/{alpha}"

    def run() -> list[_Eval]:
        universe = fixture.universe
        g = fixture.granulation
        ces_57: list[Counterexample] = []
        ces_pu: list[Counterexample] = []
        r5 = build_parthood("s5", universe, g, kappa=kap, alpha=alpha)
        r7 = build_parthood("s7", universe, g, kappa=kap, alpha=alpha)
        for am, bm in sorted(r5.pairs ^ r7.pairs):
            if len(ces_57) >= 5:
                break
            where = "first-route-only" if (am, bm) in r5.pairs \
                else "second-route-only"
            ces_57.append(Counterexample(
                fixture.name, kap.describe(), str(alpha),
                _wit(universe, a=am, b=bm) + (("route", (where,)),)))
        checked = (universe.full_mask + 1) ** 2

        r0u = build_parthood("s0u", universe, g, kappa=kap, alpha=alpha)
        rpu = build_parthood("pu", universe, g, kappa=kap, alpha=alpha)
        derived = frozenset(
            (am, bm) for am, bm in rpu.pairs
            if kap.on_masks(universe, am, bm) >= alpha)
        for am, bm in sorted(r0u.pairs ^ derived):
            if len(ces_pu) >= 5:
                break
            ces_pu.append(Counterexample(
                fixture.name, kap.describe(), str(alpha),
                _wit(universe, a=am, b=bm)))
        return [_Eval("s5-equals-s7", checked, ces_57),
                _Eval("s0u-from-pu", checked, ces_pu)]

    return key, run


def _parthood_grade_task(fixture: Fixture, k: int) -> Task:
    key = f"{fixture.name}/k{k}"

    def run() -> list[_Eval]:
        universe = fixture.universe
        g = fixture.granulation
        r3 = build_parthood("s3", universe, g, k=k)
        r6 = build_parthood("s6", universe, g, k=k)
        ces: list[Counterexample] = []
        for am, bm in sorted(r3.pairs ^ r6.pairs):
            if len(ces) >= 5:
                break
            ces.append(Counterexample(fixture.name, "", f"k={k}",
                                      _wit(universe, a=am, b=bm)))
        return [_Eval("s6-equals-s3", (universe.full_mask + 1) ** 2, ces)]

    return key, run


def _s3_extension_task() -> Task:
    def run() -> list[_Eval]:
        fixture = standard_fixture()
        universe = fixture.universe
        relation = build_parthood("s3", universe, fixture.granulation,
                                  k=STANDARD_GRADE)
        # Second route through member sets rather than masks.
        expected = set()
        members = [frozenset(ESet(universe, m).members)
                   for m in range(universe.full_mask + 1)]
        for am, a in enumerate(members):
            for bm, b in enumerate(members):
                if len(a & b) > STANDARD_GRADE and a <= b:
                    expected.add((am, bm))
        ok = relation.pairs == frozenset(expected) and relation.size == 33
        note = f"{relation.size} pairs" + ("" if ok else "; routes disagree")
        ces = []
        if not ok:
            for am, bm in sorted(relation.pairs ^ expected)[:5]:
                ces.append(Counterexample("standard", "", f"k={STANDARD_GRADE}",
                                          _wit(universe, a=am, b=bm)))
        return [_Eval("s3-standard-extension", len(members) ** 2, ces, (),
                      note, ok)]

    return "s3-extension", run


EXPECTED_PU_CLASS_LABELS = (
    ("{}",),
    ("{x1}", "{x2}", "{x1,x2}", "{x3}", "{x1,x3}", "{x2,x3}", "{x1,x2,x3}",
     "{x1,x2,x3,x4}"),
    ("{x4}",),
    ("{x1,x4}", "{x2,x4}", "{x1,x2,x4}", "{x3,x4}", "{x1,x3,x4}",
     "{x2,x3,x4}"),
)


def _pu_classes_task() -> Task:
    def run() -> list[_Eval]:
        fixture = standard_fixture()
        universe = fixture.universe
        result = build_pu(universe, fixture.granulation,
                          alpha=STANDARD_ALPHA)
        got = tuple(tuple(m.label() for m in cls) for cls in result.classes)
        ok = got == EXPECTED_PU_CLASS_LABELS
        notes = []
        if not ok:
            notes.append("classes differ from the frozen expectation")
        values = result.class_upper_values
        second, third = values[1], values[2]
        if second <= third or third <= second:
            ok = False
            notes.append("middle classes unexpectedly comparable")
        # The relation must be exactly what the class order induces.
        value_of = {}
        for cls, value in zip(result.classes, values):
            for m in cls:
                value_of[m.mask] = value.mask
        derived = frozenset(
            (am, bm)
            for am in value_of for bm in value_of
            if value_of[am] & ~value_of[bm] == 0)
        if derived != result.relation.pairs:
            ok = False
            notes.append("class-induced order disagrees with the relation")
        return [_Eval("pu-classes", (universe.full_mask + 1) ** 2, [], (),
                      "; ".join(notes) if notes else
                      f"{len(result.classes)} classes", ok)]

    return "pu-classes", run


def _s_star_witness_task() -> Task:
    def run() -> list[_Eval]:
        universe = Universe.of(("1", "2", "3", "4", "5", "6", "7", "8", "9",
                                "12", "15", "20"))
        a = universe.subset(("1", "2", "3", "4", "5", "6", "7", "8", "9"))
        b = universe.subset(("1", "2", "3", "4", "5", "12", "15", "20"))
        c = universe.subset(("20", "12", "1", "2", "3", "6"))
        k = 4

        def via_masks(x: ESet, y: ESet) -> bool:
            return (x & y).cardinality > k and not (y < x)

        def via_members(x: ESet, y: ESet) -> bool:
            xs, ys = set(x.members), set(y.members)
            return len(xs & ys) > k and not (ys < xs)

        ok = True
        for route in (via_masks, via_members):
            ok = ok and route(a, b) and route(b, c) and not route(a, c)
        note = ("transitivity fails on a 12-element universe at grade 4"
                if ok else "witness did not reproduce")
        return [_Eval("s-star-transitivity-witness", 6, [], (), note, ok)]

    return "s-star-witness", run


_POSITIVE, _NEGATIVE = "holds", "fails-in-general"


def _claims_task(tag: str) -> Task:
    def run() -> list[_Eval]:
        claims = load_parthood_claims()["claims"][tag]
        fixture = standard_fixture()
        relation = build_parthood(tag, fixture.universe, fixture.granulation,
                                  alpha=STANDARD_ALPHA, k=STANDARD_GRADE)
        profile = analyze_properties(relation)
        evals = []
        for prop, claim in claims.items():
            status = profile.status(prop)
            clause = f"claims.{tag}.{prop}"
            if claim == _POSITIVE:
                ok = status.status == "holds"
                ces = []
                if not ok and status.witness is not None:
                    ces.append(Counterexample("standard", "K0",
                                              str(STANDARD_ALPHA),
                                              status.witness))
                note = "" if ok else "positive claim refuted by the engine"
                if not ok and status.status == "conditional":
                    note += f" ({status.condition})"
                evals.append(_Eval(clause, 1, ces, (), note, ok))
            else:
                found = status.status in ("fails", "conditional")
                note = ("witness found, as claimed" if found
                        else "no witness on this fixture; the negative "
                             "claim is untested here")
                if status.status == "conditional":
                    note += f" ({status.condition})"
                evals.append(_Eval(clause, 1, [], (), note, True))
        return evals

    return f"claims/{tag}", run


def _rational_task() -> Task:
    def run() -> list[_Eval]:
        fixture = standard_fixture()
        universe = fixture.universe
        g = fixture.granulation
        designated = (universe.subset(("x4",)), universe.subset(("x1", "x2")))
        st_rel = build_parthood("st", universe, g, tset=designated)

        def lower_op(x: ESet) -> ESet:
            return vprs_lower(x, g, None, STANDARD_ALPHA)

        expected_points = {
            universe.subset(("x4",)).mask: universe.subset(("x4",)).mask,
            universe.subset(("x1", "x2")).mask:
                universe.subset(("x1", "x2")).mask,
            universe.subset(("x1", "x2", "x3")).mask:
                universe.subset(("x1", "x2", "x3")).mask,
            universe.full_mask: universe.subset(("x1", "x2", "x3")).mask,
        }
        ces: list[Counterexample] = []
        for m in range(universe.full_mask + 1):
            res = rational_lower(ESet(universe, m), lower_op, st_rel)
            want = expected_points.get(m)
            assert res.value is not None
            if want is None:
                if not res.trivial and len(ces) < 5:
                    ces.append(Counterexample(
                        "standard", "K0", str(STANDARD_ALPHA),
                        _wit(universe, a=m, value=res.value.mask)))
            elif res.trivial or res.value.mask != want:
                ces.append(Counterexample(
                    "standard", "K0", str(STANDARD_ALPHA),
                    _wit(universe, a=m, value=res.value.mask,
                         expected=want)))
        evals = [_Eval("standard-points", universe.full_mask + 1, ces, (),
                       "nontrivial exactly at the four recorded points"
                       if not ces else "")]

        def up_op(x: ESet) -> ESet:
            return classical_upper(x, g)

        def lo_op(x: ESet) -> ESet:
            return classical_lower(x, g)

        one = universe.subset(("x1",))
        strict = build_parthood("s6", universe, g, k=3)
        loose = build_parthood("s6", universe, g, k=0)
        res_strict = rational_upper(one, up_op, lo_op, strict)
        res_loose = rational_upper(one, up_op, lo_op, loose)
        ok_upper = (not res_strict.defined and res_loose.defined
                    and res_loose.value is not None
                    and res_loose.value.members == ("x1", "x2", "x3"))
        evals.append(_Eval(
            "upper-worked-example", 2, [], (),
            "undefined at grade 3, defined at grade 0" if ok_upper
            else "worked example did not reproduce", ok_upper))

        reports = {rep.name: rep
                   for rep in check_rational_proposition(
                       universe, lower_op, st_rel)}
        for name in ("framework-hypothesis", "idempotent",
                     "lower-compatible", "s-monotone",
                     "lower-compatible-open"):
            rep = reports[name]
            ces = [Counterexample("standard", "K0", str(STANDARD_ALPHA), w)
                   for w in rep.witnesses]
            note = ""
            if name == "lower-compatible-open":
                note = "open question; reported, not asserted"
            if name == "framework-hypothesis" and not rep.holds:
                note = ("the designated-witness predicate sits outside "
                        "the hypothesis; theorem clauses are gated")
            evals.append(_Eval(name, 1, ces, rep.parameters, note,
                               rep.holds))
        hyp = reports["framework-hypothesis"].holds
        mono = reports["s-monotone"].holds
        evals.append(_Eval(
            "s-monotone-under-hypothesis", 1, [], (),
            "vacuous: hypothesis not met" if not hyp else "",
            (not hyp) or mono))
        return evals

    return "rational", run


def _correspond_task(fixture: Fixture, alpha: Fraction) -> Task:
    key = f"{fixture.name}/{alpha}"

    def run() -> list[_Eval]:
        universe = fixture.universe
        evals = []
        for clause, build in (("upper-blocks", build_upper_correspondence),
                              ("lower-blocks", build_lower_correspondence)):
            partition = build(universe, fixture.granulation, alpha)
            ces = []
            for block in partition.blocks:
                if not block.verified and len(ces) < 5:
                    ces.append(Counterexample(
                        fixture.name, "K0", str(alpha),
                        (("threshold", (str(block.threshold),)),
                         binding("first-member", block.members[0]))))
            evals.append(_Eval(clause, len(partition.blocks), ces))
        return evals

    return key, run


def _nonrepresentability_task() -> Task:
    def run() -> list[_Eval]:
        fixture = standard_fixture()
        report = check_nonrepresentability(fixture.universe,
                                           fixture.granulation, 1)
        sizes = dict(report.parameters).get("nonrepresentable-sizes", "")
        singles = {("x1",), ("x2",), ("x3",), ("x4",)}
        witnessed = {w[0][1] for w in report.witnesses}
        ok = (not report.holds and sizes == "0,1,2"
              and singles <= witnessed)
        return [_Eval("nonrepresentability-k1", 1, [], (),
                      f"nonrepresentable sizes: {sizes}", ok)]

    return "nonrepresentability", run


def _ggs_task() -> Task:
    def run() -> list[_Eval]:
        fixture = standard_fixture()
        universe = fixture.universe
        g = fixture.granulation

        def lo(x: ESet) -> ESet:
            return classical_lower(x, g)

        def up(x: ESet) -> ESet:
            return classical_upper(x, g)

        evals = []
        for clause, reports in (
                ("axioms-classical", check_ggs_axioms(universe, g, lo, up)),
                ("admissibility-classical",
                 check_admissibility(universe, g, lo, up))):
            ces = []
            for rep in reports:
                if not rep.holds:
                    for w in rep.witnesses[:2]:
                        ces.append(Counterexample(
                            "standard", "", "",
                            w + (("axiom", (rep.name,)),)))
            evals.append(_Eval(clause, len(reports), ces))
        return evals

    return "ggs", run


def _table_diff_task() -> Task:
    def run() -> list[_Eval]:
        report = diff_tables()
        evals = []
        for table in report.tables:
            data = load_reference_table(table.table_id)
            alpha = str(Fraction(data["alpha"]))
            for col in table.columns:
                ces = [
                    Counterexample(
                        "standard", "K0", alpha,
                        (("row", (cell.row,)),
                         ("engine", cell.engine),
                         ("reference", cell.reference)))
                    for cell in col.mismatches[:16]
                ]
                note = "" if not ces else (
                    f"{len(col.mismatches)} published cell(s) diverge from "
                    "the engine derivation")
                evals.append(_Eval(f"{table.table_id}.{col.column}",
                                   col.total, ces, (), note))
        return evals

    return "table-diff", run


_CLAIM_TAGS = ("s3", "s5", "s6", "s7", "s9", "s0l", "s0u")

_CLAUSE_ORDER: dict[str, tuple[str, ...]] = {
    "table-diff": tuple(
        f"{tid}.{col}" for tid, cols in (
            ("bited-gvprs", ("l", "u", "u_b", "l_alpha", "u_alpha")),
            ("one-grade", ("l_grade_strict", "u_grade", "l_alpha_star",
                           "u_alpha_star")))
        for col in cols),
    "vprs-alpha": ("li", "luA", "lA-idem", "lA-cmo", "uA-cmo", "lA-capc"),
    "vprs-star": ("lA-cmo*", "uA-cmo*", "luA*", "luAA"),
    "ri-cap": ("lARI-cap",),
    "grif": ("ulu2", "llu2", "mo", "refl", "bot", "top", "route-agreement"),
    "rif-axioms": ("k0-rv-sweep", "k0-ri-sweep", "ri-np-counterexample",
                   "kst-unit-top-qrif", "kst-mid-wqrif", "k0-classes"),
    "prif": _PRIF_CLAUSES,
    "parthood": ("s5-equals-s7", "s6-equals-s3", "s3-standard-extension",
                 "pu-classes", "s0u-from-pu", "s-star-transitivity-witness")
    + tuple(f"claims.{tag}.{prop}" for tag in _CLAIM_TAGS
            for prop in ("reflexive", "part-compatible", "mutual-rough-equal",
                         "join-compatible", "l-euclidean", "r-euclidean",
                         "antisymmetric")
            if tag == "s3" or prop != "antisymmetric"),
    "rational": ("framework-hypothesis", "standard-points",
                 "upper-worked-example", "idempotent", "lower-compatible",
                 "s-monotone", "s-monotone-under-hypothesis",
                 "lower-compatible-open"),
    "correspond": ("upper-blocks", "lower-blocks", "nonrepresentability-k1"),
    "ggs": ("axioms-classical", "admissibility-classical"),
}


def _build_tasks(suite_id: str, fixtures: Sequence[Fixture],
                 kappas: Sequence[tuple[str, InclusionFn]],
                 alphas: Sequence[Fraction]) -> list[Task]:
    tasks: list[Task] = []
    if suite_id == "table-diff":
        tasks.append(_table_diff_task())
    elif suite_id == "vprs-alpha":
        for f in fixtures:
            for ktag, kap in kappas:
                for alpha in alphas:
                    tasks.append(_vprs_alpha_task(f, ktag, kap, alpha))
    elif suite_id == "vprs-star":
        for f in fixtures:
            for ktag, kap in kappas:
                for alpha in alphas:
                    tasks.append(_vprs_star_task(f, ktag, kap, alpha))
    elif suite_id == "ri-cap":
        for f in fixtures:
            for ktag, kap in kappas:
                for alpha in alphas:
                    tasks.append(_ri_cap_task(f, ktag, kap, alpha))
    elif suite_id == "grif":
        for f in fixtures:
            tasks.append(_grif_task(f))
    elif suite_id == "rif-axioms":
        tasks.append(_rif_axioms_task())
    elif suite_id == "prif":
        for ktag in _PRIF_KAPPA_TAGS:
            for size in (3, 4, 5):
                tasks.append(_prif_task(ktag, size))
    elif suite_id == "parthood":
        for f in fixtures:
            for ktag, kap in kappas:
                for alpha in alphas:
                    tasks.append(_parthood_equality_task(f, ktag, kap, alpha))
        for f in fixtures:
            for k in (0, 1, 2):
                tasks.append(_parthood_grade_task(f, k))
        tasks.append(_s3_extension_task())
        tasks.append(_pu_classes_task())
        tasks.append(_s_star_witness_task())
        for tag in _CLAIM_TAGS:
            tasks.append(_claims_task(tag))
    elif suite_id == "rational":
        tasks.append(_rational_task())
    elif suite_id == "correspond":
        subset = fixtures[:21]
        for f in subset:
            for alpha in CORRESPOND_ALPHAS:
                tasks.append(_correspond_task(f, alpha))
        tasks.append(_nonrepresentability_task())
    elif suite_id == "ggs":
        tasks.append(_ggs_task())
    return tasks


def _merge(suite_id: str, evals: Iterable[list[_Eval]],
           max_counterexamples: int) -> tuple[ClauseOutcome, ...]:
    order = _CLAUSE_ORDER[suite_id]
    acc: dict[str, dict] = {}
    for batch in evals:
        for ev in batch:
            slot = acc.setdefault(ev.clause, {
                "checked": 0, "ces": [], "gates": set(), "notes": [],
                "ok": True,
            })
            slot["checked"] += ev.checked
            slot["ces"].extend(ev.ces)
            slot["gates"].update(ev.gates)
            if ev.note and ev.note not in slot["notes"]:
                slot["notes"].append(ev.note)
            if ev.ok is not None:
                slot["ok"] = slot["ok"] and ev.ok
    outcomes = []
    for clause in order:
        if clause not in acc:
            continue
        slot = acc[clause]
        ces = tuple(slot["ces"][:max_counterexamples])
        holds = slot["ok"] and not slot["ces"]
        outcomes.append(ClauseOutcome(
            clause=clause, holds=holds, checked=slot["checked"],
            counterexamples=ces, gates=tuple(sorted(slot["gates"])),
            note="; ".join(slot["notes"])))
    return tuple(outcomes)


def run_theorem_suite(suite_id: str, *, seed: int = 0,
                      random_count: int = 50,
                      alphas: Sequence[Fraction] = DEFAULT_ALPHAS,
                      kappa_tags: Sequence[str] = DEFAULT_KAPPA_TAGS,
                      threads: int = 1, max_counterexamples: int = 5,
                      fixtures: Sequence[Fixture] | None = None
                      ) -> SuiteResult:
    """Run one verification suite (or ``all``) over the battery.

    The result is independent of ``threads``: tasks are deterministic and
    their contributions are merged in construction order.
    """
    if suite_id not in SUITE_IDS:
        raise ValueError(
            f"unknown suite {suite_id!r}; valid identifiers: "
            f"{', '.join(SUITE_IDS)}"
        )
    if threads < 1:
        raise ValueError("threads must be at least 1")
    alphas = tuple(Fraction(a) for a in alphas)
    fixture_list = tuple(fixtures) if fixtures is not None \
        else battery(seed, random_count)
    params = (
        ("seed", str(seed)),
        ("fixtures", str(len(fixture_list))),
        ("alphas", ",".join(str(a) for a in alphas)),
        ("kappas", ",".join(kappa_tags)),
    )
    if suite_id == "all":
        outcomes: list[ClauseOutcome] = []
        for sub in SUITE_IDS[:-1]:
            res = run_theorem_suite(
                sub, seed=seed, random_count=random_count, alphas=alphas,
                kappa_tags=kappa_tags, threads=threads,
                max_counterexamples=max_counterexamples,
                fixtures=fixture_list)
            for o in res.outcomes:
                outcomes.append(ClauseOutcome(
                    f"{sub}:{o.clause}", o.holds, o.checked,
                    o.counterexamples, o.gates, o.note))
        return SuiteResult("all", tuple(outcomes), params)

    kappas = tuple((tag, _kappa_from_tag(tag)) for tag in kappa_tags)
    tasks = _build_tasks(suite_id, fixture_list, kappas, alphas)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: t[1](), tasks))
    else:
        results = [run() for _, run in tasks]
    return SuiteResult(suite_id,
                       _merge(suite_id, results, max_counterexamples),
                       params)


def counterexample_to_json(ce: Counterexample) -> dict:
    return {
        "fixture": ce.fixture,
        "kappa": ce.kappa,
        "alpha": ce.alpha,
        "bindings": {name: list(values) for name, values in ce.bindings},
    }


def suite_result_to_json(result: SuiteResult) -> dict:
    return {
        "suite": result.suite,
        "parameters": {k: v for k, v in result.parameters},
        "outcomes": [
            {
                "clause": o.clause,
                "holds": o.holds,
                "checked": o.checked,
                "gates": {k: v for k, v in o.gates},
                "note": o.note,
                "counterexamples": [counterexample_to_json(ce)
                                    for ce in o.counterexamples],
            }
            for o in result.outcomes
        ],
    }


def diff_report_to_json(report: DiffReport) -> dict:
    return {
        "tables": [
            {
                "table": t.table_id,
                "columns": [
                    {
                        "column": c.column,
                        "matched": c.matched,
                        "total": c.total,
                        "mismatches": [
                            {"row": m.row, "engine": list(m.engine),
                             "reference": list(m.reference)}
                            for m in c.mismatches
                        ],
                    }
                    for c in t.columns
                ],
            }
            for t in report.tables
        ],
    }


def compare_with_expected(results: Iterable[SuiteResult]) -> tuple[str, ...]:
    """Compare suite verdicts against the shipped manifest.

    Only the suites actually present in ``results`` are compared. The
    return value lists every discrepancy; an empty tuple means the run
    reproduced the expected picture exactly, documented divergences
    included.
    """
    expected = load_expected_outcomes()
    actual: dict[str, bool] = {}
    suites_run: set[str] = set()
    for result in results:
        for o in result.outcomes:
            key = o.clause if ":" in o.clause else f"{result.suite}:{o.clause}"
            actual[key] = o.holds
            suites_run.add(key.split(":", 1)[0])
    mismatches = []
    relevant = {k: v for k, v in expected.items()
                if k.split(":", 1)[0] in suites_run}
    for key in sorted(set(relevant) | set(actual)):
        want = relevant.get(key)
        got = actual.get(key)
        if want is None:
            verdict = "holds" if got else "refuted"
            mismatches.append(
                f"{key}: no expected verdict in the manifest (got {verdict})")
        elif got is None:
            mismatches.append(
                f"{key}: expected {want} but the run produced no verdict")
        else:
            got_verdict = "holds" if got else "refuted"
            if got_verdict != want:
                mismatches.append(
                    f"{key}: expected {want}, got {got_verdict}")
    return tuple(mismatches)
