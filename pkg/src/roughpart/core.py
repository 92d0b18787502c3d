"""Finite universes, subsets, granulations, and structural axiom checks.

The engine works over an explicitly listed finite universe. Subsets are
immutable bitmask views (:class:`ESet`) bound to their universe, which keeps
exhaustive sweeps over powersets cheap enough for the verifier while staying
value-typed: two subsets are equal exactly when they contain the same
elements of the same universe.

A :class:`Granulation` is an ordered collection of distinct nonempty subsets
(the granules). Granulations can be given directly or derived from a binary
relation through :func:`build_neighborhood_granulation`.

Structural checks (:func:`check_ggs_axioms`, :func:`check_admissibility`)
evaluate the lattice-with-operators axioms and the granularity conditions of
the underlying framework for a supplied pair of approximation operators,
returning one :class:`CheckReport` per axiom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

EXHAUSTIVE_CAP = 24
TRIPLE_CAP = 12

CLOSURES = ("none", "reflexive", "symmetric", "tolerance", "equivalence")
NEIGHBORHOOD_MODES = ("predecessor", "successor")

Operator = Callable[["ESet"], "ESet"]

Binding = tuple[str, tuple[str, ...]]
Witness = tuple[Binding, ...]


class CapExceeded(ValueError):
    """An exhaustive sweep was requested over too large a powerset."""


def _check_cap(size: int, cap: int, override: bool, what: str) -> None:
    if size > cap and not override:
        raise CapExceeded(
            f"{what} over a universe of size {size} exceeds the cap of "
            f"{cap}; pass override=True to force it"
        )


@dataclass(frozen=True)
class Universe:
    """An ordered finite universe of distinct element names."""

    elements: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("universe elements must be distinct")
        for name in self.elements:
            if not isinstance(name, str) or not name:
                raise ValueError("universe elements must be nonempty strings")

    @classmethod
    def of(cls, names: Iterable[str]) -> "Universe":
        """Build a universe with elements in lexical order."""
        return cls(tuple(sorted(set(names))))

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise ValueError(f"unknown element {name!r}") from None

    def subset(self, names: Iterable[str] = ()) -> "ESet":
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return ESet(self, mask)

    def from_mask(self, mask: int) -> "ESet":
        return ESet(self, mask)

    @property
    def empty(self) -> "ESet":
        return ESet(self, 0)

    @property
    def full(self) -> "ESet":
        return ESet(self, self.full_mask)

    def subsets(self, *, cap: int = EXHAUSTIVE_CAP,
                override: bool = False) -> Iterator["ESet"]:
        """All subsets in mask order. Guarded by the exhaustive cap."""
        _check_cap(self.size, cap, override, "a powerset sweep")
        for mask in range(self.full_mask + 1):
            yield ESet(self, mask)


@dataclass(frozen=True)
class ESet:
    """An immutable subset of a universe, stored as a bitmask.

    Comparison operators follow set semantics: ``a <= b`` is inclusion and
    ``a < b`` proper inclusion. These are partial orders, so never sort
    instances directly; sort by ``.mask`` instead.
    """

    universe: Universe
    mask: int

    def __post_init__(self) -> None:
        if not 0 <= self.mask <= self.universe.full_mask:
            raise ValueError("subset mask out of range for its universe")

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(
            name for i, name in enumerate(self.universe.elements)
            if self.mask >> i & 1
        )

    @property
    def cardinality(self) -> int:
        return self.mask.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def label(self) -> str:
        """Canonical row label, e.g. ``{x1,x2}`` (members in universe order)."""
        return "{" + ",".join(self.members) + "}"

    def _coerce(self, other: "ESet") -> None:
        if other.universe != self.universe:
            raise ValueError("subsets belong to different universes")

    def __and__(self, other: "ESet") -> "ESet":
        self._coerce(other)
        return ESet(self.universe, self.mask & other.mask)

    def __or__(self, other: "ESet") -> "ESet":
        self._coerce(other)
        return ESet(self.universe, self.mask | other.mask)

    def __sub__(self, other: "ESet") -> "ESet":
        self._coerce(other)
        return ESet(self.universe, self.mask & ~other.mask)

    def complement(self) -> "ESet":
        return ESet(self.universe, self.universe.full_mask & ~self.mask)

    def __le__(self, other: "ESet") -> bool:
        self._coerce(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "ESet") -> bool:
        return self <= other and self.mask != other.mask

    def __ge__(self, other: "ESet") -> bool:
        return other <= self

    def __gt__(self, other: "ESet") -> bool:
        return other < self

    def __contains__(self, name: str) -> bool:
        return self.mask >> self.universe.index(name) & 1 == 1

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order, including 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


@dataclass(frozen=True)
class Granulation:
    """An ordered tuple of distinct nonempty granules over one universe."""

    universe: Universe
    granules: tuple[ESet, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for g in self.granules:
            if g.universe != self.universe:
                raise ValueError("granule bound to a different universe")
            if g.is_empty:
                raise ValueError("granules must be nonempty")
            if g.mask in seen:
                raise ValueError(f"duplicate granule {g.label()}")
            seen.add(g.mask)

    @classmethod
    def of(cls, universe: Universe,
           granules: Iterable[Iterable[str]]) -> "Granulation":
        """Normalize raw member lists: drop empty granules, keep first of
        any duplicates, preserve the given order otherwise."""
        out: list[ESet] = []
        seen: set[int] = set()
        for names in granules:
            g = universe.subset(names)
            if g.is_empty or g.mask in seen:
                continue
            seen.add(g.mask)
            out.append(g)
        return cls(universe, tuple(out))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(g.mask for g in self.granules)

    @property
    def union_mask(self) -> int:
        out = 0
        for g in self.granules:
            out |= g.mask
        return out

    @property
    def covers(self) -> bool:
        return self.union_mask == self.universe.full_mask

    def __len__(self) -> int:
        return len(self.granules)

    def __iter__(self) -> Iterator[ESet]:
        return iter(self.granules)

    def __contains__(self, item: ESet) -> bool:
        return any(g.mask == item.mask for g in self.granules)


@dataclass(frozen=True)
class RelationSpec:
    """A binary relation given by pairs plus a closure to apply.

    Closures: ``none`` keeps the pairs as given, ``reflexive`` adds every
    loop, ``symmetric`` adds every converse pair, ``tolerance`` is reflexive
    plus symmetric, and ``equivalence`` additionally closes transitively.
    """

    pairs: tuple[tuple[str, str], ...]
    closure: str = "none"

    def __post_init__(self) -> None:
        if self.closure not in CLOSURES:
            raise ValueError(
                f"unknown closure {self.closure!r}; valid: {', '.join(CLOSURES)}"
            )

    def closed_pairs(self, universe: Universe) -> frozenset[tuple[int, int]]:
        rel = {(universe.index(a), universe.index(b)) for a, b in self.pairs}
        if self.closure in ("reflexive", "tolerance", "equivalence"):
            rel |= {(i, i) for i in range(universe.size)}
        if self.closure in ("symmetric", "tolerance", "equivalence"):
            rel |= {(j, i) for i, j in rel}
        if self.closure == "equivalence":
            changed = True
            while changed:
                changed = False
                for i, j in list(rel):
                    for j2, k in list(rel):
                        if j == j2 and (i, k) not in rel:
                            rel.add((i, k))
                            changed = True
        return frozenset(rel)


def neighborhood_map(universe: Universe, relation: RelationSpec,
                     mode: str = "predecessor") -> tuple[tuple[str, ESet], ...]:
    """Per-element neighborhoods of the closed relation, in universe order.

    ``predecessor`` maps x to everything related INTO x; ``successor`` maps
    x to everything x relates to.
    """
    if mode not in NEIGHBORHOOD_MODES:
        raise ValueError(
            f"unknown neighborhood mode {mode!r}; "
            f"valid: {', '.join(NEIGHBORHOOD_MODES)}"
        )
    rel = relation.closed_pairs(universe)
    out = []
    for i, name in enumerate(universe.elements):
        if mode == "predecessor":
            mask = sum(1 << j for j, k in rel if k == i)
        else:
            mask = sum(1 << k for j, k in rel if j == i)
        out.append((name, ESet(universe, mask)))
    return tuple(out)


def build_neighborhood_granulation(universe: Universe, relation: RelationSpec,
                                   mode: str = "predecessor") -> Granulation:
    """Granulation made of the distinct nonempty neighborhoods."""
    nbhd = neighborhood_map(universe, relation, mode)
    return Granulation.of(universe, (n.members for _, n in nbhd))


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check: a verdict plus refuting witnesses.

    A witness is a tuple of (variable, members) bindings; re-evaluating the
    checked statement at any listed witness falsifies it.
    """

    name: str
    holds: bool
    witnesses: tuple[Witness, ...] = ()
    universe_size: int = 0
    parameters: tuple[tuple[str, str], ...] = ()

    def witness_dicts(self) -> list[dict[str, tuple[str, ...]]]:
        return [dict(w) for w in self.witnesses]


def binding(name: str, value: ESet) -> Binding:
    return (name, value.members)


class _Memo:
    """Memoized view of an operator, keyed by mask."""

    def __init__(self, universe: Universe, op: Operator) -> None:
        self.universe = universe
        self.op = op
        self.cache: dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        got = self.cache.get(mask)
        if got is None:
            got = self.op(ESet(self.universe, mask)).mask
            self.cache[mask] = got
        return got


def check_ggs_axioms(universe: Universe, granulation: Granulation,
                     lower: Operator, upper: Operator, *,
                     max_witnesses: int = 3, cap: int = EXHAUSTIVE_CAP,
                     override: bool = False) -> tuple[CheckReport, ...]:
    """Evaluate the framework's structural axioms for a set instantiation.

    The parthood is inclusion and the lattice operations are union and
    intersection, so the order axioms are tautologies here; they are still
    evaluated so that a report covers the whole axiom list uniformly.
    Operator axioms (UL1, UL2, UL3, TB) genuinely depend on ``lower`` and
    ``upper``.
    """
    _check_cap(universe.size, cap, override, "the structural axiom check")
    _check_cap(universe.size, TRIPLE_CAP, override,
               "the distributivity triple check")
    lo = _Memo(universe, lower)
    up = _Memo(universe, upper)
    n = universe.full_mask
    reports: list[CheckReport] = []

    def report(name: str, failures: list[Witness]) -> None:
        reports.append(CheckReport(
            name=name, holds=not failures,
            witnesses=tuple(failures[:max_witnesses]),
            universe_size=universe.size,
        ))

    def w(**kw: ESet) -> Witness:
        return tuple(binding(k, v) for k, v in kw.items())

    def ev(m: int) -> ESet:
        return ESet(universe, m)

    masks = range(n + 1)

    fails: list[Witness] = []
    # PT1 and PT2: inclusion is reflexive and antisymmetric.
    report("PT1", [w(a=ev(a)) for a in masks if a & ~a])
    for a in masks:
        for b in masks:
            if a & ~b == 0 and b & ~a == 0 and a != b:
                fails.append(w(a=ev(a), b=ev(b)))
    report("PT2", fails)

    fails = []
    for a in masks:
        for b in masks:
            if (a | b) != (b | a) or (a & b) != (b & a):
                fails.append(w(a=ev(a), b=ev(b)))
    report("G1", fails)

    fails = []
    for a in masks:
        for b in masks:
            if (a | (a & b)) != a or (a & (a | b)) != a:
                fails.append(w(a=ev(a), b=ev(b)))
    report("G2", fails)

    g3_fails: list[Witness] = []
    g4_fails: list[Witness] = []
    for a in masks:
        for b in masks:
            ab_and, ab_or = a & b, a | b
            for c in masks:
                if (ab_and | c) != ((a | c) & (b | c)):
                    g3_fails.append(w(a=ev(a), b=ev(b), c=ev(c)))
                if (ab_or & c) != ((a & c) | (b & c)):
                    g4_fails.append(w(a=ev(a), b=ev(b), c=ev(c)))
    report("G3", g3_fails)
    report("G4", g4_fails)

    fails = []
    for a in masks:
        for b in masks:
            le = a & ~b == 0
            if ((a | b == b) != le) or ((a & b == a) != le):
                fails.append(w(a=ev(a), b=ev(b)))
    report("G5", fails)

    fails = []
    for a in masks:
        la = lo(a)
        ua = up(a)
        if la & ~a or lo(la) != la or ua & ~up(ua):
            fails.append(w(a=ev(a)))
    report("UL1", fails)

    fails = []
    for b in masks:
        for a in iter_submasks(b):
            if lo(a) & ~lo(b) or up(a) & ~up(b):
                fails.append(w(a=ev(a), b=ev(b)))
    report("UL2", fails)

    fails = []
    if lo(0) != 0 or up(0) != 0 or lo(n) & ~n or up(n) & ~n:
        fails.append(w(bottom=ev(0), top=ev(n)))
    report("UL3", fails)

    report("TB", [w(a=ev(a)) for a in masks if 0 & ~a or a & ~n])
    return tuple(reports)


def check_admissibility(universe: Universe, granulation: Granulation,
                        lower: Operator, upper: Operator, *,
                        max_witnesses: int = 3, cap: int = EXHAUSTIVE_CAP,
                        override: bool = False) -> tuple[CheckReport, ...]:
    """Check the three granularity conditions for the operator pair.

    The first demands that every approximation is a union of granules, the
    second that a granule inside a set survives into its lower
    approximation, and the third that every two granules sit properly
    inside some common subset that is its own lower and upper
    approximation.
    """
    _check_cap(universe.size, cap, override, "the admissibility check")
    lo = _Memo(universe, lower)
    up = _Memo(universe, upper)
    gmasks = granulation.masks
    n = universe.full_mask
    reports: list[CheckReport] = []

    def union_of_contained(value: int) -> int:
        out = 0
        for g in gmasks:
            if g & ~value == 0:
                out |= g
        return out

    fails: list[Witness] = []
    for a in range(n + 1):
        for tag, v in (("lower", lo(a)), ("upper", up(a))):
            if union_of_contained(v) != v:
                fails.append((binding("a", ESet(universe, a)),
                              ("operator", (tag,)),
                              binding("value", ESet(universe, v))))
    reports.append(CheckReport("weak-representability", not fails,
                               tuple(fails[:max_witnesses]), universe.size))

    fails = []
    for g in gmasks:
        for a in range(n + 1):
            if g & ~a == 0 and g & ~lo(a):
                fails.append((binding("granule", ESet(universe, g)),
                              binding("a", ESet(universe, a))))
    reports.append(CheckReport("lower-stability", not fails,
                               tuple(fails[:max_witnesses]), universe.size))

    definite = [z for z in range(n + 1) if lo(z) == z and up(z) == z]
    fails = []
    for g in gmasks:
        for h in gmasks:
            if not any(g & ~z == 0 and h & ~z == 0 and z != g and z != h
                       for z in definite):
                fails.append((binding("granule1", ESet(universe, g)),
                              binding("granule2", ESet(universe, h))))
    reports.append(CheckReport("mereological-fullness", not fails,
                               tuple(fails[:max_witnesses]), universe.size))
    return tuple(reports)
