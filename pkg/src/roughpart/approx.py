"""Granular approximation operators: classical, precision-tuned, and graded.

Every operator aggregates granules. The classical pair uses containment
and overlap. The precision-tuned family replaces those tests with an
inclusion measure held against a threshold derived from a precision
``alpha`` in [0, 1/2): the measure is always evaluated with the
approximated set as its first argument. The starred variants drop the
containment and overlap clauses entirely, keeping only the measure test,
which changes behavior on sets the granulation cannot see. The graded
family counts shared elements against an integer grade instead.

A pointwise pair evaluates elementwise through a neighborhood map rather
than by aggregating whole granules.

All arithmetic is exact; thresholds are :class:`~fractions.Fraction`
values and never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import ESet, Granulation, Universe
from .inclusion import InclusionFn, kappa_k0

HALF = Fraction(1, 2)

OPERATOR_IDS = (
    "l", "u", "u_b",
    "l_alpha", "u_alpha", "neg_alpha",
    "l_alpha_star", "u_alpha_star",
    "l_alpha_pt", "u_alpha_pt",
    "l_grade", "l_grade_strict", "u_grade",
)

NeighborhoodMap = Sequence[tuple[str, ESet]]


def require_alpha(alpha: Fraction | int | str) -> Fraction:
    """Validate a precision value: exact, in [0, 1/2)."""
    a = Fraction(alpha)
    if not 0 <= a < HALF:
        raise ValueError("alpha must lie in [0, 1/2)")
    return a


def require_grade(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise ValueError("grade must be a nonnegative integer")
    return k


def _bind(x: ESet, granulation: Granulation) -> None:
    if x.universe != granulation.universe:
        raise ValueError("set and granulation belong to different universes")


def classical_lower(x: ESet, granulation: Granulation) -> ESet:
    """Union of the granules contained in ``x``."""
    _bind(x, granulation)
    out = 0
    for g in granulation:
        if g.mask & ~x.mask == 0:
            out |= g.mask
    return ESet(x.universe, out)


def classical_upper(x: ESet, granulation: Granulation) -> ESet:
    """Union of the granules meeting ``x``."""
    _bind(x, granulation)
    out = 0
    for g in granulation:
        if g.mask & x.mask:
            out |= g.mask
    return ESet(x.universe, out)


def bited_upper(x: ESet, granulation: Granulation) -> ESet:
    """Classical upper approximation minus the lower approximation of the
    complement. Trims the upper estimate by everything that definitely
    belongs outside."""
    _bind(x, granulation)
    return classical_upper(x, granulation) - classical_lower(
        x.complement(), granulation)


def _kappa_or_default(kappa: InclusionFn | None) -> InclusionFn:
    return kappa if kappa is not None else kappa_k0()


def vprs_lower(x: ESet, granulation: Granulation,
               kappa: InclusionFn | None = None,
               alpha: Fraction | int | str = 0) -> ESet:
    """Granules inside ``x`` whose measured share of ``x`` reaches
    ``1 - alpha``.

    The measure reads the approximated set first, so a granule counts
    when it captures enough of ``x``, not when enough of the granule lies
    inside ``x``. At ``alpha = 0`` this is far stricter than the classical
    lower approximation: only a granule equal to ``x`` qualifies."""
    _bind(x, granulation)
    kappa = _kappa_or_default(kappa)
    threshold = 1 - require_alpha(alpha)
    out = 0
    for g in granulation:
        if g.mask & ~x.mask == 0 and \
                kappa.on_masks(x.universe, x.mask, g.mask) >= threshold:
            out |= g.mask
    return ESet(x.universe, out)


def vprs_upper(x: ESet, granulation: Granulation,
               kappa: InclusionFn | None = None,
               alpha: Fraction | int | str = 0) -> ESet:
    """Granules meeting ``x`` whose measured share exceeds ``alpha``."""
    _bind(x, granulation)
    kappa = _kappa_or_default(kappa)
    alpha = require_alpha(alpha)
    out = 0
    for g in granulation:
        if g.mask & x.mask and \
                kappa.on_masks(x.universe, x.mask, g.mask) > alpha:
            out |= g.mask
    return ESet(x.universe, out)


def vprs_negative(x: ESet, granulation: Granulation,
                  kappa: InclusionFn | None = None,
                  alpha: Fraction | int | str = 0) -> ESet:
    """Granules meeting ``x`` whose measured share stays at or below
    ``alpha``: the confidently rejected region."""
    _bind(x, granulation)
    kappa = _kappa_or_default(kappa)
    alpha = require_alpha(alpha)
    out = 0
    for g in granulation:
        if g.mask & x.mask and \
                kappa.on_masks(x.universe, x.mask, g.mask) <= alpha:
            out |= g.mask
    return ESet(x.universe, out)


@dataclass(frozen=True)
class Regions:
    """Positive, negative, and boundary regions of a precision-tuned pair."""

    lower: ESet
    upper: ESet
    positive: ESet
    negative: ESet
    boundary: ESet


def vprs_regions(x: ESet, granulation: Granulation,
                 kappa: InclusionFn | None = None,
                 alpha: Fraction | int | str = 0) -> Regions:
    lo = vprs_lower(x, granulation, kappa, alpha)
    up = vprs_upper(x, granulation, kappa, alpha)
    neg = vprs_negative(x, granulation, kappa, alpha)
    return Regions(lower=lo, upper=up, positive=lo, negative=neg,
                   boundary=up - lo)


def vprs_star_lower(x: ESet, granulation: Granulation,
                    kappa: InclusionFn | None = None,
                    alpha: Fraction | int | str = 0) -> ESet:
    """Clause-free lower form: every granule whose measured share of ``x``
    reaches ``1 - alpha``, with no containment requirement. On the empty
    set the default measure reports full inclusion for every granule, so
    the result is the whole granulation's union; that is the intended
    reading, not an accident."""
    _bind(x, granulation)
    kappa = _kappa_or_default(kappa)
    threshold = 1 - require_alpha(alpha)
    out = 0
    for g in granulation:
        if kappa.on_masks(x.universe, x.mask, g.mask) >= threshold:
            out |= g.mask
    return ESet(x.universe, out)


def vprs_star_upper(x: ESet, granulation: Granulation,
                    kappa: InclusionFn | None = None,
                    alpha: Fraction | int | str = 0) -> ESet:
    """Clause-free upper form: granules whose measured share exceeds
    ``alpha``."""
    _bind(x, granulation)
    kappa = _kappa_or_default(kappa)
    alpha = require_alpha(alpha)
    out = 0
    for g in granulation:
        if kappa.on_masks(x.universe, x.mask, g.mask) > alpha:
            out |= g.mask
    return ESet(x.universe, out)


def _as_neighborhoods(universe: Universe,
                      neighborhoods: NeighborhoodMap | Mapping[str, ESet]
                      ) -> tuple[tuple[str, ESet], ...]:
    if isinstance(neighborhoods, Mapping):
        items = tuple(neighborhoods.items())
    else:
        items = tuple(neighborhoods)
    named = {name for name, _ in items}
    if named != set(universe.elements):
        raise ValueError("neighborhood map must cover the universe exactly")
    for name, n in items:
        if n.universe != universe:
            raise ValueError("neighborhood bound to a different universe")
    return items


def pointwise_lower(x: ESet, neighborhoods: NeighborhoodMap | Mapping[str, ESet],
                    kappa: InclusionFn | None = None,
                    alpha: Fraction | int | str = 0) -> ESet:
    """Elementwise lower region: the points whose neighborhood scores at
    least ``1 - alpha`` against ``x``."""
    kappa = _kappa_or_default(kappa)
    threshold = 1 - require_alpha(alpha)
    items = _as_neighborhoods(x.universe, neighborhoods)
    out = 0
    for name, n in items:
        if kappa.on_masks(x.universe, x.mask, n.mask) >= threshold:
            out |= 1 << x.universe.index(name)
    return ESet(x.universe, out)


def pointwise_upper(x: ESet, neighborhoods: NeighborhoodMap | Mapping[str, ESet],
                    kappa: InclusionFn | None = None,
                    alpha: Fraction | int | str = 0) -> ESet:
    """Elementwise upper region: the points whose neighborhood scores
    strictly above ``alpha`` against ``x``."""
    kappa = _kappa_or_default(kappa)
    alpha = require_alpha(alpha)
    items = _as_neighborhoods(x.universe, neighborhoods)
    out = 0
    for name, n in items:
        if kappa.on_masks(x.universe, x.mask, n.mask) > alpha:
            out |= 1 << x.universe.index(name)
    return ESet(x.universe, out)


def graded_upper(x: ESet, granulation: Granulation, k: int) -> ESet:
    """Granules sharing strictly more than ``k`` elements with ``x``."""
    _bind(x, granulation)
    k = require_grade(k)
    out = 0
    for g in granulation:
        if (g.mask & x.mask).bit_count() > k:
            out |= g.mask
    return ESet(x.universe, out)


def graded_lower(x: ESet, granulation: Granulation, k: int) -> ESet:
    """Granules leaking at most ``k`` elements outside ``x``. This is the
    deficit reading of the lower grade; it admits granules that barely
    touch ``x`` when they are small enough."""
    _bind(x, granulation)
    k = require_grade(k)
    out = 0
    for g in granulation:
        if (g.mask & ~x.mask).bit_count() <= k:
            out |= g.mask
    return ESet(x.universe, out)


def graded_lower_strict(x: ESet, granulation: Granulation, k: int) -> ESet:
    """Granules contained in ``x`` that also share strictly more than
    ``k`` elements with it: the containment reading of the lower grade."""
    _bind(x, granulation)
    k = require_grade(k)
    out = 0
    for g in granulation:
        if g.mask & ~x.mask == 0 and (g.mask & x.mask).bit_count() > k:
            out |= g.mask
    return ESet(x.universe, out)


@dataclass(frozen=True)
class GradedRegions:
    """Region split for a graded pair.

    The two boundary fields are one-sided differences: granule counting is
    not monotone enough to keep the deficit lower inside the upper, so
    both directions carry information.
    """

    lower: ESet
    upper: ESet
    positive: ESet
    negative: ESet
    boundary_upper: ESet
    boundary_lower: ESet


def graded_regions(x: ESet, granulation: Granulation, k: int) -> GradedRegions:
    lo = graded_lower(x, granulation, k)
    up = graded_upper(x, granulation, k)
    full = x.universe.full
    return GradedRegions(
        lower=lo, upper=up,
        positive=up & lo,
        negative=full - (lo | up),
        boundary_upper=up - lo,
        boundary_lower=lo - up,
    )


@dataclass(frozen=True)
class ApproxSpec:
    """A bound family of operators sharing one granulation and tuning.

    ``operator`` resolves an identifier from :data:`OPERATOR_IDS` to a
    one-argument callable. Pointwise identifiers need ``neighborhoods``.
    """

    granulation: Granulation
    kappa: InclusionFn | None = None
    alpha: Fraction = Fraction(0)
    k: int = 0
    neighborhoods: tuple[tuple[str, ESet], ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", require_alpha(self.alpha))
        require_grade(self.k)
        if self.neighborhoods is not None:
            object.__setattr__(
                self, "neighborhoods",
                _as_neighborhoods(self.granulation.universe,
                                  self.neighborhoods))

    def operator(self, op_id: str):
        g = self.granulation
        kap = self.kappa
        alpha = self.alpha
        k = self.k
        simple = {
            "l": lambda x: classical_lower(x, g),
            "u": lambda x: classical_upper(x, g),
            "u_b": lambda x: bited_upper(x, g),
            "l_alpha": lambda x: vprs_lower(x, g, kap, alpha),
            "u_alpha": lambda x: vprs_upper(x, g, kap, alpha),
            "neg_alpha": lambda x: vprs_negative(x, g, kap, alpha),
            "l_alpha_star": lambda x: vprs_star_lower(x, g, kap, alpha),
            "u_alpha_star": lambda x: vprs_star_upper(x, g, kap, alpha),
            "l_grade": lambda x: graded_lower(x, g, k),
            "l_grade_strict": lambda x: graded_lower_strict(x, g, k),
            "u_grade": lambda x: graded_upper(x, g, k),
        }
        if op_id in simple:
            return simple[op_id]
        if op_id in ("l_alpha_pt", "u_alpha_pt"):
            if self.neighborhoods is None:
                raise ValueError(
                    f"operator {op_id!r} needs a neighborhood map")
            nb = self.neighborhoods
            if op_id == "l_alpha_pt":
                return lambda x: pointwise_lower(x, nb, kap, alpha)
            return lambda x: pointwise_upper(x, nb, kap, alpha)
        raise ValueError(
            f"unknown operator {op_id!r}; valid identifiers: "
            f"{', '.join(OPERATOR_IDS)}"
        )
