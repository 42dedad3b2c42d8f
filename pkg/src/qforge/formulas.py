"""Exact integer arithmetic for minimum quadrangulation orders.

Every ceiling or floor of a square-root expression is evaluated through
integer-square comparisons; no floating point is used anywhere in this
module, so results stay exact for arbitrarily large genus.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

__all__ = [
    "MinOrderResult",
    "isqrt",
    "min_spine_size",
    "half_order_cap",
    "bounds_agree",
    "complete_spine_order",
    "order_lower_bound",
    "spinal_min_order",
    "certified_minimal",
    "min_order",
    "spectrum",
]

# Minimum quadrangulation orders for the sphere, torus, and double torus.
# These three are settled directly; the general machinery starts at genus 3.
_SMALL_GENUS_MIN_ORDER = {0: 4, 1: 5, 2: 7}


@dataclass(frozen=True)
class MinOrderResult:
    """Minimum order of a quadrangulation of the genus-g orientable surface,
    either pinned exactly or bracketed by proven lower/upper bounds.

    ``source`` names the rule that settled the result: "small-genus-table",
    "complete-spine", "matched-bounds", or "bounds".
    """

    genus: int
    kind: str  # "exact" or "bounds"
    value: int | None = None
    lower: int | None = None
    upper: int | None = None
    source: str = ""

    def __post_init__(self) -> None:
        if self.kind == "exact":
            if self.value is None:
                raise ValueError("exact result needs a value")
        elif self.kind == "bounds":
            if self.lower is None or self.upper is None:
                raise ValueError("bounds result needs lower and upper")
            if self.lower > self.upper:
                raise ValueError("lower bound exceeds upper bound")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")


def _ceil_sqrt(n: int) -> int:
    """Smallest s with s*s >= n, for n >= 0."""
    s = isqrt(n)
    return s if s * s == n else s + 1


def min_spine_size(genus: int) -> int:
    """Smallest p >= 2 whose complete graph has cycle rank at least g.

    Equivalently the least p with (p-1)(p-2)/2 >= genus, found as the least
    p with (2p-3)^2 >= 8*genus+1.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    s = _ceil_sqrt(8 * genus + 1)
    return max((s + 4) // 2, 2)


def half_order_cap(genus: int) -> int:
    """Largest q with (4q-7)^2 <= 32*genus-15.

    This is the biggest half-order an even-order quadrangulation of genus g
    can have while the vertex-count lower bound still reaches it; when it
    meets min_spine_size, the minimum order is pinned exactly.
    """
    if genus < 1:
        raise ValueError("genus must be at least 1")
    return (isqrt(32 * genus - 15) + 7) // 4


def bounds_agree(genus: int) -> bool:
    """True when the spinal upper bound meets the vertex-count lower bound,
    pinning the minimum order at genus g; defined for genus >= 3."""
    if genus < 3:
        raise ValueError("bounds_agree applies to genus >= 3 only")
    return min_spine_size(genus) == half_order_cap(genus)


def complete_spine_order(genus: int) -> tuple[int, int] | None:
    """If g equals the cycle rank of a complete graph K_p with p >= 4,
    return (2p, p): that spinal quadrangulation is minimal.  Else None."""
    if genus < 1:
        raise ValueError("genus must be at least 1")
    s = isqrt(8 * genus + 1)
    if s * s != 8 * genus + 1:
        return None
    p = (3 + s) // 2
    if p < 4:
        return None
    return (2 * p, p)


def order_lower_bound(genus: int) -> int:
    """Smallest n with (2n-5)^2 >= 32*genus-7.

    No genus-g quadrangulation can have fewer vertices: the forced edge
    count 2(n-2+2g) would exceed what a simple graph on n vertices holds.
    """
    if genus < 1:
        raise ValueError("genus must be at least 1; genus 0 is table-driven")
    s = _ceil_sqrt(32 * genus - 7)
    return (s + 6) // 2


def spinal_min_order(genus: int) -> int:
    """Minimum order over spinal quadrangulations of genus g: twice the
    smallest usable spine size."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    return 2 * min_spine_size(genus)


def certified_minimal(p: int, m: int) -> bool:
    """Whether the spinal quadrangulation whose spine is K_p minus m edges
    is certified minimal for its surface.

    The certificate needs p >= 4(m+1) and positive genus; outside that range
    nothing is claimed either way.
    """
    if p < 2:
        raise ValueError("spine needs at least 2 vertices")
    rank = (p - 1) * (p - 2) // 2
    if not 0 <= m <= rank:
        raise ValueError(f"m must be in 0..{rank} for a {p}-vertex spine")
    return p >= 4 * (m + 1) and rank - m >= 1


def min_order(genus: int) -> MinOrderResult:
    """Minimum order of a quadrangulation of the genus-g orientable surface.

    Known exactly for genus 0..2, and for any genus where the lower and
    spinal upper bounds meet (in particular whenever a complete spine fits
    the genus exactly); otherwise the two proven bounds are returned
    unresolved, never a guess.
    """
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if genus <= 2:
        return MinOrderResult(
            genus, "exact", value=_SMALL_GENUS_MIN_ORDER[genus], source="small-genus-table"
        )
    spine = complete_spine_order(genus)
    if bounds_agree(genus):
        value = 2 * min_spine_size(genus)
        if spine is not None and spine[0] != value:
            raise RuntimeError("exact rules disagree; arithmetic defect")
        source = "complete-spine" if spine is not None else "matched-bounds"
        return MinOrderResult(genus, "exact", value=value, source=source)
    if spine is not None:
        # A complete spine of matching rank always pins the bounds together.
        raise RuntimeError("complete spine without matching bounds; arithmetic defect")
    return MinOrderResult(
        genus,
        "bounds",
        lower=order_lower_bound(genus),
        upper=spinal_min_order(genus),
        source="bounds",
    )


def spectrum(genus: int, p_max: int) -> list[int]:
    """All orders 2p with 2 <= p <= p_max realizable by a spinal
    quadrangulation of genus g, ascending."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    if p_max < 2:
        raise ValueError("p_max must be at least 2")
    return [2 * p for p in range(2, p_max + 1) if (p - 1) * (p - 2) // 2 >= genus]
