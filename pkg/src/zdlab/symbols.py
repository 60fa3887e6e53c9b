"""Finite descriptions of self-maps of the positive integers and of bounded
weight sequences, with exactly decidable predicates.

A :class:`SelfMap` is a finite exception table plus a tail rule from a small
catalog (shift, block, power, const); a :class:`WeightSeq` is a finite
exception table of rationals plus a decaying/constant tail formula.  The
catalog is rich enough to express every worked example this package cares
about while keeping fibers, injectivity, surjectivity, zero sets and
bounded-away-from-zero questions exactly computable -- no floating point, no
heuristics.

All values are immutable after construction and every operation is pure, so
everything here is safe to share across threads without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

# Scan guard for searches that are mathematically guaranteed to terminate
# long before this bound with catalog tails.
_SCAN_LIMIT = 10_000_000


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n, or None when n is not a perfect power."""
    if n < 1:
        return None
    if k == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    r = round(n ** (1.0 / k))
    for m in range(max(1, r - 2), r + 3):
        if m**k == n:
            return m
    return None


# ---------------------------------------------------------------------------
# Tail rules for self-maps


@dataclass(frozen=True)
class Shift:
    """n -> n + s for a fixed integer s >= 0."""

    s: int

    def __post_init__(self) -> None:
        if self.s < 0:
            raise ValueError("shift amount must be >= 0")


@dataclass(frozen=True)
class Block:
    """n -> ceil(n / d) + c; collapses blocks of d consecutive integers."""

    d: int
    c: int = 0

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("block width must be >= 1")
        if self.c < 0:
            raise ValueError("block offset must be >= 0")


@dataclass(frozen=True)
class Power:
    """n -> n ** k for a fixed integer k >= 2."""

    k: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("power exponent must be >= 2")


@dataclass(frozen=True)
class ConstMap:
    """n -> c for every tail index."""

    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError("constant image must be a positive integer")


MapTail = Union[Shift, Block, Power, ConstMap]


# ---------------------------------------------------------------------------
# Fibers


@dataclass(frozen=True)
class FiberDescriptor:
    """Exact preimage set: a finite part plus an optional arithmetic tail.

    The tail progression (first, stride) is only produced by const tail
    rules, in which case the fiber is infinite.
    """

    finite_part: frozenset[int]
    tail_progression: tuple[int, int] | None = None

    def cardinality(self) -> int | float:
        if self.tail_progression is not None:
            return math.inf
        return len(self.finite_part)

    def is_empty(self) -> bool:
        return not self.finite_part and self.tail_progression is None

    def __contains__(self, m: int) -> bool:
        if m in self.finite_part:
            return True
        if self.tail_progression is not None:
            first, stride = self.tail_progression
            return m >= first and (m - first) % stride == 0
        return False

    def min_element(self) -> int | None:
        candidates = list(self.finite_part)
        if self.tail_progression is not None:
            candidates.append(self.tail_progression[0])
        return min(candidates) if candidates else None

    def elements_up_to(self, limit: int) -> list[int]:
        """Sorted fiber elements <= limit (always a finite list)."""
        elems = {m for m in self.finite_part if m <= limit}
        if self.tail_progression is not None:
            first, stride = self.tail_progression
            elems.update(range(first, limit + 1, stride))
        return sorted(elems)

    def elements_above(self, limit: int) -> tuple[list[int], tuple[int, int] | None]:
        """Finite elements > limit plus the progression clipped to > limit."""
        finite = sorted(m for m in self.finite_part if m > limit)
        prog = self.tail_progression
        if prog is not None:
            first, stride = prog
            while first <= limit:
                first += stride
            prog = (first, stride)
        return finite, prog


# ---------------------------------------------------------------------------
# Self-maps


@dataclass(frozen=True)
class SelfMap:
    """A self-map of {1, 2, 3, ...} given by exceptions plus a tail rule.

    ``exceptions`` must cover exactly the indices below ``tail_start``; the
    tail rule applies to every n >= tail_start.  This keeps the map total and
    every fiber exactly computable.
    """

    tail: MapTail
    tail_start: int = 1
    exceptions: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.tail_start < 1:
            raise ValueError("tail_start must be >= 1")
        exc = dict(self.exceptions)
        if set(exc) != set(range(1, self.tail_start)):
            raise ValueError(
                "exceptions must cover exactly the indices 1..tail_start-1"
            )
        for n, v in exc.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValueError(f"image of {n} must be a positive integer, got {v!r}")
        object.__setattr__(self, "exceptions", exc)

    # -- evaluation ---------------------------------------------------------

    def __call__(self, n: int) -> int:
        if n < 1:
            raise ValueError("domain is the positive integers")
        if n < self.tail_start:
            return self.exceptions[n]
        t = self.tail
        if isinstance(t, Shift):
            return n + t.s
        if isinstance(t, Block):
            return -(-n // t.d) + t.c
        if isinstance(t, Power):
            return n**t.k
        return t.c

    @staticmethod
    def identity() -> "SelfMap":
        return SelfMap(tail=Shift(0))

    # -- fibers -------------------------------------------------------------

    def fiber(self, n: int) -> FiberDescriptor:
        """The exact preimage { m : map(m) = n }."""
        if n < 1:
            raise ValueError("fiber index must be a positive integer")
        finite = {m for m, v in self.exceptions.items() if v == n}
        progression: tuple[int, int] | None = None
        t = self.tail
        if isinstance(t, Shift):
            m = n - t.s
            if m >= self.tail_start:
                finite.add(m)
        elif isinstance(t, Block):
            q = n - t.c
            if q >= 1:
                lo, hi = (q - 1) * t.d + 1, q * t.d
                finite.update(range(max(lo, self.tail_start), hi + 1))
        elif isinstance(t, Power):
            m = _iroot(n, t.k)
            if m is not None and m >= self.tail_start:
                finite.add(m)
        else:  # ConstMap
            if n == t.c:
                progression = (self.tail_start, 1)
        return FiberDescriptor(frozenset(finite), progression)

    # -- global predicates ---------------------------------------------------

    def fiber_bound(self) -> int | float:
        """sup over n of the fiber cardinality (inf exactly for const tails)."""
        t = self.tail
        if isinstance(t, ConstMap):
            return math.inf
        candidates = set(self.exceptions.values())
        if isinstance(t, Shift):
            candidates.add(self.tail_start + t.s)
        elif isinstance(t, Power):
            candidates.add(self.tail_start**t.k)
        else:  # Block: enough tail images to include a full block
            for m in range(self.tail_start, self.tail_start + 2 * t.d + 1):
                candidates.add(-(-m // t.d) + t.c)
        return max(self.fiber(n).cardinality() for n in candidates) if candidates else 0

    def is_injective(self) -> bool:
        return self.fiber_bound() <= 1

    def _tail_image_threshold(self) -> int | None:
        """Least value v such that the tail attains every integer >= v.

        None for power/const tails, whose images have gaps arbitrarily far out.
        """
        t = self.tail
        if isinstance(t, Shift):
            return self.tail_start + t.s
        if isinstance(t, Block):
            return -(-self.tail_start // t.d) + t.c
        return None

    def is_surjective(self) -> bool:
        threshold = self._tail_image_threshold()
        if threshold is None:
            return False
        taken = set(self.exceptions.values())
        return all(n in taken or not self.fiber(n).is_empty() for n in range(1, threshold))

    def first_empty_fiber(self) -> int | None:
        """Least n with empty fiber; None when the map is surjective."""
        if self.is_surjective():
            return None
        n = 1
        while n < _SCAN_LIMIT:
            if self.fiber(n).is_empty():
                return n
            n += 1
        raise RuntimeError("empty-fiber scan exceeded its guard")  # pragma: no cover

    def first_collision(self) -> tuple[int, int, int] | None:
        """Least n with at least two preimages, as (n, a, b) with a < b.

        Any collision involves two exceptions, an exception against the
        tail, or two tail indices; the candidate images of those cases are
        finitely many, so the minimum is exact without an unbounded scan.
        """
        if self.is_injective():
            return None
        candidates = set(self.exceptions.values())
        t = self.tail
        if isinstance(t, (Block, ConstMap)):
            width = t.d if isinstance(t, Block) else 1
            for m in range(self.tail_start, self.tail_start + 2 * width + 2):
                candidates.add(self(m))
        best = None
        for n in candidates:
            if self.fiber(n).cardinality() >= 2 and (best is None or n < best):
                best = n
        fd = self.fiber(best)
        if fd.tail_progression is not None:
            first, stride = fd.tail_progression
            elems = fd.elements_up_to(first + stride)
        else:
            elems = sorted(fd.finite_part)
        return best, elems[0], elems[1]

    # -- serialization -------------------------------------------------------

    def to_data(self) -> dict:
        t = self.tail
        if isinstance(t, Shift):
            tail = {"kind": "shift", "params": {"s": t.s}}
        elif isinstance(t, Block):
            tail = {"kind": "block", "params": {"d": t.d, "c": t.c}}
        elif isinstance(t, Power):
            tail = {"kind": "power", "params": {"k": t.k}}
        else:
            tail = {"kind": "const", "params": {"c": t.c}}
        return {
            "exceptions": dict(sorted(self.exceptions.items())),
            "tail_start": self.tail_start,
            "tail": tail,
        }


# ---------------------------------------------------------------------------
# Weight tail rules


@dataclass(frozen=True)
class ConstWeight:
    """n -> c."""

    c: Fraction


@dataclass(frozen=True)
class CPlusInv:
    """n -> c + a/n."""

    c: Fraction
    a: Fraction


@dataclass(frozen=True)
class Inv:
    """n -> a/n."""

    a: Fraction


@dataclass(frozen=True)
class Geom:
    """n -> a * r**n with |r| < 1."""

    a: Fraction
    r: Fraction

    def __post_init__(self) -> None:
        if abs(self.r) >= 1:
            raise ValueError("geometric ratio must satisfy |r| < 1")


WeightTail = Union[ConstWeight, CPlusInv, Inv, Geom]


@dataclass(frozen=True)
class ZeroSet:
    """Exact zero set of a weight sequence: finite indices plus an optional
    cofinite tail (every index >= ``cofinite_from`` is a zero)."""

    finite: frozenset[int]
    cofinite_from: int | None = None

    def is_empty(self) -> bool:
        return not self.finite and self.cofinite_from is None

    def __contains__(self, n: int) -> bool:
        if n in self.finite:
            return True
        return self.cofinite_from is not None and n >= self.cofinite_from

    def min_element(self) -> int | None:
        candidates = list(self.finite)
        if self.cofinite_from is not None:
            candidates.append(self.cofinite_from)
        return min(candidates) if candidates else None

    def elements_up_to(self, limit: int) -> list[int]:
        elems = {n for n in self.finite if n <= limit}
        if self.cofinite_from is not None:
            elems.update(range(self.cofinite_from, limit + 1))
        return sorted(elems)

    def contains_fiber(self, fd: FiberDescriptor) -> bool:
        """Whether the whole (possibly infinite) fiber lies in the zero set."""
        if fd.tail_progression is not None:
            if self.cofinite_from is None:
                return False
            first, stride = fd.tail_progression
            for m in range(first, self.cofinite_from, stride):
                if m not in self.finite:
                    return False
        return all(m in self for m in fd.finite_part)


@dataclass(frozen=True)
class WeightSeq:
    """A bounded rational sequence: exceptions below ``tail_start``, catalog
    tail formula from ``tail_start`` on.

    Boundedness is automatic for every catalog tail, and the rational values
    make zero tests exact.
    """

    tail: WeightTail
    tail_start: int = 1
    exceptions: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.tail_start < 1:
            raise ValueError("tail_start must be >= 1")
        exc = {n: Fraction(v) for n, v in dict(self.exceptions).items()}
        if set(exc) != set(range(1, self.tail_start)):
            raise ValueError(
                "exceptions must cover exactly the indices 1..tail_start-1"
            )
        object.__setattr__(self, "exceptions", exc)

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("domain is the positive integers")
        if n < self.tail_start:
            return self.exceptions[n]
        t = self.tail
        if isinstance(t, ConstWeight):
            return t.c
        if isinstance(t, CPlusInv):
            return t.c + t.a / n
        if isinstance(t, Inv):
            return t.a / n
        return t.a * t.r**n

    @staticmethod
    def constant(c: Fraction | int) -> "WeightSeq":
        return WeightSeq(tail=ConstWeight(Fraction(c)))

    @staticmethod
    def one() -> "WeightSeq":
        return WeightSeq.constant(1)

    def is_constant_one(self) -> bool:
        return (
            isinstance(self.tail, ConstWeight)
            and self.tail.c == 1
            and all(v == 1 for v in self.exceptions.values())
        )

    # -- exact predicates ----------------------------------------------------

    def zero_set(self) -> ZeroSet:
        zeros = {n for n, v in self.exceptions.items() if v == 0}
        cofinite: int | None = None
        t = self.tail
        if isinstance(t, ConstWeight):
            if t.c == 0:
                cofinite = self.tail_start
        elif isinstance(t, CPlusInv):
            if t.c == 0 and t.a == 0:
                cofinite = self.tail_start
            elif t.c != 0 and t.a != 0:
                root = -t.a / t.c
                if root.denominator == 1 and root >= self.tail_start:
                    zeros.add(int(root))
        elif isinstance(t, Inv):
            if t.a == 0:
                cofinite = self.tail_start
        else:  # Geom
            if t.a == 0 or t.r == 0:
                cofinite = self.tail_start
        return ZeroSet(frozenset(zeros), cofinite)

    def is_bounded_away_from_zero(self) -> bool:
        """Exactly decides inf |u(n)| > 0 from the tail catalog."""
        if any(v == 0 for v in self.exceptions.values()):
            return False
        t = self.tail
        if isinstance(t, ConstWeight):
            return t.c != 0
        if isinstance(t, CPlusInv):
            # tail values converge to c; only an exact zero can spoil inf > 0
            return t.c != 0 and self.zero_set().is_empty()
        return False  # Inv and Geom tails tend to zero (or vanish outright)

    def sup_norm(self) -> Fraction:
        """sup |u(n)|, exact (the catalog makes the tail sup attainable)."""
        best = max((abs(v) for v in self.exceptions.values()), default=Fraction(0))
        t = self.tail
        ts = self.tail_start
        if isinstance(t, ConstWeight):
            tail_sup = abs(t.c)
        elif isinstance(t, CPlusInv):
            # |c + a/n| is monotone in n, extremes at n = tail_start and n -> inf
            tail_sup = max(abs(t.c + t.a / ts), abs(t.c))
        elif isinstance(t, Inv):
            tail_sup = abs(t.a) / ts
        else:
            tail_sup = abs(t.a) * abs(t.r) ** ts
        return max(best, tail_sup)

    def is_lp_summable(self, p: Fraction) -> bool:
        """Whether sum |u(n)|**p converges, for finite p >= 1 (exceptions are
        finitely many and never matter)."""
        if p < 1:
            raise ValueError("exponent must satisfy p >= 1")
        t = self.tail
        if isinstance(t, ConstWeight):
            return t.c == 0
        if isinstance(t, CPlusInv):
            return t.c == 0 and (t.a == 0 or p > 1)
        if isinstance(t, Inv):
            return t.a == 0 or p > 1
        return True  # Geom

    def scaled(self, factor: Fraction) -> "WeightSeq":
        """The rescaled sequence n -> factor * u(n); the catalog is closed
        under rescaling."""
        factor = Fraction(factor)
        t = self.tail
        if isinstance(t, ConstWeight):
            tail: WeightTail = ConstWeight(factor * t.c)
        elif isinstance(t, CPlusInv):
            tail = CPlusInv(factor * t.c, factor * t.a)
        elif isinstance(t, Inv):
            tail = Inv(factor * t.a)
        else:
            tail = Geom(factor * t.a, t.r)
        return WeightSeq(
            tail=tail,
            tail_start=self.tail_start,
            exceptions={n: factor * v for n, v in self.exceptions.items()},
        )

    # -- serialization -------------------------------------------------------

    def to_data(self) -> dict:
        from .rational import format_rational

        t = self.tail
        if isinstance(t, ConstWeight):
            tail = {"kind": "const", "params": {"c": format_rational(t.c)}}
        elif isinstance(t, CPlusInv):
            tail = {
                "kind": "c_plus_inv",
                "params": {"c": format_rational(t.c), "a": format_rational(t.a)},
            }
        elif isinstance(t, Inv):
            tail = {"kind": "inv", "params": {"a": format_rational(t.a)}}
        else:
            tail = {
                "kind": "geom",
                "params": {"a": format_rational(t.a), "r": format_rational(t.r)},
            }
        return {
            "exceptions": {
                n: format_rational(v) for n, v in sorted(self.exceptions.items())
            },
            "tail_start": self.tail_start,
            "tail": tail,
        }


def first_fiber_inside_zero_set(symbol: SelfMap, zeros: ZeroSet) -> int | None:
    """Least n whose fiber is nonempty and contained in the zero set.

    Every qualifying n is the image of a zero index, so it suffices to test
    the images of all finite zeros plus a window of the cofinite zero region.
    The window is wide enough that whenever a qualifying n draws only on
    zeros beyond it, some in-window index also qualifies; tail images are
    monotone in the index, so the minimum over these candidates is the exact
    global minimum.
    """
    if zeros.is_empty():
        return None
    width = symbol.tail.d if isinstance(symbol.tail, Block) else 1
    horizon = (
        max(symbol.tail_start, zeros.cofinite_from or 0)
        + width * (len(symbol.exceptions) + 3)
        + 4
    )
    candidates = set(zeros.finite) | set(zeros.elements_up_to(horizon))
    best: int | None = None
    for m in sorted(candidates):
        n = symbol(m)
        if zeros.contains_fiber(symbol.fiber(n)) and (best is None or n < best):
            best = n
    return best
