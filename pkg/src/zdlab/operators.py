"""Finite truncations of weighted composition operators on little-lp spaces.

A weighted composition operator acts by (T f)(m) = u(m) * f(map(m)).  Its
N-by-N truncation keeps exact rational entries; rows whose image leaves the
window are zeroed, and callers that need a faithful window compute one from
the tail rules before trusting a truncated product.

Matrix entries and matrix-vector/matrix-matrix products are exact; only
operator norms go through floating point (and only where no exact formula
exists: the p = 2 norm uses power iteration on the Gram matrix, general
p in (1, inf) is reported as a certified interval).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .rational import format_rational
from .symbols import SelfMap, WeightSeq

Exponent = Fraction | float  # a Fraction >= 1, or math.inf

_POWER_SEED = 0x5EED1


def exponent_key(p: Exponent) -> str:
    return "inf" if p == math.inf else format_rational(p)


def _check_exponent(p: Exponent) -> Exponent:
    if p == math.inf:
        return math.inf
    p = Fraction(p)
    if p < 1:
        raise ValueError("exponent must satisfy p >= 1")
    return p


@dataclass(frozen=True)
class OperatorSpec:
    """Symbol data (weight, self-map, exponent) of a weighted composition
    operator.  The plain composition operator is the weight-one case and the
    multiplication operator is the identity-map case."""

    weight: WeightSeq
    symbol: SelfMap
    p: Exponent

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_exponent(self.p))

    @staticmethod
    def composition(symbol: SelfMap, p: Exponent) -> "OperatorSpec":
        return OperatorSpec(WeightSeq.one(), symbol, p)

    @staticmethod
    def multiplication(weight: WeightSeq, p: Exponent) -> "OperatorSpec":
        return OperatorSpec(weight, SelfMap.identity(), p)

    def scaled(self, factor: Fraction) -> "OperatorSpec":
        return OperatorSpec(self.weight.scaled(factor), self.symbol, self.p)


@dataclass(frozen=True)
class TruncatedOperator:
    """An N-by-N exact rational matrix tagged with the ambient exponent.

    Rows are stored sparsely (column -> value, 1-based); assembled weighted
    composition truncations have at most one entry per row, and products of
    such matrices stay sparse.
    """

    dim: int
    p: Exponent
    rows: tuple[dict[int, Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _check_exponent(self.p))
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.rows) != self.dim:
            raise ValueError("row count must equal dim")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[dict[int, Fraction]], p: Exponent) -> "TruncatedOperator":
        clean = tuple(
            {j: Fraction(v) for j, v in row.items() if v != 0} for row in rows
        )
        return TruncatedOperator(len(clean), p, clean)

    @staticmethod
    def from_dense(entries: Sequence[Sequence[Fraction | int]], p: Exponent) -> "TruncatedOperator":
        rows = [
            {j + 1: Fraction(v) for j, v in enumerate(row) if v != 0}
            for row in entries
        ]
        return TruncatedOperator.from_rows(rows, p)

    @staticmethod
    def zeros(dim: int, p: Exponent) -> "TruncatedOperator":
        return TruncatedOperator(dim, p, tuple({} for _ in range(dim)))

    @staticmethod
    def identity(dim: int, p: Exponent) -> "TruncatedOperator":
        return TruncatedOperator(dim, p, tuple({m: Fraction(1)} for m in range(1, dim + 1)))

    @staticmethod
    def diagonal(values: Sequence[Fraction], p: Exponent) -> "TruncatedOperator":
        rows = [
            {m: Fraction(v)} if v != 0 else {}
            for m, v in enumerate(values, start=1)
        ]
        return TruncatedOperator(len(rows), p, tuple(rows))

    # -- access --------------------------------------------------------------

    def entry(self, m: int, n: int) -> Fraction:
        if not (1 <= m <= self.dim and 1 <= n <= self.dim):
            raise IndexError("matrix indices are 1-based and bounded by dim")
        return self.rows[m - 1].get(n, Fraction(0))

    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def to_dense(self) -> list[list[Fraction]]:
        zero = Fraction(0)
        out = []
        for row in self.rows:
            dense = [zero] * self.dim
            for j, v in row.items():
                dense[j - 1] = v
            out.append(dense)
        return out

    def to_numpy(self) -> np.ndarray:
        arr = np.zeros((self.dim, self.dim))
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                arr[i, j - 1] = float(v)
        return arr

    def to_csv(self) -> str:
        """Dense CSV, row-major, entries as exact rational strings."""
        lines = [
            ",".join(format_rational(v) for v in row) for row in self.to_dense()
        ]
        return "\n".join(lines) + "\n"

    def transpose(self) -> "TruncatedOperator":
        rows: list[dict[int, Fraction]] = [{} for _ in range(self.dim)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                rows[j - 1][i + 1] = v
        return TruncatedOperator(self.dim, self.p, tuple(rows))

    # -- exact algebra --------------------------------------------------------

    def apply(self, x: Sequence[Fraction | int]) -> list[Fraction]:
        """Exact matrix-vector product."""
        if len(x) != self.dim:
            raise ValueError(f"vector length {len(x)} != dim {self.dim}")
        xs = [Fraction(v) for v in x]
        return [
            sum((v * xs[j - 1] for j, v in row.items()), Fraction(0))
            for row in self.rows
        ]

    def compose(self, other: "TruncatedOperator") -> "TruncatedOperator":
        """Exact matrix product self @ other."""
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} != {other.dim}")
        if self.p != other.p:
            raise ValueError("exponent mismatch in composition")
        rows: list[dict[int, Fraction]] = []
        for row in self.rows:
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                for j, b in other.rows[k - 1].items():
                    acc[j] = acc.get(j, Fraction(0)) + a * b
            rows.append({j: v for j, v in acc.items() if v != 0})
        return TruncatedOperator(self.dim, self.p, tuple(rows))

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return self.compose(other)


def assemble(spec: OperatorSpec, dim: int) -> TruncatedOperator:
    """The N-by-N truncation: entry (m, map(m)) = weight(m) when the image
    stays inside the window, zero row otherwise."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    rows: list[dict[int, Fraction]] = []
    for m in range(1, dim + 1):
        j = spec.symbol(m)
        v = spec.weight(m)
        rows.append({j: v} if j <= dim and v != 0 else {})
    return TruncatedOperator(dim, spec.p, tuple(rows))


# ---------------------------------------------------------------------------
# Boundedness


@dataclass(frozen=True)
class Boundedness:
    bounded: bool
    reason: str

    def __bool__(self) -> bool:
        return self.bounded


class CatalogUndecidableError(ValueError):
    """A tail combination outside the implemented closed forms.  Raised so a
    gap in the catalog can never silently produce a wrong boundedness answer."""


def is_bounded(spec: OperatorSpec) -> Boundedness:
    """Decide boundedness of the operator from the tail catalogs.

    On little-lp with finite p the operator is bounded iff the fiber sums
    sup_n sum_{m in fiber(n)} |u(m)|**p stay finite: finitely bounded fibers
    always qualify (u is bounded), and the single infinite fiber produced by
    a const tail qualifies exactly when the weight tail is p-summable.  On
    l-infinity boundedness only needs the weight to be bounded, which the
    catalog guarantees.
    """
    if spec.p == math.inf:
        return Boundedness(True, "weight is bounded, so the operator acts on l-inf")
    fb = spec.symbol.fiber_bound()
    if fb != math.inf:
        return Boundedness(
            True,
            f"fiber sizes are bounded by {fb} and the weight is bounded",
        )
    from .symbols import ConstMap

    if isinstance(spec.symbol.tail, ConstMap):
        if spec.weight.is_lp_summable(Fraction(spec.p)):
            return Boundedness(
                True,
                "const tail gives one infinite fiber, but the weight tail is "
                f"p-summable at p={exponent_key(spec.p)}",
            )
        return Boundedness(
            False,
            "const tail gives an infinite fiber and the weight tail is not "
            f"p-summable at p={exponent_key(spec.p)}",
        )
    raise CatalogUndecidableError(  # pragma: no cover - catalog is closed today
        "unbounded fibers from a non-const tail are outside the catalog"
    )


# ---------------------------------------------------------------------------
# Norms


class NormInterval(NamedTuple):
    """Certified enclosure for norms with no exact formula."""

    lo: float
    hi: float


class PowerIterationError(RuntimeError):
    """Power iteration failed to converge; carries the last iterate."""

    def __init__(self, estimate: float, residual: float, iterate: np.ndarray, iterations: int):
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last estimate {estimate!r}, residual {residual!r})"
        )
        self.estimate = estimate
        self.residual = residual
        self.iterate = iterate
        self.iterations = iterations


def vector_norm(x: Sequence[Fraction], p: Exponent) -> Fraction | float:
    """lp norm of an exact vector; exact for p in {1, inf}, float otherwise."""
    xs = [Fraction(v) for v in x]
    if p == math.inf:
        return max((abs(v) for v in xs), default=Fraction(0))
    p = Fraction(p)
    if p == 1:
        return sum((abs(v) for v in xs), Fraction(0))
    if p == 2:
        return math.sqrt(float(sum((v * v for v in xs), Fraction(0))))
    return float(sum(abs(float(v)) ** float(p) for v in xs)) ** (1.0 / float(p))


def _column_abs_sums(T: TruncatedOperator) -> list[Fraction]:
    sums = [Fraction(0)] * T.dim
    for row in T.rows:
        for j, v in row.items():
            sums[j - 1] += abs(v)
    return sums


def _row_abs_sums(T: TruncatedOperator) -> list[Fraction]:
    return [sum((abs(v) for v in row.values()), Fraction(0)) for row in T.rows]


def _spectral_norm(T: TruncatedOperator, rtol: float, max_iter: int) -> float:
    A = T.to_numpy()
    if not A.any():
        return 0.0
    gram = A.T @ A
    rng = np.random.default_rng(_POWER_SEED)
    x = rng.standard_normal(T.dim)
    x /= np.linalg.norm(x)
    lam_prev: float | None = None
    diff = math.inf
    for _ in range(max_iter):
        y = gram @ x
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            # the start vector hit the kernel exactly; restart deterministically
            x = np.ones(T.dim) / math.sqrt(T.dim)
            lam_prev = None
            continue
        lam = float(x @ y)
        x = y / ny
        if lam_prev is not None:
            diff = abs(lam - lam_prev)
            if diff <= rtol * max(abs(lam), 1e-300):
                return math.sqrt(max(lam, 0.0))
        lam_prev = lam
    estimate = math.sqrt(max(lam_prev, 0.0)) if lam_prev is not None else 0.0
    raise PowerIterationError(estimate, diff, x, max_iter)


def _interval_norm(T: TruncatedOperator) -> NormInterval:
    p = Fraction(T.p)
    # Lower bound: best Rayleigh-style probe among basis vectors and sign mixes.
    A = T.to_numpy()
    pf = float(p)
    probes = [np.eye(T.dim)[j] for j in range(T.dim)]
    probes.append(np.ones(T.dim))
    probes.append(np.array([(-1.0) ** j for j in range(T.dim)]))
    lo = 0.0
    for x in probes:
        nx = float(np.sum(np.abs(x) ** pf) ** (1.0 / pf))
        if nx == 0.0:
            continue
        nax = float(np.sum(np.abs(A @ x) ** pf) ** (1.0 / pf))
        lo = max(lo, nax / nx)
    # Upper bound by interpolation between the exact p=1 and p=inf norms.
    n1 = float(max(_column_abs_sums(T), default=Fraction(0)))
    ninf = float(max(_row_abs_sums(T), default=Fraction(0)))
    theta = 1.0 / float(p)
    hi = (n1**theta) * (ninf ** (1.0 - theta))
    lo = min(lo, hi)
    # widen past half a 12-significant-digit grid step so the enclosure
    # survives float evaluation and report canonicalization
    return NormInterval(lo - 1e-11 * abs(lo), hi + 1e-11 * abs(hi))


def operator_norm(
    T: TruncatedOperator, *, rtol: float = 1e-12, max_iter: int = 10_000
) -> float | NormInterval:
    """Operator norm of the truncation on its lp space.

    p = 1 and p = inf are exact column/row sums; p = 2 runs power iteration
    on the Gram matrix to relative tolerance ``rtol``; any other p yields a
    certified :class:`NormInterval` (probe lower bound, interpolation upper
    bound) rather than a false point value.
    """
    if T.p == math.inf:
        return float(max(_row_abs_sums(T), default=Fraction(0)))
    p = Fraction(T.p)
    if p == 1:
        return float(max(_column_abs_sums(T), default=Fraction(0)))
    if p == 2:
        return _spectral_norm(T, rtol, max_iter)
    return _interval_norm(T)
