"""Norm-one operator sequences and the convergence tables that evidence
topological-divisor behavior at finite scale.

Three sequence rules are provided: tail projections (keep coordinates beyond
n), single holes (keep exactly coordinate n+1), and the tail projection
paired with an analytic bound drawn from a vanishing diagonal.  Each
instantiated member has operator norm exactly one, certified by the unit
basis vector e_{n+1} it fixes.

Finite evidence for an asymptotic statement is reported honestly: exact
zeros are flagged as exact, decaying columns are compared against analytic
bounds, and no claim is made beyond the computed window.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .operators import (
    Exponent,
    NormInterval,
    TruncatedOperator,
    operator_norm,
    vector_norm,
)
from .rational import canonical_float, format_float
from .symbols import Geom, Inv

_BOUND_TOLERANCE = 1e-12


@dataclass(frozen=True)
class C0Sequence:
    """A vanishing sequence: finite exceptions plus an inv or geom tail.

    The catalog guarantees y_k -> 0 and makes sup_{k >= m} |y_k| exactly
    computable for every m.
    """

    tail: Inv | Geom
    tail_start: int = 1
    exceptions: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.tail, (Inv, Geom)):
            raise ValueError("vanishing sequences take inv or geom tails")
        if self.tail_start < 1:
            raise ValueError("tail_start must be >= 1")
        exc = {k: Fraction(v) for k, v in dict(self.exceptions).items()}
        if set(exc) != set(range(1, self.tail_start)):
            raise ValueError("exceptions must cover exactly the indices 1..tail_start-1")
        object.__setattr__(self, "exceptions", exc)

    def __call__(self, k: int) -> Fraction:
        if k < 1:
            raise ValueError("indices start at 1")
        if k < self.tail_start:
            return self.exceptions[k]
        if isinstance(self.tail, Inv):
            return self.tail.a / k
        return self.tail.a * self.tail.r**k

    def tail_sup(self, m: int) -> Fraction:
        """sup_{k >= m} |y_k|, exact."""
        best = max(
            (abs(v) for k, v in self.exceptions.items() if k >= m),
            default=Fraction(0),
        )
        start = max(m, self.tail_start)
        if isinstance(self.tail, Inv):
            tail_sup = abs(self.tail.a) / start
        else:
            tail_sup = abs(self.tail.a) * abs(self.tail.r) ** start
        return max(best, tail_sup)

    def values(self, count: int) -> list[Fraction]:
        return [self(k) for k in range(1, count + 1)]

    def to_data(self) -> dict:
        from .rational import format_rational

        if isinstance(self.tail, Inv):
            tail = {"kind": "inv", "params": {"a": format_rational(self.tail.a)}}
        else:
            tail = {
                "kind": "geom",
                "params": {
                    "a": format_rational(self.tail.a),
                    "r": format_rational(self.tail.r),
                },
            }
        return {
            "exceptions": {
                k: format_rational(v) for k, v in sorted(self.exceptions.items())
            },
            "tail_start": self.tail_start,
            "tail": tail,
        }


# ---------------------------------------------------------------------------
# Sequence members


def tail_projection(n: int, dim: int, p: Exponent) -> TruncatedOperator:
    """Diagonal 0/1 matrix keeping coordinates n+1..dim; fixes e_{n+1}."""
    if n < 1:
        raise ValueError("sequence index must be a positive integer")
    if n >= dim:
        raise ValueError(f"need n < dim, got n={n}, dim={dim}")
    values = [Fraction(0)] * n + [Fraction(1)] * (dim - n)
    return TruncatedOperator.diagonal(values, p)


def single_hole(n: int, dim: int, p: Exponent) -> TruncatedOperator:
    """Rank-one matrix keeping exactly coordinate n+1."""
    if n < 1:
        raise ValueError("sequence index must be a positive integer")
    if n >= dim:
        raise ValueError(f"need n < dim, got n={n}, dim={dim}")
    values = [Fraction(0)] * dim
    values[n] = Fraction(1)
    return TruncatedOperator.diagonal(values, p)


def diagonal_operator(coeffs: C0Sequence, dim: int, p: Exponent) -> TruncatedOperator:
    """diag(y_1, ..., y_dim) for a vanishing sequence."""
    return TruncatedOperator.diagonal(coeffs.values(dim), p)


@dataclass(frozen=True)
class OperatorSequenceRule:
    """Recipe for the norm-one sequence T_n.

    kinds: ``tail_projection``, ``single_hole``, and ``diagonal_tail`` (the
    tail projection again, but carrying the analytic bound sup_{k>n} |y_k|
    valid when the operator under test is the diagonal built from y).
    """

    kind: str
    coeffs: C0Sequence | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("tail_projection", "single_hole", "diagonal_tail"):
            raise ValueError(f"unknown sequence rule {self.kind!r}")
        if self.kind == "diagonal_tail" and self.coeffs is None:
            raise ValueError("diagonal_tail requires the vanishing sequence")

    def instantiate(self, n: int, dim: int, p: Exponent) -> TruncatedOperator:
        if self.kind == "single_hole":
            return single_hole(n, dim, p)
        return tail_projection(n, dim, p)

    def fixed_unit_index(self, n: int) -> int:
        """Index of the basis vector each member fixes (norm-1 certificate)."""
        return n + 1

    def analytic_bound(self, n: int) -> Fraction | None:
        if self.kind == "diagonal_tail":
            return self.coeffs.tail_sup(n + 1)
        return None


# ---------------------------------------------------------------------------
# Convergence tables


@dataclass(frozen=True)
class TableRow:
    n: int
    value: float
    bound: float | None
    exact_zero: bool


@dataclass(frozen=True)
class ConvergenceTable:
    label: str
    rows: tuple[TableRow, ...]

    def __post_init__(self) -> None:
        for row in self.rows:
            if row.bound is not None and row.value > row.bound + _BOUND_TOLERANCE:
                raise ValueError(
                    f"row n={row.n}: measured {row.value} exceeds bound {row.bound}"
                )

    def values(self) -> list[float]:
        return [r.value for r in self.rows]

    def bounds(self) -> list[float | None]:
        return [r.bound for r in self.rows]

    def to_csv(self) -> str:
        lines = ["n,value,bound,exact_zero"]
        for r in self.rows:
            bound = format_float(r.bound) if r.bound is not None else ""
            lines.append(
                f"{r.n},{format_float(r.value)},{bound},{str(r.exact_zero).lower()}"
            )
        return "\n".join(lines) + "\n"


def _row(n: int, value: float, bound: float | None, exact_zero: bool) -> TableRow:
    # 12-significant-digit rounding is monotone, so it preserves value <= bound
    value = canonical_float(value)
    if bound is not None:
        bound = canonical_float(bound)
    return TableRow(n, value, bound, exact_zero)


def _norm_float(T: TruncatedOperator) -> float:
    norm = operator_norm(T)
    if isinstance(norm, NormInterval):
        return norm.hi
    return norm


# ---------------------------------------------------------------------------
# Demos


def strongly_tdz_demo(
    T: TruncatedOperator,
    rule: OperatorSequenceRule,
    probes: Sequence[tuple[str, Sequence[Fraction]]],
    n_max: int,
) -> list[ConvergenceTable]:
    """One operator-norm table of |T T_n| plus per-probe tables of |T T_n x|
    bounded by |T T_n| * |x|.

    The bound column is the inequality that separates pointwise decay from
    operator-norm decay: a probe column can vanish while the norm column
    stays put.  Rows where the probe's support is exhausted are exact zeros.
    """
    parsed = []
    for label, x in probes:
        if len(x) != T.dim:
            raise ValueError(f"probe {label!r} has length {len(x)}, need {T.dim}")
        xs = [Fraction(v) for v in x]
        max_support = max((i + 1 for i, v in enumerate(xs) if v != 0), default=0)
        parsed.append((label, xs, max_support, float(vector_norm(xs, T.p))))
    norm_rows = []
    probe_rows: list[list[TableRow]] = [[] for _ in parsed]
    for n in range(1, n_max + 1):
        member = rule.instantiate(n, T.dim, T.p)
        product = T @ member
        norm = _norm_float(product)
        norm_rows.append(_row(n, norm, None, product.is_zero()))
        for k, (label, xs, max_support, x_norm) in enumerate(parsed):
            value = float(vector_norm(product.apply(xs), T.p))
            probe_rows[k].append(_row(n, value, norm * x_norm, n >= max_support))
    tables = [ConvergenceTable("operator norm", tuple(norm_rows))]
    for (label, _, _, _), rows in zip(parsed, probe_rows):
        tables.append(ConvergenceTable(f"probe {label}", tuple(rows)))
    return tables


def diagonal_tdz_demo(
    coeffs: C0Sequence, n_max: int, dim: int, p: Exponent = Fraction(2)
) -> ConvergenceTable:
    """Rows (n, |T_n T| measured on the truncation, sup_{k>n} |y_k| analytic)
    for the diagonal operator T built from the vanishing sequence.

    The measured column equals the analytic one wherever the tail sup is
    attained inside the window, which is why dim must exceed n_max.
    """
    if dim <= n_max:
        raise ValueError("need dim > n_max so the tail sup can be attained")
    T = diagonal_operator(coeffs, dim, p)
    rows = []
    for n in range(1, n_max + 1):
        product = tail_projection(n, dim, p) @ T
        measured = _norm_float(product)
        analytic = float(coeffs.tail_sup(n + 1))
        rows.append(_row(n, measured, analytic, product.is_zero()))
    return ConvergenceTable("diagonal tail norms", tuple(rows))


def check_tdz_implies_strong(
    T: TruncatedOperator,
    rule: OperatorSequenceRule,
    probes: Sequence[tuple[str, Sequence[Fraction]]],
    n_max: int,
    *,
    threshold: float = 1e-6,
    slack: float = 1e-9,
) -> bool:
    """Row-wise check of |T T_n x| <= |T T_n| * |x| + slack, plus the
    consequence that once the norm column dips below a threshold every probe
    column is below threshold * |x| + slack."""
    for n in range(1, n_max + 1):
        member = rule.instantiate(n, T.dim, T.p)
        product = T @ member
        norm = _norm_float(product)
        for label, x in probes:
            xs = [Fraction(v) for v in x]
            x_norm = float(vector_norm(xs, T.p))
            value = float(vector_norm(product.apply(xs), T.p))
            if value > norm * x_norm + slack:
                return False
            if norm < threshold and value > threshold * x_norm + slack:
                return False
    return True


# ---------------------------------------------------------------------------
# Default probes


def default_probes(dim: int) -> list[tuple[str, list[Fraction]]]:
    """e_1, e_5, e_10, a harmonic tail and a geometric tail, truncated to dim.

    Spans the exact-zero regime (finite supports) and the slow-decay regime.
    """

    def basis(i: int) -> list[Fraction]:
        v = [Fraction(0)] * dim
        if i <= dim:
            v[i - 1] = Fraction(1)
        return v

    harmonic = [Fraction(1, k) for k in range(1, dim + 1)]
    geometric = [Fraction(1, 2**k) for k in range(1, dim + 1)]
    return [
        ("e1", basis(1)),
        ("e5", basis(5)),
        ("e10", basis(10)),
        ("harmonic", harmonic),
        ("geometric", geometric),
    ]


def named_probe(name: str, dim: int) -> list[Fraction]:
    for label, vec in default_probes(dim):
        if label == name:
            return vec
    raise ValueError(f"unknown probe name {name!r}")
