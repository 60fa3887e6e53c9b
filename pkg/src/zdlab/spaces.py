"""Computable stand-ins for continuous and measurable function spaces.

Continuous functions on an interval are modeled by their values on a finite
uniform grid, with the sup norm taken over grid points; the classical
bump-function argument for topological divisors becomes an explicit
piecewise-linear hat.  Measure spaces are finite and atomic with strictly
positive rational masses, which makes essential ranges, null sets and
almost-everywhere statements exact: the essential range is the value set,
and the only null set is the empty one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .divisors import Verdict
from .sequences import ConvergenceTable, TableRow, _row

# ---------------------------------------------------------------------------
# Grid-sampled functions


@dataclass(frozen=True)
class Affine:
    """x -> alpha * x + beta."""

    alpha: Fraction
    beta: Fraction


@dataclass(frozen=True)
class Monomial:
    """x -> x ** k."""

    k: int


@dataclass(frozen=True)
class ConstFn:
    """x -> c."""

    c: Fraction


ClosedForm = Union[Affine, Monomial, ConstFn]


@dataclass(frozen=True)
class GridFunction:
    """Rational samples on a uniform grid over [a, b], optionally tagged with
    the closed form they came from (used to certify off-grid roots)."""

    a: Fraction
    b: Fraction
    samples: tuple[Fraction, ...]
    form: ClosedForm | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "samples", tuple(Fraction(v) for v in self.samples))
        if self.b <= self.a:
            raise ValueError("need a < b")
        if len(self.samples) < 3:
            raise ValueError("need at least 3 grid points")

    @property
    def grid_count(self) -> int:
        return len(self.samples)

    def x(self, i: int) -> Fraction:
        """The i-th grid point (0-based), exactly."""
        return self.a + Fraction(i, self.grid_count - 1) * (self.b - self.a)

    def grid_index(self, x0: Fraction) -> int:
        """Index of an exact grid point; raises when x0 is off-grid."""
        t = (Fraction(x0) - self.a) * (self.grid_count - 1) / (self.b - self.a)
        if t.denominator != 1 or not 0 <= t <= self.grid_count - 1:
            raise ValueError(f"{x0} is not a grid point")
        return int(t)

    @staticmethod
    def from_form(a: Fraction, b: Fraction, grid_count: int, form: ClosedForm) -> "GridFunction":
        a, b = Fraction(a), Fraction(b)
        if grid_count < 3:
            raise ValueError("need at least 3 grid points")
        xs = [a + Fraction(i, grid_count - 1) * (b - a) for i in range(grid_count)]
        if isinstance(form, Affine):
            samples = [form.alpha * x + form.beta for x in xs]
        elif isinstance(form, Monomial):
            samples = [x**form.k for x in xs]
        else:
            samples = [form.c for _ in xs]
        return GridFunction(a, b, tuple(samples), form)

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.samples)

    def multiply(self, other: "GridFunction") -> "GridFunction":
        if (self.a, self.b, self.grid_count) != (other.a, other.b, other.grid_count):
            raise ValueError("grid mismatch")
        return GridFunction(
            self.a,
            self.b,
            tuple(u * v for u, v in zip(self.samples, other.samples)),
        )

    def shift_values(self, alpha: Fraction) -> "GridFunction":
        """The function minus the constant alpha (sample-wise)."""
        form: ClosedForm | None = None
        if isinstance(self.form, Affine):
            form = Affine(self.form.alpha, self.form.beta - alpha)
        elif isinstance(self.form, ConstFn):
            form = ConstFn(self.form.c - alpha)
        return GridFunction(
            self.a, self.b, tuple(v - alpha for v in self.samples), form
        )


@dataclass(frozen=True)
class CxTdzResult:
    is_tdz: bool
    location: Fraction | None = None
    index: int | None = None
    exact: bool = False
    via: str = ""

    def __bool__(self) -> bool:
        return self.is_tdz


def cx_is_tdz(f: GridFunction, tol: Fraction = Fraction(0)) -> CxTdzResult:
    """Singularity test on the grid: a sample with |f| <= tol, or a sign
    change between adjacent samples (a certified root for closed forms).

    tol = 0 keeps the test exact; a positive tol is an explicit loosening.
    """
    tol = Fraction(tol)
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    for i, v in enumerate(f.samples):
        if abs(v) <= tol:
            return CxTdzResult(True, f.x(i), i, True, "sample-hit")
    for i in range(f.grid_count - 1):
        v, w = f.samples[i], f.samples[i + 1]
        if (v < 0 < w) or (w < 0 < v):
            root: Fraction | None = None
            if isinstance(f.form, Affine) and f.form.alpha != 0:
                root = -f.form.beta / f.form.alpha
            elif isinstance(f.form, Monomial):
                root = Fraction(0)
            if root is not None:
                return CxTdzResult(True, root, None, True, "sign-change")
            # off-grid zero of the sampled function; report the nearer flank
            j = i if abs(v) <= abs(w) else i + 1
            return CxTdzResult(True, f.x(j), j, False, "sign-change")
    return CxTdzResult(False)


class GridRefinementError(ValueError):
    """The grid is too coarse to build the requested bump function."""


def urysohn_sequence(
    f: GridFunction, x0: Fraction, n: int, tol: Fraction = Fraction(0)
) -> GridFunction:
    """Piecewise-linear hat: value 1 at x0, 0 outside the maximal grid run
    around x0 on which |f| < 1/n.

    The hat has sup norm exactly 1 and |f * hat| < 1/n on the grid.  Fails
    when no sample near x0 is below 1/n (then a finer grid is needed).
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    i0 = f.grid_index(x0)
    if abs(f.samples[i0]) > Fraction(tol):
        raise ValueError(f"{x0} is not a zero of the function (within tol)")
    cutoff = Fraction(1, n)
    if abs(f.samples[i0]) >= cutoff:
        raise GridRefinementError(
            f"no neighborhood with |f| < 1/{n} on this grid; refine the grid"
        )
    lo = i0
    while lo > 0 and abs(f.samples[lo - 1]) < cutoff:
        lo -= 1
    hi = i0
    while hi < f.grid_count - 1 and abs(f.samples[hi + 1]) < cutoff:
        hi += 1
    # zero nodes just outside the run; clamp to the interval ends
    left = lo - 1 if lo > 0 else (0 if i0 > 0 else None)
    right = hi + 1 if hi < f.grid_count - 1 else (f.grid_count - 1 if i0 < f.grid_count - 1 else None)
    samples = []
    for j in range(f.grid_count):
        if j == i0:
            samples.append(Fraction(1))
        elif j < i0:
            if left is None or j <= left:
                samples.append(Fraction(0) if left is not None else Fraction(1))
            else:
                samples.append(Fraction(j - left, i0 - left))
        else:
            if right is None or j >= right:
                samples.append(Fraction(0) if right is not None else Fraction(1))
            else:
                samples.append(Fraction(right - j, right - i0))
    return GridFunction(f.a, f.b, tuple(samples))


# ---------------------------------------------------------------------------
# Atomic measure spaces


@dataclass(frozen=True)
class AtomicMeasureSpace:
    """Finitely many atoms, each with strictly positive rational mass."""

    atoms: tuple[tuple[str, Fraction], ...]

    def __post_init__(self) -> None:
        atoms = tuple((str(a), Fraction(m)) for a, m in self.atoms)
        if not atoms:
            raise ValueError("need at least one atom")
        ids = [a for a, _ in atoms]
        if len(set(ids)) != len(ids):
            raise ValueError("atom ids must be distinct")
        for a, m in atoms:
            if m <= 0:
                raise ValueError(f"mass of atom {a!r} must be strictly positive")
        object.__setattr__(self, "atoms", atoms)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.atoms)

    def mass(self, atom: str) -> Fraction:
        for a, m in self.atoms:
            if a == atom:
                return m
        raise KeyError(atom)

    def scaled_masses(self, factor: Fraction) -> "AtomicMeasureSpace":
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("mass scale must be positive")
        return AtomicMeasureSpace(tuple((a, factor * m) for a, m in self.atoms))


@dataclass(frozen=True)
class SimpleFunction:
    """A rational value on every atom."""

    space: AtomicMeasureSpace
    values: Mapping[str, Fraction]

    def __post_init__(self) -> None:
        vals = {str(a): Fraction(v) for a, v in dict(self.values).items()}
        if set(vals) != set(self.space.ids):
            raise ValueError("values must be given on exactly the atoms of the space")
        object.__setattr__(self, "values", vals)

    def __call__(self, atom: str) -> Fraction:
        return self.values[atom]

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.values.values())

    def zero_atoms(self) -> tuple[str, ...]:
        return tuple(a for a in self.space.ids if self.values[a] == 0)

    def multiply(self, other: "SimpleFunction") -> "SimpleFunction":
        if self.space != other.space:
            raise ValueError("space mismatch")
        return SimpleFunction(
            self.space, {a: self.values[a] * other.values[a] for a in self.space.ids}
        )

    def shift_values(self, alpha: Fraction) -> "SimpleFunction":
        return SimpleFunction(
            self.space, {a: v - alpha for a, v in self.values.items()}
        )

    @staticmethod
    def indicator(space: AtomicMeasureSpace, atoms: Sequence[str]) -> "SimpleFunction":
        chosen = set(atoms)
        return SimpleFunction(
            space, {a: Fraction(1 if a in chosen else 0) for a in space.ids}
        )


@dataclass(frozen=True)
class AtomMap:
    """A measurable self-map of an atomic space: an image atom per atom."""

    space: AtomicMeasureSpace
    image: Mapping[str, str]

    def __post_init__(self) -> None:
        img = {str(a): str(v) for a, v in dict(self.image).items()}
        ids = set(self.space.ids)
        if set(img) != ids:
            raise ValueError("map must be defined on exactly the atoms of the space")
        for a, v in img.items():
            if v not in ids:
                raise ValueError(f"image {v!r} of atom {a!r} is not an atom")
        object.__setattr__(self, "image", img)

    def __call__(self, atom: str) -> str:
        return self.image[atom]

    def fiber(self, atom: str) -> tuple[str, ...]:
        return tuple(a for a in self.space.ids if self.image[a] == atom)

    def is_injective(self) -> bool:
        return len(set(self.image.values())) == len(self.space.ids)

    def is_surjective(self) -> bool:
        return set(self.image.values()) == set(self.space.ids)


# ---------------------------------------------------------------------------
# Essential range and divisor-of-zero tests


def ess_range(h: SimpleFunction) -> tuple[Fraction, ...]:
    """Values attained with positive measure; every atom has positive mass,
    so this is exactly the (sorted, deduplicated) value set."""
    return tuple(sorted(set(h.values.values())))


@dataclass(frozen=True)
class LinfTdzResult:
    is_tdz: bool
    witness: SimpleFunction | None = None

    def __bool__(self) -> bool:
        return self.is_tdz


def linf_is_tdz(h: SimpleFunction) -> LinfTdzResult:
    """TDZ test: zero in the essential range.  The witness is the norm-one
    indicator of the zero atoms, with |h * witness| = 0 exactly."""
    if 0 not in ess_range(h):
        return LinfTdzResult(False)
    witness = SimpleFunction.indicator(h.space, h.zero_atoms())
    return LinfTdzResult(True, witness)


@dataclass(frozen=True)
class PolyTdzCertificate:
    alpha: Fraction
    shifted: SimpleFunction | GridFunction
    evidence: tuple[Fraction, ...] | CxTdzResult

    def polynomial(self) -> str:
        from .rational import format_rational

        if self.alpha == 0:
            return "p(x) = x"
        sign = "-" if self.alpha > 0 else "+"
        return f"p(x) = x {sign} {format_rational(abs(self.alpha))}"


def poly_tdz_witness(h: SimpleFunction | GridFunction) -> PolyTdzCertificate:
    """Degree-one polynomial p with p(h) a TDZ: subtract an attained value.

    alpha is 0 when 0 is already attained (p is then the identity), else the
    smallest attained value (atomic) or the value at the leftmost minimizer
    of |h| (grid).
    """
    if isinstance(h, SimpleFunction):
        values = ess_range(h)
        alpha = Fraction(0) if 0 in values else values[0]
        shifted = h.shift_values(alpha)
        return PolyTdzCertificate(alpha, shifted, ess_range(shifted))
    best = min(range(h.grid_count), key=lambda i: (abs(h.samples[i]), i))
    alpha = h.samples[best]
    shifted = h.shift_values(alpha)
    return PolyTdzCertificate(alpha, shifted, cx_is_tdz(shifted))


@dataclass(frozen=True)
class MultOpTdzResult:
    is_tdz: bool
    rule: str
    table: ConvergenceTable | None = None
    witness: SimpleFunction | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.is_tdz


def mult_op_tdz(h: SimpleFunction | GridFunction, n_max: int = 50) -> MultOpTdzResult:
    """TDZ status of the multiplication operator by h, with the norm-one
    multiplier sequence realized explicitly: |M_h M_{h_n}| = |h * h_n|.
    """
    if isinstance(h, SimpleFunction):
        res = linf_is_tdz(h)
        if not res:
            return MultOpTdzResult(False, "Thm-Anurag10", note="0 not in the essential range")
        product_norm = float(h.multiply(res.witness).sup_norm())
        table = ConvergenceTable(
            "multiplier witness", (_row(1, product_norm, None, product_norm == 0.0),)
        )
        return MultOpTdzResult(True, "Thm-Anurag10", table, res.witness)
    hit = cx_is_tdz(h)
    if not hit:
        return MultOpTdzResult(False, "Thm-MhCompact", note="no zero on the grid")
    if hit.index is None:
        return MultOpTdzResult(
            True, "Thm-MhCompact", None, None, "zero certified off-grid; refine the grid for hats"
        )
    anchor = h.x(hit.index)
    anchor_tol = abs(h.samples[hit.index])
    rows: list[TableRow] = []
    note = ""
    for n in range(1, n_max + 1):
        try:
            hat = urysohn_sequence(h, anchor, n, tol=anchor_tol)
        except GridRefinementError:
            note = f"grid resolution exhausted at n={n}"
            break
        value = h.multiply(hat).sup_norm()
        rows.append(_row(n, float(value), 1.0 / n, value == 0))
    return MultOpTdzResult(
        True, "Thm-MhCompact", ConvergenceTable("hat multipliers", tuple(rows)), None, note
    )


# ---------------------------------------------------------------------------
# Composition operators on atomic spaces


def radon_nikodym(phi: AtomMap) -> SimpleFunction:
    """Density of the pushforward measure: fiber mass over atom mass."""
    space = phi.space
    values = {}
    for a in space.ids:
        fiber_mass = sum((space.mass(m) for m in phi.fiber(a)), Fraction(0))
        values[a] = fiber_mass / space.mass(a)
    return SimpleFunction(space, values)


@dataclass(frozen=True)
class AtomWitness:
    """Projection onto the span of the indicator of ``atoms``: the operator
    g -> g(anchor) * indicator(atoms)."""

    atoms: tuple[str, ...]
    anchor: str


def verify_atomic_witness(
    phi: AtomMap, weight: SimpleFunction | None, w: AtomWitness
) -> bool:
    """Exact annihilation check on the whole (finite) space: for every atom
    x, weight(x) * indicator(atoms)(phi(x)) must vanish."""
    chosen = set(w.atoms)
    for x in phi.space.ids:
        u = weight(x) if weight is not None else Fraction(1)
        if phi(x) in chosen and u != 0:
            return False
    return True


def lp_comp_left_zd(
    phi: AtomMap, weight: SimpleFunction | None = None
) -> tuple[Verdict, AtomWitness | None]:
    """Left-zero-divisor status of the (weighted) composition operator on a
    finite atomic space.

    An atom whose fiber is empty, or whose fiber carries only zero weight,
    yields the projection witness; otherwise every fiber meets a nonzero
    weight and the operator is injective, hence not a left zero divisor.  On
    finite atomic spaces this dichotomy is exhaustive.
    """
    if weight is not None and weight.space != phi.space:
        raise ValueError("weight and map live on different spaces")
    zero_atoms = set(weight.zero_atoms()) if weight is not None else set()
    empty_rule = "Thm-Lp-LZD" if weight is None else "Thm-amar1"
    for a in phi.space.ids:
        fiber = phi.fiber(a)
        if not fiber:
            verdict = Verdict(
                "Yes", empty_rule, f"the set {{{a}}} has empty preimage"
            )
            return verdict, AtomWitness((a,), a)
        if all(m in zero_atoms for m in fiber):
            verdict = Verdict(
                "Yes",
                "Thm-amar1",
                f"the weight vanishes on the whole preimage of {{{a}}}",
            )
            return verdict, AtomWitness((a,), a)
    return (
        Verdict(
            "No",
            "Thm-Lp-LZD",
            "every atom set with null preimage is null, so the operator is injective",
        ),
        None,
    )


def l2_comp_surjective(phi: AtomMap) -> bool:
    """Surjectivity of the composition operator on the atomic L2 space:
    equivalent to injectivity of the map (all masses are positive, so
    almost-everywhere injectivity is plain injectivity)."""
    return phi.is_injective()


# ---------------------------------------------------------------------------
# Composition operators on grids


@dataclass(frozen=True)
class GridSelfMap:
    """A self-map of the grid points of an interval, by index."""

    grid_count: int
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.grid_count:
            raise ValueError("need one image per grid point")
        for i in self.images:
            if not 0 <= i < self.grid_count:
                raise ValueError("images must be grid indices")

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.grid_count

    def is_surjective(self) -> bool:
        return set(self.images) == set(range(self.grid_count))


def grid_comp_properties(phi: GridSelfMap) -> dict[str, bool | float]:
    """Composition by a grid self-map: norm one, injective exactly when the
    map is surjective, surjective exactly when the map is injective,
    invertible exactly when the map is bijective."""
    return {
        "norm": 1.0,
        "injective": phi.is_surjective(),
        "surjective": phi.is_injective(),
        "invertible": phi.is_injective() and phi.is_surjective(),
    }
