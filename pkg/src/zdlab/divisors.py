"""Zero-divisor classification of weighted composition operators, synthesis
of explicit finite-rank annihilator witnesses, and an independent
elimination-based oracle.

Classifiers apply a fixed, documented priority order of rules so every
verdict carries deterministic provenance.  ``Unknown`` is an honest output:
where no implemented rule applies, no guess is made.

A witness is a concrete finite-rank operator whose product with the operator
under test is *exactly* zero.  Verification assembles both at a window
computed from the tail rules, checks the finite product in rational
arithmetic, and certifies the tail: basis vectors beyond the window satisfy
the annihilation identity structurally (finite witness support, exactly known
fiber locations).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from . import linalg
from .operators import OperatorSpec, TruncatedOperator, assemble, is_bounded
from .symbols import first_fiber_inside_zero_set

Side = Literal["left", "right"]

# Rule identifiers carried by verdicts and witnesses.
RULE_HC31 = "Thm-hc31"
RULE_ANURAG31 = "Thm-Anurag31"
RULE_U_ZERO = "Thm-u-zero"
RULE_HCSIR1 = "Thm-HCsir1"
RULE_ANURAG13 = "Thm-anurag13"
RULE_FIBER_ZERO = "Thm-fiber-zero"
RULE_COR_INJECTIVE = "Cor-fiber-injective"
RULE_ANURAG34 = "Thm-Anurag34"
RULE_TDZ_UC = "Thm-TDZ-UC"


class UnboundedOperatorError(ValueError):
    """Classification requires a bounded operator."""


class SynthesisError(RuntimeError):
    """Witness synthesis was requested outside its precondition, or the
    synthesized product failed its own exact verification."""


@dataclass(frozen=True)
class Verdict:
    status: Literal["Yes", "No", "Unknown"]
    rule: str | None
    explanation: str

    def key(self) -> tuple[str, str | None]:
        return (self.status, self.rule)


@dataclass(frozen=True)
class Witness:
    """Finite-rank annihilator.

    kind selects the action on a vector g:
      coordinate_projection  T g = g(n0) * e_n0             data: index
      span_projection        T g = sum g(ni) * e_ni          data: support
      functional_tensor      T g = (sum ci * g(ni)) * e_t    data: coeffs, target
      kernel_tensor          T g = g(s) * f0                 data: vector, source
    """

    side: Side
    kind: str
    rule: str
    required_window: int
    index: int | None = None
    support: tuple[int, ...] = ()
    coeffs: tuple[tuple[int, Fraction], ...] = ()
    target: int | None = None
    vector: tuple[tuple[int, Fraction], ...] = ()
    source: int | None = None

    def input_support(self) -> tuple[int, ...]:
        """Coordinates of the argument that the witness reads."""
        if self.kind == "coordinate_projection":
            return (self.index,)
        if self.kind == "span_projection":
            return self.support
        if self.kind == "functional_tensor":
            return tuple(i for i, _ in self.coeffs)
        if self.kind == "kernel_tensor":
            return (self.source,)
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def output_support(self) -> tuple[int, ...]:
        """Coordinates the witness can write."""
        if self.kind == "coordinate_projection":
            return (self.index,)
        if self.kind == "span_projection":
            return self.support
        if self.kind == "functional_tensor":
            return (self.target,)
        if self.kind == "kernel_tensor":
            return tuple(i for i, _ in self.vector)
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def basis_action(self, m: int) -> dict[int, Fraction]:
        """T e_m as a sparse vector."""
        if self.kind == "coordinate_projection":
            return {self.index: Fraction(1)} if m == self.index else {}
        if self.kind == "span_projection":
            return {m: Fraction(1)} if m in self.support else {}
        if self.kind == "functional_tensor":
            for i, c in self.coeffs:
                if i == m:
                    return {self.target: c} if c != 0 else {}
            return {}
        if self.kind == "kernel_tensor":
            return dict(self.vector) if m == self.source else {}
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def range_basis(self) -> list[dict[int, Fraction]]:
        """Sparse vectors spanning the range of the witness."""
        if self.kind in ("coordinate_projection", "functional_tensor"):
            out = self.index if self.kind == "coordinate_projection" else self.target
            return [{out: Fraction(1)}]
        if self.kind == "span_projection":
            return [{i: Fraction(1)} for i in self.support]
        if self.kind == "kernel_tensor":
            return [dict(self.vector)]
        raise ValueError(f"unknown witness kind {self.kind!r}")

    def matrix(self, dim: int, p) -> TruncatedOperator:
        rows: list[dict[int, Fraction]] = [{} for _ in range(dim)]
        for m in self.input_support():
            if m > dim:
                raise ValueError("witness support exceeds the window")
            for out, value in self.basis_action(m).items():
                if out > dim:
                    raise ValueError("witness range exceeds the window")
                rows[out - 1][m] = rows[out - 1].get(m, Fraction(0)) + value
        return TruncatedOperator.from_rows(rows, p)


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    window: int
    failing: tuple | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _require_bounded(spec: OperatorSpec) -> None:
    b = is_bounded(spec)
    if not b:
        raise UnboundedOperatorError(b.reason)


# ---------------------------------------------------------------------------
# Classification


def classify_right_zd(spec: OperatorSpec) -> Verdict:
    """Right-zero-divisor status, rules in priority order:

    1. nowhere-zero weight: Yes iff the symbol map is not injective, else No
    2. some nonempty fiber inside the weight's zero set: Yes
    3. some zero of the weight, with the weight certifiably p-summable: Yes
    4. otherwise Unknown
    """
    _require_bounded(spec)
    zeros = spec.weight.zero_set()
    if zeros.is_empty():
        hit = spec.symbol.first_collision()
        if hit is not None:
            n0, a, b = hit
            return Verdict(
                "Yes",
                RULE_ANURAG31,
                f"weight never vanishes and the symbol map collides: "
                f"map({a}) = map({b}) = {n0}",
            )
        return Verdict(
            "No",
            RULE_ANURAG31,
            "weight never vanishes and the symbol map is injective",
        )
    n0 = first_fiber_inside_zero_set(spec.symbol, zeros)
    if n0 is not None:
        return Verdict(
            "Yes",
            RULE_HC31,
            f"the nonempty fiber of {n0} lies inside the zero set of the weight",
        )
    if spec.p == math.inf or spec.weight.is_lp_summable(Fraction(spec.p)):
        z = zeros.min_element()
        return Verdict(
            "Yes",
            RULE_U_ZERO,
            f"weight({z}) = 0 and the weight lies in the operator's sequence space",
        )
    return Verdict(
        "Unknown",
        None,
        "weight has zeros off every full fiber and is not certifiably "
        "p-summable; no implemented rule decides this case",
    )


def classify_left_zd(spec: OperatorSpec) -> Verdict:
    """Left-zero-divisor status, rules in priority order:

    1. nowhere-zero weight: Yes iff the symbol map is not surjective, else No
    2. symbol map not surjective: Yes
    3. some nonempty fiber on which the weight vanishes identically: Yes
    4. symbol map surjective and every fiber meets a nonzero weight: No
    """
    _require_bounded(spec)
    zeros = spec.weight.zero_set()
    surjective = spec.symbol.is_surjective()
    if zeros.is_empty():
        if not surjective:
            n0 = spec.symbol.first_empty_fiber()
            return Verdict(
                "Yes",
                RULE_ANURAG13,
                f"weight never vanishes and the fiber of {n0} is empty",
            )
        return Verdict(
            "No",
            RULE_ANURAG13,
            "weight never vanishes and the symbol map is surjective",
        )
    if not surjective:
        n0 = spec.symbol.first_empty_fiber()
        return Verdict("Yes", RULE_HCSIR1, f"the fiber of {n0} is empty")
    n0 = first_fiber_inside_zero_set(spec.symbol, zeros)
    if n0 is not None:
        return Verdict(
            "Yes",
            RULE_FIBER_ZERO,
            f"the weight vanishes on all of the nonempty fiber of {n0}",
        )
    return Verdict(
        "No",
        RULE_COR_INJECTIVE,
        "the symbol map is surjective and every fiber contains an index with "
        "nonzero weight, so the operator is injective",
    )


def classify_zd(spec: OperatorSpec) -> Verdict:
    """Two-sided zero-divisor status (either side qualifies)."""
    _require_bounded(spec)
    zeros = spec.weight.zero_set()
    injective = spec.symbol.is_injective()
    surjective = spec.symbol.is_surjective()
    invertible = injective and surjective
    if zeros.is_empty() and not invertible:
        return Verdict(
            "Yes",
            RULE_ANURAG34,
            "weight never vanishes and the symbol map is not invertible",
        )
    if spec.weight.is_bounded_away_from_zero() and invertible:
        return Verdict(
            "No",
            RULE_TDZ_UC,
            "weight bounded away from zero and the symbol map invertible "
            "make the operator invertible",
        )
    right = classify_right_zd(spec)
    left = classify_left_zd(spec)
    if right.status == "Yes":
        return Verdict("Yes", right.rule, f"right zero divisor: {right.explanation}")
    if left.status == "Yes":
        return Verdict("Yes", left.rule, f"left zero divisor: {left.explanation}")
    if right.status == "No" and left.status == "No":
        return Verdict(
            "No",
            f"{right.rule}+{left.rule}",
            "neither a right nor a left zero divisor",
        )
    return Verdict(
        "Unknown",
        None,
        f"undecided on at least one side (right: {right.status}, left: {left.status})",
    )


# ---------------------------------------------------------------------------
# Witness synthesis

# Images/fiber elements beyond this multiple of the core support are left to
# the tail certificate instead of being pulled into the verification window.
_WINDOW_SLACK = 64


def _window(core: list[int], extras: list[int]) -> int:
    base = max(core) if core else 1
    cap = 4 * base + _WINDOW_SLACK
    inside = [e for e in extras if e <= cap]
    return max([8, base, *inside])


def synth_right_witness(spec: OperatorSpec) -> Witness:
    """Explicit T with T (after) the operator = 0, matching the verdict rule.

    hc31 fibers become projections onto the fiber coordinates; nowhere-zero
    collisions become the annihilating functional g -> (u(b) g(a) - u(a) g(b))
    tensored with the first basis vector; a plain weight zero becomes the
    coordinate projection at that zero.
    """
    verdict = classify_right_zd(spec)
    if verdict.status != "Yes":
        raise SynthesisError(f"no right witness: verdict is {verdict.status}")
    if verdict.rule == RULE_HC31:
        zeros = spec.weight.zero_set()
        n0 = first_fiber_inside_zero_set(spec.symbol, zeros)
        fd = spec.symbol.fiber(n0)
        if fd.tail_progression is None:
            support = tuple(sorted(fd.finite_part))
        else:
            # infinite fiber: any finite subset of it still annihilates,
            # because the weight vanishes on each chosen coordinate
            support = tuple(fd.elements_up_to(fd.tail_progression[0]))
        window = _window(list(support), [spec.symbol(m) for m in support])
        w = Witness(
            side="right",
            kind="span_projection",
            rule=RULE_HC31,
            required_window=window,
            support=support,
        )
    elif verdict.rule == RULE_ANURAG31:
        n0, a, b = spec.symbol.first_collision()
        coeffs = ((a, spec.weight(b)), (b, -spec.weight(a)))
        window = _window([a, b, 1], [n0])
        w = Witness(
            side="right",
            kind="functional_tensor",
            rule=RULE_ANURAG31,
            required_window=window,
            coeffs=coeffs,
            target=1,
        )
    elif verdict.rule == RULE_U_ZERO:
        n0 = spec.weight.zero_set().min_element()
        window = _window([n0], [spec.symbol(n0)])
        w = Witness(
            side="right",
            kind="coordinate_projection",
            rule=RULE_U_ZERO,
            required_window=window,
            index=n0,
        )
    else:  # pragma: no cover - every Yes rule is handled above
        raise SynthesisError(f"unhandled rule {verdict.rule}")
    result = verify_witness(spec, w)
    if not result:
        raise SynthesisError(
            f"synthesized right witness failed verification at {result.failing}"
        )
    return w


def synth_left_witness(spec: OperatorSpec) -> Witness:
    """Explicit T with the operator (after) T = 0, matching the verdict rule.

    An empty fiber gives either the kernel tensor g -> g(1) * e_n0 (nowhere
    zero weight) or the coordinate projection onto e_n0; a fiber on which the
    weight vanishes gives the coordinate projection onto its base point.
    """
    verdict = classify_left_zd(spec)
    if verdict.status != "Yes":
        raise SynthesisError(f"no left witness: verdict is {verdict.status}")
    if verdict.rule == RULE_ANURAG13:
        n0 = spec.symbol.first_empty_fiber()
        window = _window([n0, 1], [])
        w = Witness(
            side="left",
            kind="kernel_tensor",
            rule=RULE_ANURAG13,
            required_window=window,
            vector=((n0, Fraction(1)),),
            source=1,
        )
    elif verdict.rule in (RULE_HCSIR1, RULE_FIBER_ZERO):
        if verdict.rule == RULE_HCSIR1:
            n0 = spec.symbol.first_empty_fiber()
            extras: list[int] = []
        else:
            n0 = first_fiber_inside_zero_set(spec.symbol, spec.weight.zero_set())
            extras = spec.symbol.fiber(n0).elements_up_to(4 * n0 + _WINDOW_SLACK)
        window = _window([n0], extras)
        w = Witness(
            side="left",
            kind="coordinate_projection",
            rule=verdict.rule,
            required_window=window,
            index=n0,
        )
    else:  # pragma: no cover
        raise SynthesisError(f"unhandled rule {verdict.rule}")
    result = verify_witness(spec, w)
    if not result:
        raise SynthesisError(
            f"synthesized left witness failed verification at {result.failing}"
        )
    return w


# ---------------------------------------------------------------------------
# Verification


def _first_nonzero(T: TruncatedOperator) -> tuple[int, int] | None:
    for i, row in enumerate(T.rows):
        for j in sorted(row):
            return (i + 1, j)
    return None


def _tail_certificate_right(spec: OperatorSpec, w: Witness, window: int):
    """Basis vectors e_j with j > window: T applied to the operator's image
    of e_j only sees witness-support rows, grouped here by their image j."""
    groups: dict[int, dict[int, Fraction]] = {}
    for m in w.input_support():
        j = spec.symbol(m)
        if j <= window:
            continue
        acc = groups.setdefault(j, {})
        u_m = spec.weight(m)
        for out, value in w.basis_action(m).items():
            acc[out] = acc.get(out, Fraction(0)) + u_m * value
    for j, acc in sorted(groups.items()):
        if any(v != 0 for v in acc.values()):
            return ("tail", j)
    return None


def _tail_certificate_left(spec: OperatorSpec, w: Witness, window: int):
    """Coordinates m > window of the operator applied to each range vector:
    u(m) * v(map(m)) must vanish for every m in the fiber of v's support."""
    zeros = spec.weight.zero_set()
    for v in w.range_basis():
        for j, vj in v.items():
            if vj == 0:
                continue
            finite, progression = spec.symbol.fiber(j).elements_above(window)
            for m in finite:
                if spec.weight(m) != 0:
                    return ("tail", j)
            if progression is not None:
                first, stride = progression
                if zeros.cofinite_from is None:
                    return ("tail", j)
                for m in range(first, zeros.cofinite_from, stride):
                    if m not in zeros:
                        return ("tail", j)
    return None


def verify_witness(spec: OperatorSpec, w: Witness) -> VerificationResult:
    """Exact check that the witness annihilates on its certified window and
    that the identity extends structurally beyond it.

    Returns ok=False with the failing coordinate instead of raising, so a
    deliberately broken witness reports where it breaks.
    """
    window = w.required_window
    supports = set(w.input_support()) | set(w.output_support())
    outside = [m for m in supports if m > window or m < 1]
    if outside:
        return VerificationResult(False, window, ("support", min(outside)))
    try:
        T = w.matrix(window, spec.p)
    except ValueError as exc:
        return VerificationResult(False, window, ("support", str(exc)))
    if T.is_zero():
        return VerificationResult(False, window, ("witness", "zero operator"))
    A = assemble(spec, window)
    product = T @ A if w.side == "right" else A @ T
    bad = _first_nonzero(product)
    if bad is not None:
        return VerificationResult(False, window, ("product", *bad))
    if w.side == "right":
        tail_bad = _tail_certificate_right(spec, w, window)
    else:
        tail_bad = _tail_certificate_left(spec, w, window)
    if tail_bad is not None:
        return VerificationResult(False, window, tail_bad)
    return VerificationResult(
        True, window, None, "finite product zero and tail certificate holds"
    )


# ---------------------------------------------------------------------------
# Oracle


def oracle_annihilator(A: TruncatedOperator, side: Side) -> TruncatedOperator | None:
    """Nonzero T with T @ A = 0 (right) or A @ T = 0 (left), found by exact
    elimination; None exactly when the relevant nullspace is trivial.

    Independent of the theorem-driven path: works only from the matrix.
    """
    dense = A.to_dense()
    if side == "right":
        basis = linalg.left_nullspace(dense)
        if not basis:
            return None
        rows = [
            {j + 1: v for j, v in enumerate(vec) if v != 0} for vec in basis
        ]
        rows += [{} for _ in range(A.dim - len(rows))]
        T = TruncatedOperator.from_rows(rows, A.p)
        if not (T @ A).is_zero():  # pragma: no cover - elimination self-check
            raise RuntimeError("oracle self-check failed: T @ A != 0")
        return T
    basis = linalg.nullspace(dense)
    if not basis:
        return None
    rows = [
        {k + 1: basis[k][i] for k in range(len(basis)) if basis[k][i] != 0}
        for i in range(A.dim)
    ]
    T = TruncatedOperator.from_rows(rows, A.p)
    if not (A @ T).is_zero():  # pragma: no cover - elimination self-check
        raise RuntimeError("oracle self-check failed: A @ T != 0")
    return T


def faithful_row_window(spec: OperatorSpec, dim: int) -> int:
    """Largest W <= dim such that rows 1..W of the truncation agree with the
    untruncated operator (their images stay inside the window)."""
    w = 0
    for m in range(1, dim + 1):
        if spec.symbol(m) > dim:
            break
        w = m
    return w


def faithful_col_window(spec: OperatorSpec, dim: int) -> int:
    """Largest W <= dim such that columns 1..W of the truncation carry the
    whole fiber of their index."""
    w = 0
    for j in range(1, dim + 1):
        fd = spec.symbol.fiber(j)
        if fd.tail_progression is not None:
            break
        if any(m > dim for m in fd.finite_part):
            break
        w = j
    return w
