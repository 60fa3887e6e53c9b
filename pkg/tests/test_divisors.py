import dataclasses
import math
import random
from fractions import Fraction as F

import pytest

from zdlab.divisors import (
    RULE_ANURAG13,
    RULE_ANURAG31,
    RULE_ANURAG34,
    RULE_COR_INJECTIVE,
    RULE_FIBER_ZERO,
    RULE_HC31,
    RULE_HCSIR1,
    RULE_TDZ_UC,
    RULE_U_ZERO,
    SynthesisError,
    UnboundedOperatorError,
    Witness,
    classify_left_zd,
    classify_right_zd,
    classify_zd,
    faithful_col_window,
    faithful_row_window,
    oracle_annihilator,
    synth_left_witness,
    synth_right_witness,
    verify_witness,
)
from zdlab.operators import OperatorSpec, TruncatedOperator, assemble
from zdlab.symbols import (
    Block,
    ConstMap,
    ConstWeight,
    CPlusInv,
    Geom,
    Inv,
    Power,
    SelfMap,
    Shift,
    WeightSeq,
)
from _family import random_spec

INV_WEIGHT = WeightSeq(tail=Inv(F(1)))
UNIT = WeightSeq.one()

HC31_SPEC = OperatorSpec(
    WeightSeq(tail=Inv(F(1)), tail_start=2, exceptions={1: F(0)}),
    SelfMap(tail=Shift(1), tail_start=2, exceptions={1: 1}),
    F(2),
)
ANURAG31_SPEC = OperatorSpec(
    INV_WEIGHT, SelfMap(tail=Shift(0), tail_start=3, exceptions={1: 1, 2: 1}), F(2)
)
SQUARE_SPEC = OperatorSpec(INV_WEIGHT, SelfMap(tail=Power(2)), F(2))
INVERTIBLE_SPEC = OperatorSpec(
    WeightSeq(tail=CPlusInv(F(1), F(1))), SelfMap.identity(), F(2)
)
BLOCK_ZERO_SPEC = OperatorSpec(
    WeightSeq(tail=ConstWeight(F(1)), tail_start=3, exceptions={1: F(0), 2: F(0)}),
    SelfMap(tail=Block(2)),
    F(2),
)
UNIT_SQUARE_SPEC = OperatorSpec(UNIT, SelfMap(tail=Power(2)), F(2))


class TestClassifyRight:
    def test_collision_with_nowhere_zero_weight(self):
        v = classify_right_zd(ANURAG31_SPEC)
        assert v.key() == ("Yes", RULE_ANURAG31)

    def test_invertible_is_no(self):
        assert classify_right_zd(
            OperatorSpec(UNIT, SelfMap.identity(), F(2))
        ).key() == ("No", RULE_ANURAG31)

    def test_fiber_inside_zero_set(self):
        assert classify_right_zd(HC31_SPEC).key() == ("Yes", RULE_HC31)

    def test_weight_zero_with_summable_weight(self):
        # single zero off every full fiber, weight in the sequence space
        spec = OperatorSpec(
            WeightSeq(tail=Inv(F(1)), tail_start=3, exceptions={1: F(0), 2: F(1)}),
            SelfMap(tail=Shift(0), tail_start=3, exceptions={1: 1, 2: 1}),
            F(2),
        )
        v = classify_right_zd(spec)
        assert v.key() == ("Yes", RULE_HC31) or v.key() == ("Yes", RULE_U_ZERO)

    def test_unknown_when_not_summable(self):
        spec = OperatorSpec(
            WeightSeq(tail=ConstWeight(F(1)), tail_start=2, exceptions={1: F(0)}),
            SelfMap(tail=Shift(0), tail_start=3, exceptions={1: 1, 2: 1}),
            F(2),
        )
        assert classify_right_zd(spec).status == "Unknown"

    def test_linf_membership_decides_at_p_inf(self):
        spec = OperatorSpec(
            WeightSeq(tail=ConstWeight(F(1)), tail_start=2, exceptions={1: F(0)}),
            SelfMap(tail=Shift(0), tail_start=3, exceptions={1: 1, 2: 1}),
            math.inf,
        )
        assert classify_right_zd(spec).key() == ("Yes", RULE_U_ZERO)

    def test_unbounded_rejected(self):
        spec = OperatorSpec(UNIT, SelfMap(tail=ConstMap(1)), F(1))
        with pytest.raises(UnboundedOperatorError):
            classify_right_zd(spec)


class TestClassifyLeft:
    def test_square_map(self):
        assert classify_left_zd(SQUARE_SPEC).key() == ("Yes", RULE_ANURAG13)

    def test_invertible(self):
        assert classify_left_zd(INVERTIBLE_SPEC).key() == ("No", RULE_ANURAG13)

    def test_vanishing_fiber(self):
        assert classify_left_zd(BLOCK_ZERO_SPEC).key() == ("Yes", RULE_FIBER_ZERO)

    def test_hcsir1_with_zero_weight(self):
        spec = OperatorSpec(
            WeightSeq(tail=Inv(F(1)), tail_start=2, exceptions={1: F(0)}),
            SelfMap(tail=Shift(1), tail_start=2, exceptions={1: 1}),
            F(2),
        )
        assert classify_left_zd(spec).key() == ("Yes", RULE_HCSIR1)

    def test_corollary_no(self):
        spec = OperatorSpec(
            WeightSeq(tail=ConstWeight(F(1)), tail_start=2, exceptions={1: F(0)}),
            SelfMap(tail=Block(2)),
            F(2),
        )
        # surjective, and every fiber has an index with nonzero weight
        assert classify_left_zd(spec).key() == ("No", RULE_COR_INJECTIVE)


class TestClassifyZd:
    def test_unit_square_map(self):
        v = classify_zd(UNIT_SQUARE_SPEC)
        assert v.status == "Yes"
        assert v.rule == RULE_ANURAG34

    def test_invertible_bounded_away(self):
        assert classify_zd(INVERTIBLE_SPEC).key() == ("No", RULE_TDZ_UC)

    def test_block_composition(self):
        v = classify_zd(OperatorSpec(UNIT, SelfMap(tail=Block(2)), F(2)))
        assert v.status == "Yes"
        # corroborated by the truncation oracle
        A = assemble(OperatorSpec(UNIT, SelfMap(tail=Block(2)), F(2)), 12)
        assert oracle_annihilator(A, "right") is not None

    def test_decaying_diagonal_is_no(self):
        v = classify_zd(OperatorSpec(INV_WEIGHT, SelfMap.identity(), F(2)))
        assert v.status == "No"
        assert RULE_ANURAG31 in v.rule and RULE_ANURAG13 in v.rule


class TestSynthRight:
    def test_hc31_projection(self):
        w = synth_right_witness(HC31_SPEC)
        assert w.kind == "span_projection"
        assert w.support == (1,)
        assert verify_witness(HC31_SPEC, w).ok

    def test_functional_tensor_coefficients(self):
        w = synth_right_witness(ANURAG31_SPEC)
        assert w.kind == "functional_tensor"
        assert w.coeffs == ((1, F(1, 2)), (2, F(-1)))
        assert w.target == 1
        assert verify_witness(ANURAG31_SPEC, w).ok

    def test_unit_block_coefficients(self):
        spec = OperatorSpec(UNIT, SelfMap(tail=Block(2)), F(2))
        w = synth_right_witness(spec)
        assert w.coeffs == ((1, F(1)), (2, F(-1)))
        assert verify_witness(spec, w).ok

    def test_requires_yes(self):
        with pytest.raises(SynthesisError):
            synth_right_witness(OperatorSpec(UNIT, SelfMap.identity(), F(2)))


class TestSynthLeft:
    def test_projection_on_empty_fiber(self):
        spec = OperatorSpec(
            WeightSeq(tail=Inv(F(1)), tail_start=2, exceptions={1: F(0)}),
            SelfMap(tail=Shift(1), tail_start=2, exceptions={1: 1}),
            F(2),
        )
        w = synth_left_witness(spec)
        assert w.kind == "coordinate_projection"
        assert w.index == 2
        assert verify_witness(spec, w).ok

    def test_kernel_tensor(self):
        w = synth_left_witness(SQUARE_SPEC)
        assert w.kind == "kernel_tensor"
        assert w.vector == ((2, F(1)),)
        assert verify_witness(SQUARE_SPEC, w).ok

    def test_fiber_zero_projection(self):
        w = synth_left_witness(BLOCK_ZERO_SPEC)
        assert w.kind == "coordinate_projection"
        assert w.index == 1
        assert verify_witness(BLOCK_ZERO_SPEC, w).ok


class TestVerifyWitness:
    def test_perturbed_functional_fails_with_coordinate(self):
        w = synth_right_witness(ANURAG31_SPEC)
        coeffs = ((1, F(1, 2) * (1 + F(1, 1000))), (2, F(-1)))
        bad = dataclasses.replace(w, coeffs=coeffs)
        res = verify_witness(ANURAG31_SPEC, bad)
        assert not res.ok
        assert res.failing[0] == "product"

    def test_projection_widened_to_live_row_fails(self):
        w = synth_right_witness(HC31_SPEC)
        bad = dataclasses.replace(w, support=(1, 3))  # weight(3) = 1/3 != 0
        res = verify_witness(HC31_SPEC, bad)
        assert not res.ok

    def test_zero_operator_accepts_any_finite_rank(self):
        spec = OperatorSpec(WeightSeq.constant(0), SelfMap(tail=Shift(1)), F(2))
        w = Witness(
            side="left",
            kind="kernel_tensor",
            rule=RULE_ANURAG13,
            required_window=8,
            vector=((3, F(2)), (5, F(-7, 3))),
            source=1,
        )
        assert verify_witness(spec, w).ok

    def test_support_outside_window(self):
        w = synth_right_witness(HC31_SPEC)
        bad = dataclasses.replace(w, required_window=0)
        res = verify_witness(HC31_SPEC, bad)
        assert not res.ok
        assert res.failing[0] == "support"

    def test_deterministic(self):
        a = synth_right_witness(ANURAG31_SPEC)
        b = synth_right_witness(ANURAG31_SPEC)
        assert a == b
        assert verify_witness(ANURAG31_SPEC, a) == verify_witness(ANURAG31_SPEC, b)


class TestTailCertificate:
    def test_far_image_certified_structurally(self):
        # zero of the weight at 100, cube map: the witness row maps to 10**6,
        # far outside any reasonable window
        spec = OperatorSpec(
            WeightSeq(tail=CPlusInv(F(1), F(-100))), SelfMap(tail=Power(3)), F(2)
        )
        w = synth_right_witness(spec)
        assert w.required_window < 1000
        assert verify_witness(spec, w).ok

    def test_left_certificate_rejects_nonzero_tail(self):
        # projection onto a coordinate whose fiber extends past the window
        # with nonvanishing weight must fail
        spec = OperatorSpec(UNIT, SelfMap(tail=Block(2)), F(2))
        w = Witness(
            side="left",
            kind="coordinate_projection",
            rule=RULE_FIBER_ZERO,
            required_window=8,
            index=7,  # fiber {13, 14} lies beyond the window
        )
        res = verify_witness(spec, w)
        assert not res.ok
        assert res.failing == ("tail", 7)

    def test_left_certificate_on_infinite_fiber(self):
        # const tail: the fiber of 1 is the whole tail; the certificate must
        # consult the cofinite zero set beyond the window
        phi = SelfMap(tail=ConstMap(1), tail_start=3, exceptions={1: 2, 2: 2})
        vanishing = WeightSeq(
            tail=ConstWeight(F(0)), tail_start=3, exceptions={1: F(1), 2: F(1)}
        )
        good = Witness(
            side="left",
            kind="coordinate_projection",
            rule=RULE_FIBER_ZERO,
            required_window=8,
            index=1,
        )
        assert verify_witness(OperatorSpec(vanishing, phi, F(2)), good).ok
        # weight vanishing inside the window but alive beyond it: the finite
        # product is zero, so only the tail certificate can catch the leak
        leaky = WeightSeq(
            tail=Geom(F(1), F(1, 2)),
            tail_start=9,
            exceptions={n: F(0) for n in range(1, 9)},
        )
        res = verify_witness(OperatorSpec(leaky, phi, F(2)), good)
        assert not res.ok
        assert res.failing == ("tail", 1)


class TestOracle:
    def test_identity_has_none(self):
        I = TruncatedOperator.identity(4, F(2))
        assert oracle_annihilator(I, "left") is None
        assert oracle_annihilator(I, "right") is None

    def test_backward_shift(self):
        A = assemble(OperatorSpec.composition(SelfMap(tail=Shift(1)), F(2)), 3)
        left = oracle_annihilator(A, "left")
        assert left is not None and (A @ left).is_zero()
        # kernel is spanned by the first basis vector
        assert left.entry(1, 1) == 1
        right = oracle_annihilator(A, "right")
        assert right is not None and (right @ A).is_zero()

    def test_block_right(self):
        A = assemble(OperatorSpec.composition(SelfMap(tail=Block(2)), F(2)), 6)
        T = oracle_annihilator(A, "right")
        assert T is not None and (T @ A).is_zero()


class TestFaithfulWindows:
    def test_square_rows(self):
        spec = OperatorSpec(UNIT, SelfMap(tail=Power(2)), F(2))
        assert faithful_row_window(spec, 12) == 3  # 4**2 exceeds the window

    def test_shift_rows(self):
        spec = OperatorSpec(UNIT, SelfMap(tail=Shift(2)), F(2))
        assert faithful_row_window(spec, 12) == 10

    def test_block_columns(self):
        spec = OperatorSpec(UNIT, SelfMap(tail=Block(3)), F(2))
        assert faithful_col_window(spec, 12) == 4  # fiber(5) reaches 15

    def test_const_tail_columns(self):
        spec = OperatorSpec(
            WeightSeq(tail=Geom(F(1), F(1, 2))), SelfMap(tail=ConstMap(1)), F(2)
        )
        assert faithful_col_window(spec, 8) == 0  # fiber(1) is infinite


class TestConstTailCorners:
    """Const tails stay bounded when the weight tail is summable; the one
    infinite fiber must not break classification or synthesis."""

    PHI = SelfMap(tail=ConstMap(1), tail_start=3, exceptions={1: 2, 2: 2})

    def test_infinite_fiber_collision(self):
        spec = OperatorSpec(WeightSeq(tail=Geom(F(1), F(1, 2))), self.PHI, F(2))
        assert is_bounded_ok(spec)
        v = classify_right_zd(spec)
        assert v.key() == ("Yes", RULE_ANURAG31)
        assert verify_witness(spec, synth_right_witness(spec)).ok
        w = synth_left_witness(spec)
        assert verify_witness(spec, w).ok

    def test_infinite_fiber_inside_zero_set(self):
        weight = WeightSeq(
            tail=ConstWeight(F(0)), tail_start=3, exceptions={1: F(1), 2: F(1)}
        )
        spec = OperatorSpec(weight, self.PHI, F(2))
        v = classify_right_zd(spec)
        assert v.key() == ("Yes", RULE_HC31)
        w = synth_right_witness(spec)
        # the projection is truncated to a finite subset of the fiber
        assert w.kind == "span_projection"
        assert verify_witness(spec, w).ok

    def test_zero_weight_operator(self):
        spec = OperatorSpec(WeightSeq.constant(0), SelfMap(tail=Shift(2)), F(1))
        assert classify_right_zd(spec).status == "Yes"
        assert classify_left_zd(spec).status == "Yes"
        assert verify_witness(spec, synth_right_witness(spec)).ok
        assert verify_witness(spec, synth_left_witness(spec)).ok


def is_bounded_ok(spec):
    from zdlab.operators import is_bounded

    return bool(is_bounded(spec))


class TestScalingInvariance:
    def test_same_status_and_rule(self):
        rng = random.Random(77)
        for _ in range(25):
            spec = random_spec(rng)
            for c in (F(2), F(-1, 3)):
                scaled = spec.scaled(c)
                assert classify_right_zd(spec).key() == classify_right_zd(scaled).key()
                assert classify_left_zd(spec).key() == classify_left_zd(scaled).key()
                assert classify_zd(spec).key() == classify_zd(scaled).key()
